#pragma once

// Command-line front end. run_cli is the whole program minus process setup so
// tests can drive it in-process; exit codes are 0 ok, 1 invariant or
// verification failure, 2 usage error.

#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "weylwalk/coin.hpp"
#include "weylwalk/limitlaw.hpp"
#include "weylwalk/verify.hpp"
#include "weylwalk/walk.hpp"
#include "weylwalk/weylmap.hpp"

namespace weylwalk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariant = 1;
inline constexpr int kExitUsage = 2;

inline constexpr std::size_t kDefaultGrid = 4096;
inline constexpr double kQubitExactTol = 1e-9;
inline constexpr double kQubitRenormTol = 1e-6;
inline constexpr double kProbabilitySumTol = 1e-9;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvariantFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Strict comma-separated reals: every field must parse completely and be finite.
inline std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) {
    const char* begin = field.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    while (*end == ' ') ++end;
    if (end == begin || *end != '\0' || errno == ERANGE || !std::isfinite(v)) {
      throw UsageError("not a number: '" + field + "'");
    }
    out.push_back(v);
  }
  if (!text.empty() && text.back() == ',') throw UsageError("trailing comma in '" + text + "'");
  return out;
}

/// Preset name, "a_re,a_im,b_re,b_im" for an SU(2) coin, or "u,theta,phi".
inline UnitaryCoin parse_coin(const std::string& text) {
  if (!text.empty() && std::isalpha(static_cast<unsigned char>(text.front()))) return preset_coin(text);
  const std::vector<double> v = parse_reals(text);
  if (v.size() == 4) return SpecialCoin(Complex(v[0], v[1]), Complex(v[2], v[3])).to_unitary();
  if (v.size() == 3) return from_cayley_klein({v[0], v[1], v[2]}).to_unitary();
  throw UsageError("coin needs a preset name, 4 numbers (a, b) or 3 numbers (u, theta, phi)");
}

inline Qubit parse_qubit(const std::string& text, std::ostream& err) {
  const std::vector<double> v = parse_reals(text);
  if (v.size() != 4) throw UsageError("qubit needs 4 numbers: alpha_re,alpha_im,beta_re,beta_im");
  Complex alpha(v[0], v[1]), beta(v[2], v[3]);
  const double n2 = std::norm(alpha) + std::norm(beta);
  const double dev = std::abs(n2 - 1.0);
  if (dev > kQubitRenormTol) throw UsageError("qubit is not normalized (|alpha|^2 + |beta|^2 = " + std::to_string(n2) + ")");
  if (dev > kQubitExactTol) err << "warning: qubit renormalized (norm deviation " << dev << ")\n";
  const double n = std::sqrt(n2);
  return Qubit(alpha / n, beta / n);
}

/// "100,200,400" -> ascending positive step counts.
inline std::vector<std::int64_t> parse_steps_list(const std::string& text) {
  std::vector<std::int64_t> out;
  for (double v : parse_reals(text)) {
    if (v != std::floor(v) || v <= 0 || v > 1e9) throw UsageError("steps must be positive integers");
    out.push_back(static_cast<std::int64_t>(v));
  }
  if (out.empty()) throw UsageError("empty steps list");
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i] <= out[i - 1]) throw UsageError("steps must be strictly ascending");
  }
  return out;
}

inline std::size_t default_grid() {
  const char* env = std::getenv("WEYLWALK_GRID");
  if (env == nullptr || *env == '\0') return kDefaultGrid;
  char* end = nullptr;
  errno = 0;
  const long long v = std::strtoll(env, &end, 10);
  if (*end != '\0' || errno == ERANGE || v <= 0) throw UsageError(std::string("bad WEYLWALK_GRID: '") + env + "'");
  return static_cast<std::size_t>(v);
}

/// Stream that is either the caller's stdout or a file opened on demand.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw UsageError("cannot open output file '" + path + "'");
      stream_ = &file_;
    }
    *stream_ << std::setprecision(17);
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

struct Options {
  std::string coin = "hadamard";
  std::string qubit = "1,0,0,0";
  std::int64_t steps = 100;
  std::string steps_list = "100,200,400,800";
  std::optional<std::size_t> grid;
  double p_turn = 0.5;
  double q_left = 0.5;
  bool classical = false;
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = VerifyOptions{}.seed;
  std::string wavefield;
  std::string moments;
  int limit_r_max = 6;
  int converge_r_max = 4;
  std::string fault = "none";
};

namespace detail {

inline nlohmann::ordered_json check_json(const CheckResult& c) {
  nlohmann::ordered_json j;
  j["max_error"] = std::isfinite(c.max_error) ? nlohmann::ordered_json(c.max_error) : nlohmann::ordered_json("inf");
  j["tolerance"] = c.tolerance;
  j["pass"] = c.pass;
  j["samples"] = c.samples;
  return j;
}

inline void require_probability_sum(double total) {
  if (std::abs(total - 1.0) > kProbabilitySumTol) {
    std::ostringstream msg;
    msg << std::setprecision(17) << "probability column sums to " << total;
    throw InvariantFailure(msg.str());
  }
}

/// Coin and qubit parsed once, before any command runs.
struct Inputs {
  std::optional<UnitaryCoin> coin;
  std::optional<Qubit> qubit;
};

inline int cmd_walk(const Options& o, const Inputs& in, std::ostream& out) {
  if (o.steps < 0) throw UsageError("--steps must be >= 0");
  if (o.classical && !o.wavefield.empty()) throw UsageError("--wavefield needs the quantum walk");
  const std::int64_t n = o.steps;
  Distribution dist;
  std::optional<WaveField> field;
  if (o.classical) {
    dist = classical_distribution({o.p_turn, o.q_left}, n);
  } else {
    field = evolve_position(*in.qubit, *in.coin, n);
    dist = distribution(*field);
  }
  // Sites of the wrong parity are identically zero and are not emitted.
  std::vector<std::pair<std::int64_t, double>> rows;
  double total = 0.0;
  for (std::int64_t x = -n; x <= n; x += 2) {
    rows.emplace_back(x, dist.at(x));
    total += dist.at(x);
  }
  require_probability_sum(total);

  Sink sink(o.out, out);
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["steps"] = n;
    j["classical"] = o.classical;
    for (const auto& [x, p] : rows) {
      j["x"].push_back(x);
      j["prob"].push_back(p);
    }
    *sink << j.dump(2) << '\n';
  } else {
    *sink << "x,prob\n";
    for (const auto& [x, p] : rows) *sink << x << ',' << p << '\n';
  }

  if (!o.wavefield.empty()) {
    Sink wf(o.wavefield, out);
    *wf << "x,re1,im1,re2,im2\n";
    for (std::int64_t x = -n; x <= n; ++x) {
      const Spinor s = field->at(x);
      *wf << x << ',' << s[0].real() << ',' << s[0].imag() << ',' << s[1].real() << ',' << s[1].imag() << '\n';
    }
  }
  return kExitOk;
}

inline int cmd_orbit(const Options& o, const Inputs& in, std::ostream& out, std::ostream& err) {
  const CayleyKlein ck = cayley_klein_of(*in.coin);
  if (ck.u >= 1.0) throw UsageError("orbit undefined for u = 1 (diagonal coin)");
  const bool circle = ck.u == 0.0;
  if (circle) err << "note: u = 0, orbit is the circle of radius pi/2\n";
  const std::size_t N = o.grid.value_or(default_grid());
  if (N < 2) throw UsageError("--grid must be at least 2");

  const Vec3 e3 = orbit_frame(ck).e3;
  std::vector<std::array<double, 7>> rows;
  for (std::size_t j = 0; j < N; ++j) {
    const OrbitPoint p = q_vec_of_k(ck, KSpectrum::k_at(j, N));
    if (std::abs(dot(p.q_vec, e3)) > 1e-12) throw InvariantFailure("orbit point leaves the orbital plane");
    rows.push_back({p.k, p.gamma, p.q, p.q_vec[0], p.q_vec[1], p.q_vec[2], jacobian(ck, p.gamma)});
  }

  Sink sink(o.out, out);
  static const char* const kCols[] = {"k", "gamma", "q", "qx", "qy", "qz", "jacobian"};
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["u"] = ck.u;
    j["theta"] = ck.theta;
    j["phi"] = ck.phi;
    j["circle"] = circle;
    j["e3"] = e3;
    for (std::size_t c = 0; c < 7; ++c) {
      auto& col = j[kCols[c]] = nlohmann::ordered_json::array();
      for (const auto& r : rows) col.push_back(r[c]);
    }
    *sink << j.dump(2) << '\n';
  } else {
    *sink << "k,gamma,q,qx,qy,qz,jacobian\n";
    for (const auto& r : rows) {
      for (std::size_t c = 0; c < 7; ++c) *sink << (c ? "," : "") << r[c];
      *sink << '\n';
    }
  }
  return kExitOk;
}

inline CayleyKlein require_limit_coin(const UnitaryCoin& coin, int r_max) {
  const CayleyKlein ck = cayley_klein_of(coin);
  if (!(ck.u > 0.0 && ck.u < 1.0)) throw UsageError("limit law needs u in (0, 1)");
  if (r_max < 0 || r_max > 32) throw UsageError("--r-max must be in [0, 32]");
  return ck;
}

inline int cmd_limit(const Options& o, const Inputs& in, std::ostream& out, std::ostream& err) {
  const Qubit& qubit = *in.qubit;
  const CayleyKlein ck = require_limit_coin(*in.coin, o.limit_r_max);
  const KonnoLaw law = KonnoLaw::from(qubit, *in.coin);
  const std::size_t G = o.grid.value_or(default_grid());
  if (G < 1) throw UsageError("--grid must be positive");

  nlohmann::ordered_json moments;
  moments["u"] = law.u;
  moments["c_asym"] = law.c_asym;
  for (int r = 0; r <= o.limit_r_max; ++r) moments["moments"]["m" + std::to_string(r)] = limit_moment(r, law);
  for (int r = 0; r <= o.limit_r_max; ++r) moments["moments_k"]["m" + std::to_string(r)] = limit_moment_k(r, qubit, ck);

  // Midpoint grid keeps the integrable endpoint singularities off the samples.
  std::vector<std::array<double, 3>> rows;
  for (std::size_t i = 0; i < G; ++i) {
    const double y = -law.u + (2.0 * law.u) * (static_cast<double>(i) + 0.5) / static_cast<double>(G);
    rows.push_back({y, konno_mu(y, law.u), konno_nu(y, law)});
  }

  Sink sink(o.out, out);
  if (o.format == "json") {
    nlohmann::ordered_json j = moments;
    for (const auto& r : rows) {
      j["density"]["y"].push_back(r[0]);
      j["density"]["mu"].push_back(r[1]);
      j["density"]["nu"].push_back(r[2]);
    }
    *sink << j.dump(2) << '\n';
  } else {
    *sink << "y,mu,nu\n";
    for (const auto& r : rows) *sink << r[0] << ',' << r[1] << ',' << r[2] << '\n';
    if (!o.moments.empty()) {
      Sink m(o.moments, out);
      *m << moments.dump(2) << '\n';
    } else if (o.out.empty()) {
      err << moments.dump(2) << '\n';
    } else {
      Sink m(o.out + ".moments.json", out);
      *m << moments.dump(2) << '\n';
    }
  }
  return kExitOk;
}

inline int cmd_converge(const Options& o, const Inputs& in, std::ostream& out, std::ostream& err) {
  require_limit_coin(*in.coin, o.converge_r_max);
  const ConvergenceReport report =
      convergence_report(*in.coin, *in.qubit, o.converge_r_max, parse_steps_list(o.steps_list));
  for (std::size_t r = 0; r < report.monotone.size(); ++r) {
    if (!report.monotone[r]) err << "warning: gap for r = " << r << " is not shrinking monotonically\n";
  }

  Sink sink(o.out, out);
  if (o.format == "json") {
    nlohmann::ordered_json j;
    for (const auto& row : report.rows) {
      j["rows"].push_back({{"n", row.n}, {"r", row.r}, {"finite", row.finite}, {"limit", row.limit}, {"gap", row.gap}});
    }
    j["monotone"] = report.monotone;
    *sink << j.dump(2) << '\n';
  } else {
    *sink << "n,r,finite,limit,gap\n";
    for (const auto& row : report.rows) {
      *sink << row.n << ',' << row.r << ',' << row.finite << ',' << row.limit << ',' << row.gap << '\n';
    }
  }
  return kExitOk;
}

inline int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  VerifyOptions vo;
  vo.seed = o.seed;
  if (o.fault == "tan-form") {
    vo.exponential = pauli_exp_tan_form;
  } else if (o.fault == "conjugate") {
    vo.exponential = [](const Vec3& q) { return pauli_exp(-1.0 * q); };
  } else if (o.fault != "none") {
    throw UsageError("unknown fault '" + o.fault + "'");
  }
  const VerifyReport report = run_verify(vo);

  nlohmann::ordered_json j;
  for (const CheckResult& c : report.checks) j[c.name] = check_json(c);
  Sink sink(o.out, out);
  *sink << j.dump(2) << '\n';
  for (const CheckResult& c : report.checks) {
    if (!c.pass) err << "FAIL " << c.name << ": max_error " << c.max_error << " > " << c.tolerance << '\n';
  }
  return report.pass() ? kExitOk : kExitInvariant;
}

inline bool is_usage_kind(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonUnitary:
    case ErrorKind::NotUnit:
    case ErrorKind::DegenerateDirection:
    case ErrorKind::OutOfSupport:
      return false;
    default:
      return true;
  }
}

}  // namespace detail

/// args excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete-time quantum walks, their Weyl-particle orbits and limit laws.", "weylwalk"};
  app.require_subcommand(1);
  Options o;

  auto add_coin = [&](CLI::App* sub) {
    sub->add_option("--coin", o.coin, "preset (hadamard, identity, antidiagonal), a_re,a_im,b_re,b_im or u,theta,phi");
  };
  auto add_qubit = [&](CLI::App* sub) { sub->add_option("--qubit", o.qubit, "alpha_re,alpha_im,beta_re,beta_im"); };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "output file (default stdout)");
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* walk = app.add_subcommand("walk", "position distribution after n steps");
  add_coin(walk);
  add_qubit(walk);
  add_common(walk);
  walk->add_option("--steps", o.steps, "number of steps")->check(CLI::NonNegativeNumber);
  walk->add_flag("--classical", o.classical, "classical correlated random walk instead");
  walk->add_option("--p-turn", o.p_turn, "classical turn probability")->check(CLI::Range(0.0, 1.0));
  walk->add_option("--q-left", o.q_left, "classical probability of starting left")->check(CLI::Range(0.0, 1.0));
  walk->add_option("--wavefield", o.wavefield, "also write x,re1,im1,re2,im2 to this file");

  CLI::App* orbit = app.add_subcommand("orbit", "orbit of the walk in momentum space");
  add_coin(orbit);
  add_common(orbit);
  orbit->add_option("--grid", o.grid, "number of k points");

  CLI::App* limit = app.add_subcommand("limit", "limit density and its moments");
  add_coin(limit);
  add_qubit(limit);
  add_common(limit);
  limit->add_option("--grid", o.grid, "number of y points");
  limit->add_option("--r-max", o.limit_r_max, "highest moment");
  limit->add_option("--moments", o.moments, "write the moment JSON here");

  CLI::App* converge = app.add_subcommand("converge", "finite-n moments against the limit");
  add_coin(converge);
  add_qubit(converge);
  add_common(converge);
  converge->add_option("--steps", o.steps_list, "ascending step counts, e.g. 100,200,400");
  converge->add_option("--r-max", o.converge_r_max, "highest moment");

  CLI::App* verify = app.add_subcommand("verify", "run the invariant suite");
  verify->add_option("--out", o.out, "report file (default stdout)");
  verify->add_option("--seed", o.seed, "seed for the randomized checks");
  verify->add_option("--inject-fault", o.fault, "replace the exponential map (none, tan-form, conjugate)")
      ->group("");

  std::vector<std::string> argv_store{"weylwalk"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  // Inputs that fail to parse are usage errors whatever their kind.
  detail::Inputs in;
  try {
    const bool quantum = !(walk->parsed() && o.classical);
    if (!verify->parsed() && quantum) in.coin = parse_coin(o.coin);
    if ((walk->parsed() && quantum) || limit->parsed() || converge->parsed()) in.qubit = parse_qubit(o.qubit, err);
  } catch (const std::exception& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (walk->parsed()) return detail::cmd_walk(o, in, out);
    if (orbit->parsed()) return detail::cmd_orbit(o, in, out, err);
    if (limit->parsed()) return detail::cmd_limit(o, in, out, err);
    if (converge->parsed()) return detail::cmd_converge(o, in, out, err);
    return detail::cmd_verify(o, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvariantFailure& e) {
    err << "invariant failure: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const Error& e) {
    const bool usage = detail::is_usage_kind(e.kind());
    err << (usage ? "usage error: " : "invariant failure: ") << to_string(e.kind()) << ": " << e.what() << '\n';
    return usage ? kExitUsage : kExitInvariant;
  }
}

}  // namespace weylwalk::cli
