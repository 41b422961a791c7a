#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace weylwalk {

enum class ErrorKind {
  NonUnitary,
  NotUnit,
  UnknownPreset,
  OutOfRange,
  GridTooSmall,
  UnsupportedOrder,
  NonPositiveTime,
  DegenerateDirection,
  DegenerateCoin,
  OutOfSupport,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonUnitary: return "NonUnitary";
    case ErrorKind::NotUnit: return "NotUnit";
    case ErrorKind::UnknownPreset: return "UnknownPreset";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::GridTooSmall: return "GridTooSmall";
    case ErrorKind::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorKind::NonPositiveTime: return "NonPositiveTime";
    case ErrorKind::DegenerateDirection: return "DegenerateDirection";
    case ErrorKind::DegenerateCoin: return "DegenerateCoin";
    case ErrorKind::OutOfSupport: return "OutOfSupport";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace weylwalk
