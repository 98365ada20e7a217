#pragma once

#include <stdexcept>
#include <string>

namespace fitzmono {

enum class ErrorKind {
  NonSymmetric,
  NotPSD,
  NotPD,
  DimensionMismatch,
  NotApplicable,
  NotStrictlyMonotone,
  NotMonotone,
  NotCyclic,
  KernelFailed,
  OrderExceeded,
  SingularSystem,
  CapExceeded,
  InvalidArgument,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonSymmetric: return "NonSymmetric";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::NotPD: return "NotPD";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::NotStrictlyMonotone: return "NotStrictlyMonotone";
    case ErrorKind::NotMonotone: return "NotMonotone";
    case ErrorKind::NotCyclic: return "NotCyclic";
    case ErrorKind::KernelFailed: return "KernelFailed";
    case ErrorKind::OrderExceeded: return "OrderExceeded";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Library error carrying a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace fitzmono
