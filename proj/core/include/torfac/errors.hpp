#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace torfac {

enum class ErrorKind {
  ZeroVector,
  DependentInput,
  CapExceeded,
  NonSimplicialCone,
  VerticalRay,
  NotPiStrictlyConvex,
  NotFaceToFace,
  NotAFace,
  OutsideSupport,
  PiIndependent,
  NotACircuit,
  DimensionTooSmall,
  AlreadyNonsingular,
  IterationCapExceeded,
  ProjectionNotAFan,
  NotFiltrable,
  NotMinimal,
  NotPiNonsingular,
  NotSmoothCenter,
  BadWeights,
  AInsideCone,
  ChartMismatch,
  ZeroIdeal,
  BadCertificate,
  InvalidInput,
  InternalInvariant,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// that callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for kinds that signal a bug rather than bad input.
  bool is_internal() const noexcept {
    return kind_ == ErrorKind::InternalInvariant || kind_ == ErrorKind::IterationCapExceeded;
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace torfac
