#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dbl {

enum class ErrorKind {
  ElementOutOfRange,
  ValidationFailure,
  UnsupportedValue,
  UnsupportedRing,
  UnsupportedHom,
  SizeExceeded,
  SizeMismatch,
  SpaceMismatch,
  RingMismatch,
  ModeMismatch,
  NotClopen,
  NotClosed,
  NotContinuous,
  NotEmbedding,
  NotInIdeal,
  CannotSeparate,
  NotUltrafilter,
  UnrecognizedBasePoint,
  DisconnectedSpectrum,
  NotHausdorff,
  EquivalenceViolation,
  NoSection,
  CocycleViolation,
  IsCover,
  NoWitness,
  NonSeparating,
  ZeroFunction,
  InvalidInput,
};

std::string_view to_string(ErrorKind kind);

/// Every failure in the library is reported through this type; `kind` is the
/// machine-readable tag the CLI echoes in its JSON reports.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace dbl
