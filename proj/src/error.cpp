#include "dbl/error.hpp"

namespace dbl {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ElementOutOfRange: return "ElementOutOfRange";
    case ErrorKind::ValidationFailure: return "ValidationFailure";
    case ErrorKind::UnsupportedValue: return "UnsupportedValue";
    case ErrorKind::UnsupportedRing: return "UnsupportedRing";
    case ErrorKind::UnsupportedHom: return "UnsupportedHom";
    case ErrorKind::SizeExceeded: return "SizeExceeded";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::SpaceMismatch: return "SpaceMismatch";
    case ErrorKind::RingMismatch: return "RingMismatch";
    case ErrorKind::ModeMismatch: return "ModeMismatch";
    case ErrorKind::NotClopen: return "NotClopen";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NotContinuous: return "NotContinuous";
    case ErrorKind::NotEmbedding: return "NotEmbedding";
    case ErrorKind::NotInIdeal: return "NotInIdeal";
    case ErrorKind::CannotSeparate: return "CannotSeparate";
    case ErrorKind::NotUltrafilter: return "NotUltrafilter";
    case ErrorKind::UnrecognizedBasePoint: return "UnrecognizedBasePoint";
    case ErrorKind::DisconnectedSpectrum: return "DisconnectedSpectrum";
    case ErrorKind::NotHausdorff: return "NotHausdorff";
    case ErrorKind::EquivalenceViolation: return "EquivalenceViolation";
    case ErrorKind::NoSection: return "NoSection";
    case ErrorKind::CocycleViolation: return "CocycleViolation";
    case ErrorKind::IsCover: return "IsCover";
    case ErrorKind::NoWitness: return "NoWitness";
    case ErrorKind::NonSeparating: return "NonSeparating";
    case ErrorKind::ZeroFunction: return "ZeroFunction";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace dbl
