#include "qmus/error.hpp"

namespace qmus {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::LabelMismatch: return "LabelMismatch";
    case ErrorCode::BasisMismatch: return "BasisMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::UnknownGate: return "UnknownGate";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::LabelCollision: return "LabelCollision";
    case ErrorCode::SameNote: return "SameNote";
    case ErrorCode::WrongDimension: return "WrongDimension";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::NoteOutOfBlock: return "NoteOutOfBlock";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::LevelOutOfRange: return "LevelOutOfRange";
    case ErrorCode::OctaveOutOfRange: return "OctaveOutOfRange";
    case ErrorCode::UnknownVoice: return "UnknownVoice";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotMeasurable: return "NotMeasurable";
    case ErrorCode::InvalidScore: return "InvalidScore";
    case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::EmptyInput: return "EmptyInput";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

EnumerationTooLarge::EnumerationTooLarge(std::uint64_t count, std::uint64_t cap)
    : Error(ErrorCode::EnumerationTooLarge,
            std::to_string(count) + " joint outcomes exceed the enumeration cap of " +
                std::to_string(cap)),
      count_(count),
      cap_(cap) {}

}  // namespace qmus
