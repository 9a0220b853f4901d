#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qmus {

enum class ErrorCode {
  ZeroVector,
  LabelMismatch,
  BasisMismatch,
  DimensionMismatch,
  NotUnitary,
  UnknownGate,
  NotOrthonormal,
  LabelCollision,
  SameNote,
  WrongDimension,
  InvalidDistribution,
  NoteOutOfBlock,
  NotNormalized,
  NotMonotone,
  LevelOutOfRange,
  OctaveOutOfRange,
  UnknownVoice,
  IndexOutOfRange,
  NotMeasurable,
  InvalidScore,
  EnumerationTooLarge,
  EmptyInput,
};

std::string_view to_string(ErrorCode code);

// Every library failure is reported through this type; code() identifies the
// failure class, what() carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class EnumerationTooLarge : public Error {
 public:
  EnumerationTooLarge(std::uint64_t count, std::uint64_t cap);

  // Saturates at UINT64_MAX.
  std::uint64_t count() const noexcept { return count_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t count_;
  std::uint64_t cap_;
};

}  // namespace qmus
