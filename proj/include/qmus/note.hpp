#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace qmus {

// The seven white keys of the C major scale, in ascending pitch.
enum class Pitch { C, D, E, F, G, A, B };

inline constexpr int kPitchCount = 7;

// A white key plus octave. Octave 0 is the unprimed octave; c' is {C, 1}.
struct NoteLabel {
  Pitch pitch = Pitch::C;
  int octave = 0;

  friend bool operator==(const NoteLabel&, const NoteLabel&) = default;
  // Orders by sounding pitch: octave first, then key.
  friend std::strong_ordering operator<=>(const NoteLabel& a, const NoteLabel& b) {
    if (auto c = a.octave <=> b.octave; c != 0) return c;
    return static_cast<int>(a.pitch) <=> static_cast<int>(b.pitch);
  }

  // "c", "a'", "c''" ...
  std::string to_string() const;

  // Accepts [a-g] followed by any number of primes.
  static std::optional<NoteLabel> parse(std::string_view text);
};

inline constexpr NoteLabel note(Pitch p, int octave = 0) { return {p, octave}; }

char pitch_letter(Pitch p);

}  // namespace qmus
