#pragma once

// Listening semantics for a validated score. Each event is measured
// independently in its own basis; a Bell pair is one joint measurement of two
// notes. Outcome tokens are note names ("c"), "rest" for silence, and
// "e+a" when both notes of a pair sound.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qmus/qcore.hpp"
#include "qmus/score.hpp"

namespace qmus::perform {

inline constexpr std::uint64_t kEnumCap = 1'000'000;
inline constexpr std::string_view kRest = "rest";

// Notes heard for one outcome of one event; empty means silence.
using Chord = std::vector<NoteLabel>;

std::string token_of(const Chord& notes);

struct EventDistribution {
  std::size_t event_index = 0;
  Distribution dist;
  std::vector<Chord> heard;  // parallel to dist.outcomes()
};

// Throws UnknownVoice, IndexOutOfRange, NotMeasurable (bar line), or
// InvalidScore when the event cannot be prepared.
EventDistribution event_distribution(const score::ScoreAST& ast, std::string_view voice,
                                     std::size_t event_index);

// The state an event prepares, before measurement.
StateVector prepared_state(const score::Event& e, const score::Model& model);

struct MelodyEntry {
  std::vector<std::string> melody;  // one token per measured event ("/" between voices)
  double p = 0.0;
};

struct MelodyDistribution {
  std::vector<MelodyEntry> entries;  // descending p, ties by melody
};

// Exact joint distribution of one voice. Zero-probability outcomes are left
// out. Throws EnumerationTooLarge when the number of joint outcomes exceeds cap.
MelodyDistribution melody_distribution(const score::ScoreAST& ast, std::string_view voice,
                                       std::uint64_t cap = kEnumCap);

// Joint distribution over all voices (independent); the melody of each voice
// is separated by a "/" token.
MelodyDistribution melody_distribution(const score::ScoreAST& ast, std::uint64_t cap = kEnumCap);

// "c-g", with voices joined as "c-g/e-rest".
std::string join_melody(const std::vector<std::string>& melody);

struct HeardEvent {
  Chord notes;
  score::Duration duration = score::Duration::Quarter;
  std::string token;
};

struct HeardVoice {
  std::string id;
  std::vector<HeardEvent> events;
};

struct PerformanceSample {
  std::uint64_t seed = 0;
  std::uint64_t index = 0;  // the sample's stream is SeededRng::stream(seed, index)
  std::vector<HeardVoice> voices;
  double probability = 1.0;

  std::vector<std::string> melody() const;
};

std::vector<PerformanceSample> sample_performance(const score::ScoreAST& ast, std::uint64_t seed,
                                                  std::size_t count);

}  // namespace qmus::perform
