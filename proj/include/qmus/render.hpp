#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qmus/perform.hpp"
#include "qmus/score.hpp"

namespace qmus::perform {

inline constexpr int kTicksPerQuarter = 480;
inline constexpr int kVelocity = 80;

// Standard MIDI File, format 1, 480 ticks per quarter. Track 0 carries the
// tempo; then one track per sample per voice, channel 0, velocity 80. Silent
// outcomes become rests. Throws EmptyInput for an empty sample list.
std::vector<std::uint8_t> render_midi(std::span<const PerformanceSample> samples, int tempo_bpm);

// "melody,probability" header, one row per entry, 12 significant digits, LF.
std::string render_csv(const MelodyDistribution& md);

// Monospaced staff sketch: one row per note (highest first), one column per
// event, cells holding the gray percent (mean occupancy, phases dropped).
// Bell pairs are bracketed with '/' on the upper note and '\' on the lower.
std::string render_text(const score::ScoreAST& ast);

// One line per sample: "index,melody,probability".
std::string render_performance_log(std::span<const PerformanceSample> samples);

}  // namespace qmus::perform
