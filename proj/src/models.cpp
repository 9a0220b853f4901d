#include "qmus/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qmus/error.hpp"

namespace qmus {

OctaveModelConfig::OctaveModelConfig(int dim) : dim_(dim) {
  if (dim != 7 && dim != 8)
    throw Error(ErrorCode::DimensionMismatch,
                "octave block dimension must be 7 or 8, got " + std::to_string(dim));
}

std::vector<NoteLabel> block_notes(int block, const OctaveModelConfig& cfg) {
  std::vector<NoteLabel> notes;
  if (cfg.includes_upper_c()) notes.push_back({Pitch::C, block + 1});
  for (int p = kPitchCount - 1; p >= 0; --p) notes.push_back({static_cast<Pitch>(p), block});
  return notes;
}

std::vector<int> blocks_of(const NoteLabel& n, const OctaveModelConfig& cfg) {
  std::vector<int> blocks{n.octave};
  if (cfg.includes_upper_c() && n.pitch == Pitch::C && n.octave > 0)
    blocks.push_back(n.octave - 1);
  return blocks;
}

StateVector note_basis_state(const NoteLabel& n, const OctaveModelConfig& cfg) {
  if (n.octave < 0)
    throw Error(ErrorCode::NoteOutOfBlock, n.to_string() + " lies below every octave block");
  // Prefer the lower block for a shared c, so c' sits in the first dim-8 block.
  const auto blocks = blocks_of(n, cfg);
  const int block = *std::min_element(blocks.begin(), blocks.end());
  const auto notes = block_notes(block, cfg);

  std::vector<std::string> labels;
  labels.reserve(notes.size());
  for (const auto& k : notes) labels.push_back(k.to_string());
  const auto at = std::find(notes.begin(), notes.end(), n);
  if (at == notes.end())
    throw Error(ErrorCode::NoteOutOfBlock, n.to_string() + " is not in octave block " +
                                               std::to_string(block));
  return StateVector::basis(std::move(labels), static_cast<std::size_t>(at - notes.begin()));
}

// ---------------------------------------------------------------------------

StateVector OccupancyState::mode_vector() const {
  const Complex amps[] = {beta_, alpha_};
  return normalize(amps, mode_labels(note_));
}

OccupancyState OccupancyState::from_mode_vector(const NoteLabel& n, const StateVector& s) {
  if (s.dim() != 2)
    throw Error(ErrorCode::WrongDimension, "a mode vector has dimension 2");
  return occupancy_state(n, s[1], s[0], true);
}

OccupancyState occupancy_state(const NoteLabel& n, Complex alpha, Complex beta, bool renormalize) {
  const double n2 = std::norm(alpha) + std::norm(beta);
  if (!std::isfinite(n2) || n2 < kNormEps * kNormEps)
    throw Error(ErrorCode::ZeroVector, "occupancy amplitudes vanish");
  if (renormalize) {
    const double scale = std::sqrt(n2);
    return OccupancyState(n, alpha / scale, beta / scale);
  }
  if (std::abs(n2 - 1.0) > kNormEps)
    throw Error(ErrorCode::NotNormalized, "|alpha|^2 + |beta|^2 = " + std::to_string(n2));
  return OccupancyState(n, alpha, beta);
}

OccupancyState angle_state(const NoteLabel& n, double phi) {
  const double wrapped = std::fmod(phi, 2.0 * std::numbers::pi);
  return occupancy_state(n, std::cos(wrapped), std::sin(wrapped), true);
}

double mean_occupancy(const OccupancyState& s) { return std::norm(s.beta()); }

int GrayLevel::rounded() const { return static_cast<int>(std::floor(percent + 0.5)); }

GrayLevel gray_level_of_occupancy(double mean) {
  return GrayLevel{std::clamp(100.0 * mean, 0.0, 100.0)};
}

GrayLevel gray_level(const OccupancyState& s) { return gray_level_of_occupancy(mean_occupancy(s)); }

std::vector<OccupancyState> complementary_sequence(const NoteLabel& n,
                                                   std::span<const double> levels) {
  if (levels.empty()) throw Error(ErrorCode::EmptyInput, "no occupancy levels");
  const std::size_t last = levels.size() - 1;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const double l = levels[k];
    const bool endpoint = k == 0 || k == last;
    if (!(l >= 0.0 && l <= 1.0) || (!endpoint && (l == 0.0 || l == 1.0)))
      throw Error(ErrorCode::LevelOutOfRange, "level " + std::to_string(l) + " at position " +
                                                  std::to_string(k));
  }
  if (levels.size() > 1) {
    const bool rising = levels[1] > levels[0];
    for (std::size_t k = 1; k < levels.size(); ++k)
      if (rising ? !(levels[k] > levels[k - 1]) : !(levels[k] < levels[k - 1]))
        throw Error(ErrorCode::NotMonotone, "levels are not strictly monotone at position " +
                                                std::to_string(k));
  }

  std::vector<OccupancyState> out;
  out.reserve(levels.size());
  for (double l : levels) out.push_back(occupancy_state(n, std::sqrt(1.0 - l), std::sqrt(l), true));
  return out;
}

int midi_pitch(const NoteLabel& n) {
  static constexpr int kSemitones[] = {0, 2, 4, 5, 7, 9, 11};
  if (n.octave < 0 || n.octave > kMaxOctave)
    throw Error(ErrorCode::OctaveOutOfRange,
                n.to_string() + " is outside octaves 0.." + std::to_string(kMaxOctave));
  return 60 + 12 * n.octave + kSemitones[static_cast<int>(n.pitch)];
}

}  // namespace qmus
