#pragma once

// The two quantizations of a piano octave: the bundled-octave model, where one
// octave block is a 7- (or 8-) dimensional Hilbert space with one basis vector
// per key, and the occupancy model, where each key is a two-level mode that is
// either empty (silent) or occupied (sounding).

#include <array>
#include <span>
#include <vector>

#include "qmus/note.hpp"
#include "qmus/qcore.hpp"

namespace qmus {

inline constexpr int kMaxOctave = 1;

// Gray levels of the decreasing-occupancy ladder (c, d, ..., c').
inline constexpr std::array<double, 8> kOccupancyLadder = {1.00, 0.85, 0.70, 0.55,
                                                           0.40, 0.30, 0.20, 0.10};

class OctaveModelConfig {
 public:
  // dim must be 7 or 8; throws DimensionMismatch otherwise.
  explicit OctaveModelConfig(int dim = 7);

  int dim() const noexcept { return dim_; }
  bool includes_upper_c() const noexcept { return dim_ == 8; }

  friend bool operator==(const OctaveModelConfig&, const OctaveModelConfig&) = default;

 private:
  int dim_;
};

// Keys of octave block `block` in tuple order: highest first, c last. For dim 8
// the block's upper c (octave block+1) leads.
std::vector<NoteLabel> block_notes(int block, const OctaveModelConfig& cfg);

// Blocks that contain n (two for a c shared between adjacent dim-8 blocks).
std::vector<int> blocks_of(const NoteLabel& n, const OctaveModelConfig& cfg);

// Unit Cartesian vector of n inside its octave block; for the unprimed octave
// in dim 7, c = (0,0,0,0,0,0,1) and b = (1,0,0,0,0,0,0).
StateVector note_basis_state(const NoteLabel& n, const OctaveModelConfig& cfg = OctaveModelConfig{});

class OccupancyState {
 public:
  const NoteLabel& note() const noexcept { return note_; }
  // Vacuum amplitude.
  Complex alpha() const noexcept { return alpha_; }
  // Occupied amplitude.
  Complex beta() const noexcept { return beta_; }

  // Mode vector in storage order (|1>, |0>) = (beta, alpha).
  StateVector mode_vector() const;

  static OccupancyState from_mode_vector(const NoteLabel& n, const StateVector& s);

 private:
  friend OccupancyState occupancy_state(const NoteLabel&, Complex, Complex, bool);
  OccupancyState(NoteLabel n, Complex alpha, Complex beta) : note_(n), alpha_(alpha), beta_(beta) {}

  NoteLabel note_;
  Complex alpha_;
  Complex beta_;
};

// alpha|0_n> + beta|1_n>. Throws NotNormalized when |alpha|^2 + |beta|^2 is off
// 1 by more than kNormEps and renormalize is false.
OccupancyState occupancy_state(const NoteLabel& n, Complex alpha, Complex beta,
                               bool renormalize = false);

// Real parametrization: alpha = cos(phi), beta = sin(phi).
OccupancyState angle_state(const NoteLabel& n, double phi);

double mean_occupancy(const OccupancyState& s);

struct GrayLevel {
  double percent = 0.0;  // 100 = black (occupied), 0 = white (vacuum)

  // Nearest integer percent, halves rounded up.
  int rounded() const;
};

GrayLevel gray_level(const OccupancyState& s);
GrayLevel gray_level_of_occupancy(double mean);

// One state per level with |beta_k|^2 = levels[k], real nonnegative amplitudes.
// Levels must be strictly monotone (NotMonotone) and lie in [0,1], with only the
// first and last allowed to touch 0 or 1 (LevelOutOfRange).
std::vector<OccupancyState> complementary_sequence(const NoteLabel& n, std::span<const double> levels);

// c = 60 (middle C) ... b = 71, c' = 72. Throws OctaveOutOfRange outside 0..kMaxOctave.
int midi_pitch(const NoteLabel& n);

}  // namespace qmus
