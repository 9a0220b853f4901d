#pragma once

// Dense complex linear algebra with quantum semantics: unit state vectors over
// labeled bases, unitaries, rank-one projectors, Born distributions, Bell
// pairs and the entanglement / complementarity predicates.
//
// Dimensions are small (at most kMaxDim), so everything is stored densely and
// by value. All types are immutable once built.

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qmus/note.hpp"
#include "qmus/rng.hpp"

namespace qmus {

using Complex = std::complex<double>;

inline constexpr double kNormEps = 1e-9;
inline constexpr double kUnitaryEps = 1e-9;
inline constexpr double kEntEps = 1e-9;
inline constexpr std::size_t kMaxDim = 16;

class StateVector {
 public:
  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const Complex> amps() const noexcept { return amps_; }
  std::span<const std::string> labels() const noexcept { return labels_; }
  const Complex& operator[](std::size_t k) const { return amps_[k]; }

  // Index of a basis label, or dim() if absent.
  std::size_t index_of(std::string_view label) const;

  // Unit vector |labels[k]>.
  static StateVector basis(std::vector<std::string> labels, std::size_t k);

  // Euclidean norm of the stored amplitudes (1 within kNormEps by construction).
  double norm() const;

 private:
  friend struct StateAccess;
  StateVector(std::vector<Complex> amps, std::vector<std::string> labels)
      : amps_(std::move(amps)), labels_(std::move(labels)) {}

  std::vector<Complex> amps_;
  std::vector<std::string> labels_;
};

// Square complex matrix, row-major.
class Matrix {
 public:
  explicit Matrix(std::size_t dim);
  Matrix(std::size_t dim, std::vector<Complex> entries);

  static Matrix identity(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  std::span<const Complex> entries() const noexcept { return entries_; }
  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }

  Matrix adjoint() const;
  Complex trace() const;

  // Largest entrywise modulus of (*this - other).
  double max_abs_diff(const Matrix& other) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);

 private:
  std::size_t dim_;
  std::vector<Complex> entries_;
};

bool is_unitary(const Matrix& m, double tol = kUnitaryEps);

class UnitaryMatrix {
 public:
  // Throws NotUnitary unless max |M^dagger M - I| <= tol.
  explicit UnitaryMatrix(Matrix m, double tol = kUnitaryEps);

  std::size_t dim() const noexcept { return m_.dim(); }
  const Matrix& matrix() const noexcept { return m_; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  friend UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b);

 private:
  struct Trusted {};
  UnitaryMatrix(Matrix m, Trusted) : m_(std::move(m)) {}
  Matrix m_;
};

// E = |s><s|.
class Projector {
 public:
  const Matrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return m_.dim(); }

  bool is_idempotent(double tol = kUnitaryEps) const;
  bool is_hermitian(double tol = kUnitaryEps) const;

 private:
  friend Projector projector_of(const StateVector& s);
  explicit Projector(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

struct Outcome {
  std::string label;
  double p = 0.0;

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

class Distribution {
 public:
  // Throws InvalidDistribution on negative or non-finite p, a total off
  // 1 by more than kNormEps, or an empty outcome list.
  explicit Distribution(std::vector<Outcome> outcomes);

  std::span<const Outcome> outcomes() const noexcept { return outcomes_; }
  std::size_t size() const noexcept { return outcomes_.size(); }
  const Outcome& operator[](std::size_t k) const { return outcomes_[k]; }

  // Probability of a label, 0 when absent.
  double p(std::string_view label) const;

 private:
  std::vector<Outcome> outcomes_;
};

enum class BellKind { PsiMinus, PsiPlus, PhiMinus, PhiPlus };

inline constexpr BellKind kBellKinds[] = {BellKind::PsiMinus, BellKind::PsiPlus,
                                          BellKind::PhiMinus, BellKind::PhiPlus};

// "psi-", "psi+", "phi-", "phi+".
std::string_view to_string(BellKind kind);

enum class GateName { X, H, I };

std::string_view to_string(GateName g);
// Throws UnknownGate.
GateName parse_gate(std::string_view name);

StateVector normalize(std::span<const Complex> raw_amps, std::vector<std::string> labels);

// <a|b>, conjugate-linear in a.
Complex inner_product(const StateVector& a, const StateVector& b);

// |<a|b>|; 1 means a and b are the same physical state.
double overlap(const StateVector& a, const StateVector& b);

// Equality up to a global phase.
bool same_ray(const StateVector& a, const StateVector& b, double tol = kNormEps);

Projector projector_of(const StateVector& s);

StateVector apply_unitary(const UnitaryMatrix& u, const StateVector& s);

UnitaryMatrix gate(GateName name);

// U = sum_i |to_i><from_i|.
UnitaryMatrix basis_change(std::span<const StateVector> from_basis,
                           std::span<const StateVector> to_basis);

Distribution born_distribution(const StateVector& s);

// Inverse-CDF draw: the first outcome with p > 0 whose running total reaches
// u, where u is uniform on (0, 1]. Falls back to the last outcome with p > 0
// when rounding leaves the final total just below u.
std::pair<std::string, SeededRng> sample_outcome(const Distribution& d, SeededRng rng);

// Index form of sample_outcome.
std::pair<std::size_t, SeededRng> sample_index(const Distribution& d, SeededRng rng);

// Left factor is the slower-varying index; labels are "a⊗b".
StateVector tensor(const StateVector& a, const StateVector& b);

// Occupancy basis of one note in storage order: |1_n> = (1,0), |0_n> = (0,1).
std::vector<std::string> mode_labels(const NoteLabel& n);

StateVector bell_state(BellKind kind, const NoteLabel& note_lo, const NoteLabel& note_hi);

// |a1 a4 - a2 a3| > kEntEps for a two-mode state with amplitudes a1..a4.
bool is_entangled(const StateVector& s);

bool is_complementary(const StateVector& a, const StateVector& b);

}  // namespace qmus
