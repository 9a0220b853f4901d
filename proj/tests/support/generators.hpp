#pragma once

// Deterministic random generators and brute-force oracles shared by the unit
// and acceptance suites. Everything here is independent of the code under
// test except for the public constructors it feeds.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qmus/qcore.hpp"
#include "qmus/rng.hpp"
#include "qmus/score.hpp"

namespace qmus::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform() { return rng_.next_unit(); }                 // (0, 1]
  double uniform(double lo, double hi) { return lo + (hi - lo) * (1.0 - uniform()); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng_.next() % n); }
  bool coin() { return (rng_.next() & 1) != 0; }
  double gaussian();
  Complex complex_gaussian() { return {gaussian(), gaussian()}; }
  std::uint64_t bits() { return rng_.next(); }

 private:
  SeededRng rng_;
};

std::vector<std::string> numbered_labels(std::size_t n);

// Unit vector with complex Gaussian components.
StateVector random_state(Gen& g, std::size_t dim);

// Columns of a random unitary, built by Gram-Schmidt.
std::vector<std::vector<Complex>> random_orthonormal_columns(Gen& g, std::size_t dim);
Matrix random_unitary_matrix(Gen& g, std::size_t dim);

// sum_k conj(a_k) b_k written out directly.
Complex brute_inner(const std::vector<Complex>& a, const std::vector<Complex>& b);

// Singular values of the 2x2 amplitude matrix [[a0, a1], [a2, a3]] from the
// eigenvalues of M^dagger M; returns {sigma_max, sigma_min}.
std::pair<double, double> schmidt_coefficients(std::span<const Complex> amps);

// Schmidt rank 2 with smallest singular value above tol.
bool schmidt_rank_two(std::span<const Complex> amps, double tol);

// Random valid score (validate() returns nothing for it).
score::ScoreAST random_score(Gen& g);

// Random bytes biased toward the score alphabet.
std::string random_source(Gen& g, std::size_t max_len);

}  // namespace qmus::testing
