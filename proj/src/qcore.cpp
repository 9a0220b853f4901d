#include "qmus/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "qmus/error.hpp"

namespace qmus {

struct StateAccess {
  static StateVector make(std::vector<Complex> amps, std::vector<std::string> labels) {
    return StateVector(std::move(amps), std::move(labels));
  }
};

namespace {

void require_distinct(const std::vector<std::string>& labels, ErrorCode code) {
  std::set<std::string_view> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second) throw Error(code, "repeated basis label '" + l + "'");
}

void require_same_basis(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim())
    throw Error(ErrorCode::BasisMismatch, "dimensions " + std::to_string(a.dim()) + " and " +
                                              std::to_string(b.dim()) + " differ");
  if (!std::equal(a.labels().begin(), a.labels().end(), b.labels().begin()))
    throw Error(ErrorCode::BasisMismatch, "basis labels differ");
}

double norm_squared(std::span<const Complex> v) {
  double n = 0.0;
  for (const auto& z : v) n += std::norm(z);
  return n;
}

}  // namespace

// ---------------------------------------------------------------------------
// StateVector

std::size_t StateVector::index_of(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  return static_cast<std::size_t>(it - labels_.begin());
}

StateVector StateVector::basis(std::vector<std::string> labels, std::size_t k) {
  if (k >= labels.size())
    throw Error(ErrorCode::DimensionMismatch, "basis index " + std::to_string(k) + " out of range");
  std::vector<Complex> amps(labels.size());
  amps[k] = 1.0;
  return normalize(amps, std::move(labels));
}

double StateVector::norm() const { return std::sqrt(norm_squared(amps_)); }

StateVector normalize(std::span<const Complex> raw_amps, std::vector<std::string> labels) {
  if (raw_amps.size() != labels.size())
    throw Error(ErrorCode::LabelMismatch, std::to_string(raw_amps.size()) + " amplitudes for " +
                                              std::to_string(labels.size()) + " labels");
  if (raw_amps.empty()) throw Error(ErrorCode::ZeroVector, "empty amplitude list");
  if (raw_amps.size() > kMaxDim)
    throw Error(ErrorCode::DimensionMismatch, "dimension exceeds " + std::to_string(kMaxDim));
  require_distinct(labels, ErrorCode::LabelMismatch);
  for (const auto& z : raw_amps)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw Error(ErrorCode::ZeroVector, "non-finite amplitude");
  if (std::none_of(raw_amps.begin(), raw_amps.end(),
                   [](const Complex& z) { return std::abs(z) >= kNormEps; }))
    throw Error(ErrorCode::ZeroVector, "all amplitudes vanish");

  const double n = std::sqrt(norm_squared(raw_amps));
  std::vector<Complex> amps(raw_amps.begin(), raw_amps.end());
  for (auto& z : amps) z /= n;
  return StateAccess::make(std::move(amps), std::move(labels));
}

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

Matrix::Matrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (entries_.size() != dim_ * dim_)
    throw Error(ErrorCode::DimensionMismatch, "matrix needs " + std::to_string(dim_ * dim_) +
                                                  " entries, got " +
                                                  std::to_string(entries_.size()));
}

Matrix Matrix::identity(std::size_t dim) {
  Matrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix m(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
  return m;
}

Complex Matrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double Matrix::max_abs_diff(const Matrix& other) const {
  if (other.dim_ != dim_) throw Error(ErrorCode::DimensionMismatch, "matrix dimensions differ");
  double worst = 0.0;
  for (std::size_t k = 0; k < entries_.size(); ++k)
    worst = std::max(worst, std::abs(entries_[k] - other.entries_[k]));
  return worst;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.dim_ != b.dim_) throw Error(ErrorCode::DimensionMismatch, "matrix dimensions differ");
  const std::size_t n = a.dim_;
  Matrix m(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex x = a(r, k);
      for (std::size_t c = 0; c < n; ++c) m(r, c) += x * b(k, c);
    }
  return m;
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.dim() == 0) return false;
  for (const auto& z : m.entries())
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return (m.adjoint() * m).max_abs_diff(Matrix::identity(m.dim())) <= tol;
}

// ---------------------------------------------------------------------------
// UnitaryMatrix

UnitaryMatrix::UnitaryMatrix(Matrix m, double tol) : m_(std::move(m)) {
  if (!is_unitary(m_, tol)) throw Error(ErrorCode::NotUnitary, "U^dagger U deviates from I");
}

UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  return UnitaryMatrix(a.m_ * b.m_, UnitaryMatrix::Trusted{});
}

// ---------------------------------------------------------------------------
// Projector

bool Projector::is_idempotent(double tol) const { return (m_ * m_).max_abs_diff(m_) <= tol; }

bool Projector::is_hermitian(double tol) const { return m_.adjoint().max_abs_diff(m_) <= tol; }

Projector projector_of(const StateVector& s) {
  const std::size_t n = s.dim();
  Matrix m(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = s[r] * std::conj(s[c]);
  return Projector(std::move(m));
}

// ---------------------------------------------------------------------------
// Distribution

Distribution::Distribution(std::vector<Outcome> outcomes) : outcomes_(std::move(outcomes)) {
  if (outcomes_.empty()) throw Error(ErrorCode::InvalidDistribution, "no outcomes");
  double total = 0.0;
  for (const auto& o : outcomes_) {
    if (!std::isfinite(o.p) || o.p < 0.0 || o.p > 1.0 + kNormEps)
      throw Error(ErrorCode::InvalidDistribution, "bad probability for '" + o.label + "'");
    total += o.p;
  }
  if (std::abs(total - 1.0) > kNormEps)
    throw Error(ErrorCode::InvalidDistribution, "probabilities sum to " + std::to_string(total));
}

double Distribution::p(std::string_view label) const {
  for (const auto& o : outcomes_)
    if (o.label == label) return o.p;
  return 0.0;
}

// ---------------------------------------------------------------------------
// Names

std::string_view to_string(BellKind kind) {
  switch (kind) {
    case BellKind::PsiMinus: return "psi-";
    case BellKind::PsiPlus: return "psi+";
    case BellKind::PhiMinus: return "phi-";
    case BellKind::PhiPlus: return "phi+";
  }
  return "?";
}

std::string_view to_string(GateName g) {
  switch (g) {
    case GateName::X: return "X";
    case GateName::H: return "H";
    case GateName::I: return "I";
  }
  return "?";
}

GateName parse_gate(std::string_view name) {
  if (name == "X") return GateName::X;
  if (name == "H") return GateName::H;
  if (name == "I") return GateName::I;
  throw Error(ErrorCode::UnknownGate, "unknown gate '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Operations

Complex inner_product(const StateVector& a, const StateVector& b) {
  require_same_basis(a, b);
  Complex sum = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k) sum += std::conj(a[k]) * b[k];
  return sum;
}

double overlap(const StateVector& a, const StateVector& b) {
  return std::abs(inner_product(a, b));
}

bool same_ray(const StateVector& a, const StateVector& b, double tol) {
  return overlap(a, b) >= 1.0 - tol;
}

StateVector apply_unitary(const UnitaryMatrix& u, const StateVector& s) {
  if (u.dim() != s.dim())
    throw Error(ErrorCode::DimensionMismatch, "unitary of dimension " + std::to_string(u.dim()) +
                                                  " applied to state of dimension " +
                                                  std::to_string(s.dim()));
  std::vector<Complex> out(s.dim());
  for (std::size_t r = 0; r < s.dim(); ++r)
    for (std::size_t c = 0; c < s.dim(); ++c) out[r] += u(r, c) * s[c];
  return StateAccess::make(std::move(out), {s.labels().begin(), s.labels().end()});
}

UnitaryMatrix gate(GateName name) {
  switch (name) {
    case GateName::X:
      return UnitaryMatrix(Matrix(2, {0.0, 1.0, 1.0, 0.0}));
    case GateName::H: {
      const double h = std::numbers::sqrt2 / 2.0;
      return UnitaryMatrix(Matrix(2, {h, h, h, -h}));
    }
    case GateName::I:
      return UnitaryMatrix(Matrix::identity(2));
  }
  throw Error(ErrorCode::UnknownGate, "unknown gate");
}

UnitaryMatrix basis_change(std::span<const StateVector> from_basis,
                           std::span<const StateVector> to_basis) {
  if (from_basis.empty() || from_basis.size() != to_basis.size())
    throw Error(ErrorCode::DimensionMismatch, "bases have different sizes");
  const std::size_t n = from_basis.size();

  auto check = [n](std::span<const StateVector> b, const char* which) {
    for (const auto& v : b)
      if (v.dim() != n)
        throw Error(ErrorCode::DimensionMismatch,
                    std::string(which) + " basis vector has the wrong dimension");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        const Complex ip = inner_product(b[i], b[j]);
        const double expect = i == j ? 1.0 : 0.0;
        if (std::abs(ip - expect) > kUnitaryEps)
          throw Error(ErrorCode::NotOrthonormal, std::string(which) + " basis is not orthonormal");
      }
  };
  check(from_basis, "source");
  check(to_basis, "target");

  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        m(r, c) += to_basis[i][r] * std::conj(from_basis[i][c]);
  return UnitaryMatrix(std::move(m));
}

Distribution born_distribution(const StateVector& s) {
  std::vector<Outcome> out;
  out.reserve(s.dim());
  for (std::size_t k = 0; k < s.dim(); ++k) out.push_back({s.labels()[k], std::norm(s[k])});
  return Distribution(std::move(out));
}

std::pair<std::size_t, SeededRng> sample_index(const Distribution& d, SeededRng rng) {
  const double u = rng.next_unit();
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (d[k].p <= 0.0) continue;
    last_positive = k;
    cumulative += d[k].p;
    if (cumulative >= u) return {k, rng};
  }
  return {last_positive, rng};
}

std::pair<std::string, SeededRng> sample_outcome(const Distribution& d, SeededRng rng) {
  auto [k, next] = sample_index(d, rng);
  return {d[k].label, next};
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  if (a.dim() * b.dim() > kMaxDim)
    throw Error(ErrorCode::DimensionMismatch, "tensor product exceeds dimension " +
                                                  std::to_string(kMaxDim));
  std::vector<Complex> amps;
  std::vector<std::string> labels;
  amps.reserve(a.dim() * b.dim());
  labels.reserve(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) {
      amps.push_back(a[i] * b[j]);
      labels.push_back(a.labels()[i] + "⊗" + b.labels()[j]);
    }
  require_distinct(labels, ErrorCode::LabelCollision);
  return StateAccess::make(std::move(amps), std::move(labels));
}

std::vector<std::string> mode_labels(const NoteLabel& n) {
  const std::string s = n.to_string();
  return {"1_" + s, "0_" + s};
}

StateVector bell_state(BellKind kind, const NoteLabel& note_lo, const NoteLabel& note_hi) {
  if (note_lo == note_hi)
    throw Error(ErrorCode::SameNote, "Bell pair needs two distinct notes, got " +
                                         note_lo.to_string() + " twice");
  const auto zero = [](const NoteLabel& n) { return StateVector::basis(mode_labels(n), 1); };
  const auto one = [](const NoteLabel& n) { return StateVector::basis(mode_labels(n), 0); };

  // (1/sqrt2)(|x_lo>|y_hi> +- |x'_lo>|y'_hi>)
  const bool psi = kind == BellKind::PsiMinus || kind == BellKind::PsiPlus;
  const double sign = (kind == BellKind::PsiMinus || kind == BellKind::PhiMinus) ? -1.0 : 1.0;
  const StateVector first = tensor(zero(note_lo), psi ? one(note_hi) : zero(note_hi));
  const StateVector second = tensor(one(note_lo), psi ? zero(note_hi) : one(note_hi));

  std::vector<Complex> amps(first.dim());
  for (std::size_t k = 0; k < amps.size(); ++k) amps[k] = first[k] + sign * second[k];
  return normalize(amps, {first.labels().begin(), first.labels().end()});
}

bool is_entangled(const StateVector& s) {
  if (s.dim() != 4)
    throw Error(ErrorCode::WrongDimension,
                "entanglement test needs a two-mode state of dimension 4, got " +
                    std::to_string(s.dim()));
  return std::abs(s[0] * s[3] - s[1] * s[2]) > kEntEps;
}

bool is_complementary(const StateVector& a, const StateVector& b) {
  const double m = overlap(a, b);
  return m > kEntEps && m < 1.0 - kEntEps;
}

}  // namespace qmus
