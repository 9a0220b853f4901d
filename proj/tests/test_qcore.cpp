#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "qmus/error.hpp"
#include "qmus/qcore.hpp"
#include "support/generators.hpp"

using namespace qmus;
using qmus::testing::Gen;

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

StateVector cg(double c, double g) {
  const Complex amps[] = {c, g};
  return normalize(amps, {"c", "g"});
}

StateVector mode(Complex one, Complex zero, const char* note = "g") {
  const Complex amps[] = {one, zero};
  return normalize(amps, mode_labels(*NoteLabel::parse(note)));
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected qmus::Error");
  return ErrorCode::EmptyInput;
}

}  // namespace

TEST_SUITE("qcore") {
  TEST_CASE("normalize scales to unit norm") {
    const Complex raw[] = {4.0, 3.0};
    const auto s = normalize(raw, {"c", "g"});
    CHECK(s[0].real() == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(s[1].real() == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(std::abs(s.norm() - 1.0) < kNormEps);

    const Complex basis[] = {1.0, 0.0};
    const auto b = normalize(basis, {"c", "g"});
    CHECK(b[0] == Complex(1.0));
    CHECK(b[1] == Complex(0.0));

    const Complex four[] = {2.0, 0.0, 0.0, 2.0};
    const auto f = normalize(four, {"00", "01", "10", "11"});
    CHECK(std::abs(f[0] - kInvSqrt2) < 1e-15);
    CHECK(std::abs(f[3] - kInvSqrt2) < 1e-15);
    CHECK(f[1] == Complex(0.0));
  }

  TEST_CASE("normalize rejects zero vectors and bad labels") {
    const Complex zeros[] = {0.0, 1e-12};
    CHECK(code_of([&] { normalize(zeros, {"a", "b"}); }) == ErrorCode::ZeroVector);
    const Complex two[] = {1.0, 1.0};
    CHECK(code_of([&] { normalize(two, {"a"}); }) == ErrorCode::LabelMismatch);
    CHECK(code_of([&] { normalize(two, {"a", "a"}); }) == ErrorCode::LabelMismatch);
    CHECK(code_of([&] { normalize({}, {}); }) == ErrorCode::ZeroVector);
  }

  TEST_CASE("inner product") {
    const auto psi_c = StateVector::basis({"b", "c"}, 1);
    const auto psi_b = StateVector::basis({"b", "c"}, 0);
    CHECK(inner_product(psi_c, psi_c) == Complex(1.0));
    CHECK(inner_product(psi_c, psi_b) == Complex(0.0));

    // <psi1|X psi1> against a hand-written sum.
    const auto psi1 = cg(4, 3);
    const auto x_psi1 = apply_unitary(gate(GateName::X), psi1);
    const Complex expected = qmus::testing::brute_inner({0.8, 0.6}, {0.6, 0.8});
    CHECK(std::abs(expected - 24.0 / 25.0) < 1e-15);
    CHECK(std::abs(inner_product(psi1, x_psi1) - expected) < 1e-15);

    // Conjugation on the left argument.
    const Complex ia[] = {Complex(0, 1), 0.0};
    const auto i0 = normalize(ia, {"c", "g"});
    CHECK(std::abs(inner_product(i0, cg(1, 0)) - Complex(0, -1)) < 1e-15);
  }

  TEST_CASE("inner product requires a shared basis") {
    CHECK(code_of([] { inner_product(cg(1, 0), StateVector::basis({"c", "d"}, 0)); }) ==
          ErrorCode::BasisMismatch);
    CHECK(code_of([] { inner_product(cg(1, 0), StateVector::basis({"c", "g", "e"}, 0)); }) ==
          ErrorCode::BasisMismatch);
  }

  TEST_CASE("projector of a state") {
    const auto p = projector_of(StateVector::basis(qmus::testing::numbered_labels(7), 6));
    for (std::size_t r = 0; r < 7; ++r)
      for (std::size_t c = 0; c < 7; ++c)
        CHECK(p.matrix()(r, c) == Complex(r == 6 && c == 6 ? 1.0 : 0.0));

    // [[16/25, 12/25], [12/25, 9/25]] by hand.
    const auto q = projector_of(cg(4, 3));
    CHECK(std::abs(q.matrix()(0, 0) - 16.0 / 25) < 1e-15);
    CHECK(std::abs(q.matrix()(0, 1) - 12.0 / 25) < 1e-15);
    CHECK(std::abs(q.matrix()(1, 0) - 12.0 / 25) < 1e-15);
    CHECK(std::abs(q.matrix()(1, 1) - 9.0 / 25) < 1e-15);
    CHECK(std::abs(q.matrix().trace() - 1.0) < kUnitaryEps);
  }

  TEST_CASE("projector laws on random states") {
    Gen g(11);
    for (int i = 0; i < 300; ++i) {
      const auto s = qmus::testing::random_state(g, 1 + g.below(kMaxDim));
      const auto p = projector_of(s);
      CHECK(p.is_idempotent());
      CHECK(p.is_hermitian());
      CHECK(std::abs(p.matrix().trace() - 1.0) < kUnitaryEps);
    }
  }

  TEST_CASE("gates as printed") {
    const auto x = gate(GateName::X);
    CHECK(x(0, 0) == Complex(0.0));
    CHECK(x(0, 1) == Complex(1.0));
    CHECK(x(1, 0) == Complex(1.0));
    CHECK(x(1, 1) == Complex(0.0));
    CHECK((x * x).matrix().max_abs_diff(Matrix::identity(2)) == 0.0);

    const auto h = gate(GateName::H);
    CHECK(std::abs(h(1, 1) + kInvSqrt2) < 1e-15);
    CHECK(is_unitary(h.matrix()));
    CHECK((h * h).matrix().max_abs_diff(Matrix::identity(2)) <= kUnitaryEps);

    CHECK(gate(GateName::I).matrix().max_abs_diff(Matrix::identity(2)) == 0.0);
    CHECK(code_of([] { parse_gate("Y"); }) == ErrorCode::UnknownGate);
    CHECK(parse_gate("H") == GateName::H);
  }

  TEST_CASE("apply_unitary") {
    const auto psi2 = apply_unitary(gate(GateName::X), cg(4, 3));
    CHECK(std::abs(psi2[0] - 0.6) < 1e-15);
    CHECK(std::abs(psi2[1] - 0.8) < 1e-15);
    CHECK(psi2.labels()[0] == "c");

    const auto s = cg(1, 2);
    const auto same = apply_unitary(gate(GateName::I), s);
    CHECK(inner_product(s, same) == inner_product(s, s));

    const auto hh = apply_unitary(gate(GateName::H), apply_unitary(gate(GateName::H), s));
    CHECK(std::abs(hh[0] - s[0]) < kNormEps);
    CHECK(std::abs(hh[1] - s[1]) < kNormEps);

    CHECK(code_of([] {
            apply_unitary(gate(GateName::X), StateVector::basis({"a", "b", "c"}, 0));
          }) == ErrorCode::DimensionMismatch);
    CHECK(code_of([] { UnitaryMatrix(Matrix(2, {1.0, 0.0, 0.0, 2.0})); }) ==
          ErrorCode::NotUnitary);
  }

  TEST_CASE("Hadamard on the vacuum, occupied-first layout") {
    // |0_g> = (0, 1); H|0_g> = (1/sqrt2)(1, -1) = -(1/sqrt2)(|0_g> - |1_g>).
    const auto vac = mode(0.0, 1.0);
    const auto out = apply_unitary(gate(GateName::H), vac);
    CHECK(std::abs(out[0] - kInvSqrt2) < 1e-15);
    CHECK(std::abs(out[1] + kInvSqrt2) < 1e-15);
    const auto target = mode(-kInvSqrt2, kInvSqrt2);
    CHECK(std::abs(inner_product(target, out) + 1.0) < 1e-12);  // global phase -1
    CHECK(same_ray(out, target, 1e-12));
  }

  TEST_CASE("is_unitary") {
    CHECK(is_unitary(gate(GateName::X).matrix()));
    CHECK_FALSE(is_unitary(Matrix(2, {1.0, 0.0, 0.0, 2.0})));
    CHECK_FALSE(is_unitary(Matrix(2, {1.0, 1.0, 0.0, 1.0})));
    CHECK(is_unitary(Matrix(1, {Complex(0, 1)})));
    CHECK_FALSE(is_unitary(Matrix(1, {std::nan("")})));
  }

  TEST_CASE("basis_change onto the retuned basis") {
    const auto zero = mode(0.0, 1.0);
    const auto one = mode(1.0, 0.0);
    const auto zero_p = mode(kInvSqrt2, kInvSqrt2);    // (|0> + |1>)/sqrt2
    const auto one_p = mode(-kInvSqrt2, kInvSqrt2);    // (|0> - |1>)/sqrt2
    const StateVector from[] = {zero, one};
    const auto h = gate(GateName::H);

    auto columns_match_up_to_phase = [](const Matrix& a, const Matrix& b, bool swapped) {
      for (std::size_t c = 0; c < 2; ++c) {
        const std::size_t bc = swapped ? 1 - c : c;
        const Complex ip = std::conj(a(0, c)) * b(0, bc) + std::conj(a(1, c)) * b(1, bc);
        if (std::abs(std::abs(ip) - 1.0) > 1e-12) return false;
      }
      return true;
    };

    // |0> -> |1'>, |1> -> |0'> is what H does in this layout.
    const StateVector to_h[] = {one_p, zero_p};
    const auto u_h = basis_change(from, to_h);
    CHECK(columns_match_up_to_phase(u_h.matrix(), h.matrix(), false));

    // |0> -> |0'>, |1> -> |1'> is H with its columns swapped.
    const StateVector to_retuned[] = {zero_p, one_p};
    const auto u = basis_change(from, to_retuned);
    CHECK(columns_match_up_to_phase(u.matrix(), h.matrix(), true));
    CHECK(same_ray(apply_unitary(u, zero), zero_p, 1e-12));
    CHECK(same_ray(apply_unitary(u, one), one_p, 1e-12));
  }

  TEST_CASE("basis_change identity and complex targets") {
    const StateVector std2[] = {StateVector::basis({"0", "1"}, 0), StateVector::basis({"0", "1"}, 1)};
    CHECK(basis_change(std2, std2).matrix().max_abs_diff(Matrix::identity(2)) <= kUnitaryEps);

    const Complex a[] = {kInvSqrt2, Complex(0, kInvSqrt2)};
    const Complex b[] = {kInvSqrt2, Complex(0, -kInvSqrt2)};
    const StateVector circ[] = {normalize(a, {"0", "1"}), normalize(b, {"0", "1"})};
    const auto u = basis_change(std2, circ);
    CHECK(is_unitary(u.matrix()));
    CHECK(same_ray(apply_unitary(u, std2[1]), circ[1], 1e-12));
  }

  TEST_CASE("basis_change rejects bad bases") {
    const StateVector std2[] = {StateVector::basis({"0", "1"}, 0), StateVector::basis({"0", "1"}, 1)};
    const StateVector skew[] = {StateVector::basis({"0", "1"}, 0), normalize(std::vector<Complex>{1.0, 1.0}, {"0", "1"})};
    CHECK(code_of([&] { basis_change(std2, skew); }) == ErrorCode::NotOrthonormal);
    const StateVector one[] = {StateVector::basis({"0", "1"}, 0)};
    CHECK(code_of([&] { basis_change(std2, one); }) == ErrorCode::DimensionMismatch);
  }

  TEST_CASE("basis_change of random orthonormal bases is unitary") {
    Gen g(5);
    for (int i = 0; i < 100; ++i) {
      const std::size_t n = 1 + g.below(8);
      std::vector<StateVector> from, to;
      for (const auto& c : qmus::testing::random_orthonormal_columns(g, n))
        from.push_back(normalize(c, qmus::testing::numbered_labels(n)));
      for (const auto& c : qmus::testing::random_orthonormal_columns(g, n))
        to.push_back(normalize(c, qmus::testing::numbered_labels(n)));
      const auto u = basis_change(from, to);
      CHECK(is_unitary(u.matrix()));
      for (std::size_t k = 0; k < n; ++k) CHECK(same_ray(apply_unitary(u, from[k]), to[k], 1e-9));
    }
  }

  TEST_CASE("born distribution") {
    const auto d = born_distribution(cg(4, 3));
    REQUIRE(d.size() == 2);
    CHECK(d[0].label == "c");
    CHECK(std::abs(d[0].p - 0.64) < 1e-12);
    CHECK(std::abs(d[1].p - 0.36) < 1e-12);

    const auto point = born_distribution(StateVector::basis({"b", "a", "g", "f", "e", "d", "c"}, 6));
    CHECK(point.p("c") == 1.0);
    CHECK(point.p("b") == 0.0);

    const auto half = born_distribution(mode(-kInvSqrt2, kInvSqrt2));
    CHECK(std::abs(half.p("0_g") - 0.5) < 1e-15);
    CHECK(std::abs(half.p("1_g") - 0.5) < 1e-15);
  }

  TEST_CASE("Distribution validates its invariants") {
    CHECK(code_of([] { Distribution({{"a", 0.5}, {"b", 0.4}}); }) == ErrorCode::InvalidDistribution);
    CHECK(code_of([] { Distribution({{"a", 1.5}, {"b", -0.5}}); }) == ErrorCode::InvalidDistribution);
    CHECK(code_of([] { Distribution({}); }) == ErrorCode::InvalidDistribution);
  }

  TEST_CASE("sample_outcome") {
    const Distribution point({{"c", 1.0}});
    SeededRng rng(7);
    for (int i = 0; i < 100; ++i) {
      auto [label, next] = sample_outcome(point, rng);
      CHECK(label == "c");
      CHECK(next != rng);
      rng = next;
    }

    const Distribution d({{"c", 0.64}, {"g", 0.36}});
    auto run = [&](std::uint64_t seed) {
      std::vector<std::string> seq;
      SeededRng r(seed);
      for (int i = 0; i < 50; ++i) {
        auto [label, next] = sample_outcome(d, r);
        seq.push_back(label);
        r = next;
      }
      return seq;
    };
    CHECK(run(3) == run(3));
    CHECK(run(3) != run(4));

    // 3 sigma = 3 sqrt(0.64 * 0.36 / 1e5) ~ 0.0046 < 0.005
    SeededRng r(2024);
    int hits = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
      auto [label, next] = sample_outcome(d, r);
      hits += label == "c";
      r = next;
    }
    CHECK(std::abs(hits / double(n) - 0.64) <= 0.005);
  }

  TEST_CASE("sampling never returns a zero-probability outcome") {
    const Distribution d({{"both", 0.0}, {"e", 0.5}, {"a", 0.5}, {"none", 0.0}});
    SeededRng r(1);
    for (int i = 0; i < 20000; ++i) {
      auto [label, next] = sample_outcome(d, r);
      CHECK((label == "e" || label == "a"));
      r = next;
    }
  }

  TEST_CASE("tensor") {
    const auto e0 = StateVector::basis(mode_labels(*NoteLabel::parse("e")), 1);
    const auto a1 = StateVector::basis(mode_labels(*NoteLabel::parse("a")), 0);
    const auto prod = tensor(e0, a1);
    REQUIRE(prod.dim() == 4);
    CHECK(prod.labels()[2] == "0_e⊗1_a");
    CHECK(prod[2] == Complex(1.0));
    CHECK(std::abs(prod.norm() - 1.0) < kNormEps);

    const auto plus = normalize(std::vector<Complex>{1.0, 1.0}, {"0", "1"});
    const auto zero = StateVector::basis({"0", "1"}, 0);
    const auto p0 = tensor(plus, zero);
    CHECK(std::abs(p0[0] - kInvSqrt2) < 1e-15);  // |00>
    CHECK(std::abs(p0[2] - kInvSqrt2) < 1e-15);  // |10>
    CHECK_FALSE(is_entangled(p0));

    const auto x = normalize(std::vector<Complex>{1.0, 1.0}, {"x⊗y", "x"});
    const auto y = normalize(std::vector<Complex>{1.0, 1.0}, {"z", "y⊗z"});
    CHECK(code_of([&] { tensor(x, y); }) == ErrorCode::LabelCollision);
  }

  TEST_CASE("tensor of random states stays normalized") {
    Gen g(17);
    for (int i = 0; i < 200; ++i) {
      const auto a = qmus::testing::random_state(g, 1 + g.below(4));
      auto b_labels = qmus::testing::numbered_labels(1 + g.below(4));
      for (auto& l : b_labels) l = "b" + l;
      const auto b = normalize(qmus::testing::random_state(g, b_labels.size()).amps(), b_labels);
      CHECK(std::abs(tensor(a, b).norm() - 1.0) < kNormEps);
    }
  }

  TEST_CASE("Bell states") {
    const auto e = *NoteLabel::parse("e");
    const auto a = *NoteLabel::parse("a");
    const auto psi_minus = bell_state(BellKind::PsiMinus, e, a);
    // (1/sqrt2)(|0_e 1_a> - |1_e 0_a>)
    CHECK(std::abs(psi_minus[psi_minus.index_of("0_e⊗1_a")] - kInvSqrt2) < 1e-15);
    CHECK(std::abs(psi_minus[psi_minus.index_of("1_e⊗0_a")] + kInvSqrt2) < 1e-15);
    CHECK(psi_minus[psi_minus.index_of("0_e⊗0_a")] == Complex(0.0));

    CHECK(std::abs(inner_product(bell_state(BellKind::PsiPlus, e, a),
                                 bell_state(BellKind::PhiMinus, e, a))) < 1e-15);

    const auto a_primed = *NoteLabel::parse("a'");
    const auto phi_plus = bell_state(BellKind::PhiPlus, e, a_primed);
    CHECK(std::abs(phi_plus[phi_plus.index_of("0_e⊗0_a'")] - kInvSqrt2) < 1e-15);
    CHECK(std::abs(phi_plus[phi_plus.index_of("1_e⊗1_a'")] - kInvSqrt2) < 1e-15);

    for (BellKind k : kBellKinds) {
      CHECK(is_entangled(bell_state(k, e, a)));
      for (BellKind j : kBellKinds) {
        const Complex ip = inner_product(bell_state(k, e, a), bell_state(j, e, a));
        CHECK(std::abs(ip - (k == j ? 1.0 : 0.0)) < kNormEps);
      }
    }
    CHECK(code_of([&] { bell_state(BellKind::PsiMinus, e, e); }) == ErrorCode::SameNote);
  }

  TEST_CASE("is_entangled") {
    const auto zero = StateVector::basis({"0", "1"}, 0);
    CHECK_FALSE(is_entangled(tensor(zero, zero)));
    CHECK(code_of([&] { is_entangled(zero); }) == ErrorCode::WrongDimension);
  }

  TEST_CASE("is_entangled agrees with the Schmidt-rank oracle") {
    Gen g(99);
    int checked = 0;
    for (int i = 0; i < 1000; ++i) {
      StateVector s = qmus::testing::random_state(g, 4);
      if (i % 4 == 0) {
        // Near-product states exercise the small-determinant side.
        const auto a = qmus::testing::random_state(g, 2);
        const auto b = qmus::testing::random_state(g, 2);
        std::vector<Complex> amps;
        for (std::size_t x = 0; x < 2; ++x)
          for (std::size_t y = 0; y < 2; ++y)
            amps.push_back(a[x] * b[y] + (i % 8 == 0 ? Complex(1e-6 * g.gaussian()) : 0.0));
        s = normalize(amps, qmus::testing::numbered_labels(4));
      }
      const double det = std::abs(s[0] * s[3] - s[1] * s[2]);
      if (det < kEntEps) continue;
      ++checked;
      CHECK(is_entangled(s) == qmus::testing::schmidt_rank_two(s.amps(), kEntEps));
    }
    CHECK(checked > 700);
  }

  TEST_CASE("is_complementary") {
    const auto c = StateVector::basis({"c", "d"}, 0);
    const auto d = StateVector::basis({"c", "d"}, 1);
    CHECK_FALSE(is_complementary(c, d));
    CHECK_FALSE(is_complementary(c, c));
    const auto vac = mode(0.0, 1.0);
    const auto gray = mode(-kInvSqrt2, kInvSqrt2);
    CHECK(std::abs(overlap(vac, gray) - kInvSqrt2) < 1e-15);
    CHECK(is_complementary(vac, gray));
    // Complex overlap: modulus, not real part.
    const auto phased = mode(Complex(0, kInvSqrt2), kInvSqrt2);
    CHECK(std::abs(inner_product(gray, phased).real()) < 1.0);
    CHECK(is_complementary(gray, phased));
    CHECK(code_of([&] { is_complementary(c, vac); }) == ErrorCode::BasisMismatch);
  }

  TEST_CASE("unitaries preserve the norm") {
    Gen g(42);
    for (int i = 0; i < 1000; ++i) {
      const std::size_t n = 1 + g.below(kMaxDim);
      const UnitaryMatrix u(qmus::testing::random_unitary_matrix(g, n));
      const auto s = qmus::testing::random_state(g, n);
      CHECK(std::abs(apply_unitary(u, s).norm() - 1.0) < kNormEps);
    }
  }
}
