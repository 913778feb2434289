#include <doctest.h>

#include <cmath>
#include <complex>

#include "cglmp/core_model.hpp"
#include "cglmp/phase_rules.hpp"
#include "test_support.hpp"

using namespace cglmp;
using cglmp::test::kPi;

TEST_CASE("dimension rejects d < 2") {
  CHECK_THROWS_AS(Dimension(1), InvalidDimension);
  CHECK_THROWS_AS(Dimension(0), InvalidDimension);
  CHECK(Dimension(5).spin() == 2.0);
}

TEST_CASE("classical bounds") {
  auto b2 = classical_bounds(Dimension(2));
  CHECK(b2.lower == -2.0);
  CHECK(b2.upper == 2.0);
  CHECK(classical_bounds(Dimension(3)).lower == -4.0);
  CHECK(classical_bounds(Dimension(5)).lower == -3.0);
  CHECK(classical_bounds(Dimension(5)).upper == 2.0);
}

TEST_CASE("correlation eigenvalues") {
  const Dimension d3(3);
  CHECK(correlation_eigenvalue(1, 1, 0, 0, d3) == 1.0);
  CHECK(correlation_eigenvalue(1, 2, 1, 1, d3) == 0.0);  // -(2) mod 3 = 1
  CHECK(correlation_eigenvalue(2, 1, 2, 2, d3) == 0.0);  // 4 mod 3 = 1
  CHECK(correlation_eigenvalue(1, 2, 0, 1, d3) == -1.0);  // -1 mod 3 = 2
  CHECK_THROWS_AS(correlation_eigenvalue(1, 1, 3, 0, d3), InvalidArgument);
  CHECK_THROWS_AS(correlation_eigenvalue(1, 1, 0, -1, d3), InvalidArgument);
  CHECK_THROWS_AS(correlation_eigenvalue(0, 1, 0, 0, d3), InvalidArgument);

  SUBCASE("values stay in [S - (d-1), S] and sum to zero") {
    for (std::int64_t dv = 2; dv <= 50; ++dv) {
      const Dimension d(dv);
      for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) {
          double total = 0.0;
          for (std::int64_t m = 0; m < dv; ++m)
            for (std::int64_t n = 0; n < dv; ++n) {
              const double f = correlation_eigenvalue(i, j, m, n, d);
              CHECK(f <= d.spin());
              CHECK(f >= d.spin() - static_cast<double>(dv - 1));
              total += f;
            }
          CHECK(total == 0.0);
        }
    }
  }
}

TEST_CASE("Schmidt state validation") {
  CHECK_THROWS_AS(SchmidtState({1.0, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(SchmidtState({1.0}), InvalidDimension);
  CHECK_THROWS_AS(SchmidtState::normalized({0.0, 0.0}), InvalidArgument);
  const auto s = SchmidtState::normalized({0.0, -3.0, 4.0});
  CHECK(s[1] == doctest::Approx(-0.6));
  const auto c = s.canonical();
  CHECK(c[1] == doctest::Approx(0.6));
  CHECK(c[2] == doctest::Approx(-0.8));
}

TEST_CASE("phase settings and noise validation") {
  PhaseSettings p = PhaseSettings::zeros(Dimension(3));
  p.vphi2.pop_back();
  CHECK_THROWS_AS(p.validate(Dimension(3)), InvalidDimension);
  CHECK_THROWS_AS(NoiseModel(-0.1), InvalidArgument);
  CHECK_THROWS_AS(NoiseModel(1.5), InvalidArgument);
  CHECK_NOTHROW(NoiseModel(1.0));
}

TEST_CASE("joint probability special states") {
  for (std::int64_t dv = 2; dv <= 5; ++dv) {
    const Dimension d(dv);
    const auto me = SchmidtState::maximally_entangled(d);
    const auto zero = PhaseSettings::zeros(d);
    for (std::int64_t k = 0; k < dv; ++k)
      for (std::int64_t l = 0; l < dv; ++l) {
        const double expected = k == l ? 1.0 / static_cast<double>(dv) : 0.0;
        CHECK(joint_probability(me, zero, 1, 1, k, l) == doctest::Approx(expected).epsilon(1e-12));
      }
    std::mt19937_64 rng(static_cast<std::uint64_t>(dv));
    const auto p = test::random_phases(d, rng);
    const auto prod = SchmidtState::product(d);
    for (std::int64_t k = 0; k < dv; ++k)
      for (std::int64_t l = 0; l < dv; ++l)
        CHECK(joint_probability(prod, p, 2, 1, k, l) ==
              doctest::Approx(1.0 / static_cast<double>(dv * dv)));
  }
}

TEST_CASE("joint probability matches complex amplitudes") {
  std::mt19937_64 rng(7);
  for (std::int64_t dv = 2; dv <= 7; ++dv) {
    const Dimension d(dv);
    const auto s = test::random_state(d, rng);
    const auto p = test::random_phases(d, rng);
    for (int a = 1; a <= 2; ++a)
      for (int b = 1; b <= 2; ++b)
        for (std::int64_t k = 0; k < dv; ++k)
          for (std::int64_t l = 0; l < dv; ++l)
            CHECK(std::abs(joint_probability(s, p, a, b, k, l) -
                           test::amplitude_probability(s, p.alice(a), p.bob(b), k, l)) < 1e-13);
  }
}

TEST_CASE("probability normalization, nonnegativity and Q range") {
  std::mt19937_64 rng(11);
  for (std::int64_t dv = 2; dv <= 12; ++dv) {
    const Dimension d(dv);
    for (int trial = 0; trial < 5; ++trial) {
      const auto s = test::random_state(d, rng);
      const auto p = test::random_phases(d, rng);
      for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b) {
          const auto table = joint_distribution(s, p, a, b);
          double total = 0.0;
          for (double x : table) {
            CHECK(x >= -1e-12);
            total += x;
          }
          CHECK(std::abs(total - 1.0) < 1e-10);
        }
      for (double q : correlators(s, p)) {
        CHECK(q <= 1.0 + 1e-10);
        CHECK(q >= -1.0 - 1e-10);
      }
    }
  }
}

TEST_CASE("Bell value anchors") {
  const Dimension d2(2);
  const auto me2 = SchmidtState::maximally_entangled(d2);
  const auto p2 = phases_from_rule(positive_rule(d2));
  CHECK(std::abs(bell_value_from_probabilities(me2, p2) - 2.0 * std::sqrt(2.0)) < 1e-10);
  CHECK(std::abs(bell_value_closed_form(me2, p2) - 2.0 * std::sqrt(2.0)) < 1e-10);

  std::mt19937_64 rng(3);
  for (std::int64_t dv = 2; dv <= 8; ++dv) {
    const Dimension d(dv);
    const auto p = test::random_phases(d, rng);
    CHECK(std::abs(bell_value_from_probabilities(SchmidtState::product(d), p)) < 1e-12);
    CHECK(std::abs(bell_value_closed_form(SchmidtState::product(d), p)) < 1e-12);
  }

  const Dimension d3(3);
  const auto s3 = test::random_state(d3, rng);
  const auto z3 = PhaseSettings::zeros(d3);
  CHECK(std::abs(bell_value_from_probabilities(s3, z3) - bell_value_closed_form(s3, z3)) < 1e-10);
}

TEST_CASE("closed form with all-zero phases reduces to 2/(d-1) per pair") {
  std::mt19937_64 rng(5);
  for (std::int64_t dv = 2; dv <= 10; ++dv) {
    const Dimension d(dv);
    const auto s = test::random_state(d, rng);
    double expected = 0.0;
    for (std::size_t j = 0; j < d.size(); ++j)
      for (std::size_t m = 0; m < d.size(); ++m)
        if (j != m) expected += s[j] * s[m] * 2.0 / static_cast<double>(dv - 1);
    CHECK(std::abs(bell_value_closed_form(s, PhaseSettings::zeros(d)) - expected) < 1e-12);
  }
}

TEST_CASE("probability path equals closed form") {
  std::mt19937_64 rng(2024);
  for (std::int64_t dv = 2; dv <= 10; ++dv) {
    const Dimension d(dv);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const auto s = test::random_state(d, rng);
      const auto p = test::random_phases(d, rng);
      worst = std::max(worst,
                       std::abs(bell_value_from_probabilities(s, p) - bell_value_closed_form(s, p)));
    }
    INFO("d = " << dv);
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("white noise scales the Bell value by (1 - F)") {
  std::mt19937_64 rng(17);
  for (std::int64_t dv : {2, 3, 5, 9, 16}) {
    const Dimension d(dv);
    const auto s = test::random_state(d, rng);
    const auto p = test::random_phases(d, rng);
    const double pure = bell_value_from_probabilities(s, p);
    for (double f : {0.0, 0.25, 0.5, 1.0})
      CHECK(std::abs(bell_value_from_probabilities(s, p, NoiseModel(f)) - (1.0 - f) * pure) < 1e-10);
  }
}

TEST_CASE("weighted root-of-unity sum identity") {
  for (int dv = 2; dv <= 50; ++dv) {
    const double d = dv;
    for (int delta = -(dv - 1); delta <= dv - 1; ++delta) {
      if (delta == 0) continue;
      std::complex<double> lhs = 0.0;
      for (int k = 0; k < dv; ++k)
        lhs += (1.0 - 2.0 * k / (d - 1.0)) * std::polar(1.0, 2.0 * kPi * k * delta / d);
      const std::complex<double> rhs =
          2.0 * d / ((d - 1.0) * (1.0 - std::polar(1.0, 2.0 * kPi * delta / d)));
      CHECK(std::abs(lhs.real() - rhs.real()) < 1e-10);
      CHECK(std::abs(lhs.imag() - rhs.imag()) < 1e-10);
    }
  }
}

TEST_CASE("noise thresholds") {
  const double tsirelson = 2.0 * std::sqrt(2.0);
  auto pos = noise_threshold_positive(tsirelson);
  CHECK(pos.f_min == doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(pos.violation);
  auto none = noise_threshold_positive(2.0);
  CHECK(none.f_min == 0.0);
  CHECK_FALSE(none.violation);
  CHECK_FALSE(noise_threshold_positive(1.5).violation);
  CHECK_THROWS_AS(noise_threshold_positive(0.0), InvalidArgument);

  auto neg2 = noise_threshold_negative(-tsirelson, Dimension(2));
  CHECK(neg2.f_min == doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)).epsilon(1e-14));
  auto neg3 = noise_threshold_negative(-4.0, Dimension(3));
  CHECK(neg3.f_min == 0.0);
  CHECK_FALSE(neg3.violation);
  // Within the margin counts as no violation.
  auto edge = noise_threshold_negative(-4.0 - 1e-13, Dimension(3), 1e-10);
  CHECK_FALSE(edge.violation);
  CHECK_THROWS_AS(noise_threshold_negative(0.0, Dimension(3)), InvalidArgument);
  CHECK_THROWS_AS(noise_threshold_negative(1.0, Dimension(3)), InvalidArgument);
}

TEST_CASE("entropy ratio") {
  for (std::int64_t dv : {2, 3, 7, 64}) {
    const Dimension d(dv);
    const auto e = entropy_ratio(SchmidtState::maximally_entangled(d));
    CHECK(e.bits == doctest::Approx(std::log2(static_cast<double>(dv))).epsilon(1e-14));
    CHECK(e.ratio == doctest::Approx(1.0).epsilon(1e-14));
    const auto z = entropy_ratio(SchmidtState::product(d));
    CHECK(z.bits == 0.0);
    CHECK(z.ratio == 0.0);
  }
  // Sign of a coefficient does not matter.
  const auto a = entropy_ratio(SchmidtState::normalized({1.0, 2.0, 2.0}));
  const auto b = entropy_ratio(SchmidtState::normalized({-1.0, 2.0, -2.0}));
  CHECK(a.bits == b.bits);
}
