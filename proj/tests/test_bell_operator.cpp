#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "cglmp/bell_operator.hpp"
#include "test_support.hpp"

using namespace cglmp;

namespace {

double max_row_abs_sum(const std::vector<double>& a, std::size_t d) {
  double best = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    double row = 0.0;
    for (std::size_t m = 0; m < d; ++m) row += std::abs(a[j * d + m]);
    best = std::max(best, row);
  }
  return best;
}

}  // namespace

TEST_CASE("element anchors") {
  const auto p2 = positive_rule(Dimension(2));
  CHECK(element_rule(p2, 0, 1) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(element_rule(negative_rule(Dimension(2)), 0, 1) ==
        doctest::Approx(-2.0 * std::sqrt(2.0)).epsilon(1e-14));

  const auto p3 = positive_rule(Dimension(3));
  CHECK(element_rule(p3, 0, 1) == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(element_rule(p3, 1, 2) == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(element_rule(p3, 0, 2) == doctest::Approx(2.0).epsilon(1e-14));

  const auto n3 = negative_rule(Dimension(3));
  for (int j = 0; j < 3; ++j)
    for (int m = 0; m < 3; ++m)
      CHECK(element_rule(n3, j, m) == doctest::Approx(j == m ? 0.0 : -2.0).epsilon(1e-14));
}

TEST_CASE("rule elements equal general elements of the rule phases") {
  for (std::int64_t dv = 2; dv <= 40; ++dv)
    for (Side side : {Side::Positive, Side::Negative}) {
      const auto rule = rule_for(side, Dimension(dv));
      const auto phases = phases_from_rule(rule);
      for (std::int64_t j = 0; j < dv; ++j)
        for (std::int64_t m = 0; m < dv; ++m)
          CHECK(std::abs(element_rule(rule, j, m) - element_general(phases, j, m)) < 1e-11);
    }
}

TEST_CASE("dense matrices are symmetric with zero diagonal") {
  std::mt19937_64 rng(8);
  for (std::int64_t dv : {2, 5, 12}) {
    const auto b = build(test::random_phases(Dimension(dv), rng));
    CHECK(b.is_dense());
    for (std::int64_t j = 0; j < dv; ++j) {
      CHECK(b(j, j) == 0.0);
      for (std::int64_t m = 0; m < j; ++m) CHECK(std::abs(b(j, m) - b(m, j)) < 1e-13);
    }
  }
}

TEST_CASE("quadratic form reproduces the closed-form Bell value") {
  std::mt19937_64 rng(9);
  for (std::int64_t dv = 2; dv <= 12; ++dv) {
    const Dimension d(dv);
    const auto p = test::random_phases(d, rng);
    const auto s = test::random_state(d, rng);
    const auto b = build(p);
    CHECK(std::abs(quadratic_form(b, s) - bell_value_closed_form(s, p)) < 1e-10);
    CHECK(std::abs(quadratic_form(b, s) - bell_value_from_probabilities(s, p)) < 1e-10);
  }
}

TEST_CASE("structured matrices match dense ones") {
  std::mt19937_64 rng(10);
  for (std::int64_t dv : {2, 3, 4, 5, 17, 100, 512, 1023}) {
    for (Side side : {Side::Positive, Side::Negative}) {
      const auto rule = rule_for(side, Dimension(dv));
      const auto s = BellMatrix::structured(rule);
      const auto dd = build(rule, {Representation::Dense});
      CHECK_FALSE(s.is_dense());
      CHECK(dd.is_dense());
      CHECK(s.kind() == (side == Side::Positive ? BellMatrix::Kind::PositiveToeplitz
                                                : BellMatrix::Kind::SegmentedToeplitz));
      const auto x = test::random_vector(static_cast<std::size_t>(dv), rng);
      const auto ys = matvec(s, x);
      const auto yd = matvec(dd, x);
      double err = 0.0;
      for (std::size_t i = 0; i < ys.size(); ++i) err = std::max(err, std::abs(ys[i] - yd[i]));
      INFO("d = " << dv << " side = " << to_string(side));
      CHECK(err < 1e-9);
      const auto dense = dd.to_dense();
      CHECK(std::abs(s.gershgorin_radius() - max_row_abs_sum(dense, dd.dimension().size())) < 1e-9);
      CHECK(std::abs(dd.gershgorin_radius() - max_row_abs_sum(dense, dd.dimension().size())) < 1e-12);
      for (int probe = 0; probe < 20; ++probe) {
        std::uniform_int_distribution<std::int64_t> idx(0, dv - 1);
        const auto j = idx(rng), m = idx(rng);
        CHECK(std::abs(s(j, m) - dd(j, m)) < 1e-12);
      }
    }
  }
}

TEST_CASE("blocks between rule segments are Toeplitz") {
  const auto rule = negative_rule(Dimension(11));
  const auto dense = build(rule).to_dense();
  for (std::int64_t j = 1; j < 11; ++j)
    for (std::int64_t m = 1; m < 11; ++m)
      if (rule.segment_of(j) == rule.segment_of(j - 1) && rule.segment_of(m) == rule.segment_of(m - 1))
        CHECK(std::abs(dense[static_cast<std::size_t>(j * 11 + m)] -
                       dense[static_cast<std::size_t>((j - 1) * 11 + (m - 1))]) < 1e-12);
}

TEST_CASE("representation selection and capacity") {
  const auto rule = positive_rule(Dimension(50));
  CHECK(build(rule).is_dense());
  CHECK_FALSE(build(rule, {Representation::Auto, 20}).is_dense());
  CHECK_FALSE(build(rule, {Representation::Structured}).is_dense());
  CHECK_THROWS_AS(build(rule, {Representation::Dense, 20}), CapacityError);
  CHECK_THROWS_AS(build(phases_from_rule(rule), {Representation::Auto, 20}), CapacityError);
  CHECK_THROWS_AS(BellMatrix::structured(rule).to_dense(20), CapacityError);
}

TEST_CASE("length mismatches are rejected") {
  const auto b = BellMatrix::structured(positive_rule(Dimension(8)));
  std::vector<double> x(7), y(8);
  CHECK_THROWS_AS(b.multiply(x, y), InvalidDimension);
  CHECK_THROWS_AS(BellMatrix::dense(Dimension(3), std::vector<double>(8)), InvalidDimension);
}

TEST_CASE("grid csv") {
  std::ostringstream out;
  write_grid_csv(build(negative_rule(Dimension(3))), out);
  std::istringstream in(out.str());
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 2);
  }
  CHECK(rows == 3);
  std::ostringstream big;
  CHECK_THROWS_AS(write_grid_csv(BellMatrix::structured(positive_rule(Dimension(65))), big),
                  CapacityError);
}
