#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "seqode/harness.hpp"

using namespace seqode;

TEST_CASE("integrators on trivial fields") {
  const SeqVec x0({{1, 1.0}, {2, -2.0}});
  for (auto integ : {&euler, &heun}) {
    const Polygon p = integ(zero_field(), 0.0, x0, 0.1, 1.0, 8);
    CHECK(p.size() == 11);
    for (const auto& v : p.values) CHECK(v == x0);
    CHECK(p.times.front() == 0.0);
    CHECK(p.times.back() == 1.0);
  }
  const SeqVec c({{1, 2.0}});
  const Polygon p = euler(constant_field(c), 0.0, x0, 0.25, 0.25, 8);
  CHECK(p.values.back() == combine(1.0, x0, 0.25, c));
  CHECK_THROWS_AS(euler(zero_field(), 0.0, x0, 0.0, 1.0, 8), std::invalid_argument);
  CHECK_THROWS_AS(euler(zero_field(), 0.0, x0, 0.1, 1.0, 0), std::invalid_argument);
}

TEST_CASE("heun on the exponential") {
  const double h = 0.01;
  const Polygon p = heun(linear_field(), 0.0, SeqVec::basis(1), h, h, 4);
  CHECK(p.values.back().coeff(1) == doctest::Approx(1.0 + h + h * h / 2).epsilon(1e-15));
}

TEST_CASE("backward integration stores increasing times") {
  const Polygon p = euler(linear_field(), 1.0, SeqVec::basis(1), 0.1, 0.0, 4);
  CHECK(p.times.front() == 0.0);
  CHECK(p.times.back() == 1.0);
  CHECK(p.values.back().coeff(1) == 1.0);
  CHECK(p.values.front().coeff(1) == doctest::Approx(std::pow(0.9, 10)).epsilon(1e-12));
}

TEST_CASE("truncation to the first D coordinates") {
  const Polygon p = euler(zero_field(), 0.0, SeqVec::anchor(), 0.5, 1.0, 5);
  for (const auto& v : p.values) {
    CHECK_FALSE(v.tail());
    CHECK(v.last_head_index() <= 5);
  }
}

TEST_CASE("defects") {
  const Space c0 = Space::c0();
  // The exact line under a constant field has zero defect.
  const SeqVec c({{1, 1.5}, {3, -0.5}});
  const Polygon line = euler(constant_field(c), 0.0, SeqVec::zero(), 0.1, 1.0, 4);
  CHECK(defect(line, constant_field(c), c0) <= 1e-14);
  // Euler on x' = x: defect roughly halves with the step.
  const double d1 = defect(euler(linear_field(), 0.0, SeqVec::basis(1), 0.02, 1.0, 2), linear_field(), c0);
  const double d2 = defect(euler(linear_field(), 0.0, SeqVec::basis(1), 0.01, 1.0, 2), linear_field(), c0);
  CHECK(d2 < d1);
  CHECK(d1 / d2 == doctest::Approx(2.0).epsilon(0.2));
  Polygon one;
  one.times = {0.0};
  one.values = {SeqVec::zero()};
  CHECK_THROWS_AS(defect(one, zero_field(), c0), std::invalid_argument);
}

TEST_CASE("picard") {
  const SeqVec x0 = SeqVec::basis(1);
  const auto zero_it = picard(zero_field(), 0.0, x0, 1.0, 3, 4, 10);
  REQUIRE(zero_it.size() == 4);
  for (const auto& p : zero_it)
    for (const auto& v : p.values) CHECK(v == x0);
  const SeqVec c({{2, 3.0}});
  const auto const_it = picard(constant_field(c), 0.0, x0, 1.0, 3, 4, 10);
  for (std::size_t i = 0; i < const_it[1].size(); ++i)
    CHECK(max_abs_diff(const_it[1].values[i], combine(1.0, x0, const_it[1].times[i], c)) <= 1e-14);
  CHECK(sup_distance(const_it[1], const_it[3], Space::c0()) <= 1e-14);
  // x' = x: iterates approach e.
  const auto exp_it = picard(linear_field(), 0.0, x0, 1.0, 12, 2, 400);
  CHECK(exp_it.back().values.back().coeff(1) == doctest::Approx(std::exp(1.0)).epsilon(1e-4));
}

TEST_CASE("euler and heun agree to first order on smooth stretches of h") {
  const Space c0 = Space::c0();
  const FieldHandle h = make_h(c0, SeqVec::anchor());
  const SeqVec x0 = combine(1.0, SeqVec::anchor(), 1.0, SeqVec({{2, 0.05}}));
  double prev = 0.0;
  for (double step : {1e-2, 1e-3}) {
    const Polygon e = euler(h, -0.5, x0, step, -0.1, 16);
    const Polygon q = heun(h, -0.5, x0, step, -0.1, 16);
    const double gap = sup_distance(e, q, c0);
    MESSAGE("step ", step, ": gap ", gap, ", C = ", gap / step);
    if (prev > 0.0) CHECK(gap < prev);
    prev = gap;
  }
}
