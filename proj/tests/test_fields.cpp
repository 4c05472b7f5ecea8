#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "seqode/fields.hpp"

using namespace seqode;

namespace {

// Phi_r by its defining sum, with suffix norms recomputed from scratch.
SeqVec capphi_oracle(const Space& s, double r, const SeqVec& x, Index upto) {
  SeqVec::Head h;
  for (Index k = 1; k <= upto; ++k) {
    SeqVec::Head rest;
    for (Index j = k; j <= upto; ++j)
      if (x.coeff(j) != 0.0) rest.emplace(j, x.coeff(j));
    const double f = bump(r, norm(s, SeqVec(rest)));
    if (f * x.coeff(k) != 0.0) h.emplace(k, f * x.coeff(k));
  }
  return SeqVec(h);
}

}  // namespace

TEST_CASE("bump") {
  CHECK(bump(1, 0) == 1.0);
  CHECK(bump(1, 2) == 0.0);
  CHECK(bump(2, -3) == 0.5);
  CHECK(bump(1, -1) == 1.0);
  CHECK(bump(1, 1.5) == 0.5);
  CHECK(bump(1, -7) == 0.0);
  CHECK_THROWS_AS(bump(0, 0), std::domain_error);
}

TEST_CASE("monotone scaling") {
  const SeqVec x({{1, 1.0}, {2, 1.0}});
  MonotoneWeights one{{}, 1.0}, zero{{}, 0.0}, half{{0.5}, 1.0};
  CHECK(monotone_scale(x, one) == x);
  CHECK(monotone_scale(x, zero).is_zero());
  const SeqVec y = monotone_scale(x, half);
  CHECK(y == SeqVec({{1, 0.5}, {2, 1.0}}));
  CHECK(norm(Space::c0(), y) == 1.0);
  CHECK(half.nondecreasing());
  CHECK_FALSE(half.nonincreasing());
  CHECK_THROWS_AS(monotone_scale(x, MonotoneWeights{{1.5}, 1.0}), std::domain_error);
}

TEST_CASE("capped map examples") {
  const Space c0 = Space::c0();
  CHECK(capphi(c0, 1, SeqVec({{1, 3.0}, {2, 0.5}})) == SeqVec({{2, 0.5}}));
  const SeqVec z = capphi(c0, 1, SeqVec({{1, 3.0}}));
  CHECK(z.is_zero());
  const SeqVec small({{1, 0.2}, {4, -0.9}}, Tail{16.0, 5});
  CHECK(capphi(c0, 1, small) == small);
}

TEST_CASE("capped map agrees with the defining sum") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (const Space& s : {Space::c0(), Space::lp(1), Space::lp(2)})
    for (int i = 0; i < 300; ++i) {
      SeqVec::Head h;
      const Index n = rng() % 15 + 1;
      for (Index k = 1; k <= n; ++k) h.emplace(k, u(rng));
      const SeqVec x(h);
      const double r = std::uniform_real_distribution<double>(0.1, 3.0)(rng);
      CHECK(max_abs_diff(capphi(s, r, x), capphi_oracle(s, r, x, n)) <= 1e-12);
    }
}

TEST_CASE("field h") {
  const Space c0 = Space::c0();
  const SeqVec a = SeqVec::anchor();
  CHECK(field_h(c0, a, 0.0, SeqVec({{1, 4.0}})).is_zero());
  CHECK(field_h(c0, a, 1.0, SeqVec::zero()).is_zero());
  // x = a on the left: the argument of Phi is zero.
  CHECK(field_h(c0, a, -0.5, a).is_zero());
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 500; ++i) {
    SeqVec::Head h;
    for (Index k = 1; k <= 10; ++k) h.emplace(k, u(rng));
    CHECK(norm(c0, field_h(c0, a, 0.1, SeqVec(h))) <= 0.4 * (1 + 1e-12));
    CHECK(norm(c0, field_h(c0, a, -0.1, SeqVec(h))) <= 0.4 * (1 + 1e-12));
  }
  // Small x on the right: h(t, x) = 2x/t exactly where all factors are 1.
  const SeqVec x({{3, 0.001}});
  CHECK(field_h(c0, a, 0.5, x).coeff(3) == doctest::Approx(0.004));
}

TEST_CASE("g_N and g") {
  const Space c0 = Space::c0();
  const SeqVec a = SeqVec::anchor();
  const ParamTable table = gen_params(30);
  const SeqVec x({{1, 0.3}});
  CHECK(eval_gN(c0, a, table, 0, 0.0, x).is_zero());
  // Far from every t_n used by the first 30 levels.
  CHECK(eval_gN(c0, a, table, 30, 1e6, x).is_zero());
  CHECK(levels_for_tolerance(0.5) == 0);
  CHECK(levels_for_tolerance(std::ldexp(1.0, -10)) == 9);
  const GValue g0 = eval_g(c0, a, table, 0.5, 1e6, x);
  CHECK(g0.level == 0);
  CHECK(g0.value.is_zero());
  CHECK(g0.error_bound == 0.5);
  CHECK_THROWS_AS(eval_g(c0, a, table, 1e-12, 0.0, x), InsufficientLevels);
  try {
    eval_g(c0, a, table, 1e-12, 0.0, x);
  } catch (const InsufficientLevels& e) {
    CHECK(e.required() == levels_for_tolerance(1e-12));
  }
  // Near t_1 = 0 the first level is active and g_1 = h.
  const double t = 0.5 * table.level(1).numeric.delta;
  CHECK(max_abs_diff(eval_gN(c0, a, table, 1, t, x), field_h(c0, a, t, x)) == 0.0);
}

TEST_CASE("g increments are bounded by eps") {
  const Space c0 = Space::c0();
  const SeqVec a = SeqVec::anchor();
  const ParamTable table = gen_params(25);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = rng() % 25 + 1;
    const auto& num = table.level(n).numeric;
    const double t = num.t + std::uniform_real_distribution<double>(-2.0, 2.0)(rng) * num.delta;
    const SeqVec x({{1, std::uniform_real_distribution<double>(-1, 1)(rng)}, {2, 1e-6}});
    const double inc = norm(c0, combine(1.0, eval_gN(c0, a, table, n, t, x), -1.0, eval_gN(c0, a, table, n - 1, t, x)));
    CHECK(inc <= num.eps);
  }
}
