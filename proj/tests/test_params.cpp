#include <doctest.h>

#include <stdexcept>

#include <gmpxx.h>

#include "seqode/params.hpp"

using namespace seqode;

TEST_CASE("first two levels") {
  const ParamTable table = gen_params(2);
  const ParamLevel& l1 = table.level(1);
  CHECK(l1.t == Rational(0));
  CHECK(l1.eps == Rational(1, 4));
  CHECK(l1.delta_coef == Rational::pow2(-7));
  // 8 delta <= eps / 2, squared: 128 q^2 <= 1/64 holds for q = 2^-7, fails for 2^-6.
  const mpq_class q7(1, 128), q6(1, 64);
  CHECK(128 * q7 * q7 <= mpq_class(1, 64));
  CHECK_FALSE(128 * q6 * q6 <= mpq_class(1, 64));

  const ParamLevel& l2 = table.level(2);
  CHECK(l2.t == Rational(1));
  CHECK(l2.eps == Rational(1, 8));
  CHECK(l2.delta_coef == Rational::pow2(-8));
  CHECK(locate_interval(table, 1, l2.t) == BreakpointQuery{1, -1, Side::v});
}

TEST_CASE("interval location") {
  const ParamTable table = gen_params(3);
  CHECK(locate_interval(table, 1, Rational(-1)) == BreakpointQuery{1, -1, Side::u});
  CHECK_THROWS_AS(locate_interval(table, 1, Rational(0)), std::domain_error);
  // delta_1 = 0.01105, (4/5) delta_1 = 0.00884: 1/100 sits between them.
  const BreakpointQuery q = locate_interval(table, 1, Rational(1, 100));
  CHECK(q.side == Side::v);
  CHECK(q.j == 0);
  const Quad d = Quad(Rational(1, 100));
  CHECK(table.level(1).v(1) < d);
  CHECK(d < table.level(1).v(0));
}

TEST_CASE("interval location matches explicit membership") {
  const ParamTable table = gen_params(40);
  for (std::size_t k = 1; k <= 6; ++k)
    for (std::size_t m = k + 1; m <= 40; ++m) {
      const Quad t(table.level(m).t);
      const ParamLevel& l = table.level(k);
      const BreakpointQuery q = locate_interval(table, k, table.level(m).t);
      CHECK(q.level == k);
      const auto j = static_cast<unsigned>(q.j);
      if (q.side == Side::u) {
        CHECK(t < Quad(l.t));
        if (q.j < 0) CHECK(t < l.u(0));
        else CHECK((l.u(j) < t && t < l.u(j + 1)));
      } else {
        CHECK(t > Quad(l.t));
        if (q.j < 0) CHECK(t > l.v(0));
        else CHECK((l.v(j + 1) < t && t < l.v(j)));
      }
    }
}

TEST_CASE("table invariants") {
  const ParamTable table = gen_params(60);
  Rational eps_sum;
  for (std::size_t n = 1; n <= table.size(); ++n) {
    const ParamLevel& l = table.level(n);
    eps_sum += l.eps;
    // 16 delta <= eps, squared.
    CHECK(Rational(512) * l.delta_coef * l.delta_coef <= l.eps * l.eps);
    CHECK(l.delta().sign() > 0);
    for (std::size_t k = 1; k < n; ++k) {
      CHECK(table.level(k).t != l.t);
      // Earlier centres stay outside the doubled support.
      const Quad gap((l.t - table.level(k).t).abs());
      CHECK(gap > Quad(Rational(2)) * l.delta());
    }
  }
  CHECK(eps_sum < Rational(1));
  for (long j = 0; j < 4; ++j)
    for (std::size_t N = 1; N <= 5; ++N)
      for (Side side : {Side::u, Side::v})
        CHECK(delta_measure_sum(table, N, j, side) < Quad(measure_limit(table, N, j)));
  CHECK(delta_measure_sum(table, 60, 0).sign() == 0);
}

TEST_CASE("certificate passes and reports every condition") {
  const ParamTable table = gen_params(40);
  const auto cert = certify(table);
  std::vector<std::string> ids;
  for (const auto& c : cert) {
    ids.push_back(c.id);
    CHECK_MESSAGE(c.pass, c.id, ": ", c.witness);
    // No centre of this depth falls inside an earlier bump support.
    if (c.id == "nested_measure") CHECK(c.checked == 0);
    else CHECK(c.checked > 0);
  }
  CHECK(ids == std::vector<std::string>{"delta_positive", "delta_vs_eps", "clearance", "nested_measure", "breakpoint_order", "measure_sum"});
}

namespace {

// Level 2 placed inside the support of level 1: 1/200 lies between the
// breakpoints (4/5)^4 delta_1 and (4/5)^3 delta_1, so j = 3.
ParamTable nested_table(long delta2_exp) {
  std::vector<ParamLevel> levels = gen_params(1).levels();
  ParamLevel l2;
  l2.n = 2;
  l2.t = Rational(1, 200);
  l2.eps = Rational(1, 8);
  l2.delta_coef = Rational::pow2(delta2_exp);
  levels.push_back(l2);
  return ParamTable(levels);
}

const ConditionResult& find(const std::vector<ConditionResult>& cert, const std::string& id) {
  for (const auto& c : cert)
    if (c.id == id) return c;
  throw std::logic_error("missing " + id);
}

}  // namespace

TEST_CASE("nested level exercises the measure condition") {
  const ParamTable ok = nested_table(-26);
  CHECK(locate_interval(ok, 1, Rational(1, 200)) == BreakpointQuery{1, 3, Side::v});
  // 4 delta_2 < 2^-2 2^-(j+2) ((4/5)^(j+1) delta_1)^2 with delta_1^2 = 2 * 2^-14, compared squared.
  const Rational rhs = Rational::pow2(-2 - 5 - 14) * Rational(2) * Rational(4, 5).pow(8);
  auto lhs_sq = [](long e) { return Rational(32) * Rational::pow2(2 * e); };
  CHECK(lhs_sq(-26) < rhs * rhs);
  CHECK_FALSE(lhs_sq(-25) < rhs * rhs);
  const auto good = certify(ok);
  CHECK(find(good, "nested_measure").checked == 1);
  CHECK(find(good, "nested_measure").pass);
  CHECK(find(good, "measure_sum").pass);
  const auto bad = certify(nested_table(-20));
  CHECK_FALSE(find(bad, "nested_measure").pass);
}

TEST_CASE("certificate catches a corrupted table") {
  std::vector<ParamLevel> levels = gen_params(10).levels();
  levels[4].delta_coef = levels[4].delta_coef * Rational(64);
  const auto cert = certify(ParamTable(levels));
  bool any_fail = false;
  for (const auto& c : cert) any_fail = any_fail || !c.pass;
  CHECK(any_fail);
  CHECK_THROWS(gen_params(0));
}
