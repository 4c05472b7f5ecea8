#include <doctest.h>

#include <random>
#include <stdexcept>

#include "seqode/lifts.hpp"

using namespace seqode;

TEST_CASE("coordinate selections") {
  const CoordinateSelection even{2, 2};
  CHECK(even.position(1) == 2);
  CHECK(even.position(3) == 6);
  const SeqVec x({{1, 1.0}, {2, 2.0}, {3, 3.0}, {4, 4.0}});
  CHECK(apply_quotient(even, x) == SeqVec({{1, 2.0}, {2, 4.0}}));
  CHECK(apply_section(even, SeqVec({{1, 2.0}, {2, 4.0}})) == SeqVec({{2, 2.0}, {4, 4.0}}));
  // Stride 1 shifts tails exactly.
  const SeqVec shifted = apply_section({1, 2}, SeqVec::anchor());
  REQUIRE(shifted.tail());
  CHECK(shifted.coeff(2) == 0.5);
  CHECK(shifted.coeff(1) == 0.0);
  CHECK(apply_quotient({1, 2}, shifted) == SeqVec::anchor());
  // Stride 2 on a tail: values survive up to underflow.
  const SeqVec q = apply_quotient(even, SeqVec::anchor());
  for (Index k = 1; k <= 40; ++k) CHECK(q.coeff(k) == std::ldexp(1.0, -static_cast<int>(2 * k)));
}

TEST_CASE("section is a right inverse of the quotient") {
  const CoordinateSelection even{2, 2};
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 1000; ++i) {
    SeqVec::Head h;
    for (Index k = 1; k <= 30; ++k)
      if (rng() % 3) h.emplace(k, u(rng));
    const SeqVec y(h);
    CHECK(apply_quotient(even, apply_section(even, y)) == y);
  }
}

TEST_CASE("autonomous lift") {
  const FieldHandle zero_auto = autonomize(zero_field());
  CHECK(zero_auto(0.0, SeqVec({{1, 3.0}, {4, 2.0}})) == SeqVec::basis(1));
  CHECK(zero_auto.kind() == FieldHandle::Kind::autonomous);

  const Space c0 = Space::c0();
  const SeqVec a = SeqVec::anchor();
  const FieldHandle h = make_h(c0, a);
  const FieldHandle f = autonomize(h);
  // x = 5 e_1: time 5, state 0.
  const SeqVec expect = combine(1.0, SeqVec::basis(1), 1.0, apply_section({1, 2}, h(5.0, SeqVec::zero())));
  CHECK(f(0.0, SeqVec::basis(1, 5.0)) == expect);
  // Ignores its own time argument.
  const SeqVec x({{1, -0.2}, {2, 0.4}, {3, -0.1}});
  CHECK(f(1.0, x) == f(-7.0, x));
  CHECK(coeff(1, f(0.0, x)) == 1.0);
}

TEST_CASE("quotient lift") {
  const CoordinateSelection even{2, 2};
  const Space c0 = Space::c0();
  const FieldHandle inner = make_h(c0, SeqVec::anchor());
  const FieldHandle lifted = quotient_lift(inner, even, even);
  const FieldHandle zero_lift = quotient_lift(zero_field(), even, even);
  const SeqVec x({{1, 0.3}, {2, -0.02}, {4, 0.01}, {5, 2.0}});
  CHECK(zero_lift(0.3, x).is_zero());
  for (double t : {-0.7, -0.05, 0.0, 0.05, 1.3})
    CHECK(max_abs_diff(apply_quotient(even, lifted(t, x)), inner(t, apply_quotient(even, x))) <= 1e-12);
  // Section lands on the selected coordinates only.
  const SeqVec out = lifted(0.5, x);
  for (const auto& [k, v] : out.head()) CHECK(k % 2 == 0);
  // Odd coordinates are not a right inverse of the even quotient.
  CHECK_THROWS_AS(quotient_lift(inner, even, CoordinateSelection{2, 1}), ConfigurationError);
}
