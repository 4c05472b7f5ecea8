#include "seqode/fields.hpp"

#include <cmath>
#include <string>

namespace seqode {

double bump(double r, double t) {
  if (!(r > 0.0)) throw std::domain_error("bump radius must be positive");
  const double a = std::abs(t);
  if (a <= r) return 1.0;
  if (a >= 2.0 * r) return 0.0;
  return 2.0 - a / r;
}

bool MonotoneWeights::nondecreasing() const {
  for (std::size_t i = 1; i < prefix.size(); ++i)
    if (prefix[i] < prefix[i - 1]) return false;
  return prefix.empty() || prefix.back() <= rest;
}

bool MonotoneWeights::nonincreasing() const {
  for (std::size_t i = 1; i < prefix.size(); ++i)
    if (prefix[i] > prefix[i - 1]) return false;
  return prefix.empty() || prefix.back() >= rest;
}

SeqVec monotone_scale(const SeqVec& x, const MonotoneWeights& alpha) {
  auto in_unit = [](double a) { return a >= 0.0 && a <= 1.0; };
  for (double a : alpha.prefix)
    if (!in_unit(a)) throw std::domain_error("weight outside [0, 1]");
  if (!in_unit(alpha.rest)) throw std::domain_error("weight outside [0, 1]");

  const SeqVec xm = x.materialized(alpha.prefix.size() + 1);
  SeqVec::Head head;
  for (const auto& [k, v] : xm.head()) head.emplace(k, alpha.at(k) * v);
  std::optional<Tail> tail = xm.tail();
  if (tail) tail->coef *= alpha.rest;
  return SeqVec(std::move(head), tail);
}

namespace {

// Least k >= tail.start with ||Q_k tail|| <= r.
Index tail_cutoff(const Space& space, const Tail& tail, double r) {
  const double base = space.tail_norm(tail.coef, 0);  // |coef| times the l_p tail constant
  Index k = tail.start;
  if (base > r) {
    const double guess = std::ceil(std::log2(base / r));
    if (guess > static_cast<double>(k)) k = static_cast<Index>(guess);
  }
  while (k > tail.start && space.tail_norm(tail.coef, k - 1) <= r) --k;
  while (space.tail_norm(tail.coef, k) > r) ++k;
  return k;
}

}  // namespace

SeqVec capphi(const Space& space, double r, const SeqVec& x) {
  if (!(r > 0.0)) throw std::domain_error("capphi radius must be positive");
  if (x.is_zero()) return x;

  const SeqVec xm = x.tail() ? x.materialized(tail_cutoff(space, *x.tail(), r)) : x;
  const auto norms = suffix_norms(space, xm);
  SeqVec::Head head;
  auto it = xm.head().begin();
  for (const auto& [k, qn] : norms) {
    if (qn <= r) break;  // k0 reached: every later factor is 1
    const double f = bump(r, qn);
    if (f != 0.0) head.emplace(k, f * it->second);
    ++it;
  }
  for (; it != xm.head().end(); ++it) head.emplace(it->first, it->second);
  return SeqVec(std::move(head), xm.tail());
}

SeqVec field_h(const Space& space, const SeqVec& anchor, double t, const SeqVec& x) {
  if (t == 0.0) return {};
  const double inv = 1.0 / (t * t);
  const SeqVec shifted = t > 0.0 ? x : combine(1.0, x, -1.0, anchor);
  return capphi(space, 1.0, shifted.scaled(inv)).scaled(2.0 * t);
}

SeqVec eval_gN(const Space& space, const SeqVec& anchor, const ParamTable& table, std::size_t N, double t,
               const SeqVec& x) {
  if (N > table.size()) throw InsufficientLevels(N, table.size());
  SeqVec g;
  for (std::size_t n = 1; n <= N; ++n) {
    const auto& num = table.level(n).numeric;
    const double tau = t - num.t;
    const double b = bump(num.delta, tau);
    if (b == 0.0) continue;
    const SeqVec hv = field_h(space, anchor, tau, x);
    const SeqVec capped = g.is_zero() ? g : capphi(space, num.eps / 4.0, g);
    g = combine(1.0, g, b, combine(1.0, hv, -1.0, capped));
  }
  return g;
}

InsufficientLevels::InsufficientLevels(std::size_t required, std::size_t available)
    : std::runtime_error("insufficient levels: tolerance needs depth " + std::to_string(required) + ", table has " +
                         std::to_string(available)),
      required_(required) {}

std::size_t levels_for_tolerance(double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  std::size_t N = 0;
  while (std::ldexp(1.0, -static_cast<int>(N + 1)) > tol) ++N;
  return N;
}

GValue eval_g(const Space& space, const SeqVec& anchor, const ParamTable& table, double tol, double t,
              const SeqVec& x) {
  const std::size_t N = levels_for_tolerance(tol);
  if (N > table.size()) throw InsufficientLevels(N, table.size());
  return {eval_gN(space, anchor, table, N, t, x), N, std::ldexp(1.0, -static_cast<int>(N + 1))};
}

}  // namespace seqode
