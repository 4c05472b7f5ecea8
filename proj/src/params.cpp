#include "seqode/params.hpp"

#include <functional>
#include <map>
#include <stdexcept>

namespace seqode {

namespace {

const Rational kShrink(4, 5);

Rational shrink_pow(unsigned i) { return kShrink.pow(i); }

// Tracks the instance with the smallest slack (or the first violation).
class Witness {
 public:
  explicit Witness(std::string id) { result_.id = std::move(id); }

  void offer(const Quad& slack, bool ok, const std::function<std::string()>& describe) {
    ++result_.checked;
    if (!result_.pass) return;
    if (!ok) {
      result_.pass = false;
      result_.witness = "VIOLATED " + describe();
      return;
    }
    if (!best_ || slack < *best_) {
      best_ = slack;
      result_.witness = describe();
    }
  }
  ConditionResult take() {
    if (result_.checked == 0) result_.witness = "no instances";
    return std::move(result_);
  }

 private:
  ConditionResult result_;
  std::optional<Quad> best_;
};

// Strict upper bounds on delta_n coming from level k (clearance and nested measure).
void bounds_against(const ParamTable& prefix, std::size_t k, std::size_t n, const Rational& t_n,
                    std::vector<Quad>& strict) {
  const ParamLevel& lk = prefix.level(k);
  const BreakpointQuery q = locate_interval(prefix, k, t_n);
  const Quad tn(t_n);
  const Rational half(1, 2);
  if (q.side == Side::u) {
    if (q.j >= 0) strict.push_back((tn - lk.u(static_cast<unsigned>(q.j))) * half);
    strict.push_back((lk.u(static_cast<unsigned>(q.j + 1)) - tn) * half);
  } else {
    if (q.j >= 0) strict.push_back((lk.v(static_cast<unsigned>(q.j)) - tn) * half);
    strict.push_back((tn - lk.v(static_cast<unsigned>(q.j + 1))) * half);
  }
  if (q.j >= 0) {
    // 4 delta_n < 2^-n 2^-(j+2) ((4/5)^(j+1) delta_k)^2
    const Rational rhs = Rational::pow2(-static_cast<long>(n)) * measure_limit(prefix, k, q.j);
    strict.push_back(Quad(rhs / Rational(4)));
  }
}

}  // namespace

Quad ParamLevel::u(unsigned i) const { return Quad(t, -(shrink_pow(i) * delta_coef)); }
Quad ParamLevel::v(unsigned i) const { return Quad(t, shrink_pow(i) * delta_coef); }

ParamTable gen_params(std::size_t count) {
  if (count == 0) throw std::invalid_argument("parameter table needs at least one level");
  std::vector<ParamLevel> levels;
  levels.reserve(count);
  RationalEnumerator rationals;
  for (std::size_t n = 1; n <= count; ++n) {
    ParamLevel lvl;
    lvl.n = n;
    lvl.t = rationals.next();
    lvl.eps = Rational::pow2(-static_cast<long>(n + 1));

    const ParamTable prefix(levels);
    std::vector<Quad> strict;
    for (std::size_t k = 1; k < n; ++k) bounds_against(prefix, k, n, lvl.t, strict);
    // 8 delta_n <= eps_n / 2
    const Quad small_bound(lvl.eps / Rational(16));

    // Cap: delta_n <= 2^-n, i.e. the first candidate is 2^-(n+1) * sqrt 2.
    Rational q = Rational::pow2(-static_cast<long>(n + 1));
    for (int halvings = 0;; ++halvings) {
      if (halvings > 100000) throw std::logic_error("no admissible delta found");
      const Quad delta = Quad::sqrt2_times(q);
      bool ok = delta <= small_bound;
      for (std::size_t i = 0; ok && i < strict.size(); ++i) ok = delta < strict[i];
      if (ok) break;
      q *= Rational(1, 2);
    }
    lvl.delta_coef = q;
    lvl.numeric = {lvl.t.to_double(), lvl.delta().to_double(), lvl.eps.to_double()};
    levels.push_back(std::move(lvl));
  }
  return ParamTable(std::move(levels));
}

BreakpointQuery locate_interval(const ParamTable& table, std::size_t k, const Rational& t) {
  const ParamLevel& lk = table.level(k);
  const Rational diff = t - lk.t;
  if (diff.is_zero()) throw std::domain_error("time coincides with the level centre");
  BreakpointQuery out;
  out.level = k;
  out.side = diff.sign() < 0 ? Side::u : Side::v;
  const Quad dist(diff.abs());
  // dist is rational and every breakpoint offset irrational, so all
  // comparisons below are strict.
  if (dist > lk.delta()) return out;
  for (unsigned i = 0;; ++i) {
    if (dist > Quad::sqrt2_times(shrink_pow(i + 1) * lk.delta_coef)) {
      out.j = static_cast<long>(i);
      return out;
    }
  }
}

Rational measure_limit(const ParamTable& table, std::size_t N, long j) {
  if (j < 0) throw std::invalid_argument("measure bound needs j >= 0");
  const ParamLevel& l = table.level(N);
  const auto jj = static_cast<unsigned>(j);
  // ((4/5)^(j+1) q sqrt2)^2 = 2 (4/5)^(2j+2) q^2
  return Rational::pow2(-(j + 2)) * Rational(2) * shrink_pow(2 * jj + 2) * l.delta_coef * l.delta_coef;
}

Quad delta_measure_sum(const ParamTable& table, std::size_t N, long j, Side side) {
  Quad sum;
  for (std::size_t k = N + 1; k <= table.size(); ++k) {
    const BreakpointQuery q = locate_interval(table, N, table.level(k).t);
    if (q.side == side && q.j == j) sum += Quad(Rational(4)) * table.level(k).delta();
  }
  return sum;
}

double delta_measure_bound(const ParamTable& table, std::size_t N, long j, Side side) {
  return delta_measure_sum(table, N, j, side).to_double(Rounding::up);
}

// --------------------------------------------------------------- certificate

std::vector<ConditionResult> certify(const ParamTable& table) {
  Witness positive("delta_positive"), small("delta_vs_eps"), clearance("clearance"), nested("nested_measure"),
      order("breakpoint_order"), measure("measure_sum");
  const std::size_t depth = table.size();

  for (std::size_t n = 1; n <= depth; ++n) {
    const ParamLevel& ln = table.level(n);
    const Quad delta = ln.delta();
    const std::string tag = "n=" + std::to_string(n);

    positive.offer(delta, delta.sign() > 0 && delta.is_irrational() && delta.rat().is_zero(),
             [&] { return tag + ": delta=" + delta.str() + " > 0, irrational"; });

    const Quad lhs2 = Quad(Rational(8)) * delta;
    const Quad rhs2(ln.eps / Rational(2));
    small.offer(rhs2 - lhs2, lhs2 <= rhs2, [&] { return tag + ": 8*delta=" + lhs2.str() + " <= eps/2=" + rhs2.str(); });

    // Breakpoint geometry of this level.
    bool geo = true;
    for (unsigned i = 0; i < 8 && geo; ++i) {
      geo = ln.u(i) < ln.u(i + 1) && ln.u(i + 1) < Quad(ln.t) && Quad(ln.t) < ln.v(i + 1) && ln.v(i + 1) < ln.v(i) &&
            ln.u(i) + ln.v(i) == Quad(Rational(2) * ln.t) &&
            ln.v(i) - ln.u(i) == Quad(Rational(2)) * Quad::sqrt2_times(Rational(4, 5).pow(i) * ln.delta_coef);
    }
    order.offer(delta, geo, [&] { return tag + ": u_i < u_(i+1) < t < v_(i+1) < v_i, i < 8"; });

    for (std::size_t k = 1; k < n; ++k) {
      const ParamLevel& lk = table.level(k);
      const Quad two_delta = Quad(Rational(2)) * delta;
      const Rational d = (ln.t - lk.t).abs();
      const std::string pair = tag + ",k=" + std::to_string(k);

      // Clearance by brute force: every breakpoint of level k is farther
      // than 2 delta_n from t_n.
      if (Quad(d) <= two_delta) {
        clearance.offer(Quad(), false, [&] { return pair + ": t_k within 2*delta_n"; });
      } else {
        for (unsigned i = 0;; ++i) {
          for (const Quad& bp : {lk.u(i), lk.v(i)}) {
            Quad gap = Quad(ln.t) - bp;
            if (gap.sign() < 0) gap = -gap;
            clearance.offer(gap - two_delta, gap > two_delta,
                     [&] { return pair + ",i=" + std::to_string(i) + ": |t_n - bp|=" + gap.str() + " > 2*delta_n"; });
          }
          if (Quad::sqrt2_times(Rational(4, 5).pow(i) * lk.delta_coef) < Quad(d) - two_delta) break;
        }
      }

      // Nested measure: only when t_n falls inside a finite interval of level k.
      if (Quad(d) < lk.delta()) {
        const bool left = ln.t < lk.t;
        long j = 0;
        for (unsigned i = 0;; ++i) {
          const Quad inner = left ? lk.u(i + 1) : lk.v(i + 1);
          const bool inside = left ? Quad(ln.t) < inner : Quad(ln.t) > inner;
          if (!inside) {
            j = static_cast<long>(i);
            break;
          }
        }
        const auto jj = static_cast<unsigned>(j);
        const Rational sq = Rational(4, 5).pow(2 * jj + 2) * Rational(2) * lk.delta_coef * lk.delta_coef;
        const Quad rhs(Rational::pow2(-static_cast<long>(n)) * Rational::pow2(-(j + 2)) * sq);
        const Quad lhs = Quad(Rational(4)) * delta;
        nested.offer(rhs - lhs, lhs < rhs, [&] {
          return pair + ",j=" + std::to_string(j) + (left ? ",side=u" : ",side=v") + ": 4*delta_n=" + lhs.str() +
                 " < " + rhs.str();
        });
      }
    }
  }

  // Measure bound: accumulate 4 delta_k per (N, side, j) and compare.
  for (std::size_t N = 1; N <= depth; ++N) {
    std::map<std::pair<int, long>, Quad> sums;
    for (std::size_t k = N + 1; k <= depth; ++k) {
      const BreakpointQuery q = locate_interval(table, N, table.level(k).t);
      if (q.j < 0) continue;
      sums[{q.side == Side::u ? 0 : 1, q.j}] += Quad(Rational(4)) * table.level(k).delta();
    }
    if (sums.empty()) {
      // Empty sums are 0 < limit for every j; record one instance per level.
      const Quad lim(measure_limit(table, N, 0));
      measure.offer(lim, lim.sign() > 0, [&] { return "N=" + std::to_string(N) + ": empty sum < " + lim.str(); });
      continue;
    }
    for (const auto& [key, sum] : sums) {
      const Quad lim(measure_limit(table, N, key.second));
      measure.offer(lim - sum, sum < lim, [&] {
        return "N=" + std::to_string(N) + ",j=" + std::to_string(key.second) + (key.first == 0 ? ",side=u" : ",side=v") +
               ": sum 4*delta_k=" + sum.str() + " < " + lim.str();
      });
    }
  }

  return {positive.take(), small.take(), clearance.take(), nested.take(), order.take(), measure.take()};
}

}  // namespace seqode
