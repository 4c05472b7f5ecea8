#pragma once

// The inductive parameter table {t_n, delta_n, eps_n}.
//
// t_n walks the rational enumeration, eps_n = 2^-(n+1) and
// delta_n = q_n * sqrt(2) with q_n the largest power of two that passes
// every admissibility condition against the earlier levels. All checks run
// in exact arithmetic; the doubles in ParamLevel::numeric are for the field
// evaluators only.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seqode/exact.hpp"

namespace seqode {

struct ParamLevel {
  std::uint64_t n = 0;
  Rational t;
  /// delta = delta_coef * sqrt(2).
  Rational delta_coef;
  Rational eps;

  Quad delta() const { return Quad::sqrt2_times(delta_coef); }
  /// t -/+ (4/5)^i delta, i >= 0.
  Quad u(unsigned i) const;
  Quad v(unsigned i) const;

  struct Numeric {
    double t = 0.0;
    double delta = 0.0;
    double eps = 0.0;
  };
  Numeric numeric;
};

class ParamTable {
 public:
  ParamTable() = default;
  explicit ParamTable(std::vector<ParamLevel> levels) : levels_(std::move(levels)) {}

  std::size_t size() const { return levels_.size(); }
  /// 1-based.
  const ParamLevel& level(std::size_t n) const { return levels_.at(n - 1); }
  const std::vector<ParamLevel>& levels() const { return levels_; }

 private:
  std::vector<ParamLevel> levels_;
};

/// Builds `count` levels. Throws std::invalid_argument for count == 0 and
/// std::logic_error if no admissible delta is found (cannot happen: every
/// bound is strictly positive).
ParamTable gen_params(std::size_t count);

enum class Side { u, v };

/// Position of a rational time relative to the breakpoints of level k: t lies
/// in (u_j, u_{j+1}) for side u or (v_{j+1}, v_j) for side v, with
/// u_{-1} = -inf and v_{-1} = +inf.
struct BreakpointQuery {
  std::size_t level = 0;
  long j = -1;
  Side side = Side::u;

  friend bool operator==(const BreakpointQuery&, const BreakpointQuery&) = default;
};

/// Throws std::domain_error when t equals t_k.
BreakpointQuery locate_interval(const ParamTable& table, std::size_t k, const Rational& t);

/// Exact sum of 4 delta_k over levels k > N whose t_k lies in the side's j-th
/// interval of level N.
Quad delta_measure_sum(const ParamTable& table, std::size_t N, long j, Side side = Side::u);
/// The same sum as a double rounded up.
double delta_measure_bound(const ParamTable& table, std::size_t N, long j, Side side = Side::u);
/// 2^-(j+2) ((4/5)^(j+1) delta_N)^2.
Rational measure_limit(const ParamTable& table, std::size_t N, long j);

struct ConditionResult {
  std::string id;
  bool pass = true;
  std::uint64_t checked = 0;
  /// Tightest instance when passing, first violation otherwise.
  std::string witness;
};

/// Rechecks every admissibility condition and the measure bound from scratch.
/// The clearance and nested-measure checks scan breakpoints directly instead
/// of going through locate_interval.
std::vector<ConditionResult> certify(const ParamTable& table);

}  // namespace seqode
