#pragma once

// The pathological vector fields: the plateau bump, monotone coordinate
// scaling, the capped map Phi_r, the basic field h and the time-spread
// fields g_N and g.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "seqode/params.hpp"
#include "seqode/seqvec.hpp"

namespace seqode {

/// Piecewise-linear plateau: 1 on [-r, r], 0 outside (-2r, 2r), linear in
/// between. Throws std::domain_error for r <= 0.
double bump(double r, double t);

/// alpha_n for a sequence given as a finite prefix plus a constant
/// continuation.
struct MonotoneWeights {
  std::vector<double> prefix;
  double rest = 1.0;

  double at(Index n) const { return n <= prefix.size() ? prefix[n - 1] : rest; }
  bool nondecreasing() const;
  bool nonincreasing() const;
};

/// sum_n alpha_n f_n(x) e_n. Throws std::domain_error when a weight leaves
/// [0, 1]. The norm bound holds for non-decreasing weights (every tail
/// projection has norm 1) and for non-increasing ones (monotone basis); the
/// caller picks the case.
SeqVec monotone_scale(const SeqVec& x, const MonotoneWeights& alpha);

/// Phi_r(x) = sum_k bump(r, ||Q_k x||) f_k(x) e_k.
///
/// ||Q_k x|| is non-increasing in k, so past the first k0 with
/// ||Q_k0 x|| <= r every factor is 1 and the remainder of x (including its
/// tail) passes through untouched. Tail entries below k0 are materialized.
SeqVec capphi(const Space& space, double r, const SeqVec& x);

/// h(t, x) = 2t Phi_1(x / t^2) for t > 0, 0 at t = 0 and
/// 2t Phi_1((x - a) / t^2) for t < 0. ||h(t, x)|| <= 4|t|.
SeqVec field_h(const Space& space, const SeqVec& anchor, double t, const SeqVec& x);

/// g_N(t, x) by the recursion
///   g_n = g_{n-1} + bump(delta_n, t - t_n) (h(t - t_n, x) - Phi_{eps_n/4}(g_{n-1})),
/// g_0 = 0. Levels whose bump vanishes leave g unchanged and are skipped.
SeqVec eval_gN(const Space& space, const SeqVec& anchor, const ParamTable& table, std::size_t N, double t,
               const SeqVec& x);

/// Thrown when a table is too short to certify a requested tolerance.
class InsufficientLevels : public std::runtime_error {
 public:
  InsufficientLevels(std::size_t required, std::size_t available);
  std::size_t required() const { return required_; }

 private:
  std::size_t required_;
};

/// Smallest N with sum_{n > N} eps_n = 2^-(N+1) <= tol.
std::size_t levels_for_tolerance(double tol);

struct GValue {
  SeqVec value;
  std::size_t level = 0;
  double error_bound = 0.0;
};

/// g(t, x) up to the certified uniform error 2^-(N+1) <= tol.
GValue eval_g(const Space& space, const SeqVec& anchor, const ParamTable& table, double tol, double t,
              const SeqVec& x);

}  // namespace seqode
