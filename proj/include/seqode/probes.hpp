#pragma once

// Numerical probes of the non-existence mechanism. These produce evidence
// about approximate trajectories; none of them is, or claims to be, a proof.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "seqode/harness.hpp"

namespace seqode {

struct ProbeReport {
  std::string probe;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  nlohmann::ordered_json outcomes = nlohmann::ordered_json::object();
  nlohmann::ordered_json verdict = nlohmann::ordered_json::object();
  /// Overall pass flag used for exit codes. Exploratory probes leave it true.
  bool pass = true;
};

// ------------------------------------------------------------------- cone

struct ConeProbeConfig {
  Space space = Space::c0();
  SeqVec anchor = SeqVec::anchor();
  Index K = 4;
  double t_start = -0.3;
  double t_stop = -0.01;
  double step = 1e-5;
  Index dim = 48;
  double tol_cone = 0.1;
  /// Relative tolerance for the closed-form comparison at t_stop.
  double closed_form_tol = 0.05;
};

/// x0 = a + 1/2 e_k for k < K (frozen outside the cone) plus a perturbation
/// of norm t_start^2 / 2 on coordinates K..K+5 with seeded signs and sizes.
SeqVec cone_initial(const ConeProbeConfig& cfg, std::uint64_t seed);

/// Integrates h (centre t_N = 0) from t_start to t_stop with Euler and
/// counts iterates with ||Q_K(y - a)|| > (1 + tol_cone) t^2. Coordinates
/// k >= K are compared with y_k = a_k + C_k t^2, C_k = (x0_k - a_k)/t_start^2.
/// Throws std::invalid_argument if x0 is not strictly inside the cone.
ProbeReport cone_probe(const ConeProbeConfig& cfg, const SeqVec& x0);

// -------------------------------------------------------------------- gap

struct GapProbeConfig {
  Space space = Space::c0();
  SeqVec anchor = SeqVec::anchor();
  std::shared_ptr<const ParamTable> table;
  std::size_t level = 1;
  Index K = 4;
  double s = 1e-3;
  double step = 1e-5;
  Index dim = 48;
  double tol = 1e-9;
  /// Initial offset inside each cone, as a fraction of the squared distance.
  double lambda = 0.5;
  double oracle_tol = 0.05;
  double gap_tol = 0.2;
};

/// Runs g toward t_N from both sides, starting at distance w = delta_N on
/// the comparison curves a - lambda tau^2 u (left) and lambda tau^2 u
/// (right), u = Q_K a / ||Q_K a||, and stopping at distance s. Reports both
/// terminal Q_K values, their gap and the relative error of the deviations
/// against the closed form.
ProbeReport gap_probe(const GapProbeConfig& cfg);

// ----------------------------------------------------------------- refine

struct RefineProbeConfig {
  Space space = Space::c0();
  double t0 = 0.0;
  double t_end = 1.0;
  std::vector<double> steps{1e-2, 5e-3, 2.5e-3};
  Index dim = 48;
  /// Only meaningful for smooth fields; exploratory runs record distances
  /// without a verdict.
  bool expect_first_order = true;
};

/// Euler at each step size; distances between consecutive refinements at
/// shared nodes, plus the midpoint defect of every run.
ProbeReport refine_probe(const FieldHandle& field, const SeqVec& x0, const RefineProbeConfig& cfg);

}  // namespace seqode
