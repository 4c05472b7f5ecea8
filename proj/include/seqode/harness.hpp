#pragma once

// Fixed-step integrators and defect measurement.
//
// Trajectories live in the first D coordinates: each step is followed by
// the projection P_D, while the field itself is always evaluated on the
// exact representation of the current iterate.

#include <string>
#include <vector>

#include "seqode/lifts.hpp"

namespace seqode {

struct Polygon {
  struct Meta {
    std::string field;
    std::string integrator;
    double step = 0.0;
    Index dim = 0;
  };

  /// Strictly increasing, whatever the integration direction was.
  std::vector<double> times;
  std::vector<SeqVec> values;
  Meta meta;
  /// Set when a non-finite coefficient stopped the integration; the polygon
  /// then holds the nodes computed before the failure.
  bool failed = false;
  std::string error;

  std::size_t size() const { return times.size(); }
};

/// Explicit Euler from t0 to t_end (either direction) with |step| = step;
/// the last step is shortened to land on t_end. Throws
/// std::invalid_argument for step <= 0 or dim == 0.
Polygon euler(const FieldHandle& field, double t0, const SeqVec& x0, double step, double t_end, Index dim);
/// Heun (explicit trapezoid), same contract as euler().
Polygon heun(const FieldHandle& field, double t0, const SeqVec& x0, double step, double t_end, Index dim);

/// Picard iterates y^0 = x0, y^{m+1}(t) = x0 + int_{t0}^t field(s, y^m(s)) ds on
/// a uniform grid of `grid` segments over [t0, t0 + radius] (composite
/// trapezoid). Returns y^0..y^iterations.
std::vector<Polygon> picard(const FieldHandle& field, double t0, const SeqVec& x0, double radius,
                            std::size_t iterations, Index dim, std::size_t grid = 200);

enum class DefectMode { midpoint, left };

/// Per-segment norm of (y_{i+1} - y_i)/(t_{i+1} - t_i) - P_D field(s, y(s)),
/// s the midpoint (or left node).
std::vector<double> segment_defects(const Polygon& poly, const FieldHandle& field, const Space& space,
                                    DefectMode mode = DefectMode::midpoint);
/// Largest segment defect. Throws std::invalid_argument for fewer than two
/// nodes.
double defect(const Polygon& poly, const FieldHandle& field, const Space& space,
              DefectMode mode = DefectMode::midpoint);

/// Largest norm of the difference at nodes whose times coincide exactly.
double sup_distance(const Polygon& a, const Polygon& b, const Space& space);

}  // namespace seqode
