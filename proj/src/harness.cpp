#include "seqode/harness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace seqode {

namespace {

bool finite(const SeqVec& x) {
  for (const auto& [k, v] : x.head())
    if (!std::isfinite(v)) return false;
  return !x.tail() || std::isfinite(x.tail()->coef);
}

std::vector<double> grid_times(double t0, double t_end, double step) {
  const double span = std::abs(t_end - t0);
  const double dir = t_end >= t0 ? 1.0 : -1.0;
  auto count = static_cast<std::size_t>(std::ceil(span / step - 1e-9));
  std::vector<double> times;
  times.reserve(count + 1);
  for (std::size_t i = 0; i < count; ++i) times.push_back(t0 + dir * (static_cast<double>(i) * step));
  times.push_back(t_end);
  return times;
}

enum class Scheme { euler, heun };

Polygon integrate(Scheme scheme, const FieldHandle& field, double t0, const SeqVec& x0, double step, double t_end,
                  Index dim) {
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  if (dim == 0) throw std::invalid_argument("truncation dimension must be >= 1");
  const Projection trunc = Projection::P(dim);

  Polygon poly;
  poly.meta = {field.label(), scheme == Scheme::euler ? "euler" : "heun", step, dim};
  const std::vector<double> times = grid_times(t0, t_end, step);
  poly.times.push_back(times.front());
  poly.values.push_back(project(trunc, x0));

  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    const double t = times[i];
    const double h = times[i + 1] - t;
    const SeqVec& y = poly.values.back();
    const SeqVec k1 = field(t, y);
    SeqVec next;
    if (scheme == Scheme::euler) {
      next = combine(1.0, y, h, k1);
    } else {
      const SeqVec k2 = field(times[i + 1], combine(1.0, y, h, k1));
      next = combine(1.0, y, 0.5 * h, combine(1.0, k1, 1.0, k2));
    }
    next = project(trunc, next);
    if (!finite(next)) {
      poly.failed = true;
      poly.error = "non-finite iterate at t=" + std::to_string(times[i + 1]);
      break;
    }
    poly.times.push_back(times[i + 1]);
    poly.values.push_back(std::move(next));
  }
  if (t_end < t0) {
    std::reverse(poly.times.begin(), poly.times.end());
    std::reverse(poly.values.begin(), poly.values.end());
  }
  return poly;
}

}  // namespace

Polygon euler(const FieldHandle& field, double t0, const SeqVec& x0, double step, double t_end, Index dim) {
  return integrate(Scheme::euler, field, t0, x0, step, t_end, dim);
}

Polygon heun(const FieldHandle& field, double t0, const SeqVec& x0, double step, double t_end, Index dim) {
  return integrate(Scheme::heun, field, t0, x0, step, t_end, dim);
}

std::vector<Polygon> picard(const FieldHandle& field, double t0, const SeqVec& x0, double radius,
                            std::size_t iterations, Index dim, std::size_t grid) {
  if (iterations == 0) throw std::invalid_argument("picard needs at least one iteration");
  if (!(radius > 0.0) || grid == 0) throw std::invalid_argument("picard needs radius > 0 and a non-empty grid");
  if (dim == 0) throw std::invalid_argument("truncation dimension must be >= 1");
  const Projection trunc = Projection::P(dim);
  const double h = radius / static_cast<double>(grid);

  Polygon base;
  base.meta = {field.label(), "picard", h, dim};
  for (std::size_t i = 0; i <= grid; ++i) base.times.push_back(t0 + static_cast<double>(i) * h);
  base.values.assign(grid + 1, project(trunc, x0));

  std::vector<Polygon> iterates{base};
  for (std::size_t m = 0; m < iterations; ++m) {
    const Polygon& prev = iterates.back();
    std::vector<SeqVec> f(grid + 1);
    for (std::size_t i = 0; i <= grid; ++i) f[i] = field(prev.times[i], prev.values[i]);

    Polygon next = base;
    for (std::size_t i = 0; i < grid; ++i) {
      SeqVec y = project(trunc, combine(1.0, next.values[i], 0.5 * h, combine(1.0, f[i], 1.0, f[i + 1])));
      if (!finite(y)) {
        next.failed = true;
        next.error = "non-finite picard iterate";
        next.times.resize(i + 1);
        next.values.resize(i + 1);
        break;
      }
      next.values[i + 1] = std::move(y);
    }
    const bool failed = next.failed;
    iterates.push_back(std::move(next));
    if (failed) break;
  }
  return iterates;
}

std::vector<double> segment_defects(const Polygon& poly, const FieldHandle& field, const Space& space,
                                    DefectMode mode) {
  if (poly.size() < 2) throw std::invalid_argument("defect needs at least two nodes");
  const Projection trunc = Projection::P(poly.meta.dim == 0 ? Index(1) << 40 : poly.meta.dim);
  std::vector<double> out;
  out.reserve(poly.size() - 1);
  for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
    const double dt = poly.times[i + 1] - poly.times[i];
    const SeqVec slope = combine(1.0 / dt, poly.values[i + 1], -1.0 / dt, poly.values[i]);
    SeqVec f;
    if (mode == DefectMode::left) {
      f = field(poly.times[i], poly.values[i]);
    } else {
      const SeqVec mid = combine(0.5, poly.values[i], 0.5, poly.values[i + 1]);
      f = field(poly.times[i] + 0.5 * dt, mid);
    }
    out.push_back(norm(space, combine(1.0, slope, -1.0, project(trunc, f))));
  }
  return out;
}

double defect(const Polygon& poly, const FieldHandle& field, const Space& space, DefectMode mode) {
  const auto d = segment_defects(poly, field, space, mode);
  return *std::max_element(d.begin(), d.end());
}

double sup_distance(const Polygon& a, const Polygon& b, const Space& space) {
  double worst = 0.0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    while (j < b.size() && b.times[j] < a.times[i]) ++j;
    if (j == b.size()) break;
    if (b.times[j] == a.times[i]) worst = std::max(worst, norm(space, combine(1.0, a.values[i], -1.0, b.values[j])));
  }
  return worst;
}

}  // namespace seqode
