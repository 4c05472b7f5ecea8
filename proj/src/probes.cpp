#include "seqode/probes.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "seqode/json_io.hpp"

namespace seqode {

// ------------------------------------------------------------------- cone

SeqVec cone_initial(const ConeProbeConfig& cfg, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> size(0.2, 1.0);
  std::bernoulli_distribution flip(0.5);
  SeqVec::Head frozen, bump_part;
  for (Index k = 1; k < cfg.K; ++k) frozen.emplace(k, 0.5);
  for (Index k = cfg.K; k < cfg.K + 6; ++k) bump_part.emplace(k, (flip(rng) ? -1.0 : 1.0) * size(rng));
  SeqVec p(std::move(bump_part));
  p = p.scaled(0.5 * cfg.t_start * cfg.t_start / norm(cfg.space, p));
  return combine(1.0, combine(1.0, cfg.anchor, 1.0, SeqVec(std::move(frozen))), 1.0, p);
}

ProbeReport cone_probe(const ConeProbeConfig& cfg, const SeqVec& x0) {
  if (cfg.K == 0 || cfg.dim <= cfg.K) throw std::invalid_argument("cone probe needs 1 <= K < dim");
  if (!(cfg.t_start < cfg.t_stop && cfg.t_stop < 0.0)) throw std::invalid_argument("cone probe needs t_start < t_stop < 0");
  const Projection QK = Projection::Q(cfg.K);
  const double r0 = cfg.t_start * cfg.t_start;
  const double d0 = norm(cfg.space, project(QK, combine(1.0, x0, -1.0, cfg.anchor)));
  if (!(d0 < r0)) throw std::invalid_argument("initial value is not inside the cone");

  const Polygon poly = euler(make_h(cfg.space, cfg.anchor), cfg.t_start, x0, cfg.step, cfg.t_stop, cfg.dim);
  const SeqVec aD = project(Projection::P(cfg.dim), cfg.anchor);

  std::size_t violations = 0;
  double worst_ratio = 0.0;
  double terminal = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const double t2 = poly.times[i] * poly.times[i];
    const double d = norm(cfg.space, project(QK, combine(1.0, poly.values[i], -1.0, aD)));
    worst_ratio = std::max(worst_ratio, d / t2);
    if (d > (1.0 + cfg.tol_cone) * t2) ++violations;
    terminal = d;
  }

  // Closed form on the tail coordinates: y_k - a_k = C_k t^2.
  const double t_end = poly.times.back();
  double worst_rel = 0.0;
  std::size_t compared = 0;
  for (Index k = cfg.K; k <= cfg.dim; ++k) {
    const double c = (x0.coeff(k) - cfg.anchor.coeff(k)) / r0;
    if (c == 0.0) continue;
    const double predicted = c * t_end * t_end;
    const double actual = poly.values.back().coeff(k) - aD.coeff(k);
    worst_rel = std::max(worst_rel, std::abs(actual - predicted) / std::abs(predicted));
    ++compared;
  }

  ProbeReport rep;
  rep.probe = "cone";
  rep.params = {{"space", cfg.space.str()}, {"K", cfg.K},          {"t_start", cfg.t_start},
                {"t_stop", cfg.t_stop},     {"step", cfg.step},    {"dim", cfg.dim},
                {"tol_cone", cfg.tol_cone}, {"closed_form_tol", cfg.closed_form_tol}};
  rep.outcomes = {{"nodes", poly.size()},
                  {"failed", poly.failed},
                  {"violations", violations},
                  {"max_cone_ratio", worst_ratio},
                  {"terminal_t", t_end},
                  {"terminal_distance", terminal},
                  {"closed_form_coordinates", compared},
                  {"closed_form_max_rel_error", compared ? Json(worst_rel) : Json(nullptr)}};
  const bool in_cone = violations == 0 && !poly.failed;
  const bool closed_form = worst_rel <= cfg.closed_form_tol;
  rep.verdict = {{"in_cone", in_cone}, {"closed_form", closed_form}};
  rep.pass = in_cone && closed_form;
  return rep;
}

// -------------------------------------------------------------------- gap

ProbeReport gap_probe(const GapProbeConfig& cfg) {
  if (!cfg.table) throw std::invalid_argument("gap probe needs a parameter table");
  if (cfg.level == 0 || cfg.level > cfg.table->size()) throw std::invalid_argument("gap probe level outside the table");
  if (cfg.K == 0 || cfg.dim <= cfg.K) throw std::invalid_argument("gap probe needs 1 <= K < dim");
  if (levels_for_tolerance(cfg.tol) < cfg.level)
    throw std::invalid_argument("tolerance too coarse: g would not include the target level");
  if (!(cfg.lambda > 0.0 && cfg.lambda < 1.0)) throw std::invalid_argument("lambda must lie in (0, 1)");

  const ParamLevel& lvl = cfg.table->level(cfg.level);
  const double tN = lvl.numeric.t;
  // Start just inside the plateau of the level-N bump.
  const double w = lvl.numeric.delta * (1.0 - 1e-6);
  if (!(cfg.s > 0.0 && cfg.s < w)) throw std::invalid_argument("approach distance s must lie in (0, delta_N)");

  const FieldHandle g = make_g(cfg.space, cfg.anchor, cfg.table, cfg.tol);
  const Projection QK = Projection::Q(cfg.K);
  const SeqVec qa = project(QK, cfg.anchor);
  const double qa_norm = norm(cfg.space, qa);
  const SeqVec u = qa.scaled(1.0 / qa_norm);

  const SeqVec x_left = combine(1.0, cfg.anchor, -cfg.lambda * w * w, u);
  const SeqVec x_right = u.scaled(cfg.lambda * w * w);
  const Polygon left = euler(g, tN - w, x_left, cfg.step, tN - cfg.s, cfg.dim);
  const Polygon right = euler(g, tN + w, x_right, cfg.step, tN + cfg.s, cfg.dim);

  const SeqVec aD = project(Projection::P(cfg.dim), cfg.anchor);
  std::size_t violations = 0;
  for (std::size_t i = 0; i < left.size(); ++i) {
    const double tau = left.times[i] - tN;
    if (norm(cfg.space, project(QK, combine(1.0, left.values[i], -1.0, aD))) > tau * tau) ++violations;
  }
  for (std::size_t i = 0; i < right.size(); ++i) {
    const double tau = right.times[i] - tN;
    if (norm(cfg.space, project(QK, right.values[i])) > tau * tau) ++violations;
  }

  const SeqVec L = project(QK, left.values.back());
  const SeqVec R = project(QK, right.values.front());
  const double gap = norm(cfg.space, combine(1.0, L, -1.0, R));
  const double gap_rel = std::abs(gap - qa_norm) / qa_norm;

  // Closed form, restricted to the first dim coordinates.
  const SeqVec qaD = project(Projection::P(cfg.dim), qa);
  const SeqVec uD = project(Projection::P(cfg.dim), u);
  const double tauL = left.times.back() - tN;
  const double tauR = right.times.front() - tN;
  const double devL = cfg.lambda * tauL * tauL;
  const double devR = cfg.lambda * tauR * tauR;
  const double uD_norm = norm(cfg.space, uD);
  const double rel_left =
      norm(cfg.space, combine(1.0, combine(1.0, L, -1.0, qaD), devL, uD)) / (devL * uD_norm);
  const double rel_right = norm(cfg.space, combine(1.0, R, -devR, uD)) / (devR * uD_norm);

  ProbeReport rep;
  rep.probe = "gap";
  rep.params = {{"space", cfg.space.str()}, {"level", cfg.level}, {"K", cfg.K},         {"s", cfg.s},
                {"step", cfg.step},         {"dim", cfg.dim},     {"tol", cfg.tol},     {"lambda", cfg.lambda},
                {"oracle_tol", cfg.oracle_tol}, {"gap_tol", cfg.gap_tol}};
  rep.outcomes = {{"t_N", lvl.t.str()},
                  {"delta_N", to_json(lvl.delta())},
                  {"window", w},
                  {"g_error_bound", g.error_bound()},
                  {"left_terminal_t", left.times.back()},
                  {"right_terminal_t", right.times.front()},
                  {"left_terminal_QK", seqvec_to_json(L)},
                  {"right_terminal_QK", seqvec_to_json(R)},
                  {"gap", gap},
                  {"expected_gap", qa_norm},
                  {"gap_rel_error", gap_rel},
                  {"left_rel_error", rel_left},
                  {"right_rel_error", rel_right},
                  {"cone_violations", violations},
                  {"failed", left.failed || right.failed}};
  const bool gap_ok = gap_rel <= cfg.gap_tol;
  const bool oracle_ok = rel_left <= cfg.oracle_tol && rel_right <= cfg.oracle_tol;
  rep.verdict = {{"gap_near_QK_a", gap_ok}, {"matches_closed_form", oracle_ok}, {"in_cones", violations == 0}};
  rep.pass = gap_ok && oracle_ok && violations == 0 && !left.failed && !right.failed;
  return rep;
}

// ----------------------------------------------------------------- refine

ProbeReport refine_probe(const FieldHandle& field, const SeqVec& x0, const RefineProbeConfig& cfg) {
  if (cfg.steps.size() < 3) throw std::invalid_argument("refine probe needs at least three step sizes");
  std::vector<double> steps;
  for (std::size_t i = 0; i < cfg.steps.size(); ++i) {
    if (!(cfg.steps[i] > 0.0)) throw std::invalid_argument("step sizes must be positive");
    if (i > 0 && std::abs(cfg.steps[i] - 0.5 * cfg.steps[i - 1]) > 1e-12 * cfg.steps[i])
      throw std::invalid_argument("each step must halve the previous");
    // Exact halves keep the coarse nodes on the fine grid.
    steps.push_back(i == 0 ? cfg.steps[0] : 0.5 * steps.back());
  }
  std::vector<Polygon> runs;
  Json defects = Json::array();
  for (double h : steps) {
    runs.push_back(euler(field, cfg.t0, x0, h, cfg.t_end, cfg.dim));
    defects.push_back(defect(runs.back(), field, cfg.space));
  }
  Json distances = Json::array();
  Json ratios = Json::array();
  std::vector<double> d;
  for (std::size_t i = 0; i + 1 < runs.size(); ++i) d.push_back(sup_distance(runs[i], runs[i + 1], cfg.space));
  bool halving = true;
  for (std::size_t i = 0; i < d.size(); ++i) {
    distances.push_back(d[i]);
    if (i + 1 < d.size()) {
      const double r = d[i + 1] > 0.0 ? d[i] / d[i + 1] : 0.0;
      ratios.push_back(r);
      if (!(std::abs(r - 2.0) <= 0.4)) halving = false;
    }
  }
  const bool all_zero = std::all_of(d.begin(), d.end(), [](double v) { return v == 0.0; });

  ProbeReport rep;
  rep.probe = "refine";
  rep.params = {{"space", cfg.space.str()}, {"field", field.label()}, {"t0", cfg.t0},
                {"t_end", cfg.t_end},       {"steps", steps},     {"dim", cfg.dim}};
  rep.outcomes = {{"distances", distances}, {"ratios", ratios}, {"defects", defects}};
  if (cfg.expect_first_order) {
    rep.verdict = {{"first_order", halving || all_zero}};
    rep.pass = halving || all_zero;
  } else {
    rep.verdict = {{"evidence_only", true}};
  }
  return rep;
}

}  // namespace seqode
