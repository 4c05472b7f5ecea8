#include "seqode/suites.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <random>
#include <stdexcept>

#include "seqode/lifts.hpp"

namespace seqode {

namespace {

using Rng = std::mt19937_64;

struct Sample {
  bool ok = true;
  std::array<double, 4> m{};
  std::string note;
};

constexpr std::size_t kMaxReported = 5;

// Runs fn(i) for every sample into its own slot. Exceptions are turned into
// failed samples so they never cross the parallel region.
template <class Fn>
std::vector<Sample> fan_out(std::size_t n, bool parallel, Fn fn) {
  std::vector<Sample> out(n);
  auto one = [&](std::size_t i) {
    try {
      out[i] = fn(i);
    } catch (const std::exception& e) {
      out[i].ok = false;
      out[i].note = std::string("exception: ") + e.what();
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < static_cast<long>(n); ++i) one(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) one(i);
  }
  return out;
}

void collect_failures(SuiteResult& res, const std::vector<Sample>& samples, const std::string& tag) {
  std::size_t failed = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].ok) continue;
    ++failed;
    if (res.failures.size() < kMaxReported) res.failures.push_back(tag + " sample " + std::to_string(i) + ": " + samples[i].note);
  }
  if (failed) res.pass = false;
  res.metrics[tag + "_failures"] = failed;
}

double column_max(const std::vector<Sample>& s, std::size_t c) {
  double m = 0.0;
  for (const auto& x : s) m = std::max(m, x.m[c]);
  return m;
}

// ----------------------------------------------------------- generators

Space pick_space(Rng& rng) {
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0: return Space::c0();
    case 1: return Space::lp(1.0);
    case 2: return Space::lp(2.0);
    default: return Space::lp(3.0);
  }
}

double log_uniform(Rng& rng, double lo, double hi) {
  return std::exp(std::uniform_real_distribution<double>(std::log(lo), std::log(hi))(rng));
}

double random_sign(Rng& rng) { return std::bernoulli_distribution(0.5)(rng) ? -1.0 : 1.0; }

// Random vector with up to max_dim head entries of magnitude ~scale and,
// with probability tail_prob, a tail whose first entry is also ~scale.
SeqVec random_vec(Rng& rng, Index max_dim, double scale, double tail_prob = 0.3, Index first = 1) {
  const Index dim = std::uniform_int_distribution<Index>(1, max_dim)(rng);
  std::bernoulli_distribution keep(0.8);
  SeqVec::Head head;
  for (Index k = first; k < first + dim; ++k)
    if (keep(rng)) head.emplace(k, random_sign(rng) * scale * log_uniform(rng, 1e-3, 10.0));
  std::optional<Tail> tail;
  if (std::bernoulli_distribution(tail_prob)(rng)) {
    const Index start = first + dim + std::uniform_int_distribution<Index>(0, 4)(rng);
    const double lead = random_sign(rng) * scale * std::uniform_real_distribution<double>(0.05, 1.0)(rng);
    tail = Tail{std::ldexp(lead, static_cast<int>(start)), start};
  }
  return SeqVec(std::move(head), tail);
}

// ----------------------------------------------------- monotone scaling

Sample monotone_case(Rng& rng, bool nondecreasing) {
  const Space space = pick_space(rng);
  const SeqVec x = random_vec(rng, 50, log_uniform(rng, 1e-2, 1e2));
  const std::size_t len = std::uniform_int_distribution<std::size_t>(0, 60)(rng);
  MonotoneWeights w;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < len; ++i) w.prefix.push_back(unit(rng));
  if (nondecreasing) {
    std::sort(w.prefix.begin(), w.prefix.end());
    const double last = w.prefix.empty() ? 0.0 : w.prefix.back();
    w.rest = std::uniform_real_distribution<double>(last, 1.0)(rng);
  } else {
    std::sort(w.prefix.begin(), w.prefix.end(), std::greater<>());
    const double last = w.prefix.empty() ? 1.0 : w.prefix.back();
    w.rest = std::uniform_real_distribution<double>(0.0, last)(rng);
  }
  const double nx = norm(space, x);
  const double ny = norm(space, monotone_scale(x, w));
  Sample s;
  s.m[0] = nx > 0.0 ? ny / nx : 0.0;
  s.ok = ny <= nx * (1.0 + 1e-12);
  if (!s.ok) s.note = space.str() + ": ||scaled||=" + format_double(ny) + " > ||x||=" + format_double(nx);
  return s;
}

SuiteResult monotone_suite(const SuiteConfig& cfg) {
  SuiteResult res;
  res.name = "lemma3";
  const std::size_t n = cfg.samples ? cfg.samples : 10000;
  for (const bool up : {true, false}) {
    const std::string tag = up ? "case_a" : "case_b";
    const auto samples = fan_out(n, cfg.parallel, [&](std::size_t i) {
      Rng rng(sample_seed(cfg.seed, "lemma3/" + tag, i));
      return monotone_case(rng, up);
    });
    collect_failures(res, samples, tag);
    res.metrics[tag + "_samples"] = n;
    res.metrics[tag + "_max_norm_ratio"] = column_max(samples, 0);
  }
  return res;
}

// ---------------------------------------------------------- capped map

Sample capphi_sample(Rng& rng) {
  const Space space = pick_space(rng);
  const double r = log_uniform(rng, 1e-2, 1e2);
  const SeqVec x = random_vec(rng, 50, r * log_uniform(rng, 0.05, 20.0));
  const Index n = std::uniform_int_distribution<Index>(1, 60)(rng);
  Sample s;
  std::string why;

  // Q_n commutes with Phi_r.
  const SeqVec phi = capphi(space, r, x);
  const double comm = max_abs_diff(project(Projection::Q(n), phi), capphi(space, r, project(Projection::Q(n), x)));
  s.m[0] = comm;
  if (!(comm <= 1e-12)) why += " commutation defect " + format_double(comm);

  // Tail identity on a constructed sample with ||Q_N x|| <= r.
  const Index N = std::uniform_int_distribution<Index>(1, 30)(rng);
  SeqVec low = project(Projection::P(N - 1), random_vec(rng, 40, r * log_uniform(rng, 0.1, 20.0)));
  SeqVec high = project(Projection::Q(N), random_vec(rng, 40 + N, r, 0.5));
  if (high.is_zero()) high = SeqVec::basis(N, r);
  high = high.scaled(r * std::uniform_real_distribution<double>(0.05, 0.999)(rng) / norm(space, high));
  const SeqVec y = combine(1.0, low, 1.0, high);
  if (norm(space, project(Projection::Q(N), y)) <= r) {
    const SeqVec phy = capphi(space, r, y);
    for (Index m = N; m <= N + 12; ++m) {
      const double d = max_abs_diff(project(Projection::Q(m), phy), project(Projection::Q(m), y));
      if (d != 0.0) {
        why += " tail identity: Q_" + std::to_string(m) + " differs by " + format_double(d);
        break;
      }
    }
  }

  // Norm bounds.
  const double nx = norm(space, x);
  const double np = norm(space, phi);
  s.m[1] = nx > 0.0 ? np / nx : 0.0;
  s.m[2] = np / (2.0 * r);
  if (!(np <= nx * (1.0 + 1e-12))) why += " ||Phi||=" + format_double(np) + " > ||x||=" + format_double(nx);
  if (!(np <= 2.0 * r)) why += " ||Phi||=" + format_double(np) + " > 2r";
  if (nx >= 2.0 * r && !(np < 2.0 * r)) why += " strict 2r bound fails with ||x|| >= 2r";
  s.m[3] = nx >= 2.0 * r ? 1.0 : 0.0;

  s.ok = why.empty();
  if (!s.ok) s.note = space.str() + " r=" + format_double(r) + ":" + why;
  return s;
}

// All suffix norms at distance >= 1e-3 from r and 2r.
bool non_kink(const Space& space, double r, const SeqVec& x) {
  SeqVec xm = x.tail() ? x.materialized(x.tail()->start + 64) : x;
  for (const auto& [k, q] : suffix_norms(space, xm))
    if (std::abs(q - r) < 1e-3 || std::abs(q - 2.0 * r) < 1e-3) return false;
  return true;
}

Sample continuity_sample(Rng& rng) {
  const Space space = pick_space(rng);
  const double r = 1.0;
  SeqVec x;
  do {
    x = random_vec(rng, 30, log_uniform(rng, 0.3, 3.0), 0.3);
  } while (!non_kink(space, r, x));
  const SeqVec px = capphi(space, r, x);
  double worst = 0.0;
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int p = 0; p < 100; ++p) {
    SeqVec::Head dh;
    for (Index k = 1; k <= 40; ++k) dh.emplace(k, unit(rng));
    SeqVec d(std::move(dh));
    d = d.scaled(1e-8 * std::uniform_real_distribution<double>(0.0, 1.0)(rng) / norm(space, d));
    const SeqVec y = combine(1.0, x, 1.0, d);
    worst = std::max(worst, norm(space, combine(1.0, px, -1.0, capphi(space, r, y))));
  }
  Sample s;
  s.m[0] = worst;
  s.ok = worst <= 1e-6;
  if (!s.ok) s.note = space.str() + ": jump " + format_double(worst);
  return s;
}

SuiteResult capphi_suite(const SuiteConfig& cfg) {
  SuiteResult res;
  res.name = "lemma4";
  const std::size_t n = cfg.samples ? cfg.samples : 10000;
  const auto samples = fan_out(n, cfg.parallel, [&](std::size_t i) {
    Rng rng(sample_seed(cfg.seed, "lemma4", i));
    return capphi_sample(rng);
  });
  collect_failures(res, samples, "properties");
  res.metrics["properties_samples"] = n;
  res.metrics["max_commutation_defect"] = column_max(samples, 0);
  res.metrics["max_norm_ratio"] = column_max(samples, 1);
  res.metrics["max_norm_over_2r"] = column_max(samples, 2);
  std::size_t strict = 0;
  for (const auto& s : samples) strict += s.m[3] > 0.0;
  res.metrics["strict_bound_samples"] = strict;

  const auto cont = fan_out(100, cfg.parallel, [&](std::size_t i) {
    Rng rng(sample_seed(cfg.seed, "lemma4/continuity", i));
    return continuity_sample(rng);
  });
  collect_failures(res, cont, "continuity");
  res.metrics["continuity_points"] = cont.size();
  res.metrics["continuity_max_jump"] = column_max(cont, 0);
  return res;
}

// --------------------------------------------------------------- h bound

SuiteResult hbound_suite(const SuiteConfig& cfg) {
  SuiteResult res;
  res.name = "hbound";
  const std::size_t n = cfg.samples ? cfg.samples : 10000;
  const SeqVec a = SeqVec::anchor();
  const auto samples = fan_out(n, cfg.parallel, [&](std::size_t i) {
    Rng rng(sample_seed(cfg.seed, "hbound", i));
    const Space space = pick_space(rng);
    const double t = random_sign(rng) * log_uniform(rng, 1e-6, 10.0);
    SeqVec x;
    switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
      case 0: x = a.scaled(log_uniform(rng, 0.1, 10.0)); break;
      case 1: x = combine(1.0, a, 1.0, random_vec(rng, 30, t * t * log_uniform(rng, 0.1, 10.0), 0.5)); break;
      default: x = random_vec(rng, 50, log_uniform(rng, 1e-8, 1e2), 0.5); break;
    }
    const double nh = norm(space, field_h(space, a, t, x));
    Sample s;
    s.m[0] = nh / (4.0 * std::abs(t));
    s.ok = nh <= 4.0 * std::abs(t) * (1.0 + 1e-12);
    if (!s.ok) s.note = space.str() + " t=" + format_double(t) + ": ||h||=" + format_double(nh);
    return s;
  });
  collect_failures(res, samples, "bound");
  res.metrics["samples"] = n;
  res.metrics["max_ratio"] = column_max(samples, 0);
  return res;
}

// ------------------------------------------------------------ g structure

SuiteResult gincrement_suite(const SuiteConfig& cfg) {
  SuiteResult res;
  res.name = "gincrement";
  const std::size_t n = cfg.samples ? cfg.samples : 1000;
  const std::size_t depth = cfg.depth ? cfg.depth : 40;
  const auto table = std::make_shared<const ParamTable>(gen_params(depth));
  const SeqVec a = SeqVec::anchor();
  const auto samples = fan_out(n, cfg.parallel, [&](std::size_t i) {
    Rng rng(sample_seed(cfg.seed, "gincrement", i));
    const std::size_t level = std::uniform_int_distribution<std::size_t>(1, depth)(rng);
    const auto& num = table->level(level).numeric;
    double t = num.t + std::uniform_real_distribution<double>(-2.2, 2.2)(rng) * num.delta;
    if (std::bernoulli_distribution(0.1)(rng)) t = std::uniform_real_distribution<double>(-3.0, 3.0)(rng);
    SeqVec x = random_vec(rng, 40, log_uniform(rng, 1e-8, 1.0), 0.4);
    if (std::bernoulli_distribution(0.3)(rng)) x = combine(1.0, a, 1.0, x);
    const SeqVec gn = eval_gN(cfg.space, a, *table, level, t, x);
    const SeqVec gp = eval_gN(cfg.space, a, *table, level - 1, t, x);
    const double inc = norm(cfg.space, combine(1.0, gn, -1.0, gp));
    Sample s;
    s.m[0] = inc / num.eps;
    s.ok = inc <= num.eps;
    if (!s.ok) s.note = "n=" + std::to_string(level) + " t=" + format_double(t) + ": increment " + format_double(inc);
    return s;
  });
  collect_failures(res, samples, "increment");
  res.metrics["samples"] = n;
  res.metrics["depth"] = depth;
  res.metrics["max_increment_over_eps"] = column_max(samples, 0);
  return res;
}

SuiteResult geq5_suite(const SuiteConfig& cfg) {
  SuiteResult res;
  res.name = "geq5";
  const std::size_t n = cfg.samples ? cfg.samples : 100;
  const std::size_t depth = cfg.depth ? cfg.depth : 60;
  const auto table = std::make_shared<const ParamTable>(gen_params(depth));
  const SeqVec a = SeqVec::anchor();
  const std::size_t top = std::min<std::size_t>(10, depth - 1);
  const auto samples = fan_out(n, cfg.parallel, [&](std::size_t i) {
    Rng rng(sample_seed(cfg.seed, "geq5", i));
    const std::size_t N = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(1, top))(rng);
    const ParamLevel& lvl = table->level(N);
    // Dyadic offsets within 3 delta_N of t_N, kept only when every later
    // level's bump support, doubled, misses them (certified exactly).
    const double span = 3.0 * lvl.numeric.delta * std::ldexp(1.0, 40);
    Rational t;
    bool certified = false;
    for (int attempt = 0; attempt < 1000 && !certified; ++attempt) {
      const auto m = static_cast<long>(std::uniform_real_distribution<double>(-span, span)(rng));
      t = lvl.t + Rational(m) * Rational::pow2(-40);
      certified = true;
      for (std::size_t k = N + 1; k <= depth && certified; ++k) {
        const Quad dist((t - table->level(k).t).abs());
        certified = dist >= Quad(Rational(4)) * table->level(k).delta();
      }
    }
    Sample s;
    if (!certified) {
      s.ok = false;
      s.note = "no certified time found";
      return s;
    }
    const double td = t.to_double();
    const SeqVec x = combine(1.0, a, 1.0, random_vec(rng, 30, log_uniform(rng, 1e-8, 1e-2), 0.3));
    const GValue g = eval_g(cfg.space, a, *table, std::ldexp(1.0, -static_cast<int>(N + 1)), td, x);
    double worst = 0.0;
    for (std::size_t M = N; M <= depth; ++M) worst = std::max(worst, max_abs_diff(g.value, eval_gN(cfg.space, a, *table, M, td, x)));
    s.m[0] = worst;
    s.m[1] = g.value.is_zero() ? 0.0 : 1.0;
    s.ok = worst <= 1e-12 && g.level == N;
    if (!s.ok) s.note = "N=" + std::to_string(N) + " t=" + t.str() + ": deviation " + format_double(worst);
    return s;
  });
  collect_failures(res, samples, "identity");
  res.metrics["samples"] = n;
  res.metrics["depth"] = depth;
  res.metrics["max_deviation"] = column_max(samples, 0);
  std::size_t nonzero = 0;
  for (const auto& s : samples) nonzero += s.m[1] > 0.0;
  res.metrics["nonzero_g_samples"] = nonzero;
  return res;
}

SuiteResult eq6_suite(const SuiteConfig& cfg) {
  SuiteResult res;
  res.name = "eq6";
  const std::size_t depth = cfg.depth ? cfg.depth : 200;
  const ParamTable table = gen_params(depth);
  const auto cert = certify(table);
  for (const auto& c : cert) {
    if (c.pass) continue;
    res.pass = false;
    res.failures.push_back(c.id + ": " + c.witness);
  }
  res.metrics["depth"] = depth;
  res.metrics["certificate"] = certificate_to_json(cert);
  res.metrics["N1_j0_sum_rounded_up"] = delta_measure_bound(table, 1, 0);
  res.metrics["N1_j0_limit"] = measure_limit(table, 1, 0).str();
  return res;
}

// ----------------------------------------------------------------- lifts

SuiteResult lifts_suite(const SuiteConfig& cfg) {
  SuiteResult res;
  res.name = "lifts";
  const std::size_t n = cfg.samples ? cfg.samples : 1000;
  const std::size_t depth = cfg.depth ? cfg.depth : 20;
  const auto table = std::make_shared<const ParamTable>(gen_params(depth));
  const SeqVec a = SeqVec::anchor();
  const FieldHandle inner_g = make_g(cfg.space, a, table, std::ldexp(1.0, -static_cast<int>(depth + 1)));
  const FieldHandle f = autonomize(inner_g);

  const auto auto_samples = fan_out(n, cfg.parallel, [&](std::size_t i) {
    Rng rng(sample_seed(cfg.seed, "lifts/auto", i));
    const auto& num = table->level(std::uniform_int_distribution<std::size_t>(1, depth)(rng)).numeric;
    const double time = num.t + std::uniform_real_distribution<double>(-2.0, 2.0)(rng) * num.delta;
    SeqVec rest = combine(1.0, a, 1.0, random_vec(rng, 30, log_uniform(rng, 1e-6, 1.0), 0.3));
    const SeqVec x = combine(1.0, SeqVec::basis(1, time), 1.0, apply_section({1, 2}, rest));
    const double c1 = coeff(1, f(0.0, x));
    Sample s;
    s.m[0] = std::abs(c1 - 1.0);
    s.ok = c1 == 1.0;
    if (!s.ok) s.note = "first coordinate " + format_double(c1);
    return s;
  });
  collect_failures(res, auto_samples, "autonomize");
  res.metrics["autonomize_samples"] = n;

  // c0 (+) c0 interleaved; the quotient keeps the even coordinates.
  const CoordinateSelection even{2, 2};
  const FieldHandle inner_h = make_h(Space::c0(), a);
  const FieldHandle lifted = quotient_lift(inner_h, even, even);
  const auto lift_samples = fan_out(n, cfg.parallel, [&](std::size_t i) {
    Rng rng(sample_seed(cfg.seed, "lifts/quotient", i));
    const double t = random_sign(rng) * log_uniform(rng, 1e-3, 2.0);
    const SeqVec x = random_vec(rng, 80, log_uniform(rng, 1e-4, 2.0), 0.3);
    const double d = max_abs_diff(apply_quotient(even, lifted(t, x)), inner_h(t, apply_quotient(even, x)));
    const SeqVec y = random_vec(rng, 40, 1.0, 0.3);
    const double r = max_abs_diff(apply_quotient(even, apply_section(even, y)), y);
    Sample s;
    s.m[0] = d;
    s.m[1] = r;
    s.ok = d <= 1e-12 && r == 0.0;
    if (!s.ok) s.note = "t=" + format_double(t) + ": lift defect " + format_double(d) + ", section defect " + format_double(r);
    return s;
  });
  collect_failures(res, lift_samples, "quotient_lift");
  res.metrics["quotient_lift_samples"] = n;
  res.metrics["quotient_lift_max_defect"] = column_max(lift_samples, 0);
  return res;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lemma3", "lemma4", "hbound", "gincrement", "geq5", "eq6", "lifts"};
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg) {
  if (name == "lemma3") return monotone_suite(cfg);
  if (name == "lemma4") return capphi_suite(cfg);
  if (name == "hbound") return hbound_suite(cfg);
  if (name == "gincrement") return gincrement_suite(cfg);
  if (name == "geq5") return geq5_suite(cfg);
  if (name == "eq6") return eq6_suite(cfg);
  if (name == "lifts") return lifts_suite(cfg);
  throw std::invalid_argument("unknown suite: " + name);
}

Json suite_to_json(const SuiteResult& r) {
  Json j;
  j["suite"] = r.name;
  j["pass"] = r.pass;
  j["metrics"] = r.metrics;
  j["failures"] = r.failures;
  return j;
}

std::uint64_t sample_seed(std::uint64_t seed, const std::string& suite, std::uint64_t index) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (unsigned char c : suite) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  // splitmix64 finalizer
  std::uint64_t z = seed ^ h ^ (index * 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace seqode
