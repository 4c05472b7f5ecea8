#include "seqode/commands.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "seqode/probes.hpp"
#include "seqode/suites.hpp"

namespace seqode {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace

// ---------------------------------------------------------------- RunConfig

void RunConfig::validate() const {
  if (anchor != "geometric") throw std::invalid_argument("unknown anchor: " + anchor);
  if (depth < 1) throw std::invalid_argument("depth must be at least 1");
  if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("tol must lie in (0, 1)");
  if (dim < 1) throw std::invalid_argument("dim must be at least 1");
}

SeqVec RunConfig::anchor_vector() const { return SeqVec::anchor(); }

Json RunConfig::to_json() const {
  Json j;
  j["space"] = space.str();
  j["anchor"] = anchor;
  j["depth"] = depth;
  j["tol"] = tol;
  j["dim"] = dim;
  j["seed"] = seed;
  return j;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("config file must hold a JSON object");
  RunConfig c;
  try {
    for (const auto& [key, val] : j.items()) {
      if (key == "space") c.space = Space::parse(val.get<std::string>());
      else if (key == "anchor") c.anchor = val.get<std::string>();
      else if (key == "depth") c.depth = val.get<std::size_t>();
      else if (key == "tol") c.tol = val.get<double>();
      else if (key == "dim") c.dim = val.get<Index>();
      else if (key == "seed") c.seed = val.get<std::uint64_t>();
      else if (key == "out") c.out = val.get<std::string>();
      else throw std::invalid_argument("unknown config key: " + key);
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad config value: ") + e.what());
  }
  return c;
}

namespace {

// ------------------------------------------------------------------ helpers

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

SeqVec read_vector(const std::string& path) { return seqvec_from_json(read_json_file(path)); }

std::shared_ptr<const ParamTable> table_for(const RunConfig& cfg) {
  return std::make_shared<const ParamTable>(gen_params(cfg.depth));
}

// "h", "g", "gN:<n>", "zero", "linear", "auto:<inner>".
FieldHandle parse_field(const std::string& spec, const RunConfig& cfg, bool allow_plain) {
  const SeqVec a = cfg.anchor_vector();
  if (spec == "h") return make_h(cfg.space, a);
  if (spec == "g") return make_g(cfg.space, a, table_for(cfg), cfg.tol);
  if (spec.rfind("gN:", 0) == 0) {
    std::size_t used = 0;
    unsigned long n = 0;
    try {
      n = std::stoul(spec.substr(3), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != spec.size() - 3) throw std::invalid_argument("bad level in field spec: " + spec);
    return make_gN(cfg.space, a, table_for(cfg), n);
  }
  if (allow_plain) {
    if (spec == "zero") return zero_field();
    if (spec == "linear") return linear_field();
    if (spec.rfind("auto:", 0) == 0) {
      const std::string inner = spec.substr(5);
      if (inner.rfind("auto:", 0) == 0) throw std::invalid_argument("nested auto: fields are not supported");
      return autonomize(parse_field(inner, cfg, true));
    }
  }
  throw std::invalid_argument("unknown field: " + spec);
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw std::invalid_argument("cannot write " + path);
    os_ = &file_;
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

void emit_json(const RunConfig& cfg, std::ostream& out, const Json& j) {
  Output o(cfg.out, out);
  o.stream() << j.dump(2) << '\n';
}

Json report_to_json(const ProbeReport& rep, const RunConfig& cfg) {
  Json j;
  j["probe"] = rep.probe;
  j["params"] = rep.params;
  j["outcomes"] = rep.outcomes;
  j["verdict"] = rep.verdict;
  j["config"] = cfg.to_json();
  return j;
}

// ----------------------------------------------------------------- commands

int cmd_params(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ParamTable table = gen_params(cfg.depth);
  const auto cert = certify(table);
  bool pass = true;
  for (const auto& c : cert) {
    if (c.pass) continue;
    pass = false;
    err << "condition " << c.id << " failed: " << c.witness << '\n';
  }
  Json j;
  j["config"] = cfg.to_json();
  j["pass"] = pass;
  j["params"] = params_to_json(table);
  j["certificate"] = certificate_to_json(cert);
  emit_json(cfg, out, j);
  return pass ? exit_pass : exit_failure;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite, std::size_t samples, std::size_t depth, bool serial,
               std::ostream& out, std::ostream& err) {
  std::vector<std::string> names;
  if (suite == "all") {
    names = suite_names();
  } else {
    bool known = false;
    for (const auto& n : suite_names()) known = known || n == suite;
    if (!known) throw UsageError("unknown suite: " + suite);
    names.push_back(suite);
  }
  SuiteConfig sc;
  sc.seed = cfg.seed;
  sc.samples = samples;
  sc.depth = depth;
  sc.space = cfg.space;
  sc.parallel = !serial;
  bool pass = true;
  Json results = Json::array();
  for (const auto& n : names) {
    const SuiteResult r = run_suite(n, sc);
    for (const auto& f : r.failures) err << n << ": " << f << '\n';
    pass = pass && r.pass;
    results.push_back(suite_to_json(r));
  }
  Json j;
  j["config"] = cfg.to_json();
  j["samples"] = samples;
  j["pass"] = pass;
  j["suites"] = std::move(results);
  emit_json(cfg, out, j);
  return pass ? exit_pass : exit_failure;
}

int cmd_eval(const RunConfig& cfg, const std::string& field, double t, const std::string& x_file, std::ostream& out) {
  const SeqVec x = read_vector(x_file);
  const SeqVec a = cfg.anchor_vector();
  Json j;
  j["config"] = cfg.to_json();
  j["field"] = field;
  j["t"] = t;
  if (field == "g") {
    const ParamTable table = gen_params(cfg.depth);
    const GValue g = eval_g(cfg.space, a, table, cfg.tol, t, x);
    j["level"] = g.level;
    j["error_bound"] = g.error_bound;
    j["value"] = seqvec_to_json(g.value);
  } else {
    const FieldHandle f = parse_field(field, cfg, false);
    j["error_bound"] = f.error_bound();
    j["value"] = seqvec_to_json(f(t, x));
  }
  emit_json(cfg, out, j);
  return exit_pass;
}

struct IntegrateArgs {
  std::string field = "h";
  std::string integrator = "euler";
  double t0 = -0.3;
  double t_end = -0.01;
  double step = 1e-3;
  std::string x_file;
};

int cmd_integrate(const RunConfig& cfg, const IntegrateArgs& args, std::ostream& out) {
  if (!(args.step > 0.0)) throw UsageError("step must be positive");
  const FieldHandle f = parse_field(args.field, cfg, true);
  SeqVec x0 = args.x_file.empty() ? SeqVec::zero() : read_vector(args.x_file);
  // Autonomous runs carry time in coordinate 1 and the state behind it.
  if (f.kind() == FieldHandle::Kind::autonomous)
    x0 = combine(1.0, SeqVec::basis(1, args.t0), 1.0, apply_section({1, 2}, x0));
  Polygon poly;
  if (args.integrator == "euler") poly = euler(f, args.t0, x0, args.step, args.t_end, cfg.dim);
  else if (args.integrator == "heun") poly = heun(f, args.t0, x0, args.step, args.t_end, cfg.dim);
  else throw UsageError("unknown integrator: " + args.integrator);
  std::vector<double> defects;
  if (poly.size() >= 2) defects = segment_defects(poly, f, cfg.space);
  Output o(cfg.out, out);
  write_trajectory_csv(o.stream(), poly, defects);
  if (poly.failed) throw std::runtime_error("integration stopped: " + poly.error);
  return exit_pass;
}

struct ProbeArgs {
  std::string name;
  Index K = 4;
  double s = 1e-3;
  double step = 1e-5;
  double t_start = -0.3;
  double t_stop = -0.01;
  std::size_t level = 1;
  std::string field = "linear";
  double t_end = 1.0;
  std::string x_file;
};

int cmd_probe(const RunConfig& cfg, const ProbeArgs& args, std::ostream& out) {
  ProbeReport rep;
  if (args.name == "cone") {
    ConeProbeConfig pc;
    pc.space = cfg.space;
    pc.anchor = cfg.anchor_vector();
    pc.K = args.K;
    pc.t_start = args.t_start;
    pc.t_stop = args.t_stop;
    pc.step = args.step;
    pc.dim = cfg.dim;
    const SeqVec x0 = args.x_file.empty() ? cone_initial(pc, cfg.seed) : read_vector(args.x_file);
    rep = cone_probe(pc, x0);
  } else if (args.name == "gap") {
    GapProbeConfig pc;
    pc.space = cfg.space;
    pc.anchor = cfg.anchor_vector();
    pc.table = table_for(cfg);
    pc.level = args.level;
    pc.K = args.K;
    pc.s = args.s;
    pc.step = args.step;
    pc.dim = cfg.dim;
    pc.tol = cfg.tol;
    rep = gap_probe(pc);
  } else if (args.name == "refine") {
    RefineProbeConfig pc;
    pc.space = cfg.space;
    pc.t0 = 0.0;
    pc.t_end = args.t_end;
    pc.dim = cfg.dim;
    const FieldHandle f = parse_field(args.field, cfg, true);
    pc.expect_first_order = f.kind() == FieldHandle::Kind::zero || f.kind() == FieldHandle::Kind::constant ||
                            f.kind() == FieldHandle::Kind::linear;
    SeqVec x0 = args.x_file.empty() ? SeqVec::basis(1, 1.0) : read_vector(args.x_file);
    rep = refine_probe(f, x0, pc);
  } else {
    throw UsageError("unknown probe: " + args.name);
  }
  emit_json(cfg, out, report_to_json(rep, cfg));
  return rep.pass ? exit_pass : exit_failure;
}

}  // namespace

// ---------------------------------------------------------------------- CLI

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Vector fields on sequence spaces without classical solutions: construction, checks and probes.",
               "seqode"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, space_text;
  std::size_t depth = 0;
  double tol = 0.0;
  Index dim = 0;
  std::uint64_t seed = 0;
  std::string out_path;
  app.add_option("--config", config_path, "JSON config file; flags override its values");
  app.add_option("--space", space_text, "c0 or lp:<p>");
  app.add_option("--depth", depth, "parameter table depth");
  app.add_option("--tol", tol, "uniform tolerance for g");
  app.add_option("--dim", dim, "truncation dimension for trajectories");
  app.add_option("--seed", seed, "seed for all randomness");
  app.add_option("--out", out_path, "output file (default: standard output)");

  auto* params = app.add_subcommand("params", "generate the parameter table and certify it exactly");

  auto* verify = app.add_subcommand("verify", "run a property suite");
  std::string suite;
  std::size_t samples = 0;
  bool serial = false;
  verify->add_option("suite", suite, "lemma3 | lemma4 | hbound | gincrement | geq5 | eq6 | lifts | all")->required();
  verify->add_option("--samples", samples, "samples per check (0: suite default)");
  verify->add_flag("--serial", serial, "use the serial reference path");

  auto* eval = app.add_subcommand("eval", "evaluate a field at one point");
  std::string eval_field;
  double eval_t = 0.0;
  std::string eval_x;
  eval->add_option("--field", eval_field, "h | g | gN:<n>")->required();
  eval->add_option("--t", eval_t, "time")->required();
  eval->add_option("--x", eval_x, "SeqVec JSON file")->required();

  auto* integrate = app.add_subcommand("integrate", "integrate a field and write a trajectory CSV");
  IntegrateArgs ia;
  integrate->add_option("--field", ia.field, "zero | linear | h | g | gN:<n> | auto:<field>");
  integrate->add_option("--integrator", ia.integrator, "euler | heun");
  integrate->add_option("--t0", ia.t0);
  integrate->add_option("--t-end", ia.t_end);
  integrate->add_option("--step", ia.step);
  integrate->add_option("--x", ia.x_file, "initial SeqVec JSON file (default: zero)");

  auto* probe = app.add_subcommand("probe", "run a probe and write its report");
  ProbeArgs pa;
  probe->add_option("name", pa.name, "cone | gap | refine")->required();
  probe->add_option("--K", pa.K, "tail index");
  probe->add_option("--s", pa.s, "gap: closest approach to t_N");
  probe->add_option("--step", pa.step);
  probe->add_option("--t-start", pa.t_start, "cone: first time");
  probe->add_option("--t-stop", pa.t_stop, "cone: last time");
  probe->add_option("--level", pa.level, "gap: level N");
  probe->add_option("--field", pa.field, "refine: field spec");
  probe->add_option("--t-end", pa.t_end, "refine: end time");
  probe->add_option("--x", pa.x_file, "initial SeqVec JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_pass : exit_usage;
  }

  RunConfig cfg;
  // Suites pick their own default depth unless one was given explicitly.
  std::size_t suite_depth = 0;
  try {
    if (!config_path.empty()) {
      const auto file = read_json_file(config_path);
      cfg = RunConfig::from_json(file);
      if (file.contains("depth")) suite_depth = cfg.depth;
    }
    if (app.count("--space")) cfg.space = Space::parse(space_text);
    if (app.count("--depth")) suite_depth = cfg.depth = depth;
    if (app.count("--tol")) cfg.tol = tol;
    if (app.count("--dim")) cfg.dim = dim;
    if (app.count("--seed")) cfg.seed = seed;
    if (app.count("--out")) cfg.out = out_path;
    cfg.validate();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }

  try {
    if (params->parsed()) return cmd_params(cfg, out, err);
    if (verify->parsed()) return cmd_verify(cfg, suite, samples, suite_depth, serial, out, err);
    if (eval->parsed()) return cmd_eval(cfg, eval_field, eval_t, eval_x, out);
    if (integrate->parsed()) return cmd_integrate(cfg, ia, out);
    if (probe->parsed()) return cmd_probe(cfg, pa, out);
  } catch (const InsufficientLevels& e) {
    err << "error: " << e.what() << "; rerun with --depth " << e.required() << " or more\n";
    return exit_usage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_failure;
  }
  return exit_usage;
}

}  // namespace seqode
