// Runs every acceptance criterion at its stated size and tolerance and
// prints one PASS/FAIL line each. Exit status is non-zero if any fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "seqode/commands.hpp"
#include "seqode/probes.hpp"
#include "seqode/suites.hpp"

using namespace seqode;

namespace {

int failures = 0;

void report(const std::string& name, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS " : "FAIL ") << name << " :: " << detail << std::endl;
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::map<std::string, std::string> first_run;

SuiteResult suite(const std::string& name) {
  SuiteConfig cfg;
  const SuiteResult r = run_suite(name, cfg);
  first_run[name] = suite_to_json(r).dump();
  for (const auto& f : r.failures) std::cout << "  " << name << ": " << f << '\n';
  return r;
}

std::string metric(const SuiteResult& r, const std::string& key) { return key + "=" + r.metrics.at(key).dump(); }

std::string cli(std::vector<std::string> args) {
  args.insert(args.begin(), "seqode");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return std::to_string(code) + "\n" + out.str();
}

}  // namespace

int main() {
  {
    const auto t0 = std::chrono::steady_clock::now();
    const ParamTable table = gen_params(200);
    const auto cert = certify(table);
    const double secs = seconds_since(t0);
    bool pass = secs < 60.0;
    std::string detail;
    for (const auto& c : cert) {
      pass = pass && c.pass;
      detail += c.id + (c.pass ? "=ok " : "=FAILED ");
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f s", secs);
    report("exact parameter certification (depth 200)", pass, detail + buf);
  }

  {
    const SuiteResult r = suite("lemma3");
    report("monotone scaling suite, lemma3 (1e4 per case)", r.pass,
           metric(r, "case_a_max_norm_ratio") + " " + metric(r, "case_b_max_norm_ratio"));
  }
  {
    const SuiteResult r = suite("lemma4");
    report("capped map suite, lemma4 (1e4 instances, 100 continuity points)", r.pass,
           metric(r, "max_commutation_defect") + " " + metric(r, "max_norm_ratio") + " " +
               metric(r, "continuity_max_jump"));
  }
  {
    const SuiteResult r = suite("hbound");
    report("h bound suite (1e4 samples)", r.pass, metric(r, "max_ratio"));
  }
  {
    const SuiteResult inc = suite("gincrement");
    const SuiteResult eq5 = suite("geq5");
    report("g structure suite (1e3 increments, 100 certified times)", inc.pass && eq5.pass,
           metric(inc, "max_increment_over_eps") + " " + metric(eq5, "max_deviation") + " " +
               metric(eq5, "nonzero_g_samples"));
  }

  {
    bool pass = true;
    std::string detail;
    std::vector<ProbeReport> reps(10);
#pragma omp parallel for schedule(dynamic, 1)
    for (int K = 1; K <= 10; ++K) {
      ConeProbeConfig cfg;
      cfg.K = static_cast<Index>(K);
      reps[K - 1] = cone_probe(cfg, cone_initial(cfg, 20090601 + K));
    }
    for (int K = 1; K <= 10; ++K) {
      const auto& rep = reps[K - 1];
      pass = pass && rep.pass;
      if (K == 1 || K == 4 || K == 10)
        detail += "K=" + std::to_string(K) + " violations=" + rep.outcomes["violations"].dump() +
                  " closed_form_rel=" + rep.outcomes["closed_form_max_rel_error"].dump() + "; ";
    }
    report("cone oracle (K = 1..10, step 1e-5)", pass, detail);
  }

  {
    bool pass = true;
    std::string detail;
    const auto table = std::make_shared<const ParamTable>(gen_params(40));
    for (Index K : {2, 4, 8}) {
      GapProbeConfig cfg;
      cfg.table = table;
      cfg.K = K;
      const ProbeReport rep = gap_probe(cfg);
      const bool ok = rep.outcomes["gap_rel_error"].get<double>() <= 0.2;
      pass = pass && ok;
      detail += "K=" + std::to_string(K) + " gap=" + rep.outcomes["gap"].dump() + " expected=" +
                rep.outcomes["expected_gap"].dump() + "; ";
    }
    report("gap evidence (K in {2, 4, 8}, s = 1e-3)", pass, detail);
  }

  {
    const SuiteResult r = suite("lifts");
    report("lift contracts (1e3 samples each)", r.pass,
           metric(r, "autonomize_failures") + " " + metric(r, "quotient_lift_max_defect"));
  }

  {
    // Second run of every suite on the serial path, plus repeated CLI runs.
    bool pass = true;
    std::string detail;
    for (const auto& name : suite_names()) {
      if (name == "eq6") continue;
      SuiteConfig cfg;
      cfg.parallel = false;
      const bool same = suite_to_json(run_suite(name, cfg)).dump() == first_run.at(name);
      pass = pass && same;
      if (!same) detail += name + " differs; ";
    }
    std::ofstream("acceptance_x.json") << R"({"head": {"1": 0.3, "2": -0.01}, "tail": {"coef": 64, "start": 5}})";
    const std::vector<std::vector<std::string>> commands{
        {"params", "--depth", "30"},
        {"verify", "eq6", "--depth", "30"},
        {"eval", "--field", "gN:12", "--t", "0.5", "--x", "acceptance_x.json"},
        {"integrate", "--field", "h", "--integrator", "heun", "--step", "1e-3", "--dim", "12"},
        {"probe", "cone", "--step", "1e-4"},
        {"probe", "gap", "--K", "3"},
        {"probe", "refine", "--field", "linear"}};
    for (const auto& c : commands) {
      const std::string a = cli(c), b = cli(c);
      if (a != b || a[0] != '0') {
        pass = false;
        detail += c[0] + " differs; ";
      }
    }
    report("determinism (suites serial vs parallel, CLI reruns byte-identical)", pass,
           detail.empty() ? "all outputs identical" : detail);
  }

  std::cout << (failures ? "acceptance: " + std::to_string(failures) + " criteria failed" : "acceptance: all criteria pass")
            << std::endl;
  return failures ? 1 : 0;
}
