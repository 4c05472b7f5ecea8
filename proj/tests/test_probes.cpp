#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "seqode/probes.hpp"

using namespace seqode;

TEST_CASE("cone probe with defaults") {
  ConeProbeConfig cfg;
  cfg.step = 1e-4;
  const ProbeReport rep = cone_probe(cfg, cone_initial(cfg, 1));
  CHECK(rep.probe == "cone");
  CHECK(rep.pass);
  CHECK(rep.outcomes["violations"] == 0);
  CHECK(rep.outcomes["closed_form_max_rel_error"].get<double>() <= 0.05);
}

TEST_CASE("cone probe from the centre stays at the anchor") {
  ConeProbeConfig cfg;
  cfg.step = 1e-4;
  const ProbeReport rep = cone_probe(cfg, SeqVec::anchor());
  CHECK(rep.pass);
  CHECK(rep.outcomes["terminal_distance"].get<double>() <= 1e-12);
}

TEST_CASE("cone probe rejects starts outside the cone") {
  ConeProbeConfig cfg;
  CHECK_THROWS_AS(cone_probe(cfg, combine(1.0, SeqVec::anchor(), 1.0, SeqVec::basis(4))), std::invalid_argument);
  cfg.K = 0;
  CHECK_THROWS_AS(cone_probe(cfg, SeqVec::anchor()), std::invalid_argument);
}

TEST_CASE("gap probe at K = 4") {
  GapProbeConfig cfg;
  cfg.table = std::make_shared<const ParamTable>(gen_params(40));
  const ProbeReport rep = gap_probe(cfg);
  MESSAGE(rep.outcomes.dump());
  CHECK(rep.pass);
  CHECK(rep.outcomes["gap"].get<double>() == doctest::Approx(1.0 / 16).epsilon(0.2));
  cfg.s = 1.0;
  CHECK_THROWS_AS(gap_probe(cfg), std::invalid_argument);
}

TEST_CASE("refine probe") {
  RefineProbeConfig cfg;
  cfg.dim = 2;
  const ProbeReport lin = refine_probe(linear_field(), SeqVec::basis(1), cfg);
  CHECK(lin.pass);
  for (const auto& r : lin.outcomes["ratios"]) CHECK(r.get<double>() == doctest::Approx(2.0).epsilon(0.2));
  const ProbeReport zero = refine_probe(zero_field(), SeqVec::basis(1), cfg);
  CHECK(zero.pass);
  for (const auto& d : zero.outcomes["distances"]) CHECK(d.get<double>() == 0.0);
  cfg.steps = {1e-2, 3e-3, 1e-3};
  CHECK_THROWS_AS(refine_probe(zero_field(), SeqVec::basis(1), cfg), std::invalid_argument);
}

TEST_CASE("refine probe across a centre of g records evidence only") {
  RefineProbeConfig cfg;
  cfg.t0 = -0.05;
  cfg.t_end = 0.05;
  cfg.dim = 16;
  cfg.expect_first_order = false;
  const auto table = std::make_shared<const ParamTable>(gen_params(30));
  const ProbeReport rep = refine_probe(make_g(Space::c0(), SeqVec::anchor(), table, 1e-6), SeqVec::zero(), cfg);
  CHECK(rep.pass);
  CHECK(rep.verdict["evidence_only"] == true);
  CHECK(rep.outcomes["distances"].size() == 2);
}
