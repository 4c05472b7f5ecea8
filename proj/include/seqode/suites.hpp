#pragma once

// Randomized property suites for the lemma-level identities and bounds.
//
// Each sample draws from its own generator, seeded from (seed, suite,
// sample index), and writes into its own slot; reductions run afterwards in
// index order. The OpenMP path and the serial reference path therefore
// produce identical results, independent of the thread count.

#include <cstdint>
#include <string>
#include <vector>

#include "seqode/json_io.hpp"

namespace seqode {

struct SuiteConfig {
  std::uint64_t seed = 20090601;
  /// 0 selects the suite's default sample count.
  std::size_t samples = 0;
  /// Parameter-table depth for the g suites.
  std::size_t depth = 0;
  /// Space for the g suites; the lemma suites sweep c0, l1, l2 and l3.
  Space space = Space::c0();
  bool parallel = true;
};

struct SuiteResult {
  std::string name;
  bool pass = true;
  Json metrics = Json::object();
  /// The first few failing samples, human-readable.
  std::vector<std::string> failures;
};

/// lemma3, lemma4, hbound, gincrement, geq5, eq6, lifts.
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown name.
SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg);

Json suite_to_json(const SuiteResult& r);

/// Per-sample generator; exposed for tests.
std::uint64_t sample_seed(std::uint64_t seed, const std::string& suite, std::uint64_t index);

}  // namespace seqode
