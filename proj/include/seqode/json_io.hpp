#pragma once

// Serialization: JSON for exact scalars, vectors, tables, certificates and
// reports; CSV for trajectories.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "seqode/harness.hpp"
#include "seqode/params.hpp"

namespace seqode {

using Json = nlohmann::ordered_json;

/// Shortest decimal that round-trips.
std::string format_double(double v);

Json to_json(const Rational& r);
Json to_json(const Quad& q);

/// {"head": {"k": v, ...}, "tail": {"coef": v, "start": k} | null}
Json seqvec_to_json(const SeqVec& x);
/// Throws std::invalid_argument on anything that is not a valid SeqVec.
SeqVec seqvec_from_json(const nlohmann::json& j);

/// [{"n", "t", "delta": {"rat", "sqrt2"}, "eps"}, ...]
Json params_to_json(const ParamTable& table);
/// [{"id", "pass", "checked", "witness"}, ...]
Json certificate_to_json(const std::vector<ConditionResult>& cert);

/// Header `t,c1,...,cD,defect`. Row i carries the defect of the segment
/// ending at node i (0 on the first row).
void write_trajectory_csv(std::ostream& os, const Polygon& poly, const std::vector<double>& defects);

}  // namespace seqode
