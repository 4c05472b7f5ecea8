#include "seqode/json_io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace seqode {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Json to_json(const Rational& r) { return r.str(); }

Json to_json(const Quad& q) {
  Json j;
  j["rat"] = q.rat().str();
  j["sqrt2"] = q.sqrt2().str();
  return j;
}

Json seqvec_to_json(const SeqVec& x) {
  Json head = Json::object();
  for (const auto& [k, v] : x.head()) head[std::to_string(k)] = v;
  Json j;
  j["head"] = std::move(head);
  if (x.tail()) {
    Json t;
    t["coef"] = x.tail()->coef;
    t["start"] = x.tail()->start;
    j["tail"] = std::move(t);
  } else {
    j["tail"] = nullptr;
  }
  return j;
}

SeqVec seqvec_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object() || !j.contains("head") || !j.at("head").is_object())
      throw std::invalid_argument("SeqVec JSON needs an object with a \"head\" object");
    SeqVec::Head head;
    for (const auto& [key, val] : j.at("head").items()) {
      std::size_t used = 0;
      const unsigned long long k = std::stoull(key, &used);
      if (used != key.size() || k == 0) throw std::invalid_argument("bad head index: " + key);
      if (!val.is_number()) throw std::invalid_argument("head value must be a number");
      head.emplace(k, val.get<double>());
    }
    std::optional<Tail> tail;
    if (j.contains("tail") && !j.at("tail").is_null()) {
      const auto& t = j.at("tail");
      if (!t.is_object() || !t.contains("coef") || !t.contains("start") || !t.at("coef").is_number() ||
          !t.at("start").is_number_unsigned())
        throw std::invalid_argument("tail needs numeric \"coef\" and positive integer \"start\"");
      tail = Tail{t.at("coef").get<double>(), t.at("start").get<Index>()};
    }
    return SeqVec(std::move(head), tail);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad SeqVec JSON: ") + e.what());
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("bad SeqVec JSON: index out of range");
  }
}

Json params_to_json(const ParamTable& table) {
  Json arr = Json::array();
  for (const auto& l : table.levels()) {
    Json j;
    j["n"] = l.n;
    j["t"] = l.t.str();
    j["delta"] = to_json(l.delta());
    j["eps"] = l.eps.str();
    arr.push_back(std::move(j));
  }
  return arr;
}

Json certificate_to_json(const std::vector<ConditionResult>& cert) {
  Json arr = Json::array();
  for (const auto& c : cert) {
    Json j;
    j["id"] = c.id;
    j["pass"] = c.pass;
    j["checked"] = c.checked;
    j["witness"] = c.witness;
    arr.push_back(std::move(j));
  }
  return arr;
}

void write_trajectory_csv(std::ostream& os, const Polygon& poly, const std::vector<double>& defects) {
  const Index dim = poly.meta.dim;
  os << "t";
  for (Index k = 1; k <= dim; ++k) os << ",c" << k;
  os << ",defect\n";
  for (std::size_t i = 0; i < poly.size(); ++i) {
    os << format_double(poly.times[i]);
    for (Index k = 1; k <= dim; ++k) os << ',' << format_double(poly.values[i].coeff(k));
    os << ',' << format_double(i == 0 || i > defects.size() ? 0.0 : defects[i - 1]) << '\n';
  }
}

}  // namespace seqode
