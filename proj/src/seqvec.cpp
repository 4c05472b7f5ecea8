#include "seqode/seqvec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace seqode {

double Tail::at(Index j) const { return std::ldexp(coef, -static_cast<int>(std::min<Index>(j, 1 << 20))); }

SeqVec::SeqVec(Head head, std::optional<Tail> tail) : head_(std::move(head)), tail_(tail) {
  std::erase_if(head_, [](const auto& kv) { return kv.second == 0.0; });
  if (!head_.empty() && head_.begin()->first == 0) throw std::invalid_argument("SeqVec indices start at 1");
  if (tail_ && tail_->coef == 0.0) tail_.reset();
  if (tail_) {
    if (tail_->start == 0) throw std::invalid_argument("tail start must be >= 1");
    if (last_head_index() >= tail_->start) throw std::invalid_argument("head overlaps tail");
  }
}

SeqVec SeqVec::basis(Index k, double value) { return SeqVec(Head{{k, value}}); }

SeqVec SeqVec::geometric(double coef, Index start) { return SeqVec({}, Tail{coef, start}); }

double SeqVec::coeff(Index k) const {
  if (auto it = head_.find(k); it != head_.end()) return it->second;
  if (tail_ && k >= tail_->start) return tail_->at(k);
  return 0.0;
}

SeqVec SeqVec::materialized(Index until) const {
  if (!tail_ || until <= tail_->start) return *this;
  SeqVec out = *this;
  for (Index j = tail_->start; j < until; ++j) {
    const double v = tail_->at(j);
    if (v == 0.0) break;  // underflow; every later entry is zero as well
    out.head_.emplace(j, v);
  }
  out.tail_->start = until;
  return out;
}

SeqVec SeqVec::scaled(double factor) const {
  if (factor == 0.0) return {};
  SeqVec out = *this;
  for (auto& [k, v] : out.head_) v *= factor;
  if (out.tail_) out.tail_->coef *= factor;
  // Products can underflow.
  std::erase_if(out.head_, [](const auto& kv) { return kv.second == 0.0; });
  if (out.tail_ && out.tail_->coef == 0.0) out.tail_.reset();
  return out;
}

// ------------------------------------------------------------------- Space

Space Space::lp(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("l_p needs finite p >= 1");
  return Space(Kind::lp, p);
}

Space Space::parse(const std::string& text) {
  if (text == "c0") return c0();
  if (text.rfind("lp:", 0) == 0) {
    std::size_t used = 0;
    double p = 0.0;
    try {
      p = std::stod(text.substr(3), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad space: " + text);
    }
    if (used != text.size() - 3) throw std::invalid_argument("bad space: " + text);
    return lp(p);
  }
  throw std::invalid_argument("bad space: " + text);
}

std::string Space::str() const {
  if (kind_ == Kind::c0) return "c0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "lp:%g", p_);
  return buf;
}

double Space::tail_norm(double coef, Index start) const {
  const double first = std::abs(Tail{coef, start}.at(start));
  if (kind_ == Kind::c0) return first;
  return first / std::pow(1.0 - std::pow(2.0, -p_), 1.0 / p_);
}

namespace {

// p-th power of the tail norm, the additive piece of the l_p suffix sums.
double tail_power(const Space& space, const Tail& tail) {
  const double first = std::abs(tail.at(tail.start));
  return std::pow(first, space.p()) / (1.0 - std::pow(2.0, -space.p()));
}

}  // namespace

double norm(const Space& space, const SeqVec& x) {
  const auto& head = x.head();
  if (space.kind() == Space::Kind::c0) {
    double m = x.tail() ? space.tail_norm(x.tail()->coef, x.tail()->start) : 0.0;
    for (auto it = head.rbegin(); it != head.rend(); ++it) m = std::max(m, std::abs(it->second));
    return m;
  }
  if (head.empty()) return x.tail() ? space.tail_norm(x.tail()->coef, x.tail()->start) : 0.0;
  double s = x.tail() ? tail_power(space, *x.tail()) : 0.0;
  for (auto it = head.rbegin(); it != head.rend(); ++it) s += std::pow(std::abs(it->second), space.p());
  return std::pow(s, 1.0 / space.p());
}

std::vector<std::pair<Index, double>> suffix_norms(const Space& space, const SeqVec& x) {
  const auto& head = x.head();
  std::vector<std::pair<Index, double>> out(head.size());
  std::size_t i = head.size();
  if (space.kind() == Space::Kind::c0) {
    double m = x.tail() ? space.tail_norm(x.tail()->coef, x.tail()->start) : 0.0;
    for (auto it = head.rbegin(); it != head.rend(); ++it) {
      m = std::max(m, std::abs(it->second));
      out[--i] = {it->first, m};
    }
    return out;
  }
  double s = x.tail() ? tail_power(space, *x.tail()) : 0.0;
  for (auto it = head.rbegin(); it != head.rend(); ++it) {
    s += std::pow(std::abs(it->second), space.p());
    out[--i] = {it->first, std::pow(s, 1.0 / space.p())};
  }
  return out;
}

// ------------------------------------------------------------- projections

Projection Projection::Q(Index k) {
  if (k == 0) throw std::invalid_argument("Q_k needs k >= 1");
  return {Kind::Q, k};
}

SeqVec project(const Projection& proj, const SeqVec& x) {
  // Q_k = R_{k-1}; R_0 = I; P_0 = 0.
  const bool keep_low = proj.kind == Projection::Kind::P;
  const Index n = proj.kind == Projection::Kind::Q ? proj.n - 1 : proj.n;
  if (keep_low) {
    if (n == 0) return {};
    SeqVec m = x.materialized(n + 1);
    SeqVec::Head head;
    for (const auto& [k, v] : m.head())
      if (k <= n) head.emplace(k, v);
    return SeqVec(std::move(head));
  }
  SeqVec::Head head;
  for (const auto& [k, v] : x.head())
    if (k > n) head.emplace(k, v);
  std::optional<Tail> tail = x.tail();
  if (tail) tail->start = std::max(tail->start, n + 1);
  return SeqVec(std::move(head), tail);
}

SeqVec combine(double alpha, const SeqVec& x, double beta, const SeqVec& y) {
  const bool tailed = x.tail() || y.tail();
  Index start = 0;
  if (tailed) {
    start = std::max(x.last_head_index(), y.last_head_index()) + 1;
    if (x.tail()) start = std::max(start, x.tail()->start);
    if (y.tail()) start = std::max(start, y.tail()->start);
  }
  const SeqVec xm = tailed ? x.materialized(start) : x;
  const SeqVec ym = tailed ? y.materialized(start) : y;

  SeqVec::Head head;
  for (const auto& [k, v] : xm.head()) head[k] += alpha * v;
  for (const auto& [k, v] : ym.head()) head[k] += beta * v;
  std::optional<Tail> tail;
  if (tailed) {
    double c = 0.0;
    if (xm.tail()) c += alpha * xm.tail()->coef;
    if (ym.tail()) c += beta * ym.tail()->coef;
    tail = Tail{c, start};
  }
  return SeqVec(std::move(head), tail);
}

double coeff(Index k, const SeqVec& x) {
  if (k == 0) throw std::invalid_argument("coordinates start at 1");
  return x.coeff(k);
}

double max_abs_diff(const SeqVec& x, const SeqVec& y) { return norm(Space::c0(), combine(1.0, x, -1.0, y)); }

}  // namespace seqode
