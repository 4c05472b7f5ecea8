#pragma once

// Vectors of c0 and l_p in the canonical Schauder basis.
//
// A SeqVec is a sparse finite head plus an optional geometric tail
// coef * 2^-j at every index j >= start. The tail ratio is fixed at 1/2, so
// the anchor sum_k 2^-k e_k and everything the construction derives from it
// stays representable without truncation. Coefficients are doubles.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace seqode {

using Index = std::uint64_t;

struct Tail {
  double coef = 0.0;
  Index start = 1;

  /// Coefficient at index j >= start.
  double at(Index j) const;
  friend bool operator==(const Tail&, const Tail&) = default;
};

class SeqVec {
 public:
  using Head = std::map<Index, double>;

  SeqVec() = default;
  /// Drops zero entries; throws std::invalid_argument if an index is 0 or
  /// the tail does not start after the last head index.
  SeqVec(Head head, std::optional<Tail> tail = std::nullopt);

  static SeqVec zero() { return {}; }
  static SeqVec basis(Index k, double value = 1.0);
  /// coef * sum_{j >= start} 2^-j e_j.
  static SeqVec geometric(double coef, Index start);
  /// The anchor a = sum_k 2^-k e_k.
  static SeqVec anchor() { return geometric(1.0, 1); }

  const Head& head() const { return head_; }
  const std::optional<Tail>& tail() const { return tail_; }

  bool is_zero() const { return head_.empty() && !tail_; }
  /// Largest index stored in the head, 0 when the head is empty.
  Index last_head_index() const { return head_.empty() ? 0 : head_.rbegin()->first; }
  double coeff(Index k) const;

  /// Same vector with tail entries below `until` moved into the head.
  /// Entries that underflow to zero are not stored.
  SeqVec materialized(Index until) const;
  SeqVec scaled(double factor) const;

  friend bool operator==(const SeqVec&, const SeqVec&) = default;

 private:
  Head head_;
  std::optional<Tail> tail_;
};

class Space {
 public:
  enum class Kind { c0, lp };

  static Space c0() { return Space(Kind::c0, 0.0); }
  /// p >= 1, throws std::invalid_argument otherwise.
  static Space lp(double p);
  /// "c0" or "lp:<p>".
  static Space parse(const std::string& text);

  Kind kind() const { return kind_; }
  double p() const { return p_; }
  std::string str() const;

  /// Norm of coef * sum_{j >= start} 2^-j e_j, in closed form.
  double tail_norm(double coef, Index start) const;

  friend bool operator==(const Space&, const Space&) = default;

 private:
  Space(Kind kind, double p) : kind_(kind), p_(p) {}
  Kind kind_;
  double p_;
};

double norm(const Space& space, const SeqVec& x);

/// Norms of Q_k x at every head index k, in increasing k. The values are
/// accumulated from the top index down, the same order norm() uses, so
/// suffix_norms(x).front().second == norm(x) whenever the head starts at 1.
std::vector<std::pair<Index, double>> suffix_norms(const Space& space, const SeqVec& x);

struct Projection {
  enum class Kind { P, R, Q };
  Kind kind;
  Index n;

  static Projection P(Index n) { return {Kind::P, n}; }
  static Projection R(Index n) { return {Kind::R, n}; }
  /// Q_k = R_{k-1}; k >= 1.
  static Projection Q(Index k);
};

SeqVec project(const Projection& proj, const SeqVec& x);
SeqVec combine(double alpha, const SeqVec& x, double beta, const SeqVec& y);
double coeff(Index k, const SeqVec& x);

/// Largest coefficient-wise difference, i.e. the c0 norm of x - y.
double max_abs_diff(const SeqVec& x, const SeqVec& y);

}  // namespace seqode
