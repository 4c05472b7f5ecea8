#pragma once

// Evaluatable field handles and the two lifts: the autonomous lift
// f(x) = e_1 + shift(inner(f_1(x), unshift(x - f_1(x) e_1))) and the
// quotient lift f(t, x) = section(inner(t, quotient(x))) for linear
// coordinate-selection quotients.

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>

#include "seqode/fields.hpp"

namespace seqode {

class FieldHandle {
 public:
  enum class Kind { zero, constant, linear, h, gN, g, autonomous, lifted };
  using Eval = std::function<SeqVec(double, const SeqVec&)>;

  FieldHandle(Kind kind, std::string label, Eval eval, double error_bound = 0.0)
      : kind_(kind), label_(std::move(label)), eval_(std::move(eval)), error_bound_(error_bound) {}

  SeqVec operator()(double t, const SeqVec& x) const { return eval_(t, x); }

  Kind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  /// Certified uniform distance to the exact field (non-zero only for g).
  double error_bound() const { return error_bound_; }

 private:
  Kind kind_;
  std::string label_;
  Eval eval_;
  double error_bound_;
};

FieldHandle zero_field();
FieldHandle constant_field(SeqVec c);
/// f(t, x) = x.
FieldHandle linear_field();
FieldHandle make_h(const Space& space, SeqVec anchor);
FieldHandle make_gN(const Space& space, SeqVec anchor, std::shared_ptr<const ParamTable> table, std::size_t N);
/// Throws InsufficientLevels when the table cannot certify tol.
FieldHandle make_g(const Space& space, SeqVec anchor, std::shared_ptr<const ParamTable> table, double tol);

/// The k-th coordinate of the small space sits at index first + stride (k-1)
/// of the big one. Even coordinates of an interleaved c0 (+) c0 are
/// {stride 2, first 2}; dropping the first m coordinates is {1, m + 1}.
struct CoordinateSelection {
  Index stride = 1;
  Index first = 1;

  Index position(Index k) const { return first + stride * (k - 1); }
};

/// y_k = x_{position(k)}. Tails map exactly for stride 1; for larger strides
/// the tail is expanded down to double underflow first.
SeqVec apply_quotient(const CoordinateSelection& sel, const SeqVec& x);
/// x_{position(k)} = y_k, zero elsewhere.
SeqVec apply_section(const CoordinateSelection& sel, const SeqVec& y);

class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

FieldHandle autonomize(FieldHandle inner);

/// Throws ConfigurationError unless quotient(section(e_k)) = e_k for
/// k = 1..check_dim.
FieldHandle quotient_lift(FieldHandle inner, CoordinateSelection quotient, CoordinateSelection section,
                          Index check_dim = 64);

}  // namespace seqode
