#include "seqode/lifts.hpp"

#include <cmath>

namespace seqode {

namespace {

// Expands a tail until its entries underflow.
SeqVec expand_tail(const SeqVec& x) {
  if (!x.tail()) return x;
  const SeqVec m = x.materialized(x.tail()->start + 2200);
  return SeqVec(m.head());
}

}  // namespace

FieldHandle zero_field() {
  return {FieldHandle::Kind::zero, "zero", [](double, const SeqVec&) { return SeqVec{}; }};
}

FieldHandle constant_field(SeqVec c) {
  return {FieldHandle::Kind::constant, "constant", [c = std::move(c)](double, const SeqVec&) { return c; }};
}

FieldHandle linear_field() {
  return {FieldHandle::Kind::linear, "linear", [](double, const SeqVec& x) { return x; }};
}

FieldHandle make_h(const Space& space, SeqVec anchor) {
  return {FieldHandle::Kind::h, "h",
          [space, a = std::move(anchor)](double t, const SeqVec& x) { return field_h(space, a, t, x); }};
}

FieldHandle make_gN(const Space& space, SeqVec anchor, std::shared_ptr<const ParamTable> table, std::size_t N) {
  if (N > table->size()) throw InsufficientLevels(N, table->size());
  return {FieldHandle::Kind::gN, "gN:" + std::to_string(N),
          [space, a = std::move(anchor), table, N](double t, const SeqVec& x) {
            return eval_gN(space, a, *table, N, t, x);
          }};
}

FieldHandle make_g(const Space& space, SeqVec anchor, std::shared_ptr<const ParamTable> table, double tol) {
  const std::size_t N = levels_for_tolerance(tol);
  if (N > table->size()) throw InsufficientLevels(N, table->size());
  return {FieldHandle::Kind::g, "g",
          [space, a = std::move(anchor), table, N](double t, const SeqVec& x) {
            return eval_gN(space, a, *table, N, t, x);
          },
          std::ldexp(1.0, -static_cast<int>(N + 1))};
}

SeqVec apply_quotient(const CoordinateSelection& sel, const SeqVec& x) {
  if (sel.stride == 1) {
    SeqVec::Head head;
    for (const auto& [i, v] : x.head())
      if (i >= sel.first) head.emplace(i - sel.first + 1, v);
    std::optional<Tail> tail;
    if (x.tail()) {
      // x_j = c 2^-j at j = first + k - 1  =>  y_k = (c 2^-(first-1)) 2^-k.
      const Index start = x.tail()->start >= sel.first ? x.tail()->start - sel.first + 1 : 1;
      tail = Tail{std::ldexp(x.tail()->coef, -static_cast<int>(sel.first - 1)), start};
    }
    return SeqVec(std::move(head), tail);
  }
  const SeqVec expanded = expand_tail(x);
  SeqVec::Head head;
  for (const auto& [i, v] : expanded.head()) {
    if (i < sel.first || (i - sel.first) % sel.stride != 0) continue;
    head.emplace((i - sel.first) / sel.stride + 1, v);
  }
  return SeqVec(std::move(head));
}

SeqVec apply_section(const CoordinateSelection& sel, const SeqVec& y) {
  if (sel.stride == 1) {
    SeqVec::Head head;
    for (const auto& [k, v] : y.head()) head.emplace(sel.position(k), v);
    std::optional<Tail> tail;
    if (y.tail())
      tail = Tail{std::ldexp(y.tail()->coef, static_cast<int>(sel.first - 1)), sel.position(y.tail()->start)};
    return SeqVec(std::move(head), tail);
  }
  const SeqVec expanded = expand_tail(y);
  SeqVec::Head head;
  for (const auto& [k, v] : expanded.head()) head.emplace(sel.position(k), v);
  return SeqVec(std::move(head));
}

FieldHandle autonomize(FieldHandle inner) {
  // e = e_1, phi = f_1, P = I - e_1 f_1; the complement span{e_2, e_3, ...}
  // is identified with the inner space by an index shift.
  const CoordinateSelection complement{1, 2};
  std::string label = "auto(" + inner.label() + ")";
  const double bound = inner.error_bound();
  return {FieldHandle::Kind::autonomous, std::move(label),
          [inner = std::move(inner), complement](double, const SeqVec& x) {
            const double time = x.coeff(1);
            const SeqVec y = apply_quotient(complement, x);
            const SeqVec lifted = apply_section(complement, inner(time, y));
            return combine(1.0, SeqVec::basis(1), 1.0, lifted);
          },
          bound};
}

FieldHandle quotient_lift(FieldHandle inner, CoordinateSelection quotient, CoordinateSelection section,
                          Index check_dim) {
  if (quotient.stride == 0 || section.stride == 0 || quotient.first == 0 || section.first == 0)
    throw ConfigurationError("coordinate selections need stride >= 1 and first >= 1");
  for (Index k = 1; k <= check_dim; ++k) {
    const SeqVec e = SeqVec::basis(k);
    if (!(apply_quotient(quotient, apply_section(section, e)) == e))
      throw ConfigurationError("section is not a right inverse of the quotient at e_" + std::to_string(k));
  }
  std::string label = "lift(" + inner.label() + ")";
  const double bound = inner.error_bound();
  return {FieldHandle::Kind::lifted, std::move(label),
          [inner = std::move(inner), quotient, section](double t, const SeqVec& x) {
            return apply_section(section, inner(t, apply_quotient(quotient, x)));
          },
          bound};
}

}  // namespace seqode
