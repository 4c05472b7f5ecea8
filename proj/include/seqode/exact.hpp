#pragma once

// Exact scalars: rationals and the real quadratic field Q(sqrt 2).
//
// Everything in this header is exact. The only bridge to floating point is
// to_double(), which rounds to nearest through MPFR and is used by the
// numeric modules only. Inequalities that the parameter scheme depends on
// are always decided here.

#include <compare>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace seqode {

enum class Rounding { nearest, up, down };

class Rational {
 public:
  Rational() = default;
  Rational(long num);  // NOLINT(google-explicit-constructor)
  template <std::floating_point F>
  Rational(F) = delete;
  Rational(long num, long den);
  explicit Rational(mpq_class v);

  /// Parses "p/q" or "p". Throws std::invalid_argument on malformed input
  /// or a zero denominator.
  static Rational parse(std::string_view text);
  /// 2^e for any integer e.
  static Rational pow2(long e);

  const mpq_class& raw() const { return value_; }
  mpz_class num() const { return value_.get_num(); }
  mpz_class den() const { return value_.get_den(); }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  Rational abs() const;
  Rational pow(unsigned e) const;

  /// Always "p/q" with q > 0, lowest terms ("0/1", "3/1", "-1/2").
  std::string str() const;
  double to_double(Rounding mode = Rounding::nearest) const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  mpq_class value_{0};
};

/// rat + sqrt2 * sqrt(2).
class Quad {
 public:
  Quad() = default;
  Quad(Rational rat);  // NOLINT(google-explicit-constructor)
  Quad(Rational rat, Rational sqrt2);

  static Quad sqrt2_times(Rational coef) { return Quad(Rational(0), std::move(coef)); }

  const Rational& rat() const { return rat_; }
  const Rational& sqrt2() const { return sqrt2_; }

  bool is_irrational() const { return !sqrt2_.is_zero(); }
  /// Sign decided by case analysis on the signs of both parts and, when
  /// they disagree, an exact comparison of rat^2 against 2*sqrt2^2.
  int sign() const;
  Quad conjugate() const { return Quad(rat_, -sqrt2_); }
  /// rat^2 - 2 sqrt2^2, the field norm.
  Rational norm() const;
  Quad inverse() const;

  std::string str() const;
  double to_double(Rounding mode = Rounding::nearest) const;

  Quad& operator+=(const Quad& o);
  Quad& operator-=(const Quad& o);
  Quad& operator*=(const Quad& o);
  Quad& operator/=(const Quad& o) { return *this *= o.inverse(); }

  friend Quad operator+(Quad a, const Quad& b) { return a += b; }
  friend Quad operator-(Quad a, const Quad& b) { return a -= b; }
  friend Quad operator*(Quad a, const Quad& b) { return a *= b; }
  friend Quad operator/(Quad a, const Quad& b) { return a /= b; }
  Quad operator-() const { return Quad(-rat_, -sqrt2_); }

  friend bool operator==(const Quad& a, const Quad& b) = default;
  friend std::strong_ordering operator<=>(const Quad& a, const Quad& b);

 private:
  Rational rat_;
  Rational sqrt2_;
};

std::strong_ordering quad_cmp(const Quad& x, const Quad& y);
double quad_to_float(const Quad& x, Rounding mode = Rounding::nearest);

/// Duplicate-free enumeration of Q, 1-based. Index 1 is 0; afterwards the
/// positive rationals are listed by height max(p, q), each immediately
/// followed by its negative: 1, -1, 1/2, -1/2, 2, -2, 1/3, -1/3, 3, -3,
/// 2/3, -2/3, 3/2, -3/2, ...  Within height h the order is k/h, h/k for
/// k = 1..h-1 coprime to h.
Rational enumerate_rationals(std::uint64_t n);

/// Sequential form of enumerate_rationals, cheaper when walking a prefix.
class RationalEnumerator {
 public:
  /// The next term; the first call returns term 1.
  Rational next();
  std::uint64_t index() const { return index_; }

 private:
  std::uint64_t index_ = 0;
  long height_ = 1;
  long k_ = 0;
  int phase_ = 0;  // 0: k/h, 1: -k/h, 2: h/k, 3: -h/k
};

}  // namespace seqode
