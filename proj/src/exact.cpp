#include "seqode/exact.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <mpfr.h>

namespace seqode {

namespace {

mpfr_rnd_t to_mpfr(Rounding mode) {
  switch (mode) {
    case Rounding::up: return MPFR_RNDU;
    case Rounding::down: return MPFR_RNDD;
    case Rounding::nearest: break;
  }
  return MPFR_RNDN;
}

class MpfrVar {
 public:
  explicit MpfrVar(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~MpfrVar() { mpfr_clear(v_); }
  MpfrVar(const MpfrVar&) = delete;
  MpfrVar& operator=(const MpfrVar&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

double checked(double v) {
  if (!std::isfinite(v)) throw std::overflow_error("exact value does not fit in a double");
  return v;
}

// a + b*sqrt(2) rounded as requested. Precision is doubled until MPFR can
// certify the rounding; cancellation between the parts is the only reason
// to go past the first pass.
double eval_quad(const mpq_class& a, const mpq_class& b, Rounding mode) {
  const mpfr_rnd_t rnd = to_mpfr(mode);
  if (sgn(b) == 0) {
    MpfrVar r(64);
    mpfr_set_q(r.get(), a.get_mpq_t(), rnd);
    return checked(mpfr_get_d(r.get(), rnd));
  }
  for (mpfr_prec_t prec = 128; prec <= (1 << 20); prec *= 2) {
    MpfrVar s(prec), t(prec), sum(prec);
    // Each step rounds to nearest: total error < 3 ulp of the working precision
    // relative to the larger operand, so ask can_round for prec - 4 good bits
    // after accounting for cancellation via exponents.
    mpfr_sqrt_ui(s.get(), 2, MPFR_RNDN);
    mpfr_mul_q(t.get(), s.get(), b.get_mpq_t(), MPFR_RNDN);
    MpfrVar aa(prec);
    mpfr_set_q(aa.get(), a.get_mpq_t(), MPFR_RNDN);
    mpfr_add(sum.get(), aa.get(), t.get(), MPFR_RNDN);
    if (mpfr_zero_p(sum.get())) continue;
    const long emax = std::max(mpfr_get_exp(t.get()), mpfr_zero_p(aa.get()) ? mpfr_get_exp(t.get())
                                                                              : mpfr_get_exp(aa.get()));
    const long lost = emax - mpfr_get_exp(sum.get());
    const long good = static_cast<long>(prec) - 4 - std::max(0L, lost);
    if (good > 60 && mpfr_can_round(sum.get(), good, MPFR_RNDN, rnd, 53)) {
      MpfrVar out(53);
      mpfr_set(out.get(), sum.get(), rnd);
      return checked(mpfr_get_d(out.get(), rnd));
    }
  }
  throw std::overflow_error("precision limit reached while rounding a quadratic value");
}

}  // namespace

// ---------------------------------------------------------------- Rational

Rational::Rational(long num) : value_(num) {}

Rational::Rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational::Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  const auto slash = s.find('/');
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  auto valid = [](const std::string& d, bool allow_sign) {
    if (d.empty()) return false;
    std::size_t i = (allow_sign && (d[0] == '-' || d[0] == '+')) ? 1 : 0;
    if (i == d.size()) return false;
    for (; i < d.size(); ++i)
      if (d[i] < '0' || d[i] > '9') return false;
    return true;
  };
  if (!valid(num, true) || !valid(den, false)) throw std::invalid_argument("malformed rational: " + s);
  mpz_class n(num[0] == '+' ? num.substr(1) : num, 10);
  mpz_class d(den, 10);
  if (d == 0) throw std::invalid_argument("zero denominator: " + s);
  return Rational(mpq_class(n, d));
}

Rational Rational::pow2(long e) {
  mpz_class p(1);
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(e < 0 ? -e : e));
  return e >= 0 ? Rational(mpq_class(p)) : Rational(mpq_class(mpz_class(1), p));
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

Rational Rational::pow(unsigned e) const {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), value_.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), value_.get_den_mpz_t(), e);
  return Rational(mpq_class(n, d));
}

std::string Rational::str() const { return value_.get_num().get_str() + "/" + value_.get_den().get_str(); }

double Rational::to_double(Rounding mode) const { return eval_quad(value_, mpq_class(0), mode); }

Rational& Rational::operator+=(const Rational& o) {
  value_ += o.value_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  value_ -= o.value_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  value_ *= o.value_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  value_ /= o.value_;
  return *this;
}
Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const int c = cmp(a.value_, b.value_);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

// -------------------------------------------------------------------- Quad

Quad::Quad(Rational rat) : rat_(std::move(rat)) {}
Quad::Quad(Rational rat, Rational sqrt2) : rat_(std::move(rat)), sqrt2_(std::move(sqrt2)) {}

int Quad::sign() const {
  const int sa = rat_.sign();
  const int sb = sqrt2_.sign();
  if (sa >= 0 && sb >= 0) return (sa > 0 || sb > 0) ? 1 : 0;
  if (sa <= 0 && sb <= 0) return -1;
  // Mixed signs: the part with the larger square wins. Equality is
  // impossible because sqrt(2) is irrational.
  const Rational a2 = rat_ * rat_;
  const Rational b2 = Rational(2) * sqrt2_ * sqrt2_;
  return a2 > b2 ? sa : sb;
}

Rational Quad::norm() const { return rat_ * rat_ - Rational(2) * sqrt2_ * sqrt2_; }

Quad Quad::inverse() const {
  const Rational n = norm();
  if (n.is_zero()) throw std::domain_error("division by zero");
  return Quad(rat_ / n, -sqrt2_ / n);
}

std::string Quad::str() const { return rat_.str() + " + " + sqrt2_.str() + "*sqrt2"; }

double Quad::to_double(Rounding mode) const { return eval_quad(rat_.raw(), sqrt2_.raw(), mode); }

Quad& Quad::operator+=(const Quad& o) {
  rat_ += o.rat_;
  sqrt2_ += o.sqrt2_;
  return *this;
}
Quad& Quad::operator-=(const Quad& o) {
  rat_ -= o.rat_;
  sqrt2_ -= o.sqrt2_;
  return *this;
}
Quad& Quad::operator*=(const Quad& o) {
  Rational r = rat_ * o.rat_ + Rational(2) * sqrt2_ * o.sqrt2_;
  Rational s = rat_ * o.sqrt2_ + sqrt2_ * o.rat_;
  rat_ = std::move(r);
  sqrt2_ = std::move(s);
  return *this;
}

std::strong_ordering operator<=>(const Quad& a, const Quad& b) { return quad_cmp(a, b); }

std::strong_ordering quad_cmp(const Quad& x, const Quad& y) {
  const int s = (x - y).sign();
  return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

double quad_to_float(const Quad& x, Rounding mode) { return x.to_double(mode); }

// ------------------------------------------------------------- enumeration

Rational RationalEnumerator::next() {
  ++index_;
  if (index_ == 1) return Rational(0);
  if (height_ == 1) {
    // 1, -1, then move to height 2.
    if (phase_ == 0) {
      phase_ = 1;
      return Rational(1);
    }
    height_ = 2;
    k_ = 0;
    phase_ = 0;
    return Rational(-1);
  }
  if (phase_ == 0) {
    do {
      ++k_;
      if (k_ >= height_) {
        ++height_;
        k_ = 1;
      }
    } while (std::gcd(k_, height_) != 1);
  }
  const int phase = phase_;
  phase_ = (phase_ + 1) % 4;
  switch (phase) {
    case 0: return Rational(k_, height_);
    case 1: return Rational(-k_, height_);
    case 2: return Rational(height_, k_);
    default: return Rational(-height_, k_);
  }
}

Rational enumerate_rationals(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("rational enumeration is 1-based");
  if (n <= 3) return n == 1 ? Rational(0) : n == 2 ? Rational(1) : Rational(-1);
  std::uint64_t rest = n - 4;  // 0-based offset into heights >= 2
  for (long h = 2;; ++h) {
    std::uint64_t coprime = 0;
    for (long k = 1; k < h; ++k)
      if (std::gcd(k, h) == 1) ++coprime;
    if (rest >= 4 * coprime) {
      rest -= 4 * coprime;
      continue;
    }
    std::uint64_t which = rest / 4;
    for (long k = 1; k < h; ++k) {
      if (std::gcd(k, h) != 1) continue;
      if (which-- != 0) continue;
      switch (rest % 4) {
        case 0: return Rational(k, h);
        case 1: return Rational(-k, h);
        case 2: return Rational(h, k);
        default: return Rational(-h, k);
      }
    }
  }
}

}  // namespace seqode
