#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <string>

namespace primebound {

/// Owning wrapper around an mpfr_t.
class Real {
 public:
  explicit Real(mpfr_prec_t precision = 64);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  /// Exact when the value fits in `precision` bits, otherwise rounded with `rnd`.
  static Real from_double(double v, mpfr_prec_t precision, mpfr_rnd_t rnd = MPFR_RNDN);
  static Real from_mpz(const mpz_class& v, mpfr_prec_t precision, mpfr_rnd_t rnd = MPFR_RNDN);

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(value_); }

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(value_, rnd); }
  /// Decimal rendering with `digits` significant digits.
  std::string to_string(int digits = 20) const;

  /// floor(value) as an integer; value must be finite.
  mpz_class floor() const;

  int compare(const Real& other) const { return mpfr_cmp(value_, other.value_); }
  friend bool operator<(const Real& a, const Real& b) { return a.compare(b) < 0; }
  friend bool operator>(const Real& a, const Real& b) { return a.compare(b) > 0; }
  friend bool operator<=(const Real& a, const Real& b) { return a.compare(b) <= 0; }
  friend bool operator>=(const Real& a, const Real& b) { return a.compare(b) >= 0; }

 private:
  mpfr_t value_;
};

/// Closed interval [lo, hi] whose endpoints are rounded outward, so the
/// exact result of every operation lies inside.
class Interval {
 public:
  explicit Interval(mpfr_prec_t precision = 64);
  Interval(Real lo, Real hi);

  static Interval point(const Real& x, mpfr_prec_t precision);
  static Interval from_si(long v, mpfr_prec_t precision);
  static Interval from_mpz(const mpz_class& v, mpfr_prec_t precision);
  static Interval from_mpq(const mpq_class& v, mpfr_prec_t precision);
  /// Euler's number e.
  static Interval euler(mpfr_prec_t precision);

  const Real& lo() const noexcept { return lo_; }
  const Real& hi() const noexcept { return hi_; }
  mpfr_prec_t precision() const noexcept { return lo_.precision(); }

  bool strictly_positive() const { return mpfr_sgn(lo_.get()) > 0; }
  bool strictly_negative() const { return mpfr_sgn(hi_.get()) < 0; }
  bool contains_zero() const { return !strictly_positive() && !strictly_negative(); }
  bool contains(const Real& x) const { return lo_ <= x && x <= hi_; }

  /// Upper bound on hi - lo.
  double width() const;
  double midpoint() const;

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  /// Throws DomainError when b contains zero.
  friend Interval operator/(const Interval& a, const Interval& b);
  Interval operator-() const;

  /// Certified ordering: true only when every point of *this is below every point of other.
  bool certainly_less(const Interval& other) const { return hi_ < other.lo_; }
  bool certainly_greater(const Interval& other) const { return lo_ > other.hi_; }

 private:
  Real lo_;
  Real hi_;
};

/// Natural log; throws DomainError unless the interval is strictly positive.
Interval log(const Interval& x);
Interval exp(const Interval& x);
Interval abs(const Interval& x);
/// x * n for an integer n.
Interval scale(const Interval& x, const mpz_class& n);

}  // namespace primebound
