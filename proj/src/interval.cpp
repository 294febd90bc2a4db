#include "primebound/interval.hpp"

#include <algorithm>
#include <memory>
#include <utility>

#include "primebound/errors.hpp"

namespace primebound {

Real::Real(mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_zero(value_, 1);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::from_double(double v, mpfr_prec_t precision, mpfr_rnd_t rnd) {
  Real r(precision);
  mpfr_set_d(r.value_, v, rnd);
  return r;
}

Real Real::from_mpz(const mpz_class& v, mpfr_prec_t precision, mpfr_rnd_t rnd) {
  Real r(precision);
  mpfr_set_z(r.value_, v.get_mpz_t(), rnd);
  return r;
}

std::string Real::to_string(int digits) const {
  std::unique_ptr<char, void (*)(char*)> buf(nullptr, mpfr_free_str);
  char* raw = nullptr;
  if (mpfr_asprintf(&raw, "%.*Rg", digits, value_) < 0) return "nan";
  buf.reset(raw);
  return std::string(buf.get());
}

mpz_class Real::floor() const {
  mpz_class out;
  mpfr_get_z(out.get_mpz_t(), value_, MPFR_RNDD);
  return out;
}

namespace {

mpfr_prec_t joint(const Interval& a, const Interval& b) {
  return std::max(a.precision(), b.precision());
}

}  // namespace

Interval::Interval(mpfr_prec_t precision) : lo_(precision), hi_(precision) {}

Interval::Interval(Real lo, Real hi) : lo_(std::move(lo)), hi_(std::move(hi)) {}

Interval Interval::point(const Real& x, mpfr_prec_t precision) {
  Interval r(precision);
  mpfr_set(r.lo_.get(), x.get(), MPFR_RNDD);
  mpfr_set(r.hi_.get(), x.get(), MPFR_RNDU);
  return r;
}

Interval Interval::from_si(long v, mpfr_prec_t precision) {
  Interval r(precision);
  mpfr_set_si(r.lo_.get(), v, MPFR_RNDD);
  mpfr_set_si(r.hi_.get(), v, MPFR_RNDU);
  return r;
}

Interval Interval::from_mpz(const mpz_class& v, mpfr_prec_t precision) {
  Interval r(precision);
  mpfr_set_z(r.lo_.get(), v.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_.get(), v.get_mpz_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_mpq(const mpq_class& v, mpfr_prec_t precision) {
  Interval r(precision);
  mpfr_set_q(r.lo_.get(), v.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_.get(), v.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::euler(mpfr_prec_t precision) {
  Interval r(precision);
  mpfr_set_ui(r.lo_.get(), 1, MPFR_RNDN);
  mpfr_set_ui(r.hi_.get(), 1, MPFR_RNDN);
  mpfr_exp(r.lo_.get(), r.lo_.get(), MPFR_RNDD);
  mpfr_exp(r.hi_.get(), r.hi_.get(), MPFR_RNDU);
  return r;
}

double Interval::width() const {
  Real w(53);
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return w.to_double(MPFR_RNDU);
}

double Interval::midpoint() const {
  Real m(precision() + 1);
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m.to_double();
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(joint(a, b));
  mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(joint(a, b));
  mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
  mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::operator-() const {
  Interval r(precision());
  mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  const mpfr_prec_t p = joint(a, b);
  Interval r(p);
  Real t(p);
  const Real* xs[2] = {&a.lo_, &a.hi_};
  const Real* ys[2] = {&b.lo_, &b.hi_};
  bool first = true;
  for (const Real* x : xs) {
    for (const Real* y : ys) {
      mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
      if (first || t < r.lo_) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
      if (first || t > r.hi_) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw DomainError("interval division by an interval containing zero");
  const mpfr_prec_t p = joint(a, b);
  Interval r(p);
  Real t(p);
  const Real* xs[2] = {&a.lo_, &a.hi_};
  const Real* ys[2] = {&b.lo_, &b.hi_};
  bool first = true;
  for (const Real* x : xs) {
    for (const Real* y : ys) {
      mpfr_div(t.get(), x->get(), y->get(), MPFR_RNDD);
      if (first || t < r.lo_) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
      mpfr_div(t.get(), x->get(), y->get(), MPFR_RNDU);
      if (first || t > r.hi_) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

Interval log(const Interval& x) {
  if (!x.strictly_positive()) throw DomainError("log of an interval that is not strictly positive");
  Interval r(x.precision());
  Real lo(x.precision()), hi(x.precision());
  mpfr_log(lo.get(), x.lo().get(), MPFR_RNDD);
  mpfr_log(hi.get(), x.hi().get(), MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

Interval exp(const Interval& x) {
  Real lo(x.precision()), hi(x.precision());
  mpfr_exp(lo.get(), x.lo().get(), MPFR_RNDD);
  mpfr_exp(hi.get(), x.hi().get(), MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

Interval abs(const Interval& x) {
  if (x.strictly_positive()) return x;
  if (x.strictly_negative()) return -x;
  Real lo(x.precision()), hi(x.precision());
  mpfr_set_zero(lo.get(), 1);
  if (mpfr_cmpabs(x.lo().get(), x.hi().get()) > 0) {
    mpfr_abs(hi.get(), x.lo().get(), MPFR_RNDU);
  } else {
    mpfr_abs(hi.get(), x.hi().get(), MPFR_RNDU);
  }
  return Interval(std::move(lo), std::move(hi));
}

Interval scale(const Interval& x, const mpz_class& n) {
  return x * Interval::from_mpz(n, std::max<mpfr_prec_t>(x.precision(), 64));
}

}  // namespace primebound
