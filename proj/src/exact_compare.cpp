#include "primebound/exact_compare.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>

#include "primebound/errors.hpp"

namespace primebound {

PrecisionPolicy PrecisionPolicy::from_environment() {
  PrecisionPolicy policy;
  if (const char* env = std::getenv("PRIMEBOUND_PRECISION_CAP"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 2 || v > (1L << 24)) {
      throw ParseError(std::string("PRIMEBOUND_PRECISION_CAP must be an integer in [2, 2^24], got '") +
                       env + "'");
    }
    policy.cap_bits = static_cast<int>(v);
    policy.start_bits = std::min(policy.start_bits, policy.cap_bits);
  }
  return policy;
}

ExactConstant ExactConstant::rational(mpq_class value) {
  value.canonicalize();
  ExactConstant c;
  c.kind_ = Kind::rational;
  c.value_ = std::move(value);
  c.bounds_ = Interval::from_mpq(c.value_, 64);
  return c;
}

ExactConstant ExactConstant::rational(long num, long den) {
  if (den == 0) throw DomainError("rational constant with zero denominator");
  return rational(mpq_class(num, den));
}

ExactConstant ExactConstant::enclosure(std::string label, Refiner refine,
                                       mpfr_prec_t precision) {
  ExactConstant c;
  c.kind_ = Kind::enclosure;
  c.bounds_ = refine(precision);
  if (!(c.bounds_.lo() < c.bounds_.hi())) {
    throw DomainError("enclosure for " + label + " must satisfy lower < upper");
  }
  c.refine_ = std::move(refine);
  c.label_ = std::move(label);
  return c;
}

Interval ExactConstant::to_interval(mpfr_prec_t precision) const {
  if (kind_ == Kind::rational) return Interval::from_mpq(value_, precision);
  return refine_(precision);
}

std::string ExactConstant::to_string() const {
  if (kind_ == Kind::rational) return value_.get_str();
  return label_;
}

std::string_view to_string(CheckVerdict::Status status) {
  switch (status) {
    case CheckVerdict::Status::holds: return "Holds";
    case CheckVerdict::Status::fails: return "Fails";
    case CheckVerdict::Status::undecided: return "Undecided";
  }
  return "Undecided";
}

ExactConstant parse_constant(std::string_view text) {
  const std::string original(text);
  auto fail = [&](const char* why) -> ParseError {
    return ParseError("cannot parse constant '" + original + "': " + why);
  };
  if (text.empty()) throw fail("empty");

  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  auto all_digits = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isdigit(ch); });
  };

  mpq_class value;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw fail("expected p/q with decimal integers");
    mpz_class d(std::string(den), 10);
    if (d == 0) throw fail("zero denominator");
    value = mpq_class(mpz_class(std::string(num), 10), d);
  } else if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto whole = text.substr(0, dot);
    const auto frac = text.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw fail("expected a finite decimal");
    }
    mpz_class num(std::string(whole) + std::string(frac), 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    value = mpq_class(num, den);
  } else {
    if (!all_digits(text)) throw fail("expected an integer, p/q, or a finite decimal");
    value = mpq_class(mpz_class(std::string(text), 10));
  }
  if (negative) value = -value;
  return ExactConstant::rational(std::move(value));
}

void require_admissible_constant(const ExactConstant& c, const PrecisionPolicy& policy) {
  const std::string name = c.to_string();
  const auto violation = [&] {
    return DomainError("c = " + name + " violates the hypothesis 1 < c < e of the theorem");
  };
  if (c.is_rational() && c.value() <= 1) throw violation();

  for (int bits = policy.start_bits;; bits = std::min(bits * 2, policy.cap_bits)) {
    const Interval ci = c.to_interval(bits);
    const Interval e = Interval::euler(bits);
    const Interval one = Interval::from_si(1, bits);
    if (ci.certainly_greater(one) && ci.certainly_less(e)) return;
    if (!(ci.hi() > one.lo()) || !(ci.lo() < e.hi())) throw violation();
    if (bits >= policy.cap_bits) break;
  }
  throw DomainError("cannot certify 1 < c < e for c = " + name + " within " +
                    std::to_string(policy.cap_bits) + " bits");
}

ExactConstant parse_admissible_constant(std::string_view text, const PrecisionPolicy& policy) {
  ExactConstant c = parse_constant(text);
  require_admissible_constant(c, policy);
  return c;
}

Interval log_enclosure(const mpq_class& x, int precision_bits) {
  if (x <= 0) throw DomainError("log of a non-positive number: " + x.get_str());
  if (precision_bits < 2) throw DomainError("precision must be at least 2 bits");
  // Guard bits absorb the outward rounding of x itself and of the log.
  const mpfr_prec_t work = precision_bits + 16;
  if (x == 1) return Interval::from_si(0, work);
  return log(Interval::from_mpq(x, work));
}

double approx_log(const mpz_class& v) {
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

namespace {

double approx_log_constant(const ExactConstant& c) {
  if (c.is_rational()) {
    return approx_log(c.value().get_num()) - approx_log(c.value().get_den());
  }
  return std::log(c.to_interval(64).midpoint());
}

void require_positive(const ExactConstant& c) {
  if (c.is_rational()) {
    if (c.value() <= 0) throw DomainError("comparison constant must be positive, got " + c.to_string());
  } else if (!c.bounds().strictly_positive()) {
    throw DomainError("comparison constant enclosure must be strictly positive: " + c.to_string());
  }
}

CheckVerdict exact_verdict(const mpz_class& lhs, const mpz_class& rhs, double margin) {
  CheckVerdict v;
  v.status = lhs > rhs ? CheckVerdict::Status::holds : CheckVerdict::Status::fails;
  v.margin = margin;
  return v;
}

/// Decides lhs_log > cexp * log(c) by escalating enclosures.
template <typename LhsLog>
CheckVerdict enclosure_compare(LhsLog lhs_log, const ExactConstant& c, std::uint64_t cexp,
                               const PrecisionPolicy& policy, double margin) {
  CheckVerdict v;
  v.margin = margin;
  const mpz_class cexp_z(static_cast<unsigned long>(cexp));
  for (int bits = policy.start_bits; bits <= policy.cap_bits;) {
    const Interval lhs = lhs_log(bits);
    const Interval c_enc = c.to_interval(bits + 16);
    const Interval rhs = scale(log(c_enc), cexp_z);
    v.precision_used = bits;
    if (lhs.certainly_greater(rhs)) {
      v.status = CheckVerdict::Status::holds;
      return v;
    }
    if (lhs.certainly_less(rhs)) {
      v.status = CheckVerdict::Status::fails;
      return v;
    }
    if (bits >= policy.cap_bits) break;
    bits = std::min(bits * 2, policy.cap_bits);
  }
  v.status = CheckVerdict::Status::undecided;
  return v;
}

}  // namespace

CheckVerdict compare_power_vs_power(std::uint64_t base, std::uint64_t exp,
                                    const ExactConstant& c, std::uint64_t cexp,
                                    const CompareOptions& options) {
  if (base < 2) throw DomainError("power comparison needs base >= 2, got " + std::to_string(base));
  require_positive(c);

  const double margin = static_cast<double>(exp) * std::log(static_cast<double>(base)) -
                        static_cast<double>(cexp) * approx_log_constant(c);
  if (cexp == 0) {
    // rhs == 1 exactly; lhs == base^exp >= 1 with equality iff exp == 0.
    CheckVerdict v;
    v.status = exp > 0 ? CheckVerdict::Status::holds : CheckVerdict::Status::fails;
    v.margin = margin;
    return v;
  }

  if (c.is_rational() && options.path == ComparePath::automatic) {
    mpz_class lhs, rhs, qpow;
    mpz_ui_pow_ui(lhs.get_mpz_t(), base, exp);
    mpz_pow_ui(qpow.get_mpz_t(), c.value().get_den_mpz_t(), cexp);
    lhs *= qpow;
    mpz_pow_ui(rhs.get_mpz_t(), c.value().get_num_mpz_t(), cexp);
    return exact_verdict(lhs, rhs, margin);
  }

  const mpz_class exp_z(static_cast<unsigned long>(exp));
  const mpq_class base_q(static_cast<unsigned long>(base));
  return enclosure_compare([&](int bits) { return scale(log_enclosure(base_q, bits), exp_z); }, c,
                           cexp, options.precision, margin);
}

CheckVerdict compare_bigint_vs_power(const mpz_class& lhs, const ExactConstant& c,
                                     std::uint64_t cexp, const CompareOptions& options) {
  if (lhs < 1) throw DomainError("big-integer comparison needs lhs >= 1");
  require_positive(c);

  const double margin = approx_log(lhs) - static_cast<double>(cexp) * approx_log_constant(c);
  if (cexp == 0) {
    CheckVerdict v;
    v.status = lhs > 1 ? CheckVerdict::Status::holds : CheckVerdict::Status::fails;
    v.margin = margin;
    return v;
  }

  if (c.is_rational() && options.path == ComparePath::automatic) {
    mpz_class scaled, rhs;
    mpz_pow_ui(scaled.get_mpz_t(), c.value().get_den_mpz_t(), cexp);
    scaled *= lhs;
    mpz_pow_ui(rhs.get_mpz_t(), c.value().get_num_mpz_t(), cexp);
    return exact_verdict(scaled, rhs, margin);
  }

  const mpq_class lhs_q(lhs);
  return enclosure_compare([&](int bits) { return log_enclosure(lhs_q, bits); }, c, cexp,
                           options.precision, margin);
}

}  // namespace primebound
