#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "primebound/interval.hpp"

namespace primebound {

/// Working precision schedule for enclosure-based decisions: start at
/// start_bits and double until cap_bits, then give up.
struct PrecisionPolicy {
  int start_bits = 64;
  int cap_bits = 4096;

  /// Default policy, with the cap taken from PRIMEBOUND_PRECISION_CAP when set.
  static PrecisionPolicy from_environment();
};

/// A real constant c, either an exact rational or an enclosure that can be
/// refined to any precision.
class ExactConstant {
 public:
  enum class Kind { rational, enclosure };
  /// Returns an interval containing the constant at the requested precision.
  using Refiner = std::function<Interval(mpfr_prec_t)>;

  static ExactConstant rational(mpq_class value);
  static ExactConstant rational(long num, long den = 1);
  /// `label` is used when the constant is printed.
  static ExactConstant enclosure(std::string label, Refiner refine, mpfr_prec_t precision = 64);

  Kind kind() const noexcept { return kind_; }
  bool is_rational() const noexcept { return kind_ == Kind::rational; }
  /// Only meaningful for rational constants.
  const mpq_class& value() const noexcept { return value_; }

  /// Current enclosure; for enclosure kind this is the interval fixed at construction.
  const Interval& bounds() const noexcept { return bounds_; }
  /// Enclosure at `precision` bits (a fresh refinement for enclosure kind).
  Interval to_interval(mpfr_prec_t precision) const;

  /// "p/q" or "p" for rationals, the label otherwise.
  std::string to_string() const;

 private:
  ExactConstant() = default;

  Kind kind_ = Kind::rational;
  mpq_class value_;
  Interval bounds_;
  Refiner refine_;
  std::string label_;
};

/// Outcome of one inequality check.
struct CheckVerdict {
  enum class Status { holds, fails, undecided };

  Status status = Status::undecided;
  /// Bits of the last enclosure evaluated; 0 when decided by exact integer arithmetic.
  int precision_used = 0;
  /// log(lhs) - log(rhs) in double precision; diagnostic only.
  std::optional<double> margin;

  bool holds() const noexcept { return status == Status::holds; }
  bool fails() const noexcept { return status == Status::fails; }
  bool undecided() const noexcept { return status == Status::undecided; }
};

std::string_view to_string(CheckVerdict::Status status);

/// Accepts "n", "p/q" and finite decimals such as "2.5" or "-.75"; all yield
/// exact rationals. Throws ParseError for anything else.
ExactConstant parse_constant(std::string_view text);

/// parse_constant followed by require_admissible_constant.
ExactConstant parse_admissible_constant(std::string_view text,
                                   const PrecisionPolicy& policy = {});

/// Throws DomainError unless the constant is certified to satisfy 1 < c < e.
void require_admissible_constant(const ExactConstant& c, const PrecisionPolicy& policy = {});

/// Enclosure of log(x) with hi - lo <= 2^(1-precision_bits) * max(1, |log x|).
Interval log_enclosure(const mpq_class& x, int precision_bits);

enum class ComparePath {
  automatic,       ///< exact integers for rational c, enclosures otherwise
  enclosure_only,  ///< always use enclosures, even for rational c
};

struct CompareOptions {
  PrecisionPolicy precision;
  ComparePath path = ComparePath::automatic;
};

/// Decides base^exp > c^cexp. Equality is reported as fails.
CheckVerdict compare_power_vs_power(std::uint64_t base, std::uint64_t exp,
                                    const ExactConstant& c, std::uint64_t cexp,
                                    const CompareOptions& options = {});

/// Decides lhs > c^cexp. Equality is reported as fails.
CheckVerdict compare_bigint_vs_power(const mpz_class& lhs, const ExactConstant& c,
                                     std::uint64_t cexp, const CompareOptions& options = {});

/// Natural log of a positive big integer in double precision.
double approx_log(const mpz_class& v);

}  // namespace primebound
