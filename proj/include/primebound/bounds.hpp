#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "primebound/exact_compare.hpp"
#include "primebound/interval.hpp"

namespace primebound {

/// The explicit constant in pi(n) < 1.25506 n / log n.
inline const mpq_class kRosserPiConstant{125506, 100000};
/// The explicit constant in pi(n) < 1.71678 n / log(n log n).
inline const mpq_class kAppendixConstant{171678, 100000};

/// f_k(x) = 1 - (log c / log x)(1 + k/x) log((x+k) log(x+k)) - 1.25506 / log x.
/// Requires x > 1 and (x+k) log(x+k) > 1.
Interval eval_fk(const Real& x, const ExactConstant& c, std::uint64_t k, int precision_bits);
Interval eval_fk(double x, const ExactConstant& c, std::uint64_t k, int precision_bits);

/// f(x) = 1 - log 2 (1 + 1/x) - 1.71678 / log(x log x), for x >= 2.
Interval eval_f_appendix(const Real& x, int precision_bits);
Interval eval_f_appendix(double x, int precision_bits);

/// A function whose unique zero on [2, inf) yields an analytic threshold.
class ThresholdFunction {
 public:
  enum class Kind { fk, appendix };

  /// Validates 1 < c < e.
  static ThresholdFunction fk(ExactConstant c, std::uint64_t k, const PrecisionPolicy& policy = {});
  static ThresholdFunction appendix();

  Kind kind() const noexcept { return kind_; }
  const std::optional<ExactConstant>& c() const noexcept { return c_; }
  std::uint64_t k() const noexcept { return k_; }
  std::string name() const;

  Interval evaluate(const Real& x, int precision_bits) const;

  enum class Sign { negative, positive, undecided };
  /// Sign of fn(x), escalating precision until the enclosure excludes zero.
  Sign sign(const Real& x, const PrecisionPolicy& policy) const;

 private:
  ThresholdFunction() = default;

  Kind kind_ = Kind::appendix;
  std::optional<ExactConstant> c_;
  std::uint64_t k_ = 0;
};

struct RootOptions {
  double tolerance = 1e-9;
  PrecisionPolicy precision;
  /// Bracket doubling stops once hi exceeds 2^max_bracket_log2.
  int max_bracket_log2 = 256;
  /// Points sampled in [2, root] to look for an earlier sign change.
  int monotonicity_samples = 128;
};

struct RootResult {
  Real root;      ///< midpoint of the final bracket
  Real lo;        ///< fn(lo) < 0, certified
  Real hi;        ///< fn(hi) > 0, certified
  int iterations = 0;
  double tolerance = 0;
  mpz_class analytic_threshold;  ///< floor(root)
  bool monotonicity_violated = false;
  std::vector<std::string> diagnostics;

  double bracket_width() const;
};

/// Brackets from lo = 2 by doubling hi, bisects to tolerance, then settles
/// floor(root) exactly. Throws ContractViolation when fn(2) >= 0 and
/// BracketError when no sign change appears below the cap.
RootResult find_root(const ThresholdFunction& fn, const RootOptions& options = {});

struct AuditFinding {
  std::string name;
  std::string description;
  bool passed = false;
  double value = 0;        ///< quantity that was checked (midpoint of its enclosure)
  double value_width = 0;  ///< width of the enclosure of value
  double bound = 0;        ///< threshold it was compared against
};

struct AuditReport {
  std::vector<AuditFinding> findings;
  bool all_passed() const;
};

/// Re-derives the explicit constants the threshold functions rely on.
AuditReport audit_constants(int precision_bits = 128);

}  // namespace primebound
