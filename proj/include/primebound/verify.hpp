#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "primebound/bounds.hpp"
#include "primebound/exact_compare.hpp"
#include "primebound/prime_table.hpp"

namespace primebound {

/// The catalogue of inequalities, each a predicate over n.
enum class InequalityId {
  theorem1,    ///< n^(n - pi(n)) > c^(p_{n+k})
  corollary1,  ///< p_1 ... p_n > c^(p_{n+k})
  zhang,       ///< p_{n+1}^(n - pi(n)) > 2^(p_{n+1})
  panaitopol,  ///< p_1 ... p_n > p_{n+1}^(n - pi(n))
  rosser_pi,   ///< pi(n) < 1.25506 n / log n
  rosser_pn,   ///< p_n < n log(n log n)
  appendix_a,  ///< pi(n) < 1.71678 n / log(n log n)
};

std::string_view to_string(InequalityId id);
/// Accepts the lower-case names printed by to_string. Throws ParseError.
InequalityId parse_inequality(std::string_view name);

/// True for the two predicates parameterised by (c, k).
bool takes_parameters(InequalityId id) noexcept;
/// Smallest n the predicate is defined for.
std::uint64_t first_meaningful_n(InequalityId id) noexcept;
/// Largest prime index the predicate reads at n.
std::uint64_t prime_index_needed(InequalityId id, std::uint64_t n, std::uint64_t k) noexcept;

struct InequalityParams {
  std::optional<ExactConstant> c;
  std::optional<std::uint64_t> k;

  static InequalityParams none() { return {}; }
  static InequalityParams with(ExactConstant c, std::uint64_t k) { return {std::move(c), k}; }
};

/// Throws DomainError unless c and k are present exactly for THEOREM1 and
/// COROLLARY1, with 1 < c < e certified.
void validate_params(InequalityId id, const InequalityParams& params,
                     const PrecisionPolicy& policy = {});

struct VerifyOptions {
  PrecisionPolicy precision;
  /// Worker threads for scans; 0 picks hardware concurrency.
  unsigned threads = 0;
};

/// Exact verdict of one predicate at n. Throws RangeError when the table is too small.
CheckVerdict check_inequality(InequalityId id, std::uint64_t n, const InequalityParams& params,
                              const PrimeTable& table, const VerifyOptions& options = {});

struct ScanSummary {
  std::uint64_t n_lo = 0;
  std::uint64_t n_hi = 0;
  std::uint64_t holds = 0;
  std::uint64_t fails = 0;
  std::uint64_t undecided = 0;
  std::vector<std::uint64_t> failures;        ///< ascending
  std::vector<std::uint64_t> undecided_at;    ///< ascending
  std::vector<CheckVerdict> verdicts;         ///< one per n, only when requested
};

/// Checks every n in [n_lo, n_hi]. Results are independent of thread count.
ScanSummary scan_range(InequalityId id, std::uint64_t n_lo, std::uint64_t n_hi,
                       const InequalityParams& params, const PrimeTable& table,
                       const VerifyOptions& options = {}, bool keep_verdicts = false);

struct ThresholdReport {
  InequalityId inequality = InequalityId::zhang;
  InequalityParams params;
  /// Smallest N with the predicate holding on all of [N, scan_cap].
  std::uint64_t minimal_n = 0;
  std::vector<std::uint64_t> failures_below;
  std::vector<std::uint64_t> undecided;
  std::uint64_t scan_cap = 0;
  std::optional<RootResult> analytic_root;
  /// analytic_threshold + 1: the first n covered by "n > N_k".
  std::optional<mpz_class> guaranteed_from;
  /// Whether n + k >= 6 (where p_n < n log(n log n) is valid) for every n > N_k.
  std::optional<bool> rosser_pn_region_ok;
  bool certified = false;
  std::vector<std::string> diagnostics;
};

/// First n from which p_n < n log(n log n) holds throughout [1, up_to].
std::uint64_t rosser_pn_valid_from(const PrimeTable& table, std::uint64_t up_to,
                                   const VerifyOptions& options = {});

/// Exhaustive exact scan of [first_meaningful_n, scan_cap]; for THEOREM1 and
/// COROLLARY1 also locates x_k and certifies when the scan reaches ceil(x_k).
ThresholdReport minimal_threshold(InequalityId id, const InequalityParams& params,
                                  std::uint64_t scan_cap, const PrimeTable& table,
                                  const VerifyOptions& options = {},
                                  const RootOptions& root_options = {});

}  // namespace primebound
