#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

namespace primebound {

/// Default ceiling on the memory a PrimeTable may allocate.
inline constexpr std::size_t kDefaultMemoryBudget = std::size_t{2} << 30;

/// Immutable table of all primes up to a sieve limit, with pi(x), p_n and
/// primorial prefix products. Primes are 1-indexed: nth_prime(1) == 2.
///
/// Safe for concurrent reads. The primorial cache grows lazily behind a
/// mutex; everything else is fixed at construction.
class PrimeTable {
 public:
  /// Sieves [2, limit]. Throws DomainError for limit < 2 and ResourceError
  /// when the estimated footprint exceeds memory_budget.
  static PrimeTable build(std::uint64_t limit,
                          std::size_t memory_budget = kDefaultMemoryBudget);

  /// Bytes a table of this limit is expected to occupy (sieve + prime list).
  static long double estimated_bytes(std::uint64_t limit);

  PrimeTable(PrimeTable&&) noexcept;
  PrimeTable& operator=(PrimeTable&&) noexcept;
  PrimeTable(const PrimeTable&) = delete;
  PrimeTable& operator=(const PrimeTable&) = delete;
  ~PrimeTable();

  std::uint64_t limit() const noexcept { return limit_; }
  std::span<const std::uint64_t> primes() const noexcept { return primes_; }
  std::uint64_t size() const noexcept { return primes_.size(); }

  /// p_n. Throws RangeError when n == 0 or p_n > limit.
  std::uint64_t nth_prime(std::uint64_t n) const;

  /// pi(x) for 1 <= x <= limit. Throws RangeError otherwise.
  std::uint64_t prime_count(std::uint64_t x) const;

  /// Product of the first n primes; primorial(0) == 1.
  mpz_class primorial(std::uint64_t n) const;

  /// True when p_n is in the table.
  bool has_nth(std::uint64_t n) const noexcept {
    return n >= 1 && n <= primes_.size();
  }

 private:
  struct PrimorialCache;

  PrimeTable(std::uint64_t limit, std::vector<std::uint64_t> primes);

  std::uint64_t limit_ = 0;
  std::vector<std::uint64_t> primes_;
  std::unique_ptr<PrimorialCache> cache_;
};

/// Sieve limit large enough to hold p_index and to answer pi(x) up to
/// min_x: twice index*log(index*log index), the explicit upper bound on p_n.
std::uint64_t suggested_limit(std::uint64_t index, std::uint64_t min_x = 2);

}  // namespace primebound
