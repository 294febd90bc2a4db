#include "primebound/prime_table.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "primebound/errors.hpp"

namespace primebound {

namespace {

constexpr std::uint64_t kCheckpointStride = 64;
constexpr std::uint64_t kSegmentBytes = std::uint64_t{1} << 18;

std::vector<std::uint64_t> simple_sieve(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

// Odd-only segmented sieve of Eratosthenes over [3, limit]; byte i of a
// segment starting at odd `low` stands for low + 2i.
std::vector<std::uint64_t> segmented_sieve(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  primes.reserve(static_cast<std::size_t>(
      1.26 * static_cast<double>(limit) / std::log(static_cast<double>(limit)) + 16));
  primes.push_back(2);
  if (limit < 3) return primes;

  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(limit))) + 1;
  const std::vector<std::uint64_t> base = simple_sieve(root);

  std::vector<std::uint8_t> segment(kSegmentBytes);
  std::vector<std::uint64_t> next;  // next odd multiple to strike, per odd base prime
  for (std::uint64_t p : base) {
    if (p == 2) continue;
    next.push_back(p * p);
  }

  for (std::uint64_t low = 3; low <= limit; low += 2 * kSegmentBytes) {
    const std::uint64_t high = std::min(limit, low + 2 * kSegmentBytes - 1);
    const std::uint64_t count = (high - low) / 2 + 1;
    std::fill_n(segment.begin(), count, std::uint8_t{1});

    std::size_t bi = 0;
    for (std::uint64_t p : base) {
      if (p == 2) continue;
      std::uint64_t& m = next[bi++];
      if (m > high) continue;
      for (; m <= high; m += 2 * p) segment[(m - low) / 2] = 0;
    }
    for (std::uint64_t i = 0; i < count; ++i) {
      if (segment[i]) primes.push_back(low + 2 * i);
    }
  }
  return primes;
}

}  // namespace

struct PrimeTable::PrimorialCache {
  std::mutex mutex;
  // checkpoints[j] = product of the first j * kCheckpointStride primes.
  std::vector<mpz_class> checkpoints{mpz_class(1)};
};

PrimeTable::PrimeTable(std::uint64_t limit, std::vector<std::uint64_t> primes)
    : limit_(limit), primes_(std::move(primes)), cache_(std::make_unique<PrimorialCache>()) {}

PrimeTable::PrimeTable(PrimeTable&&) noexcept = default;
PrimeTable& PrimeTable::operator=(PrimeTable&&) noexcept = default;
PrimeTable::~PrimeTable() = default;

long double PrimeTable::estimated_bytes(std::uint64_t limit) {
  const long double x = std::max<long double>(static_cast<long double>(limit), 3.0L);
  const long double count = 1.25506L * x / std::log(x);
  return count * sizeof(std::uint64_t) + kSegmentBytes + 8.0L * std::sqrt(x);
}

PrimeTable PrimeTable::build(std::uint64_t limit, std::size_t memory_budget) {
  if (limit < 2) {
    throw DomainError("prime table limit must be at least 2, got " + std::to_string(limit));
  }
  const long double need = estimated_bytes(limit);
  if (need > static_cast<long double>(memory_budget)) {
    throw ResourceError("prime table limit " + std::to_string(limit) + " needs about " +
                        std::to_string(static_cast<unsigned long long>(std::min(need, 1.8e19L))) +
                        " bytes, over the budget of " + std::to_string(memory_budget));
  }
  return PrimeTable(limit, segmented_sieve(limit));
}

std::uint64_t PrimeTable::nth_prime(std::uint64_t n) const {
  if (!has_nth(n)) {
    throw RangeError("p_" + std::to_string(n) + " is beyond the prime table (limit " +
                     std::to_string(limit_) + ", " + std::to_string(primes_.size()) + " primes)");
  }
  return primes_[n - 1];
}

std::uint64_t PrimeTable::prime_count(std::uint64_t x) const {
  if (x < 1 || x > limit_) {
    throw RangeError("pi(" + std::to_string(x) + ") is outside the prime table range [1, " +
                     std::to_string(limit_) + "]");
  }
  return static_cast<std::uint64_t>(std::upper_bound(primes_.begin(), primes_.end(), x) -
                                    primes_.begin());
}

mpz_class PrimeTable::primorial(std::uint64_t n) const {
  if (n > primes_.size()) {
    throw RangeError("primorial of " + std::to_string(n) + " primes is beyond the prime table (" +
                     std::to_string(primes_.size()) + " primes)");
  }
  const std::uint64_t slot = n / kCheckpointStride;
  mpz_class acc;
  {
    std::lock_guard lock(cache_->mutex);
    auto& cps = cache_->checkpoints;
    while (cps.size() <= slot) {
      const std::uint64_t begin = (cps.size() - 1) * kCheckpointStride;
      mpz_class next = cps.back();
      for (std::uint64_t i = begin; i < begin + kCheckpointStride; ++i) {
        mpz_mul_ui(next.get_mpz_t(), next.get_mpz_t(), primes_[i]);
      }
      cps.push_back(std::move(next));
    }
    acc = cps[slot];
  }
  for (std::uint64_t i = slot * kCheckpointStride; i < n; ++i) {
    mpz_mul_ui(acc.get_mpz_t(), acc.get_mpz_t(), primes_[i]);
  }
  return acc;
}

std::uint64_t suggested_limit(std::uint64_t index, std::uint64_t min_x) {
  const long double m = std::max<long double>(static_cast<long double>(index), 6.0L);
  const long double bound = 2.0L * m * std::log(m * std::log(m));
  constexpr long double kMax = 18e18L;
  if (bound >= kMax) {
    throw ResourceError("prime index " + std::to_string(index) +
                        " needs a sieve limit beyond 64-bit range");
  }
  return std::max<std::uint64_t>({static_cast<std::uint64_t>(std::ceil(bound)), min_x, 30});
}

}  // namespace primebound
