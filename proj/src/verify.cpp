#include "primebound/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "primebound/errors.hpp"

namespace primebound {

namespace {

constexpr struct {
  InequalityId id;
  std::string_view name;
} kNames[] = {
    {InequalityId::theorem1, "theorem1"},     {InequalityId::corollary1, "corollary1"},
    {InequalityId::zhang, "zhang"},           {InequalityId::panaitopol, "panaitopol"},
    {InequalityId::rosser_pi, "rosser_pi"},   {InequalityId::rosser_pn, "rosser_pn"},
    {InequalityId::appendix_a, "appendix_a"},
};

using Status = CheckVerdict::Status;

/// Decides lhs < rhs with escalating enclosures; both sides are positive.
template <typename Lhs, typename Rhs>
CheckVerdict decide_less(Lhs lhs_at, Rhs rhs_at, const PrecisionPolicy& policy) {
  CheckVerdict v;
  for (int bits = policy.start_bits;; bits = std::min(bits * 2, policy.cap_bits)) {
    const Interval lhs = lhs_at(bits);
    const Interval rhs = rhs_at(bits);
    v.precision_used = bits;
    if (!v.margin && lhs.strictly_positive() && rhs.strictly_positive()) {
      v.margin = std::log(rhs.midpoint()) - std::log(lhs.midpoint());
    }
    if (lhs.certainly_less(rhs)) {
      v.status = Status::holds;
      return v;
    }
    if (lhs.certainly_greater(rhs)) {
      v.status = Status::fails;
      return v;
    }
    if (bits >= policy.cap_bits) break;
  }
  v.status = Status::undecided;
  return v;
}

Interval from_u64(std::uint64_t v, mpfr_prec_t p) {
  return Interval::from_mpz(mpz_class(static_cast<unsigned long>(v)), p);
}

void require_table(const PrimeTable& table, InequalityId id, std::uint64_t n, std::uint64_t k) {
  const std::uint64_t index = prime_index_needed(id, n, k);
  if (!table.has_nth(index)) {
    throw RangeError(std::string(to_string(id)) + " at n = " + std::to_string(n) + " needs p_" +
                     std::to_string(index) + ", beyond the prime table (" +
                     std::to_string(table.size()) + " primes up to " +
                     std::to_string(table.limit()) + ")");
  }
  if (n > table.limit()) {
    throw RangeError(std::string(to_string(id)) + " at n = " + std::to_string(n) +
                     " needs pi(n) beyond the table limit " + std::to_string(table.limit()));
  }
}

}  // namespace

std::string_view to_string(InequalityId id) {
  for (const auto& e : kNames) {
    if (e.id == id) return e.name;
  }
  return "unknown";
}

InequalityId parse_inequality(std::string_view name) {
  for (const auto& e : kNames) {
    if (e.name == name) return e.id;
  }
  throw ParseError("unknown inequality '" + std::string(name) +
                   "' (expected theorem1, corollary1, zhang, panaitopol, rosser_pi, rosser_pn or appendix_a)");
}

bool takes_parameters(InequalityId id) noexcept {
  return id == InequalityId::theorem1 || id == InequalityId::corollary1;
}

std::uint64_t first_meaningful_n(InequalityId id) noexcept {
  return id == InequalityId::rosser_pn ? 1 : 2;
}

std::uint64_t prime_index_needed(InequalityId id, std::uint64_t n, std::uint64_t k) noexcept {
  switch (id) {
    case InequalityId::theorem1:
    case InequalityId::corollary1: return n + k;
    case InequalityId::zhang:
    case InequalityId::panaitopol: return n + 1;
    case InequalityId::rosser_pn: return n;
    case InequalityId::rosser_pi:
    case InequalityId::appendix_a: return 1;
  }
  return n;
}

void validate_params(InequalityId id, const InequalityParams& params, const PrecisionPolicy& policy) {
  const bool has = params.c.has_value() || params.k.has_value();
  if (takes_parameters(id)) {
    if (!params.c || !params.k) {
      throw DomainError(std::string(to_string(id)) + " requires both c and k");
    }
    require_admissible_constant(*params.c, policy);
  } else if (has) {
    throw DomainError(std::string(to_string(id)) + " takes no c or k parameters");
  }
}

CheckVerdict check_inequality(InequalityId id, std::uint64_t n, const InequalityParams& params,
                              const PrimeTable& table, const VerifyOptions& options) {
  if (n < first_meaningful_n(id)) {
    throw DomainError(std::string(to_string(id)) + " is defined for n >= " +
                      std::to_string(first_meaningful_n(id)) + ", got " + std::to_string(n));
  }
  validate_params(id, params, options.precision);
  const std::uint64_t k = params.k.value_or(0);
  require_table(table, id, n, k);

  const CompareOptions cmp{options.precision, ComparePath::automatic};
  const PrecisionPolicy& policy = options.precision;

  switch (id) {
    case InequalityId::theorem1: {
      const std::uint64_t composites = n - table.prime_count(n);
      return compare_power_vs_power(n, composites, *params.c, table.nth_prime(n + k), cmp);
    }
    case InequalityId::corollary1:
      return compare_bigint_vs_power(table.primorial(n), *params.c, table.nth_prime(n + k), cmp);
    case InequalityId::zhang: {
      const std::uint64_t next = table.nth_prime(n + 1);
      return compare_power_vs_power(next, n - table.prime_count(n), ExactConstant::rational(2),
                                    next, cmp);
    }
    case InequalityId::panaitopol: {
      const auto next = ExactConstant::rational(mpq_class(static_cast<unsigned long>(table.nth_prime(n + 1))));
      return compare_bigint_vs_power(table.primorial(n), next, n - table.prime_count(n), cmp);
    }
    case InequalityId::rosser_pi: {
      // pi(n) log n < 1.25506 n
      const std::uint64_t count = table.prime_count(n);
      const mpq_class rhs = kRosserPiConstant * mpq_class(static_cast<unsigned long>(n));
      return decide_less(
          [&](int bits) {
            return from_u64(count, bits) * log_enclosure(mpq_class(static_cast<unsigned long>(n)), bits);
          },
          [&](int bits) { return Interval::from_mpq(rhs, bits); }, policy);
    }
    case InequalityId::rosser_pn: {
      // p_n < n log(n log n); at n = 1 the right side is log 0 = -inf.
      const std::uint64_t p = table.nth_prime(n);
      if (n == 1) {
        CheckVerdict v;
        v.status = Status::fails;
        return v;
      }
      return decide_less([&](int bits) { return from_u64(p, bits); },
                         [&](int bits) {
                           const Interval ni = from_u64(n, bits + 16);
                           return ni * log(ni * log(ni));
                         },
                         policy);
    }
    case InequalityId::appendix_a: {
      // pi(n) log(n log n) < 1.71678 n
      const std::uint64_t count = table.prime_count(n);
      const mpq_class rhs = kAppendixConstant * mpq_class(static_cast<unsigned long>(n));
      return decide_less(
          [&](int bits) {
            const Interval ni = from_u64(n, bits + 16);
            return from_u64(count, bits) * log(ni * log(ni));
          },
          [&](int bits) { return Interval::from_mpq(rhs, bits); }, policy);
    }
  }
  throw DomainError("unknown inequality");
}

ScanSummary scan_range(InequalityId id, std::uint64_t n_lo, std::uint64_t n_hi,
                       const InequalityParams& params, const PrimeTable& table,
                       const VerifyOptions& options, bool keep_verdicts) {
  if (n_lo > n_hi) {
    throw DomainError("scan range is empty: n_lo = " + std::to_string(n_lo) +
                      " > n_hi = " + std::to_string(n_hi));
  }
  if (n_lo < first_meaningful_n(id)) {
    throw DomainError(std::string(to_string(id)) + " is defined for n >= " +
                      std::to_string(first_meaningful_n(id)));
  }
  validate_params(id, params, options.precision);
  require_table(table, id, n_hi, params.k.value_or(0));

  const std::uint64_t count = n_hi - n_lo + 1;
  std::vector<CheckVerdict> verdicts(count);

  constexpr std::uint64_t kChunk = 64;
  const std::uint64_t chunks = (count + kChunk - 1) / kChunk;
  std::atomic<std::uint64_t> next_chunk{0};
  std::vector<std::exception_ptr> errors(chunks);

  auto worker = [&] {
    for (;;) {
      const std::uint64_t chunk = next_chunk.fetch_add(1);
      if (chunk >= chunks) return;
      const std::uint64_t begin = chunk * kChunk;
      const std::uint64_t end = std::min(count, begin + kChunk);
      try {
        for (std::uint64_t i = begin; i < end; ++i) {
          verdicts[i] = check_inequality(id, n_lo + i, params, table, options);
        }
      } catch (...) {
        errors[chunk] = std::current_exception();
      }
    }
  };

  unsigned threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  threads = static_cast<unsigned>(std::clamp<std::uint64_t>(threads, 1, chunks));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }

  ScanSummary summary;
  summary.n_lo = n_lo;
  summary.n_hi = n_hi;
  for (std::uint64_t i = 0; i < count; ++i) {
    switch (verdicts[i].status) {
      case Status::holds: ++summary.holds; break;
      case Status::fails:
        ++summary.fails;
        summary.failures.push_back(n_lo + i);
        break;
      case Status::undecided:
        ++summary.undecided;
        summary.undecided_at.push_back(n_lo + i);
        break;
    }
  }
  if (keep_verdicts) summary.verdicts = std::move(verdicts);
  return summary;
}

std::uint64_t rosser_pn_valid_from(const PrimeTable& table, std::uint64_t up_to,
                                   const VerifyOptions& options) {
  up_to = std::min<std::uint64_t>(up_to, table.size());
  if (up_to < 1) throw RangeError("prime table is empty");
  const ScanSummary s = scan_range(InequalityId::rosser_pn, 1, up_to, {}, table, options);
  std::uint64_t last_bad = 0;
  if (!s.failures.empty()) last_bad = s.failures.back();
  if (!s.undecided_at.empty()) last_bad = std::max(last_bad, s.undecided_at.back());
  return last_bad + 1;
}

ThresholdReport minimal_threshold(InequalityId id, const InequalityParams& params,
                                  std::uint64_t scan_cap, const PrimeTable& table,
                                  const VerifyOptions& options, const RootOptions& root_options) {
  const std::uint64_t start = first_meaningful_n(id);
  if (scan_cap < start) {
    throw DomainError("scan_cap " + std::to_string(scan_cap) + " is below the first meaningful n " +
                      std::to_string(start));
  }
  ThresholdReport report;
  report.inequality = id;
  report.params = params;
  report.scan_cap = scan_cap;

  const ScanSummary scan = scan_range(id, start, scan_cap, params, table, options);
  std::uint64_t last_bad = 0;
  if (!scan.failures.empty()) last_bad = scan.failures.back();
  if (!scan.undecided_at.empty()) last_bad = std::max(last_bad, scan.undecided_at.back());
  report.minimal_n = last_bad == 0 ? start : last_bad + 1;
  report.failures_below = scan.failures;
  report.undecided = scan.undecided_at;
  if (report.minimal_n > scan_cap) {
    report.diagnostics.push_back("predicate does not hold at scan_cap " + std::to_string(scan_cap) +
                                 "; no threshold found within the scanned range");
  }
  report.diagnostics.push_back("minimal_n convention: holds for every n >= minimal_n up to scan_cap");

  if (!takes_parameters(id)) {
    report.diagnostics.push_back(std::string(to_string(id)) +
                                 " has no analytic extension beyond scan_cap; not certified");
    return report;
  }

  const ThresholdFunction fn = ThresholdFunction::fk(*params.c, *params.k, options.precision);
  RootOptions ropt = root_options;
  ropt.precision = options.precision;
  report.analytic_root = find_root(fn, ropt);
  const RootResult& root = *report.analytic_root;
  const mpz_class first_guaranteed = root.analytic_threshold + 1;
  report.guaranteed_from = first_guaranteed;
  for (const auto& d : root.diagnostics) report.diagnostics.push_back(d);
  report.diagnostics.push_back("analytic convention: holds for every n > N_k = " +
                               root.analytic_threshold.get_str() + " (x_k = " +
                               root.root.to_string(15) + ")");

  const std::uint64_t pn_from =
      rosser_pn_valid_from(table, std::min<std::uint64_t>(table.size(), 1000), options);
  report.rosser_pn_region_ok = first_guaranteed + *params.k >= pn_from;
  report.diagnostics.push_back("p_n < n log(n log n) verified from n = " + std::to_string(pn_from) +
                               " in the table");

  bool certified = true;
  if (mpz_class(static_cast<unsigned long>(scan_cap)) < first_guaranteed) {
    certified = false;
    report.diagnostics.push_back("scan_cap " + std::to_string(scan_cap) +
                                 " is below ceil(x_k) = " + first_guaranteed.get_str() +
                                 "; not certified");
  }
  if (root.monotonicity_violated) {
    certified = false;
    report.diagnostics.push_back("f_k changes sign before x_k; monotonicity assumption violated");
  }
  if (!report.undecided.empty()) {
    certified = false;
    report.diagnostics.push_back("undecided verdicts in the scanned range");
  }
  if (!*report.rosser_pn_region_ok) {
    certified = false;
    report.diagnostics.push_back("n + k leaves the validated region of p_n < n log(n log n)");
  }
  if (id == InequalityId::corollary1 && certified) {
    const ScanSummary pan = scan_range(InequalityId::panaitopol, 2, scan_cap, {}, table, options);
    if (pan.fails != 0 || pan.undecided != 0) {
      certified = false;
      report.diagnostics.push_back("panaitopol fails within [2, scan_cap]; certification withheld");
    } else {
      report.diagnostics.push_back("panaitopol holds on [2, " + std::to_string(scan_cap) + "]");
    }
  }
  report.certified = certified;
  return report;
}

}  // namespace primebound
