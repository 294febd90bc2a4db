// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "primebound/bounds.hpp"
#include "primebound/errors.hpp"
#include "primebound/exact_compare.hpp"
#include "primebound/prime_table.hpp"
#include "primebound/verify.hpp"

using namespace primebound;
using Id = InequalityId;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

const PrimeTable& table() {
  static const PrimeTable t = PrimeTable::build(2000000);
  return t;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

InequalityParams ck(long num, long den, std::uint64_t k) {
  return InequalityParams::with(ExactConstant::rational(num, den), k);
}

Outcome zhang() {
  const ScanSummary s = scan_range(Id::zhang, 2, 10000, {}, table());
  std::size_t late = 0;
  for (auto n : s.failures) late += n >= 20;
  const bool ok = late == 0 && !s.failures.empty() && s.failures.front() < 20 && s.undecided == 0;
  return {ok, std::to_string(s.failures.size()) + " failures, all below 20 (largest " +
                  (s.failures.empty() ? std::string("none") : std::to_string(s.failures.back())) + "), " +
                  std::to_string(late) + " at n >= 20"};
}

Outcome corollary() {
  const ThresholdReport r = minimal_threshold(Id::corollary1, ck(2, 1, 1), 10000, table());
  const ScanSummary s = scan_range(Id::corollary1, 10, 10000, ck(2, 1, 1), table());
  const bool ok = r.minimal_n == 10 && s.fails == 0 && s.undecided == 0;
  return {ok, "minimal_n " + std::to_string(r.minimal_n) + ", " + std::to_string(s.fails) +
                  " failures on [10, 10^4]"};
}

Outcome panaitopol() {
  const ScanSummary s = scan_range(Id::panaitopol, 2, 5000, {}, table());
  return {s.fails == 0 && s.undecided == 0,
          std::to_string(s.holds) + " of 4999 hold, " + std::to_string(s.fails) + " fail"};
}

Outcome appendix_root() {
  RootOptions opt;
  opt.tolerance = 1e-9;
  const auto fn = ThresholdFunction::appendix();
  const RootResult r = find_root(fn, opt);
  const double root = r.root.to_double();
  const bool signs = fn.sign(r.lo, opt.precision) == ThresholdFunction::Sign::negative &&
                     fn.sign(r.hi, opt.precision) == ThresholdFunction::Sign::positive;
  const bool ok = root >= 74.38 && root <= 74.40 && signs && r.lo < r.hi;
  return {ok, "root " + r.root.to_string(12) + ", bracket width " + fmt(r.bracket_width()) +
                  (signs ? ", f(lo) < 0 < f(hi) certified" : ", sign change not certified")};
}

Outcome audit() {
  const AuditReport report = audit_constants();
  auto get = [&](const std::string& name) -> const AuditFinding& {
    for (const auto& f : report.findings) {
      if (f.name == name) return f;
    }
    throw ContractViolation("missing audit finding " + name);
  };
  const AuditFinding& pi = get("rosser_pi_constant");
  const AuditFinding& app = get("appendix_constant");
  const AuditFinding& mx = get("loglog_sampled_max");
  const bool ok = pi.passed && app.passed && mx.passed;
  return {ok, "|1.25506 - 30 log 113/113| = " + fmt(pi.value) + (pi.passed ? " ok" : " too large") +
                  "; |1.25506(1+1/e) - 1.71678| = " + fmt(app.value) + (app.passed ? " ok" : " exceeds 5e-6") +
                  "; sampled max " + fmt(mx.value) + (mx.passed ? " <= 1+1/e" : " exceeds 1+1/e")};
}

Outcome appendix_scan() {
  const ScanSummary s = scan_range(Id::appendix_a, 2, 1000000, {}, table());
  return {s.fails == 0 && s.undecided == 0,
          std::to_string(s.fails) + " failures, " + std::to_string(s.undecided) + " undecided on [2, 10^6]"};
}

Outcome limit() {
  const auto two = ExactConstant::rational(2);
  const int bits = 128;
  const Interval target = Interval::from_si(1, bits) - log(Interval::from_si(2, bits));
  bool ok = true;
  double worst = 0;
  for (std::uint64_t k : {0u, 1u, 5u, 10u}) {
    const Interval gap = abs(eval_fk(1e12, two, k, bits) - target);
    ok = ok && gap.hi().to_double(MPFR_RNDU) < 1e-2;
    worst = std::max(worst, gap.hi().to_double(MPFR_RNDU));
  }
  return {ok, "max |f_k(10^12) - (1 - log 2)| = " + fmt(worst) + " over k in {0,1,5,10}, bound 1e-2"};
}

// Returns an empty string on success, else the reason.
std::string theorem_case(long num, long den, std::uint64_t k, std::mt19937_64& rng) {
  const auto params = ck(num, den, k);
  const RootResult root = find_root(ThresholdFunction::fk(*params.c, k));
  const mpz_class ceiling = root.analytic_threshold + 1;
  if (ceiling > mpz_class(std::to_string(std::numeric_limits<std::uint64_t>::max()))) {
    return "ceil(x_k) = " + root.root.to_string(6) + " exceeds the 64-bit scan range";
  }
  const std::uint64_t cap = ceiling.get_ui();
  const std::uint64_t needed = prime_index_needed(Id::theorem1, 10 * cap, k) + 1;
  const PrimeTable& t = table();
  if (!t.has_nth(needed)) {
    // Throws ResourceError when the table would not fit in memory.
    const PrimeTable big = PrimeTable::build(suggested_limit(needed));
    (void)big;
    return "scan cap " + std::to_string(cap) + " needs a larger prime table";
  }
  const ThresholdReport r = minimal_threshold(Id::theorem1, params, cap, t);
  if (!r.certified) return "not certified at cap " + std::to_string(cap);
  std::uniform_int_distribution<std::uint64_t> pick(r.minimal_n + 1, 10 * r.minimal_n);
  for (int i = 0; i < 50; ++i) {
    const std::uint64_t n = pick(rng);
    if (!check_inequality(Id::theorem1, n, params, t).holds()) {
      return "fails at random n = " + std::to_string(n);
    }
  }
  for (std::uint64_t n = 2; n <= cap; ++n) {
    const bool pan = check_inequality(Id::panaitopol, n, {}, t).holds();
    const bool th = check_inequality(Id::theorem1, n, params, t).holds();
    if (pan && th && !check_inequality(Id::corollary1, n, params, t).holds()) {
      return "consistency chain broken at n = " + std::to_string(n);
    }
    if (num == 2 && den == 1 && k == 1 && th && !check_inequality(Id::zhang, n, {}, t).holds()) {
      return "dominance broken at n = " + std::to_string(n);
    }
  }
  return {};
}

Outcome theorem_end_to_end() {
  std::mt19937_64 rng(20240101);
  std::ostringstream detail;
  int passed = 0, total = 0;
  std::string failures;
  for (auto [num, den] : {std::pair{3L, 2L}, std::pair{2L, 1L}, std::pair{5L, 2L}}) {
    for (std::uint64_t k : {0u, 1u, 3u}) {
      ++total;
      const std::string c = den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
      std::string reason;
      try {
        reason = theorem_case(num, den, k, rng);
      } catch (const Error& e) {
        reason = e.what();
      }
      if (reason.empty()) {
        ++passed;
      } else {
        failures += " (c=" + c + ", k=" + std::to_string(k) + "): " + reason + ";";
      }
    }
  }
  detail << passed << " of " << total << " cases certified and verified";
  if (!failures.empty()) detail << "; failing" << failures;
  return {passed == total, detail.str()};
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

unsigned __int128 ipow(unsigned __int128 b, unsigned e) {
  unsigned __int128 r = 1;
  while (e--) r *= b;
  return r;
}

Outcome oracles() {
  const std::uint64_t limit = 100000;
  const PrimeTable t = PrimeTable::build(limit);
  std::vector<std::uint64_t> primes;
  std::uint64_t mismatches = 0;
  for (std::uint64_t x = 1; x <= limit; ++x) {
    if (is_prime(x)) primes.push_back(x);
    mismatches += t.prime_count(x) != primes.size();
  }
  if (primes.size() != t.size()) ++mismatches;
  mpz_class product = 1;
  for (std::size_t i = 0; i < primes.size() && i < t.size(); ++i) {
    mismatches += t.nth_prime(i + 1) != primes[i];
    product *= static_cast<unsigned long>(primes[i]);
    mismatches += t.primorial(i + 1) != product;
  }

  std::mt19937_64 rng(90210);
  std::uniform_int_distribution<unsigned> base_d(2, 30), exp_d(0, 6), num_d(1, 30), cexp_d(0, 6);
  int disagreements = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const unsigned base = base_d(rng), e = exp_d(rng), p = num_d(rng), q = num_d(rng), ce = cexp_d(rng);
    const auto c = ExactConstant::rational(mpq_class(p, q));
    const auto pn = c.value().get_num().get_ui(), qn = c.value().get_den().get_ui();
    const bool native = ipow(base, e) * ipow(qn, ce) > ipow(pn, ce);
    const auto lhs = mpz_class(static_cast<unsigned long>(ipow(base, e)));
    disagreements += compare_power_vs_power(base, e, c, ce).holds() != native;
    disagreements += compare_bigint_vs_power(lhs, c, ce).holds() != native;
  }
  return {mismatches == 0 && disagreements == 0,
          std::to_string(mismatches) + " table mismatches over " + std::to_string(primes.size()) +
              " primes; " + std::to_string(disagreements) + " comparator disagreements on 1000 triples"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"zhang reproduction", zhang},
      {"corollary reproduction", corollary},
      {"panaitopol desk scale", panaitopol},
      {"appendix root", appendix_root},
      {"constants audit", audit},
      {"appendix (a) scan", appendix_scan},
      {"limit property", limit},
      {"theorem end to end", theorem_end_to_end},
      {"oracle equivalence", oracles},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.passed;
    std::printf("%s %zu %s: %s [%.1fs]\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
