#include <doctest.h>

#include <cmath>

#include "primebound/bounds.hpp"
#include "primebound/errors.hpp"

using namespace primebound;

namespace {

// Double-precision f_k, written out independently of the interval code.
double fk_double(double x, double c, double k) {
  return 1.0 - std::log(c) / std::log(x) * (1.0 + k / x) * std::log((x + k) * std::log(x + k)) -
         1.25506 / std::log(x);
}

ExactConstant e_minus_thousandth() {
  return ExactConstant::enclosure("e-1/1000", [](mpfr_prec_t p) {
    return Interval::euler(p) - Interval::from_mpq(mpq_class(1, 1000), p);
  });
}

const double kLimit2 = 1.0 - std::log(2.0);

}  // namespace

TEST_CASE("eval_fk examples") {
  const auto two = ExactConstant::rational(2);
  const Interval at2 = eval_fk(2.0, two, 1, 64);
  CHECK(at2.strictly_negative());
  CHECK(at2.midpoint() == doctest::Approx(-2.599659012445315).epsilon(1e-14));

  // Frozen from a 40-digit mpmath evaluation of the same formula.
  const Interval big = eval_fk(1e12, two, 1, 128);
  CHECK(big.midpoint() == doctest::Approx(0.17817233161882006).epsilon(1e-15));
  CHECK(big.width() < 1e-30);
  CHECK(big.midpoint() - kLimit2 == doctest::Approx(-0.12868048782123463).epsilon(1e-12));

  const Interval near_e = eval_fk(1e12, e_minus_thousandth(), 1, 128);
  CHECK(near_e.midpoint() == doctest::Approx(-0.16512640365456582).epsilon(1e-12));

  CHECK_THROWS_AS(eval_fk(1.0, two, 1, 64), DomainError);
  CHECK_THROWS_AS(eval_fk(0.5, two, 0, 64), DomainError);
  // x = 1.1, k = 0: (x+k) log(x+k) = 0.105 < 1
  CHECK_THROWS_AS(eval_fk(1.1, two, 0, 64), DomainError);
}

TEST_CASE("eval_fk agrees with an independent double evaluation") {
  for (double c : {1.5, 2.0, 2.5}) {
    const auto cc = ExactConstant::rational(mpq_class(static_cast<long>(c * 2), 2));
    for (std::uint64_t k : {0u, 1u, 3u, 10u}) {
      for (double x : {2.0, 3.5, 17.0, 100.0, 8738.0, 1e6, 1e15}) {
        const Interval v = eval_fk(x, cc, k, 96);
        REQUIRE(v.midpoint() == doctest::Approx(fk_double(x, c, static_cast<double>(k))).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("eval_f_appendix examples") {
  CHECK(eval_f_appendix(74.0, 64).strictly_negative());
  CHECK(eval_f_appendix(75.0, 64).strictly_positive());
  CHECK(eval_f_appendix(74.0, 64).midpoint() == doctest::Approx(-0.00037865742003445853).epsilon(1e-12));
  CHECK(eval_f_appendix(2.0, 64).midpoint() == doctest::Approx(-5.295691164497198).epsilon(1e-14));
  const double at1e9 = eval_f_appendix(1e9, 64).midpoint();
  CHECK(at1e9 == doctest::Approx(0.23458110821195108).epsilon(1e-13));
  CHECK(at1e9 < kLimit2);
  CHECK(eval_f_appendix(1e300, 64).midpoint() > at1e9);
  CHECK_THROWS_AS(eval_f_appendix(1.999, 64), DomainError);
}

TEST_CASE("find_root on the appendix function") {
  RootOptions opt;
  opt.tolerance = 1e-6;
  const RootResult r = find_root(ThresholdFunction::appendix(), opt);
  CHECK(r.root.to_double() == doctest::Approx(74.38509496958493).epsilon(1e-8));
  CHECK(r.analytic_threshold == 74);
  CHECK(r.bracket_width() <= 1e-6);
  CHECK(!r.monotonicity_violated);
  const auto fn = ThresholdFunction::appendix();
  CHECK(fn.sign(r.lo, {}) == ThresholdFunction::Sign::negative);
  CHECK(fn.sign(r.hi, {}) == ThresholdFunction::Sign::positive);
}

TEST_CASE("find_root on f_k") {
  const auto fn = ThresholdFunction::fk(ExactConstant::rational(2), 1);
  const RootResult r = find_root(fn);
  CHECK(r.root.to_double() == doctest::Approx(8738.199891240884).epsilon(1e-12));
  CHECK(r.analytic_threshold == 8738);
  CHECK(r.bracket_width() <= 1e-9);

  // Integer scan of the independent double formula brackets the same integer.
  int first_positive = 0;
  for (int x = 2; x < 20000; ++x) {
    if (fk_double(x, 2.0, 1.0) > 0) {
      first_positive = x;
      break;
    }
  }
  CHECK(first_positive == 8739);

  const RootResult small = find_root(ThresholdFunction::fk(ExactConstant::rational(3, 2), 0));
  CHECK(std::abs(small.root.to_double() - 16.733436914775719) <= small.tolerance);
  CHECK(small.analytic_threshold == 16);
}

TEST_CASE("root sits within a certified bracket for every tolerance") {
  for (double tol : {1e-2, 1e-6, 1e-12}) {
    RootOptions opt;
    opt.tolerance = tol;
    const auto fn = ThresholdFunction::fk(ExactConstant::rational(5, 2), 3);
    const RootResult r = find_root(fn, opt);
    CHECK(r.bracket_width() <= tol);
    CHECK(fn.sign(r.lo, opt.precision) == ThresholdFunction::Sign::negative);
    CHECK(fn.sign(r.hi, opt.precision) == ThresholdFunction::Sign::positive);
  }
}

TEST_CASE("large root for c = 5/2 stays rigorous") {
  const RootResult r = find_root(ThresholdFunction::fk(ExactConstant::rational(5, 2), 0));
  CHECK(r.root.to_double() == doctest::Approx(9.0534614254029483e25).epsilon(1e-12));
  CHECK(r.analytic_threshold > mpz_class("90534614254029483000000000"));
  CHECK(r.bracket_width() <= 1e-9);
}

TEST_CASE("find_root error paths") {
  RootOptions opt;
  opt.tolerance = 0;
  CHECK_THROWS_AS(find_root(ThresholdFunction::appendix(), opt), DomainError);
  opt.tolerance = 1e-9;
  opt.max_bracket_log2 = 40;
  // c = e - 1/1000 has its zero far beyond 2^40.
  CHECK_THROWS_AS(find_root(ThresholdFunction::fk(e_minus_thousandth(), 1), opt), BracketError);
  CHECK_THROWS_AS(ThresholdFunction::fk(ExactConstant::rational(3), 1), DomainError);
}

TEST_CASE("roots increase with k") {
  for (auto c : {ExactConstant::rational(3, 2), ExactConstant::rational(2)}) {
    Real previous = Real::from_double(0, 64);
    for (std::uint64_t k = 0; k <= 10; ++k) {
      const RootResult r = find_root(ThresholdFunction::fk(c, k));
      CHECK(r.root >= previous);
      previous = r.root;
    }
  }
}

TEST_CASE("f_k is positive on sampled integers past N_k") {
  for (auto c : {ExactConstant::rational(3, 2), ExactConstant::rational(2)}) {
    for (std::uint64_t k : {0u, 1u, 3u}) {
      const auto fn = ThresholdFunction::fk(c, k);
      const RootResult r = find_root(fn);
      const unsigned long nk = r.analytic_threshold.get_ui();
      const unsigned long step = std::max(1ul, nk / 200);
      for (unsigned long n = nk + 1; n <= 10 * nk; n += step) {
        REQUIRE(fn.sign(Real::from_double(static_cast<double>(n), 64), {}) ==
                ThresholdFunction::Sign::positive);
      }
    }
  }
}

TEST_CASE("limit of f_k does not depend on k") {
  for (auto c : {ExactConstant::rational(3, 2), ExactConstant::rational(2), ExactConstant::rational(5, 2)}) {
    const double base = eval_fk(1e12, c, 0, 128).midpoint();
    for (std::uint64_t k : {1u, 5u, 10u, 100u}) {
      CHECK(std::abs(eval_fk(1e12, c, k, 128).midpoint() - base) < 1e-9);
    }
    // The gap to 1 - log c shrinks like loglog x / log x.
    const double limit = 1.0 - std::log(c.to_interval(64).midpoint());
    double previous_gap = 1e9;
    for (double x : {1e10, 1e20, 1e50, 1e100, 1e300}) {
      const double gap = std::abs(eval_fk(x, c, 1, 128).midpoint() - limit);
      CHECK(gap < previous_gap);
      previous_gap = gap;
    }
  }
  // Frozen oracle: at 10^250 the k = 1 gap for c = 2 is 0.00983.
  Real x(1024);
  mpfr_ui_pow_ui(x.get(), 10, 250, MPFR_RNDN);
  const Interval far = eval_fk(x, ExactConstant::rational(2), 1, 1024);
  CHECK(far.midpoint() - kLimit2 == doctest::Approx(-0.009833039087988083).epsilon(1e-10));
}

TEST_CASE("audit_constants findings") {
  const AuditReport report = audit_constants();
  auto find = [&](const std::string& name) -> const AuditFinding& {
    for (const auto& f : report.findings) {
      if (f.name == name) return f;
    }
    FAIL("missing finding " << name);
    return report.findings.front();
  };
  CHECK(find("pi_113").passed);
  CHECK(find("rosser_pi_constant").passed);
  CHECK(find("rosser_pi_constant").value == doctest::Approx(1.2870675202674775e-6).epsilon(1e-9));
  // 1.25506 (1 + 1/e) = 1.7167707714..., so the 5e-6 check does not pass.
  CHECK(!find("appendix_constant").passed);
  CHECK(find("appendix_constant").value == doctest::Approx(9.2285633695999e-6).epsilon(1e-9));
  CHECK(find("appendix_constant_dominates").passed);
  CHECK(find("loglog_derivative_sign_change").passed);
  CHECK(find("loglog_derivative_sign_change").value == doctest::Approx(15.154262241479264).epsilon(1e-14));
  CHECK(find("loglog_sampled_max").passed);
  CHECK(find("loglog_argmax").passed);
  CHECK(!report.all_passed());
}
