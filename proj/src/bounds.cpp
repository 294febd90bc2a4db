#include "primebound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "primebound/errors.hpp"
#include "primebound/prime_table.hpp"

namespace primebound {

namespace {

Interval one(mpfr_prec_t p) { return Interval::from_si(1, p); }

}  // namespace

Interval eval_fk(const Real& x, const ExactConstant& c, std::uint64_t k, int precision_bits) {
  const mpfr_prec_t p = precision_bits;
  if (mpfr_cmp_ui(x.get(), 1) <= 0) throw DomainError("f_k(x) needs x > 1, got " + x.to_string(12));
  const Interval xi = Interval::point(x, p);
  const Interval ki = Interval::from_mpz(mpz_class(static_cast<unsigned long>(k)), p);
  const Interval shifted = xi + ki;
  const Interval inner = shifted * log(shifted);
  if (!inner.certainly_greater(one(p))) {
    throw DomainError("f_k(x) needs (x+k) log(x+k) > 1, got x = " + x.to_string(12));
  }
  const Interval log_x = log(xi);
  const Interval log_c = log(c.to_interval(p));
  const Interval growth = one(p) + ki / xi;
  const Interval rosser = Interval::from_mpq(kRosserPiConstant, p) / log_x;
  return one(p) - (log_c / log_x) * growth * log(inner) - rosser;
}

Interval eval_fk(double x, const ExactConstant& c, std::uint64_t k, int precision_bits) {
  return eval_fk(Real::from_double(x, 64), c, k, precision_bits);
}

Interval eval_f_appendix(const Real& x, int precision_bits) {
  const mpfr_prec_t p = precision_bits;
  if (mpfr_cmp_ui(x.get(), 2) < 0) throw DomainError("f(x) needs x >= 2, got " + x.to_string(12));
  const Interval xi = Interval::point(x, p);
  const Interval log2 = log(Interval::from_si(2, p));
  const Interval tail = Interval::from_mpq(kAppendixConstant, p) / log(xi * log(xi));
  return one(p) - log2 * (one(p) + one(p) / xi) - tail;
}

Interval eval_f_appendix(double x, int precision_bits) {
  return eval_f_appendix(Real::from_double(x, 64), precision_bits);
}

ThresholdFunction ThresholdFunction::fk(ExactConstant c, std::uint64_t k,
                                        const PrecisionPolicy& policy) {
  require_admissible_constant(c, policy);
  ThresholdFunction fn;
  fn.kind_ = Kind::fk;
  fn.c_ = std::move(c);
  fn.k_ = k;
  return fn;
}

ThresholdFunction ThresholdFunction::appendix() { return ThresholdFunction(); }

std::string ThresholdFunction::name() const {
  if (kind_ == Kind::appendix) return "appendix";
  return "fk(c=" + c_->to_string() + ",k=" + std::to_string(k_) + ")";
}

Interval ThresholdFunction::evaluate(const Real& x, int precision_bits) const {
  if (kind_ == Kind::appendix) return eval_f_appendix(x, precision_bits);
  return eval_fk(x, *c_, k_, precision_bits);
}

ThresholdFunction::Sign ThresholdFunction::sign(const Real& x, const PrecisionPolicy& policy) const {
  for (int bits = policy.start_bits;; bits = std::min(bits * 2, policy.cap_bits)) {
    const Interval v = evaluate(x, bits);
    if (v.strictly_positive()) return Sign::positive;
    if (v.strictly_negative()) return Sign::negative;
    if (bits >= policy.cap_bits) return Sign::undecided;
  }
}

double RootResult::bracket_width() const {
  Real w(53);
  mpfr_sub(w.get(), hi.get(), lo.get(), MPFR_RNDU);
  return w.to_double(MPFR_RNDU);
}

namespace {

using Sign = ThresholdFunction::Sign;

struct Bracket {
  Real lo;
  Real hi;
};

// Point a + (b - a) * num / 8, computed exactly at precision `prec`.
Real split(const Real& a, const Real& b, unsigned num, mpfr_prec_t prec) {
  Real out(prec), d(prec);
  mpfr_sub(d.get(), b.get(), a.get(), MPFR_RNDN);
  mpfr_mul_ui(d.get(), d.get(), num, MPFR_RNDN);
  mpfr_div_2ui(d.get(), d.get(), 3, MPFR_RNDN);
  mpfr_add(out.get(), a.get(), d.get(), MPFR_RNDN);
  return out;
}

// Shrinks a certified bracket (fn(lo) < 0 < fn(hi)) to width <= tolerance.
void bisect(const ThresholdFunction& fn, Bracket& b, const RootOptions& opt, mpfr_prec_t prec,
            int& iterations) {
  Real width(53);
  Real tol = Real::from_double(opt.tolerance, 53);
  for (;;) {
    mpfr_sub(width.get(), b.hi.get(), b.lo.get(), MPFR_RNDU);
    if (width <= tol) return;
    bool moved = false;
    // Midpoint first; off-centre splits only when fn is indistinguishable from zero there.
    for (unsigned num : {4u, 3u, 5u}) {
      Real mid = split(b.lo, b.hi, num, prec);
      const Sign s = fn.sign(mid, opt.precision);
      if (s == Sign::undecided) continue;
      (s == Sign::negative ? b.lo : b.hi) = std::move(mid);
      moved = true;
      break;
    }
    ++iterations;
    if (!moved) {
      throw BracketError("sign of " + fn.name() + " undecidable near x = " + b.lo.to_string(20) +
                         " at " + std::to_string(opt.precision.cap_bits) + " bits");
    }
  }
}

// Moves bracket ends onto the integer inside (lo, hi], if any, so that
// floor(lo) is the floor of every point in the open bracket.
void settle_floor(const ThresholdFunction& fn, Bracket& b, const RootOptions& opt,
                  mpfr_prec_t prec, RootResult& out) {
  const mpz_class m = b.hi.floor();
  Real mr = Real::from_mpz(m, std::max<mpfr_prec_t>(prec, mpz_sizeinbase(m.get_mpz_t(), 2) + 2));
  if (!(mr > b.lo)) return;
  switch (fn.sign(mr, opt.precision)) {
    case Sign::negative: b.lo = std::move(mr); break;
    case Sign::positive: b.hi = std::move(mr); break;
    case Sign::undecided:
      out.diagnostics.push_back("root is indistinguishable from the integer " + m.get_str() +
                                " at the precision cap; floor taken as " + m.get_str());
      b.lo = std::move(mr);
      break;
  }
}

}  // namespace

RootResult find_root(const ThresholdFunction& fn, const RootOptions& opt) {
  if (!(opt.tolerance > 0)) throw DomainError("root tolerance must be positive");
  // Enough bits to hold every dyadic split point down to the tolerance.
  const auto tol_bits = static_cast<mpfr_prec_t>(std::ceil(-std::log2(opt.tolerance)));
  const mpfr_prec_t prec = 64 + opt.max_bracket_log2 + std::max<mpfr_prec_t>(tol_bits, 0) + 8;

  Bracket b{Real::from_double(2.0, prec), Real::from_double(4.0, prec)};
  if (fn.sign(b.lo, opt.precision) != Sign::negative) {
    throw ContractViolation(fn.name() + " is not certifiably negative at x = 2");
  }
  Real cap(prec);
  mpfr_set_ui_2exp(cap.get(), 1, opt.max_bracket_log2, MPFR_RNDN);
  for (;;) {
    const Sign s = fn.sign(b.hi, opt.precision);
    if (s == Sign::positive) break;
    if (s == Sign::undecided) {
      throw BracketError("sign of " + fn.name() + " undecidable at x = " + b.hi.to_string(20));
    }
    b.lo = b.hi;
    mpfr_mul_2ui(b.hi.get(), b.hi.get(), 1, MPFR_RNDN);
    if (b.hi > cap) {
      throw BracketError("no sign change of " + fn.name() + " below 2^" +
                         std::to_string(opt.max_bracket_log2));
    }
  }

  RootResult out;
  out.tolerance = opt.tolerance;
  bisect(fn, b, opt, prec, out.iterations);

  // Look for an earlier sign change on [2, lo]; f is assumed increasing but not proven so.
  {
    std::vector<Real> samples;
    const double top = b.lo.to_double(MPFR_RNDD);
    const int half = std::max(opt.monotonicity_samples / 2, 32);
    for (int i = 0; i < half; ++i) {
      const double t = static_cast<double>(i) / half;
      samples.push_back(Real::from_double(2.0 * std::pow(top / 2.0, t), prec));
      samples.push_back(Real::from_double(2.0 + (top - 2.0) * t, prec));
    }
    std::sort(samples.begin(), samples.end());
    Real prev = Real::from_double(2.0, prec);
    for (Real& s : samples) {
      if (s < prev || !(s < b.lo)) continue;
      const Sign sg = fn.sign(s, opt.precision);
      if (sg == Sign::undecided) {
        out.diagnostics.push_back("monotonicity sample at x = " + s.to_string(12) +
                                  " has undecided sign");
        continue;
      }
      if (sg == Sign::positive) {
        out.monotonicity_violated = true;
        out.diagnostics.push_back("earlier sign change found below x = " + s.to_string(12) +
                                  "; reporting the leftmost root found");
        b = Bracket{prev, s};
        bisect(fn, b, opt, prec, out.iterations);
        break;
      }
      prev = s;
    }
  }

  settle_floor(fn, b, opt, prec, out);
  out.analytic_threshold = b.lo.floor();
  out.root = Real(prec + 1);
  mpfr_add(out.root.get(), b.lo.get(), b.hi.get(), MPFR_RNDN);
  mpfr_div_2ui(out.root.get(), out.root.get(), 1, MPFR_RNDN);
  out.lo = std::move(b.lo);
  out.hi = std::move(b.hi);
  return out;
}

bool AuditReport::all_passed() const {
  return std::all_of(findings.begin(), findings.end(), [](const AuditFinding& f) { return f.passed; });
}

namespace {

// 1 + log log x / log x
Interval loglog_ratio(const Real& x, mpfr_prec_t p) {
  const Interval lx = log(Interval::point(x, p));
  return one(p) + log(lx) / lx;
}

}  // namespace

AuditReport audit_constants(int precision_bits) {
  const mpfr_prec_t p = precision_bits;
  AuditReport report;
  const double tol = 5e-6;
  const Interval c1 = Interval::from_mpq(kRosserPiConstant, p);
  const Interval c2 = Interval::from_mpq(kAppendixConstant, p);
  const Interval e = Interval::euler(p);
  const Interval peak = one(p) + one(p) / e;

  {
    const PrimeTable table = PrimeTable::build(113);
    const auto count = table.prime_count(113);
    report.findings.push_back({"pi_113", "pi(113) = 30, the count behind 30 log 113 / 113",
                               count == 30, static_cast<double>(count), 0, 30});
  }
  {
    const Interval approx = Interval::from_si(30, p) * log(Interval::from_si(113, p)) /
                            Interval::from_si(113, p);
    const Interval gap = abs(c1 - approx);
    report.findings.push_back({"rosser_pi_constant", "|1.25506 - 30 log(113)/113| < 5e-6",
                               gap.hi().to_double(MPFR_RNDU) < tol, gap.midpoint(), gap.width(),
                               tol});
  }
  {
    const Interval gap = abs(c1 * peak - c2);
    report.findings.push_back({"appendix_constant", "|1.25506 (1 + 1/e) - 1.71678| < 5e-6",
                               gap.hi().to_double(MPFR_RNDU) < tol, gap.midpoint(), gap.width(),
                               tol});
  }
  {
    const Interval diff = c2 - c1 * peak;
    report.findings.push_back({"appendix_constant_dominates",
                               "1.71678 - 1.25506 (1 + 1/e) > 0, so 1.71678 is a valid upper constant",
                               diff.strictly_positive(), diff.midpoint(), diff.width(), 0});
  }

  const Interval ee = exp(e);
  // Grid over [2, 10^6]: log-spaced points plus a fine mesh around e^e.
  std::vector<Real> grid;
  constexpr int kLogPoints = 20000;
  for (int i = 0; i <= kLogPoints; ++i) {
    grid.push_back(Real::from_double(2.0 * std::pow(5e5, static_cast<double>(i) / kLogPoints), 64));
  }
  const double centre = ee.midpoint();
  for (int j = -500; j <= 500; ++j) grid.push_back(Real::from_double(centre + j * 1e-4, 64));
  for (int n = 2; n <= 1000; ++n) grid.push_back(Real::from_double(n, 64));

  {
    // d/dx (1 + loglog x / log x) has the sign of 1 - log log x.
    bool consistent = true;
    int checked = 0;
    for (const Real& x : grid) {
      const Interval xi = Interval::point(x, p);
      const bool left = xi.certainly_less(ee);
      const bool right = xi.certainly_greater(ee);
      if (!left && !right) continue;
      const Interval slope = one(p) - log(log(xi));
      ++checked;
      if ((left && !slope.strictly_positive()) || (right && !slope.strictly_negative())) {
        consistent = false;
      }
    }
    report.findings.push_back({"loglog_derivative_sign_change",
                               "derivative of 1 + loglog x/log x is positive below e^e and negative above (" +
                                   std::to_string(checked) + " grid points)",
                               consistent && checked > 0, ee.midpoint(), ee.width(), 0});
  }
  {
    bool exceeded = false;
    double best = -1;
    double best_x = 0;
    for (const Real& x : grid) {
      const Interval g = loglog_ratio(x, p);
      if (g.certainly_greater(peak)) exceeded = true;
      if (g.midpoint() > best) {
        best = g.midpoint();
        best_x = x.to_double();
      }
    }
    report.findings.push_back({"loglog_sampled_max",
                               "sampled 1 + loglog x/log x over [2, 10^6] never exceeds 1 + 1/e",
                               !exceeded, best, 0, peak.midpoint()});
    report.findings.push_back({"loglog_argmax", "sampled maximum is attained within 0.01 of e^e",
                               std::abs(best_x - centre) < 0.01, best_x, 0, centre});
  }
  return report;
}

}  // namespace primebound
