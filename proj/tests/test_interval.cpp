#include <doctest.h>

#include <random>

#include "primebound/errors.hpp"
#include "primebound/interval.hpp"

using namespace primebound;

namespace {

bool encloses(const Interval& iv, const mpq_class& q) {
  return mpfr_cmp_q(iv.lo().get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(iv.hi().get(), q.get_mpq_t()) >= 0;
}

}  // namespace

TEST_CASE("arithmetic encloses the exact rational result") {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<long> num(-100000, 100000);
  std::uniform_int_distribution<long> den(1, 9999);
  for (int trial = 0; trial < 2000; ++trial) {
    const mpq_class a(num(rng), den(rng));
    mpq_class b(num(rng), den(rng));
    mpq_class a_c = a, b_c = b;
    a_c.canonicalize();
    b_c.canonicalize();
    const Interval ia = Interval::from_mpq(a_c, 24);  // low precision so rounding matters
    const Interval ib = Interval::from_mpq(b_c, 24);
    REQUIRE(encloses(ia + ib, a_c + b_c));
    REQUIRE(encloses(ia - ib, a_c - b_c));
    REQUIRE(encloses(ia * ib, a_c * b_c));
    REQUIRE(encloses(-ia, -a_c));
    if (b_c != 0) REQUIRE(encloses(ia / ib, a_c / b_c));
    REQUIRE(encloses(abs(ia), abs(a_c)));
  }
}

TEST_CASE("log and exp are monotone enclosures") {
  const Interval low = log(Interval::from_si(113, 53));
  const Interval high = log(Interval::from_si(113, 256));
  // The 256-bit enclosure must sit inside the 53-bit one.
  CHECK(low.lo() <= high.lo());
  CHECK(high.hi() <= low.hi());
  CHECK(high.width() < 1e-70);
  CHECK(high.midpoint() == doctest::Approx(4.727387818712341).epsilon(1e-15));

  const Interval e = Interval::euler(128);
  CHECK(e.midpoint() == doctest::Approx(2.718281828459045).epsilon(1e-15));
  const Interval back = log(e);
  CHECK(back.contains(Real::from_double(1.0, 64)));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(log(Interval::from_si(0, 64)), DomainError);
  CHECK_THROWS_AS(log(Interval::from_si(-3, 64)), DomainError);
  const Interval straddle(Real::from_double(-1, 64), Real::from_double(1, 64));
  CHECK_THROWS_AS(Interval::from_si(1, 64) / straddle, DomainError);
  CHECK(straddle.contains_zero());
  CHECK(!straddle.strictly_positive());
}

TEST_CASE("Real value semantics") {
  Real a = Real::from_double(1.5, 64);
  Real b = a;
  mpfr_mul_ui(b.get(), b.get(), 2, MPFR_RNDN);
  CHECK(a.to_double() == 1.5);
  CHECK(b.to_double() == 3.0);
  Real c = std::move(b);
  CHECK(c.to_double() == 3.0);
  CHECK(Real::from_double(74.9, 64).floor() == 74);
  CHECK(Real::from_double(-0.5, 64).floor() == -1);
}
