#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "unitary/analytic.hpp"
#include "unitary/prime_table.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace unitary;

namespace {

const PrimeTable& table() {
  static PrimeTable t(100000);
  return t;
}

// Independent oracle: Euler-Maclaurin in extended precision, a different
// formula and different rounding path from the library's tail enclosure.
long double zeta_oracle(long double r) {
  const long double n = 20000.0L;
  long double sum = 0.0L;
  for (long double k = 1.0L; k < n; k += 1.0L) sum += std::pow(k, -r);
  const long double nr = std::pow(n, -r);
  sum += std::pow(n, 1.0L - r) / (r - 1.0L);      // integral tail from n
  sum += 0.5L * nr;                                // trapezoid correction
  sum += r * nr / (12.0L * n);                     // Bernoulli B2 term
  sum -= r * (r + 1.0L) * (r + 2.0L) * nr / (720.0L * n * n * n);
  return sum;
}

}  // namespace

TEST_CASE("bounded value propagation") {
  const BoundedValue a{2.0, 1e-6};
  const BoundedValue b{3.0, 1e-7};

  const BoundedValue sum = a + b;
  CHECK(sum.estimate == 5.0);
  CHECK(sum.error_bound == 1e-6 + 1e-7);  // sums add bounds

  const BoundedValue diff = a - b;
  CHECK(diff.estimate == -1.0);
  CHECK(diff.error_bound == 1e-6 + 1e-7);

  const BoundedValue prod = a * b;
  CHECK(prod.estimate == 6.0);
  CHECK_THAT(prod.error_bound, WithinRel(2.0 * (2.0 * 1e-7 + 3.0 * 1e-6), 1e-12));

  const BoundedValue quot = a / b;
  CHECK_THAT(quot.estimate, WithinRel(2.0 / 3.0, 1e-15));
  CHECK(quot.error_bound > 0.0);
  CHECK(quot.lower() < 2.0 / 3.0);
  CHECK(quot.upper() > 2.0 / 3.0);

  const BoundedValue straddles_zero{1e-9, 1e-6};
  CHECK_THROWS_AS(a / straddles_zero, std::domain_error);
  CHECK_THROWS_AS(log(straddles_zero), std::domain_error);
  CHECK(exact(1.5).error_bound == 0.0);
}

TEST_CASE("zeta spot values") {
  const double pi = std::numbers::pi;
  CHECK_THAT(zeta(2.0).estimate, WithinAbs(pi * pi / 6.0, 1e-12));
  CHECK_THAT(zeta(4.0).estimate, WithinAbs(pi * pi * pi * pi / 90.0, 1e-12));
  CHECK_THAT(zeta(50.0).estimate, WithinAbs(1.0 + std::pow(2.0, -50.0), 1e-15));
  CHECK_THAT(zeta(3.0).estimate, WithinAbs(static_cast<double>(zeta_oracle(3.0L)), 1e-12));
  CHECK_THAT(zeta(1.2).estimate, WithinAbs(static_cast<double>(zeta_oracle(1.2L)), 1e-11));
}

TEST_CASE("zeta enclosure contains the true value and respects tol") {
  const double pi = std::numbers::pi;
  for (double tol : {1e-6, 1e-10, 1e-12}) {
    const BoundedValue z2 = zeta(2.0, tol);
    CHECK(z2.error_bound <= tol);
    CHECK(z2.lower() <= pi * pi / 6.0);
    CHECK(z2.upper() >= pi * pi / 6.0);
    const BoundedValue z4 = zeta(4.0, tol);
    CHECK(z4.error_bound <= tol);
    CHECK(z4.lower() <= pi * pi * pi * pi / 90.0);
    CHECK(z4.upper() >= pi * pi * pi * pi / 90.0);
  }
  for (double r : {1.05, 1.31, 2.7, 11.0}) {
    const BoundedValue z = zeta(r, 1e-11);
    const double truth = static_cast<double>(zeta_oracle(r));
    CHECK(z.lower() <= truth + 1e-14 * truth);
    CHECK(z.upper() >= truth - 1e-14 * truth);
  }
}

TEST_CASE("zeta domain and precision errors") {
  CHECK_THROWS_AS(zeta(1.0), std::domain_error);
  CHECK_THROWS_AS(zeta(0.5), std::domain_error);
  CHECK_THROWS_AS(zeta(2.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(zeta(2.0, -1e-9), std::invalid_argument);
  // the result magnitude (~1e7) pushes the double-precision floor above tol
  CHECK_THROWS_AS(zeta(1.0000001, 1e-13), PrecisionUnachievable);
}

TEST_CASE("zeta ratio") {
  const double pi = std::numbers::pi;
  CHECK_THAT(zeta_ratio(2.0).estimate, WithinAbs(15.0 / (pi * pi), 1e-11));
  const double r3 = static_cast<double>(zeta_oracle(3.0L) / zeta_oracle(6.0L));
  CHECK_THAT(zeta_ratio(3.0).estimate, WithinAbs(r3, 1e-11));
  CHECK_THAT(zeta_ratio(50.0).estimate, WithinAbs(1.0, 1e-14));
  CHECK(zeta_ratio(2.0, 1e-12).error_bound <= 1e-12);
}

TEST_CASE("finite euler product") {
  CHECK(finite_euler_product(0, 2.0, table()) == 1.0);
  CHECK_THAT(finite_euler_product(1, 2.0, table()), WithinAbs(1.25, 1e-15));
  CHECK_THAT(finite_euler_product(2, 2.0, table()), WithinAbs(25.0 / 18.0, 1e-14));
  CHECK_THROWS_AS(finite_euler_product(table().count() + 1, 2.0, table()), std::out_of_range);
  for (std::size_t m : {5u, 40u}) {
    CHECK_THAT(std::exp(log_finite_euler_product(m, 1.7, table())),
               WithinRel(finite_euler_product(m, 1.7, table()), 1e-13));
  }
}

TEST_CASE("tail product") {
  const BoundedValue whole = tail_product(0, 2.0, 1e-12, table());
  CHECK_THAT(whole.estimate, WithinAbs(zeta_ratio(2.0).estimate, 1e-12));

  const BoundedValue t13 = tail_product(1, 3.0, 1e-12, table());
  const double expected = static_cast<double>(zeta_oracle(3.0L) / zeta_oracle(6.0L)) / 1.125;
  CHECK_THAT(t13.estimate, WithinAbs(expected, 1e-11));

  SECTION("telescoping identity") {
    for (double r : {1.3, 2.0, 3.0}) {
      for (std::size_t m : {0u, 1u, 7u, 29u}) {
        const BoundedValue lhs = tail_product(m, r, 1e-12, table());
        const BoundedValue rhs = tail_product(m + 1, r, 1e-12, table());
        const double factor = 1.0 + std::pow(static_cast<double>(table().nth(m + 1)), -r);
        CHECK_THAT(lhs.estimate, WithinRel(rhs.estimate * factor, 1e-11));
      }
    }
  }

  SECTION("consistency: prefix times tail recovers the ratio") {
    for (double r : {1.2, 2.0, 3.0}) {
      for (std::size_t m : {3u, 17u, 50u}) {
        const BoundedValue tail = tail_product(m, r, 1e-12, table());
        const double recovered = finite_euler_product(m, r, table()) * tail.estimate;
        const BoundedValue ratio = zeta_ratio(r, 1e-12);
        CHECK(std::abs(recovered - ratio.estimate) <=
              2e-11 + 4.0 * (tail.error_bound * finite_euler_product(m, r, table()) + ratio.error_bound));
      }
    }
  }
}

TEST_CASE("gap criterion") {
  CHECK_THAT(gap_criterion(1, 2.0, table()).estimate, WithinAbs(25.0 / 17.0, 1e-14));
  CHECK_THAT(gap_criterion(1, 3.0, table()).estimate, WithinAbs(81.0 / 65.0, 1e-14));

  SECTION("rearranged form used by the monotonicity argument") {
    for (double r : {1.5, 2.5}) {
      for (std::size_t m : {2u, 5u, 11u}) {
        const double pm = static_cast<double>(table().nth(m));
        const double pr = std::pow(pm, r);
        const double rearranged = (pr + 1.0) * (pr + 1.0) / (pr * pr + 1.0) *
                                  finite_euler_product(m - 1, r, table());
        CHECK_THAT(gap_criterion(m, r, table()).estimate, WithinRel(rearranged, 1e-12));
      }
    }
  }

  SECTION("approaches the zeta ratio from below") {
    // the deficit at witness m is about ratio/(p_m log p_m): ~5e-6 at m=3000
    const double ratio = zeta_ratio(2.0).estimate;
    const double d30 = ratio - gap_criterion(30, 2.0, table()).estimate;
    const double d300 = ratio - gap_criterion(300, 2.0, table()).estimate;
    const double d3000 = ratio - gap_criterion(3000, 2.0, table()).estimate;
    CHECK(d30 > d300);
    CHECK(d300 > d3000);
    CHECK(d3000 > 0.0);
    CHECK(d3000 < 1e-5);
  }
}

TEST_CASE("prefactor monotonicity in the witness prime") {
  // (p^{2r}+1)/(p^{2r}+p^r) is nondecreasing along the primes for r > 1
  for (double r : {1.1, 1.5, 2.0, 3.0}) {
    double prev = 0.0;
    for (std::size_t m = 1; m <= 100; ++m) {
      const double p = static_cast<double>(table().nth(m));
      const double pr = std::pow(p, r);
      const double value = (pr * pr + 1.0) / (pr * pr + pr);
      CHECK(value >= prev - 1e-15);
      prev = value;
    }
  }
}

TEST_CASE("gap margin signs at the documented points") {
  const BoundedValue at_15 = gap_margin(2, 1.5, 1e-12, table());
  const BoundedValue at_2 = gap_margin(2, 2.0, 1e-12, table());
  CHECK(at_15.upper() < 0.0);
  CHECK(at_2.lower() > 0.0);
  CHECK_THAT(at_15.estimate, WithinAbs(-0.15783991703959571, 1e-9));
  CHECK_THAT(at_2.estimate, WithinAbs(0.0030040606346382928, 1e-11));

  for (int m : {1, 3, 4, 6, 9}) {
    CHECK(gap_margin(static_cast<std::size_t>(m), 2.0, 1e-12, table()).upper() < 0.0);
  }

  // near-zero at the connectivity threshold
  CHECK(std::abs(gap_margin(2, 1.9742550230646526, 1e-12, table()).estimate) < 1e-8);

  CHECK_THROWS_AS(gap_margin(2, 1.0, 1e-12, table()), std::domain_error);
}

TEST_CASE("gap margin tail form agrees with the zeta route") {
  for (double r : {2.5, 3.0, 4.0, 7.0}) {
    for (std::size_t m : {1u, 2u, 5u}) {
      const BoundedValue sharp = gap_margin_tail_form(m, r, table());
      const BoundedValue via_zeta = gap_margin(m, r, 1e-12, table());
      // two algebraically independent routes, each carrying its own bound
      CHECK_THAT(sharp.estimate,
                 WithinAbs(via_zeta.estimate, sharp.error_bound + via_zeta.error_bound + 1e-12));
    }
  }
  // resolves signs the zeta route cannot: at r=50 the margin is ~2^-50 - 3^-50
  const BoundedValue far = gap_margin_tail_form(1, 50.0, table());
  CHECK(far.lower() > 0.0);
  CHECK_THAT(far.estimate, WithinRel(std::pow(2.0, -50.0) - std::pow(3.0, -50.0), 1e-9));
}

TEST_CASE("margin slope surrogate") {
  // hand arithmetic: six reciprocal terms plus 1/15 (numerator 4-4-1 = -1)
  const double j11 = 1.0 / 4.0 + 1.0 / 6.0 + 1.0 / 8.0 + 1.0 / 12.0 + 1.0 / 14.0 + 1.0 / 18.0 + 1.0 / 15.0;
  CHECK_THAT(margin_slope_surrogate(1, 1.0, table()), WithinAbs(j11, 1e-14));
  CHECK_THAT(margin_slope_surrogate(2, 2.0, table()), WithinAbs(0.0031415634179248512, 1e-13));

  SECTION("definition uses exactly six sum terms") {
    const double with_seventh = margin_slope_surrogate(2, 2.0, table()) +
                                1.0 / (std::pow(static_cast<double>(table().nth(9)), 2.0) + 1.0);
    CHECK(margin_slope_surrogate(2, 2.0, table()) != with_seventh);
  }

  CHECK_THROWS_AS(margin_slope_surrogate(1, 0.5, table()), std::domain_error);
  CHECK_THROWS_AS(margin_slope_surrogate(0, 2.0, table()), std::invalid_argument);
  PrimeTable tiny(13);  // 6 primes: not enough for m=1 (needs p_7)
  CHECK_THROWS_AS(margin_slope_surrogate(1, 1.5, tiny), std::out_of_range);
}

TEST_CASE("criterion monotonicity in m away from the exceptional indices") {
  for (double r : {1.01, 3.0}) {
    for (std::size_t m : {5u, 7u, 8u, 10u, 17u, 33u, 50u}) {
      CHECK(log_gap_criterion(m + 1, r, table()) > log_gap_criterion(m, r, table()));
    }
  }
}
