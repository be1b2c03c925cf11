#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include "unitary/bounded_value.hpp"
#include "unitary/errors.hpp"
#include "unitary/prime_table.hpp"

namespace unitary {

inline constexpr double kDefaultZetaTol = 1e-12;

namespace detail {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();
inline constexpr double kZetaTermCap = 1e8;

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) noexcept {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// The tail sum_{n>N} n^{-r} of the zeta series, enclosed using convexity of
// x^{-r}: trapezoid overestimates the integral and midpoint underestimates
// it, giving
//   integral(N+1) + f(N+1)/2  <=  tail  <=  integral(N+1/2)
// with integral(M) = M^{1-r}/(r-1). Width is O(r N^{-r-1}), so even r just
// above 1 needs only ~tol^{-1/2} terms.
struct TailEnclosure {
  double lower;
  double upper;
  double width() const noexcept { return upper - lower; }
};

inline TailEnclosure zeta_tail_enclosure(double n, double r) {
  const auto integral = [r](double m) { return std::pow(m, 1.0 - r) / (r - 1.0); };
  const double lower = integral(n + 1.0) + 0.5 * std::pow(n + 1.0, -r);
  const double upper = integral(n + 0.5);
  return {lower, upper};
}

}  // namespace detail

// Riemann zeta for r > 1 by direct series plus an integral tail enclosure.
// The returned interval [estimate +- error_bound] contains zeta(r) and
// error_bound <= tol. Throws PrecisionUnachievable when the term cap or
// double precision cannot meet tol.
inline BoundedValue zeta(double r, double tol = kDefaultZetaTol) {
  if (!(r > 1.0)) throw std::domain_error("zeta: requires r > 1");
  if (!(tol > 0.0)) throw std::invalid_argument("zeta: tol must be positive");

  // Rounding slop scales with the magnitude of the result; zeta(r) <= 1 + 1/(r-1).
  // Kahan summation bounds the sum error by ~2 eps * zeta, correctly rounded
  // pow adds ~1 eps * zeta, the closed-form tail a little more.
  const double magnitude_cap = 1.0 + 1.0 / (r - 1.0);
  if (4.0 * detail::kEps * magnitude_cap > 0.5 * tol)
    throw PrecisionUnachievable("zeta: tol below the double-precision floor at r = " +
                                std::to_string(r));

  double n = 8.0;
  while (detail::zeta_tail_enclosure(n, r).width() > tol && n < detail::kZetaTermCap) n *= 2.0;
  const auto tail = detail::zeta_tail_enclosure(n, r);
  if (tail.width() > tol)
    throw PrecisionUnachievable("zeta: term cap reached before tol at r = " + std::to_string(r));

  detail::KahanSum partial;
  const std::uint64_t terms = static_cast<std::uint64_t>(n);
  for (std::uint64_t k = 1; k <= terms; ++k) partial.add(std::pow(static_cast<double>(k), -r));

  const double estimate = partial.sum + 0.5 * (tail.lower + tail.upper);
  const double slop = 4.0 * detail::kEps * estimate;
  return {estimate, 0.5 * tail.width() + slop};
}

// zeta(r)/zeta(2r) with propagated error <= tol. A coarse first pass learns
// the actual magnitudes so the final sub-tolerances are not wasted on loose
// a-priori caps.
inline BoundedValue zeta_ratio(double r, double tol = kDefaultZetaTol) {
  if (!(r > 1.0)) throw std::domain_error("zeta_ratio: requires r > 1");
  if (!(tol > 0.0)) throw std::invalid_argument("zeta_ratio: tol must be positive");
  const double coarse_tol = std::max(tol, 1e-6);
  const double num_coarse = zeta(r, coarse_tol).estimate;
  const double den_coarse = zeta(2.0 * r, coarse_tol).estimate;
  const double ratio_coarse = std::max(1.0, num_coarse / den_coarse);
  // quotient error (with the factor-2 safety) is 2 (num_err + ratio * den_err) / den,
  // kept at tol/4 + tol/4 by these splits
  const double num_tol = tol * den_coarse / 8.0;
  const double den_tol = tol * den_coarse / (8.0 * ratio_coarse);
  const BoundedValue num = zeta(r, num_tol);
  const BoundedValue den = zeta(2.0 * r, den_tol);
  BoundedValue out = num / den;
  if (out.error_bound > tol)
    throw PrecisionUnachievable("zeta_ratio: propagated error exceeds tol at r = " + std::to_string(r));
  return out;
}

// prod_{i=1..m} (1 + p_i^{-r}); the empty product is 1.
inline double finite_euler_product(std::size_t m, double r, const PrimeTable& table) {
  if (m > table.count())
    throw std::out_of_range("finite_euler_product: table holds fewer than m primes");
  double prod = 1.0;
  for (std::size_t i = 1; i <= m; ++i)
    prod *= 1.0 + std::pow(static_cast<double>(table.nth(i)), -r);
  return prod;
}

inline double log_finite_euler_product(std::size_t m, double r, const PrimeTable& table) {
  if (m > table.count())
    throw std::out_of_range("log_finite_euler_product: table holds fewer than m primes");
  detail::KahanSum s;
  for (std::size_t i = 1; i <= m; ++i)
    s.add(std::log1p(std::pow(static_cast<double>(table.nth(i)), -r)));
  return s.sum;
}

// prod_{i>m} (1 + p_i^{-r}), computed as zeta_ratio(r) / finite prefix, never
// by direct truncation; the identity is exact, so only rounding propagates.
inline BoundedValue tail_product(std::size_t m, double r, double tol, const PrimeTable& table) {
  const BoundedValue ratio = zeta_ratio(r, tol / 4.0);
  const double prefix = finite_euler_product(m, r, table);
  const BoundedValue prefix_bv{prefix, 4.0 * detail::kEps * (static_cast<double>(m) + 1.0) * prefix};
  BoundedValue out = ratio / prefix_bv;
  if (out.error_bound > tol)
    throw PrecisionUnachievable("tail_product: propagated error exceeds tol (m = " + std::to_string(m) + ")");
  return out;
}

// log of the gap criterion for witness m:
//   log[ (p_m^{2r}+p_m^r)/(p_m^{2r}+1) * prod_{i<=m}(1+p_i^{-r}) ]
// evaluated in the overflow-free form log1p(p^-r) - log1p(p^-2r) + prefix.
// The criterion exceeding zeta(r)/zeta(2r) certifies a gap in the range.
inline double log_gap_criterion(std::size_t m, double r, const PrimeTable& table) {
  if (m == 0) throw std::invalid_argument("log_gap_criterion: m must be >= 1");
  const double pm = static_cast<double>(table.nth(m));
  return std::log1p(std::pow(pm, -r)) - std::log1p(std::pow(pm, -2.0 * r)) +
         log_finite_euler_product(m, r, table);
}

inline BoundedValue gap_criterion(std::size_t m, double r, const PrimeTable& table) {
  const double lg = log_gap_criterion(m, r, table);
  const double est = std::exp(lg);
  const double log_err = 4.0 * detail::kEps * (static_cast<double>(m) + 2.0);
  return {est, 2.0 * est * log_err};
}

// Log-scale margin of the gap criterion against the range supremum:
//   log(gap criterion) - log(zeta(r)/zeta(2r)).
// Positive beyond its error bound certifies a gap at witness m; negative
// beyond the bound certifies none.
inline BoundedValue gap_margin(std::size_t m, double r, double tol, const PrimeTable& table) {
  if (!(r > 1.0)) throw std::domain_error("gap_margin: requires r > 1");
  const double log_crit = log_gap_criterion(m, r, table);
  const double log_crit_err = 4.0 * detail::kEps * (static_cast<double>(m) + 2.0);
  const BoundedValue log_ratio = log(zeta_ratio(r, tol / 4.0));
  const double err = log_crit_err + log_ratio.error_bound + 2.0 * detail::kEps;
  if (err > tol)
    throw PrecisionUnachievable("gap_margin: propagated error exceeds tol (m = " + std::to_string(m) + ")");
  return {log_crit - log_ratio.estimate, err};
}

// Same margin through the Euler-product form of the ratio,
//   log1p(p_m^-r) - log1p(p_m^-2r) - sum_{i>m} log1p(p_i^-r),
// with the tail past the table bounded by the integral of x^{-r}. For r
// comfortably above 2 this resolves margins far below what the zeta route
// can, e.g. 2^-50 - 3^-50 at r = 50.
inline BoundedValue gap_margin_tail_form(std::size_t m, double r, const PrimeTable& table) {
  if (!(r > 2.0)) throw std::domain_error("gap_margin_tail_form: requires r > 2");
  if (m == 0 || m > table.count()) throw std::out_of_range("gap_margin_tail_form: bad m");
  const double pm = static_cast<double>(table.nth(m));
  const double head = std::log1p(std::pow(pm, -r)) - std::log1p(std::pow(pm, -2.0 * r));

  detail::KahanSum tail_sum;
  double last_prime = pm;
  for (std::size_t i = m + 1; i <= table.count(); ++i) {
    const double p = static_cast<double>(table.nth(i));
    const double term = std::log1p(std::pow(p, -r));
    last_prime = p;
    tail_sum.add(term);
    if (term < 1e-30) break;
  }
  // Primes beyond last_prime are a subset of the integers > last_prime, so
  // the unsummed remainder is below integral_{last_prime}^inf x^{-r} dx.
  const double tail_bound = std::pow(last_prime, 1.0 - r) / (r - 1.0);
  const double rounding = 8.0 * detail::kEps * (std::abs(head) + tail_sum.sum);
  return {head - tail_sum.sum, tail_bound + rounding};
}

// Finite lower-bound surrogate for the growth rate of the gap margin
// (the margin's r-derivative divided by log p_m exceeds this):
//   sum_{i=m+1..m+6} 1/(p_i^r + 1)  -  (p_m^{2r} - 2 p_m^r - 1) / ((p_m^r+1)(p_m^{2r}+1))
inline double margin_slope_surrogate(std::size_t m, double r, const PrimeTable& table) {
  if (!(r >= 1.0)) throw std::domain_error("margin_slope_surrogate: requires r >= 1");
  if (m == 0) throw std::invalid_argument("margin_slope_surrogate: m must be >= 1");
  if (m + 6 > table.count())
    throw std::out_of_range("margin_slope_surrogate: table holds fewer than m+6 primes");
  double sum = 0.0;
  for (std::size_t i = m + 1; i <= m + 6; ++i)
    sum += 1.0 / (std::pow(static_cast<double>(table.nth(i)), r) + 1.0);
  const double pr = std::pow(static_cast<double>(table.nth(m)), r);
  const double p2r = pr * pr;
  return sum - (p2r - 2.0 * pr - 1.0) / ((pr + 1.0) * (p2r + 1.0));
}

}  // namespace unitary
