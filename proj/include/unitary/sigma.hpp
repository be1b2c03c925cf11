#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>

#include "unitary/factored.hpp"
#include "unitary/prime_table.hpp"

namespace unitary {

// log(1 + p^(a*t)), stable for any sign and size of a*t*log(p).
inline double log_unitary_sigma_term(double t, std::uint64_t prime, std::uint32_t exponent) {
  const double y = static_cast<double>(exponent) * t * std::log(static_cast<double>(prime));
  if (y <= 0.0) return std::log1p(std::exp(y));  // exp underflow to 0 is correct here
  return y + std::log1p(std::exp(-y));
}

// log sigma*_t(n) as a sum of stable log terms. Preferred when n has many
// factors or the plain product would overflow.
inline double log_unitary_sigma(double t, const FactoredInteger& n) {
  double s = 0.0;
  for (const auto& f : n.factors()) s += log_unitary_sigma_term(t, f.prime, f.exponent);
  return s;
}

// sigma*_t(n) = prod over factors of (1 + p^(a t)); 1 for the empty product.
// pow keeps exactly-representable prime powers exact, which exp(a t log p)
// would not.
inline double unitary_sigma(double t, const FactoredInteger& n) {
  double prod = 1.0;
  for (const auto& f : n.factors()) {
    const double p = static_cast<double>(f.prime);
    const double y = static_cast<double>(f.exponent) * t;
    if (y * std::log(p) > 700.0) return std::exp(log_unitary_sigma(t, n));  // plain product would overflow
    prod *= 1.0 + std::pow(p, y);
  }
  return prod;
}

// Test oracle: literal sum of d^t over the unitary divisors of n, with the
// gcd condition checked per divisor pair. Independent of the product formula.
inline double unitary_sigma_oracle(double t, std::uint64_t n, const PrimeTable& table) {
  if (n == 0) throw std::invalid_argument("unitary_sigma_oracle: n must be >= 1");
  (void)factorize(n, table);  // same factorability precondition as unitary_sigma
  double sum = 0.0;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    const std::uint64_t e = n / d;
    if (std::gcd(d, e) == 1) {
      sum += std::pow(static_cast<double>(d), t);
      if (d != e) sum += std::pow(static_cast<double>(e), t);
    }
  }
  return sum;
}

}  // namespace unitary
