#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "unitary/errors.hpp"
#include "unitary/prime_table.hpp"

namespace unitary {

struct PrimePower {
  std::uint64_t prime = 0;
  std::uint32_t exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// A positive integer in canonical factored form: primes strictly increasing,
// exponents >= 1. The empty list is 1. Greedy constructions produce integers
// with thousands of digits, so the value is never materialized unless it
// fits in 64 bits.
class FactoredInteger {
public:
  FactoredInteger() = default;

  explicit FactoredInteger(std::vector<PrimePower> factors) : factors_(std::move(factors)) {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (factors_[i].exponent == 0)
        throw std::invalid_argument("FactoredInteger: exponent must be >= 1");
      if (factors_[i].prime < 2)
        throw std::invalid_argument("FactoredInteger: prime must be >= 2");
      if (i > 0 && factors_[i - 1].prime >= factors_[i].prime)
        throw std::invalid_argument("FactoredInteger: primes must be strictly increasing");
    }
  }

  const std::vector<PrimePower>& factors() const noexcept { return factors_; }
  bool is_one() const noexcept { return factors_.empty(); }
  std::size_t distinct_primes() const noexcept { return factors_.size(); }

  double log_value() const noexcept {
    double s = 0.0;
    for (const auto& f : factors_) s += static_cast<double>(f.exponent) * std::log(static_cast<double>(f.prime));
    return s;
  }

  // The integer itself when it fits in 64 bits.
  std::optional<std::uint64_t> checked_value() const noexcept {
    unsigned __int128 v = 1;
    for (const auto& f : factors_) {
      for (std::uint32_t e = 0; e < f.exponent; ++e) {
        v *= f.prime;
        if (v > UINT64_MAX) return std::nullopt;
      }
    }
    return static_cast<std::uint64_t>(v);
  }

  std::string to_string() const {
    if (factors_.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) s += " * ";
      s += std::to_string(factors_[i].prime);
      if (factors_[i].exponent > 1) s += "^" + std::to_string(factors_[i].exponent);
    }
    return s;
  }

  friend bool operator==(const FactoredInteger&, const FactoredInteger&) = default;

private:
  std::vector<PrimePower> factors_;
};

// Factor n using the table's smallest-factor array when n <= limit, falling
// back to trial division by table primes otherwise. Throws NeedsLargerTable
// when the table cannot certify the remaining cofactor prime.
inline FactoredInteger factorize(std::uint64_t n, const PrimeTable& table) {
  if (n == 0) throw std::invalid_argument("factorize: n must be >= 1");
  std::vector<PrimePower> factors;
  if (n <= table.limit()) {
    std::uint64_t m = n;
    while (m > 1) {
      const std::uint64_t p = table.smallest_factor(m);
      std::uint32_t e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      factors.push_back({p, e});
    }
    return FactoredInteger(std::move(factors));
  }
  std::uint64_t m = n;
  for (std::uint64_t p : table.primes()) {
    if (p * p > m) break;
    if (m % p != 0) continue;
    std::uint32_t e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    factors.push_back({p, e});
  }
  if (m > 1) {
    const std::uint64_t largest = table.primes().back();
    if (largest * largest < m)
      throw NeedsLargerTable("factorize: cofactor " + std::to_string(m) +
                             " not certifiable with sieve limit " + std::to_string(table.limit()));
    factors.push_back({m, 1});  // trial division exhausted sqrt(m): m is prime
    std::sort(factors.begin(), factors.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  }
  return FactoredInteger(std::move(factors));
}

// All d | n with gcd(d, n/d) = 1, ascending. There are exactly 2^omega(n).
inline std::vector<std::uint64_t> unitary_divisors(std::uint64_t n, const PrimeTable& table) {
  const FactoredInteger f = factorize(n, table);
  std::vector<std::uint64_t> divisors{1};
  for (const auto& pp : f.factors()) {
    std::uint64_t block = 1;
    for (std::uint32_t e = 0; e < pp.exponent; ++e) block *= pp.prime;
    const std::size_t sz = divisors.size();
    for (std::size_t i = 0; i < sz; ++i) divisors.push_back(divisors[i] * block);
  }
  std::sort(divisors.begin(), divisors.end());
  return divisors;
}

}  // namespace unitary
