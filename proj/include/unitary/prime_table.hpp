#pragma once

#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "unitary/errors.hpp"

namespace unitary {

inline constexpr std::uint64_t kDefaultSieveLimit = 2'000'000;

// Primes up to a fixed limit, 1-indexed (nth(1) == 2), plus a
// smallest-prime-factor array for fast factorization of any n <= limit.
// Immutable after construction; safe to share across threads.
class PrimeTable {
public:
  explicit PrimeTable(std::uint64_t limit) : limit_(limit) {
    if (limit < 2) throw std::invalid_argument("PrimeTable: limit must be >= 2");
    if (limit > (std::uint64_t{1} << 32))
      throw std::invalid_argument("PrimeTable: limit too large for 32-bit factor sieve");
    spf_.assign(static_cast<std::size_t>(limit) + 1, 0);
    for (std::uint64_t p = 2; p <= limit; ++p) {
      if (spf_[p] != 0) continue;
      primes_.push_back(p);
      for (std::uint64_t q = p; q <= limit; q += p) {
        if (spf_[q] == 0) spf_[q] = static_cast<std::uint32_t>(p);
      }
    }
  }

  std::uint64_t limit() const noexcept { return limit_; }
  std::size_t count() const noexcept { return primes_.size(); }
  const std::vector<std::uint64_t>& primes() const noexcept { return primes_; }

  // 1-based: nth(1) == 2, nth(2) == 3, ...
  std::uint64_t nth(std::size_t index) const {
    if (index == 0 || index > primes_.size())
      throw std::out_of_range("PrimeTable: prime index " + std::to_string(index) +
                              " out of range (have " + std::to_string(primes_.size()) + ")");
    return primes_[index - 1];
  }

  // Smallest prime factor of n, for 2 <= n <= limit.
  std::uint32_t smallest_factor(std::uint64_t n) const {
    if (n < 2 || n > limit_) throw std::out_of_range("PrimeTable: smallest_factor out of range");
    return spf_[static_cast<std::size_t>(n)];
  }

private:
  std::uint64_t limit_;
  std::vector<std::uint64_t> primes_;
  std::vector<std::uint32_t> spf_;
};

inline PrimeTable build_prime_table(std::uint64_t limit = kDefaultSieveLimit) {
  return PrimeTable(limit);
}

// Indices j <= max_j where p_{j+1}/p_j >= 2^{1/3}. The comparison is done as
// p_{j+1}^3 vs 2*p_j^3 in integer arithmetic so rounding near the threshold
// cannot misclassify.
inline std::set<std::size_t> ratio_exceptions(const PrimeTable& table, std::size_t max_j) {
  if (max_j + 1 > table.count())
    throw std::out_of_range("ratio_exceptions: table holds fewer than max_j+1 primes");
  std::set<std::size_t> out;
  for (std::size_t j = 1; j <= max_j; ++j) {
    const unsigned __int128 a = table.nth(j + 1);
    const unsigned __int128 b = table.nth(j);
    if (a * a * a >= 2 * b * b * b) out.insert(j);
  }
  return out;
}

// Upper bound on p_{j+1}/p_j for j >= 6:
//   (j+1)(log(j+1) + log log(j+1)) / (j log j)
inline double rosser_ratio_bound(std::uint64_t j) {
  if (j < 6) throw std::invalid_argument("rosser_ratio_bound: defined for j >= 6");
  const double jd = static_cast<double>(j);
  const double lj1 = std::log(jd + 1.0);
  return (jd + 1.0) * (lj1 + std::log(lj1)) / (jd * std::log(jd));
}

}  // namespace unitary
