#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "unitary/analytic.hpp"
#include "unitary/certify.hpp"
#include "unitary/errors.hpp"
#include "unitary/factored.hpp"
#include "unitary/prime_table.hpp"
#include "unitary/sigma.hpp"

namespace unitary {

inline constexpr int kGapWitnessSearchMax = 30;
inline constexpr double kGapGuard = 1e-9;

// An open interval proven to contain no value of sigma*_{-r}, with the
// witness index m that produces it:
//   lo = zeta(r)/zeta(2r) * (p_m^{2r}+1)/(p_m^{2r}+p_m^r)
//   hi = zeta(r)/zeta(2r) * prod_{i>m}(1+p_i^{-r})^{-1}  =  prod_{i<=m}(1+p_i^{-r})
struct GapInterval {
  double lo = 0.0;
  double hi = 0.0;
  int witness_m = 0;
  double r = 0.0;
};

// The gap interval for witness m when the gap margin is positive beyond its
// error bound; nothing when negative beyond it; Inconclusive inside it.
inline std::optional<GapInterval> gap_for_m(double r, int m, const PrimeTable& table,
                                            double zeta_tol = kDefaultZetaTol) {
  if (!(r > 1.0)) throw std::domain_error("gap_for_m: requires r > 1");
  if (m < 1) throw std::invalid_argument("gap_for_m: m must be >= 1");
  const BoundedValue margin = detail::gap_margin_cascade(static_cast<std::size_t>(m), r, table, zeta_tol);
  if (margin.upper() < 0.0) return std::nullopt;
  if (!(margin.lower() > 0.0))
    throw Inconclusive("gap_for_m: margin within error bound at r = " + std::to_string(r) +
                       ", m = " + std::to_string(m));
  const double ratio = zeta_ratio(r, zeta_tol).estimate;
  const double pm = static_cast<double>(table.nth(static_cast<std::size_t>(m)));
  const double u = std::pow(pm, -r);
  GapInterval gap;
  gap.lo = ratio * (1.0 + u * u) / (1.0 + u);
  gap.hi = finite_euler_product(static_cast<std::size_t>(m), r, table);
  gap.witness_m = m;
  gap.r = r;
  return gap;
}

namespace detail {

inline void enumerate_chunk(double r, std::uint64_t first, std::uint64_t last,
                            const PrimeTable& table, std::vector<double>& out) {
  out.reserve(static_cast<std::size_t>(last - first + 1));
  for (std::uint64_t n = first; n <= last; ++n) {
    double value = 1.0;
    std::uint64_t m = n;
    while (m > 1) {
      const std::uint64_t p = table.smallest_factor(m);
      std::uint32_t e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      value *= 1.0 + std::pow(static_cast<double>(p), -static_cast<double>(e) * r);
    }
    out.push_back(value);
  }
}

}  // namespace detail

// All distinct values of sigma*_{-r}(n) for 1 <= n <= limit, ascending,
// deduplicated at relative tolerance 1e-13. Chunked across threads with a
// deterministic merge; the result is identical for any thread count.
inline std::vector<double> enumerate_range(double r, std::uint64_t limit, const PrimeTable& table,
                                           unsigned threads = 1) {
  if (limit == 0) throw std::invalid_argument("enumerate_range: limit must be >= 1");
  if (limit > table.limit())
    throw NeedsLargerTable("enumerate_range: limit " + std::to_string(limit) +
                           " exceeds sieve limit " + std::to_string(table.limit()));
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, limit));

  std::vector<double> values;
  if (threads <= 1) {
    detail::enumerate_chunk(r, 1, limit, table, values);
  } else {
    std::vector<std::vector<double>> parts(threads);
    std::vector<std::future<void>> jobs;
    const std::uint64_t step = limit / threads;
    for (unsigned k = 0; k < threads; ++k) {
      const std::uint64_t first = 1 + k * step;
      const std::uint64_t last = (k + 1 == threads) ? limit : (k + 1) * step;
      jobs.push_back(std::async(std::launch::async, [&, first, last, k] {
        detail::enumerate_chunk(r, first, last, table, parts[k]);
      }));
    }
    for (auto& j : jobs) j.get();
    for (auto& part : parts) values.insert(values.end(), part.begin(), part.end());
  }

  std::sort(values.begin(), values.end());
  std::vector<double> distinct;
  distinct.reserve(values.size());
  for (double v : values) {
    if (distinct.empty() || v - distinct.back() > 1e-13 * distinct.back()) distinct.push_back(v);
  }
  return distinct;
}

struct GapEmptinessCheck {
  bool empty = false;
  std::size_t values_checked = 0;
};

// Brute-force confirmation that no enumerated value lies strictly inside
// (gap.lo + guard, gap.hi - guard).
inline GapEmptinessCheck verify_gap_empty(double r, const GapInterval& gap, std::uint64_t limit,
                                          const PrimeTable& table, unsigned threads = 1,
                                          double guard = kGapGuard) {
  if (gap.r != r)
    throw std::invalid_argument("verify_gap_empty: gap was produced for a different r");
  const std::vector<double> values = enumerate_range(r, limit, table, threads);
  const auto it = std::upper_bound(values.begin(), values.end(), gap.lo + guard);
  const bool empty = it == values.end() || *it >= gap.hi - guard;
  return {empty, values.size()};
}

struct Cluster {
  double min = 0.0;
  double max = 0.0;
  std::uint64_t count = 0;
};

// Heuristic component count from a finite enumeration: a new cluster starts
// whenever consecutive sorted values are more than `resolution` apart. The
// estimate says nothing rigorous about the true component structure; the
// analytic gaps (witness search up to max_m) are included as a cross-check.
struct ComponentReport {
  double r = 0.0;
  std::uint64_t enumeration_limit = 0;
  double resolution = 0.0;
  int estimated_components = 0;
  bool heuristic = true;
  bool gaps_consistent = true;  // every analytic gap wider than resolution falls between clusters
  std::vector<GapInterval> analytic_gaps;
  std::vector<Cluster> clusters;
};

inline ComponentReport estimate_components(double r, std::uint64_t limit, double resolution,
                                           const PrimeTable& table, unsigned threads = 1,
                                           int max_m = kGapWitnessSearchMax) {
  if (!(r > 1.0)) throw std::domain_error("estimate_components: requires r > 1");
  if (!(resolution > 0.0)) throw std::invalid_argument("estimate_components: resolution must be positive");

  ComponentReport report;
  report.r = r;
  report.enumeration_limit = limit;
  report.resolution = resolution;

  const std::vector<double> values = enumerate_range(r, limit, table, threads);
  Cluster current{values.front(), values.front(), 1};
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] - values[i - 1] > resolution) {
      report.clusters.push_back(current);
      current = Cluster{values[i], values[i], 1};
    } else {
      current.max = values[i];
      ++current.count;
    }
  }
  report.clusters.push_back(current);
  report.estimated_components = static_cast<int>(report.clusters.size());

  for (int m = 1; m <= max_m; ++m) {
    try {
      if (auto gap = gap_for_m(r, m, table)) report.analytic_gaps.push_back(*gap);
    } catch (const Inconclusive&) {
      // a knife-edge witness neither confirms nor denies a gap; skip it
    }
  }
  for (const GapInterval& gap : report.analytic_gaps) {
    if (gap.hi - gap.lo <= resolution) continue;
    for (const Cluster& c : report.clusters) {
      const bool disjoint = c.max <= gap.lo + kGapGuard || c.min >= gap.hi - kGapGuard;
      if (!disjoint) report.gaps_consistent = false;
    }
  }
  return report;
}

// Heuristic threshold where the estimated component count first reaches k,
// searched by bisection on r over [eta*, r_hi]. Finite enumeration cannot
// certify component counts, so the result is explicitly tagged heuristic; a
// bracket whose endpoints do not straddle the predicate is reported as a
// non-monotone warning rather than an error.
struct EkEstimate {
  int k = 0;
  double r_threshold = 0.0;
  bool heuristic = true;
  bool non_monotone_warning = false;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  std::uint64_t enumeration_limit = 0;
  double resolution = 0.0;
};

inline EkEstimate estimate_inf_ek(int k, std::uint64_t limit, double resolution, double r_hi,
                                  const PrimeTable& table, unsigned threads = 1) {
  if (k < 2) throw std::invalid_argument("estimate_inf_ek: requires k >= 2");
  const double eta = find_eta_star(1e-9, table).value;
  if (!(r_hi > eta)) throw std::invalid_argument("estimate_inf_ek: r_hi must exceed eta*");

  const auto components_at = [&](double r) {
    return estimate_components(r, limit, resolution, table, threads).estimated_components;
  };

  EkEstimate out;
  out.k = k;
  out.bracket_lo = eta;
  out.bracket_hi = r_hi;
  out.enumeration_limit = limit;
  out.resolution = resolution;

  const bool lo_reaches = components_at(eta) >= k;
  const bool hi_reaches = components_at(r_hi) >= k;
  if (lo_reaches || !hi_reaches) {
    out.non_monotone_warning = true;
    out.r_threshold = lo_reaches ? eta : r_hi;
    return out;
  }
  double lo = eta;
  double hi = r_hi;
  for (int i = 0; i < 40 && hi - lo > 1e-6; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (components_at(mid) >= k)
      hi = mid;
    else
      lo = mid;
  }
  out.r_threshold = 0.5 * (lo + hi);
  return out;
}

}  // namespace unitary
