#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "unitary/analytic.hpp"
#include "unitary/certify.hpp"
#include "unitary/errors.hpp"
#include "unitary/factored.hpp"
#include "unitary/gaps.hpp"
#include "unitary/prime_table.hpp"

namespace unitary {

struct GreedyStep {
  std::size_t prime_index = 0;                 // 1-based
  std::optional<std::uint32_t> exponent;       // nullopt = skipped
  double partial_log = 0.0;                    // running log of the constructed value
};

// Full transcript of a greedy approximation run. The constructed integer is
// kept in factored form only; its decimal expansion can run to thousands of
// digits.
struct GreedyTrace {
  double r = 0.0;
  double target = 0.0;
  std::vector<GreedyStep> steps;
  FactoredInteger result;
  double achieved = 0.0;   // sigma*_{-r}(result), i.e. exp of the final partial log
  double residual = 0.0;   // log(target) - final partial log, >= 0
  bool converged = false;  // residual < eps
};

namespace detail {

inline constexpr std::uint32_t kGreedyExponentCap = 10'000;

}  // namespace detail

// Builds an integer whose sigma*_{-r} value approaches the target from
// below. At prime p_n, picks the smallest exponent a with
//   partial + log(1 + p_n^{-a r}) <= log(target),
// accumulating entirely in log space. The floating-point reading of the
// equality case: hitting the target within 1e-15 relative (in log scale)
// stops the run; the same slack admits an exponent whose term lands on the
// target up to rounding.
inline GreedyTrace greedy_approximate(double r, double target, std::size_t max_primes, double eps,
                                      const PrimeTable& table, double zeta_tol = kDefaultZetaTol) {
  if (!(r > 1.0)) throw std::domain_error("greedy_approximate: requires r > 1");
  if (!(eps > 0.0)) throw std::invalid_argument("greedy_approximate: eps must be positive");
  if (max_primes > table.count())
    throw std::out_of_range("greedy_approximate: max_primes exceeds prime table");
  const BoundedValue ratio = zeta_ratio(r, zeta_tol);
  if (!(target >= 1.0) || !(target < ratio.lower()))
    throw std::out_of_range("greedy_approximate: target " + std::to_string(target) +
                            " outside [1, zeta(r)/zeta(2r))");

  const double x = std::log(target);
  const double slack = 1e-15 * std::max(1.0, std::abs(x));

  GreedyTrace trace;
  trace.r = r;
  trace.target = target;

  double partial = 0.0;
  std::vector<PrimePower> factors;
  for (std::size_t n = 1; n <= max_primes; ++n) {
    if (x - partial <= slack) {
      trace.steps.push_back({n, std::nullopt, partial});
      break;
    }
    const double log_p = std::log(static_cast<double>(table.nth(n)));
    std::uint32_t chosen = 0;
    double term = 0.0;
    for (std::uint32_t a = 1; a <= detail::kGreedyExponentCap; ++a) {
      const double t = std::log1p(std::exp(-static_cast<double>(a) * r * log_p));
      if (partial + t <= x + slack) {
        if (t > 0.0) {
          chosen = a;
          term = t;
        }
        break;
      }
    }
    if (chosen == 0) {
      // term below representable significance at every admissible exponent
      trace.steps.push_back({n, std::nullopt, partial});
      continue;
    }
    partial += term;
    factors.push_back({table.nth(n), chosen});
    trace.steps.push_back({n, chosen, partial});
    if (x - partial < eps) break;
  }

  trace.result = FactoredInteger(std::move(factors));
  trace.achieved = std::exp(partial);
  trace.residual = std::max(0.0, x - partial);
  trace.converged = trace.residual < eps;
  return trace;
}

// Runs the greedy construction at the midpoint of a certified gap. Because
// every partial value the construction can reach is itself a range value,
// the run must stall at or below gap.lo, leaving a residual of at least
// log(midpoint / gap.lo). Rejects intervals whose witness inequality does
// not actually certify a gap at this r.
inline GreedyTrace greedy_stall_demo(double r, const GapInterval& gap, std::size_t max_primes,
                                     const PrimeTable& table) {
  const BoundedValue margin =
      detail::gap_margin_cascade(static_cast<std::size_t>(gap.witness_m), r, table);
  if (!(margin.lower() > 0.0))
    throw std::invalid_argument("greedy_stall_demo: witness " + std::to_string(gap.witness_m) +
                                " certifies no gap at r = " + std::to_string(r));
  const double midpoint = 0.5 * (gap.lo + gap.hi);
  return greedy_approximate(r, midpoint, max_primes, 1e-12, table);
}

}  // namespace unitary
