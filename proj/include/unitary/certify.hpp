#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "unitary/analytic.hpp"
#include "unitary/bounded_value.hpp"
#include "unitary/errors.hpp"
#include "unitary/prime_table.hpp"

namespace unitary {

// The six witness indices whose inequalities decide connectivity on (1,3].
inline constexpr std::array<int, 6> kWitnessSet = {1, 2, 3, 4, 6, 9};

// Grid-plus-slope positivity certificate: if every grid value exceeds the
// margin and the function cannot drop faster than slope_bound between
// neighbouring points, the function is positive on the whole interval.
enum class CertifiedFunction { MarginSlopeSurrogate, GapMargin };

struct GridCertificate {
  CertifiedFunction function = CertifiedFunction::MarginSlopeSurrogate;
  std::optional<int> witness_m;
  double lo = 0.0;
  double hi = 0.0;
  int grid_points = 0;
  double margin = 0.0;
  double slope_bound = 0.0;
  double min_observed = 0.0;
  bool verdict = false;

  double spacing() const noexcept { return (hi - lo) / (grid_points - 1); }
  // margin - slope_bound * spacing; the certificate only implies positivity
  // on the interval when this is >= 0.
  double coverage_residual() const noexcept { return margin - slope_bound * spacing(); }
};

inline constexpr int kSlopeGridPoints = 2801;        // r = 1 + n/2800 on [1,2]
inline constexpr double kSlopeMargin = 1.0 / 400.0;
inline constexpr double kSlopeBound = 7.0;
inline constexpr int kMarginGridPoints = 401;        // r = 2 + n/400 on [2,3]
inline constexpr double kMarginMargin = 0.003;
inline constexpr double kMarginSlopeBound = 1.1;

namespace detail {

inline void require_witness(int m) {
  for (int w : kWitnessSet)
    if (w == m) return;
  throw std::invalid_argument("witness m must be one of {1,2,3,4,6,9}, got " + std::to_string(m));
}

// gap_margin with a tolerance cascade: r very close to 1 makes zeta huge and
// the starting tol unreachable, but the margin there is order -log(zeta(r)),
// so a coarse bound still decides the sign.
inline BoundedValue gap_margin_cascade(std::size_t m, double r, const PrimeTable& table,
                                       double start_tol = kDefaultZetaTol) {
  for (double tol : {start_tol, 1e-9, 1e-6, 1e-3}) {
    if (tol < start_tol) continue;
    try {
      return gap_margin(m, r, tol, table);
    } catch (const PrecisionUnachievable&) {
      continue;
    }
  }
  throw PrecisionUnachievable("gap_margin: unachievable at every cascade tolerance, r = " +
                              std::to_string(r));
}

}  // namespace detail

// Evaluates the slope surrogate for witness m at the 2801 grid points on
// [1,2]; verdict true iff the minimum exceeds the margin (default 1/400).
// Together with the slope bound 7 and spacing 1/2800 this certifies the
// surrogate positive on all of [1,2]. Ascending fixed evaluation order keeps
// the certificate bit-reproducible.
inline GridCertificate certify_slope_positive(int m, const PrimeTable& table,
                                              double margin = kSlopeMargin) {
  detail::require_witness(m);
  GridCertificate cert;
  cert.function = CertifiedFunction::MarginSlopeSurrogate;
  cert.witness_m = m;
  cert.lo = 1.0;
  cert.hi = 2.0;
  cert.grid_points = kSlopeGridPoints;
  cert.margin = margin;
  cert.slope_bound = kSlopeBound;
  double min_observed = std::numeric_limits<double>::infinity();
  for (int n = 0; n < kSlopeGridPoints; ++n) {
    const double r = 1.0 + static_cast<double>(n) / 2800.0;
    min_observed = std::min(min_observed, margin_slope_surrogate(static_cast<std::size_t>(m), r, table));
  }
  cert.min_observed = min_observed;
  cert.verdict = min_observed > margin && cert.coverage_residual() >= -1e-15;
  return cert;
}

// Evaluates the witness-2 gap margin at the 401 grid points on [2,3];
// verdict true iff the minimum exceeds the margin (default 0.003). With the
// slope bound 1.1 this certifies the margin positive on [2,3], i.e. the
// range has a gap for every r in [2,3].
inline GridCertificate certify_margin_positive_on_2_3(const PrimeTable& table,
                                                      double margin = kMarginMargin,
                                                      double zeta_tol = kDefaultZetaTol) {
  GridCertificate cert;
  cert.function = CertifiedFunction::GapMargin;
  cert.witness_m = 2;
  cert.lo = 2.0;
  cert.hi = 3.0;
  cert.grid_points = kMarginGridPoints;
  cert.margin = margin;
  cert.slope_bound = kMarginSlopeBound;
  double min_observed = std::numeric_limits<double>::infinity();
  double max_err = 0.0;
  for (int n = 0; n < kMarginGridPoints; ++n) {
    const double r = 2.0 + static_cast<double>(n) / 400.0;
    const BoundedValue v = gap_margin(2, r, zeta_tol, table);
    min_observed = std::min(min_observed, v.estimate);
    max_err = std::max(max_err, v.error_bound);
  }
  cert.min_observed = min_observed;
  cert.verdict = min_observed - max_err > margin && cert.coverage_residual() >= -1e-15;
  return cert;
}

// Numerical recheck of the pointwise floor used to derive the slope bound:
// the leading derivative term stays >= -1 on the same 2801-point grid.
inline bool verify_slope_term_floor(int m, const PrimeTable& table) {
  detail::require_witness(m);
  const double pm = static_cast<double>(table.nth(static_cast<std::size_t>(m)));
  const double lpm = std::log(pm);
  for (int n = 0; n < kSlopeGridPoints; ++n) {
    const double r = 1.0 + static_cast<double>(n) / 2800.0;
    const double pr = std::pow(pm, r);
    const double p2r = pr * pr;
    const double d = pr - 1.0;
    const double term = pr * (d * d * d * d - 12.0 * p2r) * lpm / ((pr + 1.0) * (pr + 1.0) * (p2r + 1.0) * (p2r + 1.0));
    if (!(term >= -1.0)) return false;
  }
  return true;
}

// Root of the witness-2 gap margin in (1,2]: the connectivity threshold.
struct EtaStarResult {
  double value = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int iterations = 0;
  double equation_residual = 0.0;  // |lhs - rhs| of the defining equation at value
};

// Left side of the defining equation:
//   (2^x + 1)/2^x * (3^x + 1)^2 / (3^{2x} + 1)
inline double eta_equation_lhs(double x) {
  const double p2 = std::pow(2.0, x);
  const double p3 = std::pow(3.0, x);
  return (p2 + 1.0) / p2 * (p3 + 1.0) * (p3 + 1.0) / (p3 * p3 + 1.0);
}

// Bisection for the unique root of the witness-2 margin on [1.5, 2]. The
// margin is negative at 1.5 and positive at 2 (checked beyond error bounds;
// failure there means the evaluation pipeline is broken, not the input).
inline EtaStarResult find_eta_star(double tol, const PrimeTable& table,
                                   double zeta_tol = kDefaultZetaTol) {
  if (!(tol > 0.0)) throw std::invalid_argument("find_eta_star: tol must be positive");
  const auto margin_at = [&](double r) { return gap_margin(2, r, zeta_tol, table); };

  double lo = 1.5;
  double hi = 2.0;
  const BoundedValue at_lo = margin_at(lo);
  const BoundedValue at_hi = margin_at(hi);
  if (!(at_lo.upper() < 0.0) || !(at_hi.lower() > 0.0))
    throw InternalInconsistency("find_eta_star: bracket sign check failed");

  const double width_floor = std::max(tol, 1e-15);
  int iterations = 0;
  while (hi - lo > width_floor && iterations < 80) {
    const double mid = 0.5 * (lo + hi);
    if (margin_at(mid).estimate < 0.0)
      lo = mid;
    else
      hi = mid;
    ++iterations;
  }

  EtaStarResult out;
  out.value = 0.5 * (lo + hi);
  out.bracket_lo = lo;
  out.bracket_hi = hi;
  out.iterations = iterations;
  out.equation_residual =
      std::abs(eta_equation_lhs(out.value) - zeta_ratio(out.value, std::min(zeta_tol, 1e-13)).estimate);
  return out;
}

enum class InequalityVerdict { Holds, Fails, Inconclusive };

// Per-witness verdict of the finite inequality list on (1,3]: Holds when the
// gap margin is negative beyond its error bound (no gap at that witness),
// Fails when positive beyond it, Inconclusive inside the bound.
inline std::map<int, InequalityVerdict> check_finite_inequalities(double r, const PrimeTable& table,
                                                                  double zeta_tol = kDefaultZetaTol) {
  if (!(r > 1.0) || !(r <= 3.0))
    throw std::domain_error("check_finite_inequalities: requires 1 < r <= 3");
  std::map<int, InequalityVerdict> out;
  for (int m : kWitnessSet) {
    const BoundedValue v = detail::gap_margin_cascade(static_cast<std::size_t>(m), r, table, zeta_tol);
    if (v.upper() < 0.0)
      out[m] = InequalityVerdict::Holds;
    else if (v.lower() > 0.0)
      out[m] = InequalityVerdict::Fails;
    else
      out[m] = InequalityVerdict::Inconclusive;
  }
  return out;
}

// For r > 3 the witness-1 inequality alone decides: true iff the witness-1
// gap criterion exceeds zeta(r)/zeta(2r) beyond error bounds. Uses the
// Euler-product tail form, which keeps resolving power at large r where both
// sides are within 2^-r of 1.
inline bool check_r_gt_3(double r, const PrimeTable& table) {
  if (!(r > 3.0)) throw std::domain_error("check_r_gt_3: requires r > 3");
  return gap_margin_tail_form(1, r, table).lower() > 0.0;
}

enum class Connectivity { Connected, Disconnected, Inconclusive };
enum class ClassifyRule {
  DiscreteNonnegative,   // t >= 0: the range is a discrete set
  DenseUnitInterval,     // -1 <= t < 0: closure is [1, inf)
  FiniteInequalities,    // 1 < r <= 3: the six witness inequalities
  TailInequality,        // r > 3: the witness-1 inequality
};

struct Classification {
  Connectivity verdict = Connectivity::Inconclusive;
  ClassifyRule rule = ClassifyRule::FiniteInequalities;
};

// Full classifier for the closure of the range of sigma*_t: which rule fired
// and whether the closure is connected. Inconclusive only when a sign test
// lands inside its error bound (r indistinguishable from the threshold at
// working precision).
inline Classification classify_connectivity_detail(double t, const PrimeTable& table,
                                                   double zeta_tol = kDefaultZetaTol) {
  if (t >= 0.0) return {Connectivity::Disconnected, ClassifyRule::DiscreteNonnegative};
  if (t >= -1.0) return {Connectivity::Connected, ClassifyRule::DenseUnitInterval};
  const double r = -t;
  if (r <= 3.0) {
    try {
      const auto verdicts = check_finite_inequalities(r, table, zeta_tol);
      bool any_inconclusive = false;
      for (const auto& [m, v] : verdicts) {
        if (v == InequalityVerdict::Fails)
          return {Connectivity::Disconnected, ClassifyRule::FiniteInequalities};
        if (v == InequalityVerdict::Inconclusive) any_inconclusive = true;
      }
      if (any_inconclusive) return {Connectivity::Inconclusive, ClassifyRule::FiniteInequalities};
      return {Connectivity::Connected, ClassifyRule::FiniteInequalities};
    } catch (const PrecisionUnachievable&) {
      return {Connectivity::Inconclusive, ClassifyRule::FiniteInequalities};
    }
  }
  return check_r_gt_3(r, table)
             ? Classification{Connectivity::Disconnected, ClassifyRule::TailInequality}
             : Classification{Connectivity::Inconclusive, ClassifyRule::TailInequality};
}

inline Connectivity classify_connectivity(double t, const PrimeTable& table,
                                          double zeta_tol = kDefaultZetaTol) {
  return classify_connectivity_detail(t, table, zeta_tol).verdict;
}

}  // namespace unitary
