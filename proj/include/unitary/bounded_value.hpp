#pragma once

#include <cmath>
#include <stdexcept>

namespace unitary {

// A real estimate with a rigorous absolute error bound. Sums add bounds;
// products and quotients use first-order propagation with a safety factor
// of 2, which is far tighter than needed for every decision margin in this
// library (1/400, 0.003, ...).
struct BoundedValue {
  double estimate = 0.0;
  double error_bound = 0.0;

  double lower() const noexcept { return estimate - error_bound; }
  double upper() const noexcept { return estimate + error_bound; }
};

inline BoundedValue exact(double v) { return {v, 0.0}; }

inline BoundedValue operator+(const BoundedValue& a, const BoundedValue& b) {
  return {a.estimate + b.estimate, a.error_bound + b.error_bound};
}

inline BoundedValue operator-(const BoundedValue& a, const BoundedValue& b) {
  return {a.estimate - b.estimate, a.error_bound + b.error_bound};
}

inline BoundedValue operator*(const BoundedValue& a, const BoundedValue& b) {
  const double est = a.estimate * b.estimate;
  const double err = 2.0 * (std::abs(a.estimate) * b.error_bound + std::abs(b.estimate) * a.error_bound);
  return {est, err};
}

inline BoundedValue operator/(const BoundedValue& a, const BoundedValue& b) {
  const double den = std::abs(b.estimate);
  if (den <= b.error_bound)
    throw std::domain_error("BoundedValue: division by an interval containing zero");
  const double est = a.estimate / b.estimate;
  const double err = 2.0 * (a.error_bound + std::abs(est) * b.error_bound) / den;
  return {est, err};
}

inline BoundedValue log(const BoundedValue& a) {
  if (a.estimate <= a.error_bound)
    throw std::domain_error("BoundedValue: log of an interval touching zero");
  return {std::log(a.estimate), 2.0 * a.error_bound / a.estimate};
}

}  // namespace unitary
