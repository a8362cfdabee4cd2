#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "trapsim/quadrature.hpp"

// Generalized arcsine distribution function
//   Asl_a(u) = (sin(a pi)/pi) int_0^u (1-x)^{-a} x^{a-1} dx,  0 <= u <= 1.
// Both endpoint singularities are removed by substitution before the
// adaptive quadrature sees the integrand, giving absolute error <= 1e-10
// over the whole parameter range.

namespace trapsim {

inline double asl_cdf(double alpha_index, double u) {
  if (!(alpha_index > 0.0 && alpha_index < 1.0))
    throw std::invalid_argument("asl_cdf: index in (0,1) required");
  if (!(u >= 0.0 && u <= 1.0))
    throw std::invalid_argument("asl_cdf: u in [0,1] required");
  if (u == 0.0) return 0.0;

  const double a = alpha_index;
  const double mid = std::min(u, 0.5);

  // x = y^{1/a} flattens the x^{a-1} singularity at 0 exactly.
  auto lower = [a](double y) {
    const double x = std::pow(y, 1.0 / a);
    return std::pow(1.0 - x, -a);
  };
  double integral =
      integrate(lower, 0.0, std::pow(mid, a), 1e-13, 1e-12) / a;

  if (u > 0.5) {
    // z = (1-x)^{1-a} flattens the (1-x)^{-a} singularity at 1.
    auto upper = [a](double z) {
      const double x = 1.0 - std::pow(z, 1.0 / (1.0 - a));
      return std::pow(x, a - 1.0);
    };
    const double z_lo = std::pow(1.0 - u, 1.0 - a);
    const double z_hi = std::pow(0.5, 1.0 - a);
    integral += integrate(upper, z_lo, z_hi, 1e-13, 1e-12) / (1.0 - a);
  }

  constexpr double pi = std::numbers::pi;
  const double value = std::sin(a * pi) / pi * integral;
  return value < 0.0 ? 0.0 : (value > 1.0 ? 1.0 : value);
}

// Inverse of asl_cdf by bisection; used for inverse-transform sampling.
inline double asl_quantile(double alpha_index, double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("asl_quantile: p in [0,1] required");
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
    const double mid = 0.5 * (lo + hi);
    (asl_cdf(alpha_index, mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace trapsim
