#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

// Kolmogorov-Smirnov machinery and the log-log regression used for tail
// index estimation.

namespace trapsim {

// Asymptotic Kolmogorov distribution Q(lambda) = 2 sum (-1)^{k-1} e^{-2 k^2
// lambda^2}; the returned value is the p-value of the statistic.
inline double kolmogorov_q(double lambda) {
  if (lambda < 1e-10) return 1.0;
  double sum = 0.0, sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-16 * std::fabs(sum)) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

// sup_x |F_emp(x) - F(x)| over a sorted sample, checking both one-sided
// gaps at every sample point.
inline double ks_distance(std::span<const double> sorted,
                          const std::function<double(double)>& cdf) {
  const std::size_t m = sorted.size();
  if (m == 0) throw std::invalid_argument("ks_distance: empty sample");
  if (!std::is_sorted(sorted.begin(), sorted.end()))
    throw std::invalid_argument("ks_distance: sample must be sorted");
  double d = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double f = cdf(sorted[i]);
    const double lo = static_cast<double>(i) / static_cast<double>(m);
    const double hi = static_cast<double>(i + 1) / static_cast<double>(m);
    d = std::max({d, std::fabs(f - lo), std::fabs(hi - f)});
  }
  return d;
}

// One-sample p-value with the usual finite-m effective factor.
inline double ks_pvalue(double d, std::size_t m) {
  const double sm = std::sqrt(static_cast<double>(m));
  return kolmogorov_q((sm + 0.12 + 0.11 / sm) * d);
}

// Two-sample statistic and p-value (samples must be sorted).
inline double ks_two_sample_distance(std::span<const double> a,
                                     std::span<const double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("ks_two_sample: empty sample");
  if (!std::is_sorted(a.begin(), a.end()) ||
      !std::is_sorted(b.begin(), b.end()))
    throw std::invalid_argument("ks_two_sample: samples must be sorted");
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    const double fa = static_cast<double>(i) / static_cast<double>(a.size());
    const double fb = static_cast<double>(j) / static_cast<double>(b.size());
    d = std::max(d, std::fabs(fa - fb));
  }
  return d;
}

inline double ks_two_sample_pvalue(std::span<const double> a,
                                   std::span<const double> b) {
  const double d = ks_two_sample_distance(a, b);
  const double ne = static_cast<double>(a.size()) *
                    static_cast<double>(b.size()) /
                    static_cast<double>(a.size() + b.size());
  const double sm = std::sqrt(ne);
  return kolmogorov_q((sm + 0.12 + 0.11 / sm) * d);
}

struct PowerFit {
  double slope = 0.0;
  double intercept = 0.0;  // log-level at u = 1
  double r2 = 0.0;
};

// Least-squares fit of log f against log u; slope estimates the regular
// variation index.
inline PowerFit rv_index_estimate(std::span<const double> u,
                                  std::span<const double> f) {
  if (u.size() != f.size() || u.size() < 3)
    throw std::invalid_argument("rv_index_estimate: needs >= 3 points");
  const std::size_t m = u.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (!(u[i] > 0.0 && f[i] > 0.0))
      throw std::invalid_argument("rv_index_estimate: values must be positive");
    const double x = std::log(u[i]);
    const double y = std::log(f[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  const double dm = static_cast<double>(m);
  const double vxx = sxx - sx * sx / dm;
  const double vxy = sxy - sx * sy / dm;
  const double vyy = syy - sy * sy / dm;
  PowerFit fit;
  fit.slope = vxy / vxx;
  fit.intercept = (sy - fit.slope * sx) / dm;
  fit.r2 = vyy == 0.0 ? 1.0 : (vxy * vxy) / (vxx * vyy);
  return fit;
}

}  // namespace trapsim
