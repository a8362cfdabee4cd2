#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "trapsim/rng.hpp"
#include "trapsim/tail.hpp"

// Poisson random measure with intensity mu(x,inf) = x^{-alpha} on (0,inf),
// realized through ranked marks gamma_k = Gamma_k^{-1/alpha} where Gamma_k
// are cumulative sums of i.i.d. mean-one exponentials, and the LePage
// representation gamma_{nk} = r_n^{-1} G^{-1}(Gamma_k / Gamma_{n+1}) of the
// ranked re-scaled landscape built from the same exponential stream.

namespace trapsim {

struct PRMPoints {
  std::vector<double> gamma;  // strictly decreasing marks
  double alpha = 0.5;
  std::size_t K = 0;
  double tail_bound = 0.0;  // analytic estimate of sum_{k>K} gamma_k
  SeedRecord seed;
};

// Analytic estimate of the residual sum_{k>K} gamma_k^e using Gamma_k ~ k,
// valid for e > alpha: integral K^{-(e-alpha)/alpha} * alpha/(e-alpha).
inline double prm_residual_power_sum(double alpha, std::size_t K, double e) {
  if (!(e > alpha)) return std::numeric_limits<double>::infinity();
  return alpha / (e - alpha) *
         std::pow(static_cast<double>(K), -(e - alpha) / alpha);
}

// Smallest K whose residual bound on sum_{k>K} gamma_k is below rel_tol
// relative to the retained mass (estimated with Gamma_k ~ k).
inline std::size_t prm_truncation(double alpha, double rel_tol = 1e-6,
                                  std::size_t cap = (1u << 23)) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("prm_truncation: alpha in (0,1) required");
  double partial = 0.0;
  std::size_t K = 1;
  for (; K <= cap; K *= 2) {
    for (std::size_t k = partial == 0.0 ? 1 : K / 2 + 1; k <= K; ++k)
      partial += std::pow(static_cast<double>(k), -1.0 / alpha);
    if (prm_residual_power_sum(alpha, K, 1.0) <= rel_tol * partial) break;
  }
  return std::min(K, cap);
}

// Builds the marks from explicit exponential spacings (tests inject
// deterministic draws here).
inline PRMPoints prm_from_exponentials(std::span<const double> spacings,
                                       double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("prm_points: alpha in (0,1) required");
  if (spacings.empty())
    throw std::invalid_argument("prm_points: K >= 1 required");
  PRMPoints p;
  p.alpha = alpha;
  p.K = spacings.size();
  p.gamma.resize(p.K);
  double gamma_sum = 0.0;
  for (std::size_t k = 0; k < p.K; ++k) {
    if (!(spacings[k] > 0.0))
      throw std::invalid_argument("prm_points: spacings must be positive");
    gamma_sum += spacings[k];
    p.gamma[k] = std::pow(gamma_sum, -1.0 / alpha);
  }
  p.tail_bound = prm_residual_power_sum(alpha, p.K, 1.0);
  return p;
}

inline PRMPoints prm_points(double alpha, std::size_t K, SeedRecord seed) {
  Rng rng(seed);
  std::vector<double> spacings(K);
  for (double& e : spacings) e = rng.exponential();
  PRMPoints p = prm_from_exponentials(spacings, alpha);
  p.seed = seed;
  return p;
}

// Normalized ranked marks w_k = gamma_k / sum_l gamma_l over the truncation;
// the Poisson-Dirichlet(alpha) weights in the K -> inf limit.
inline std::vector<double> poisson_dirichlet_weights(const PRMPoints& prm) {
  if (prm.gamma.empty())
    throw std::invalid_argument("poisson_dirichlet_weights: no marks");
  if (!(prm.alpha > 0.0 && prm.alpha < 1.0))
    throw std::invalid_argument(
        "poisson_dirichlet_weights: normalizer diverges for alpha >= 1");
  double total = 0.0;
  for (double g : prm.gamma) total += g;
  std::vector<double> w(prm.gamma.size());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = prm.gamma[k] / total;
  return w;
}

struct LepageResult {
  std::vector<double> gamma_n;  // decreasing, length n
  PRMPoints prm;                // marks from the same exponential stream
};

// gamma_{nk} = r_n^{-1} G^{-1}(Gamma_k / Gamma_{n+1}) from n+1 spacings.
inline LepageResult lepage_from_exponentials(std::span<const double> spacings,
                                             const TailSpec& tail,
                                             double r_n) {
  if (spacings.size() < 2)
    throw std::invalid_argument("lepage_landscape: needs n >= 1 (n+1 draws)");
  if (!(r_n > 0.0))
    throw std::invalid_argument("lepage_landscape: r_n > 0 required");
  const std::size_t n = spacings.size() - 1;
  LepageResult out;
  out.prm = prm_from_exponentials(spacings.first(n), tail.alpha());
  std::vector<double> big_gamma(n + 1);
  double acc = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    acc += spacings[k];
    big_gamma[k] = acc;
  }
  out.gamma_n.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    out.gamma_n[k] = tail.quantile(big_gamma[k] / big_gamma[n]) / r_n;
  return out;
}

inline LepageResult lepage_landscape(std::size_t n, const TailSpec& tail,
                                     double r_n, SeedRecord seed) {
  Rng rng(seed);
  std::vector<double> spacings(n + 1);
  for (double& e : spacings) e = rng.exponential();
  LepageResult out = lepage_from_exponentials(spacings, tail, r_n);
  out.prm.seed = seed;
  return out;
}

}  // namespace trapsim
