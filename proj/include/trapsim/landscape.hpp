#pragma once

#include <cstddef>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "trapsim/rng.hpp"
#include "trapsim/tail.hpp"

// Sampled random landscapes: n i.i.d. trap depths drawn from a TailSpec by
// inverse transform, tau = G^{-1}(U).

namespace trapsim {

struct Landscape {
  std::size_t n = 0;
  std::vector<double> tau;
  TailSpec tail = TailSpec::pareto(0.5);
  SeedRecord seed;
};

inline Landscape sample_landscape(std::size_t n, const TailSpec& tail,
                                  SeedRecord seed) {
  if (n < 1) throw std::invalid_argument("sample_landscape: n >= 1 required");
  Landscape scape;
  scape.n = n;
  scape.tail = tail;
  scape.seed = seed;
  scape.tau.resize(n);
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i)
    scape.tau[i] = tail.quantile(rng.uniform_open01());
  return scape;
}

// Normalized weights tau(x)^exponent / sum_y tau(y)^exponent. Exponent 1
// gives the Gibbs measure, exponent a the jump law pi_n.
inline std::vector<double> gibbs_measure(const Landscape& scape,
                                         double exponent) {
  if (scape.tau.empty())
    throw std::invalid_argument("gibbs_measure: empty landscape");
  if (exponent < 0.0)
    throw std::invalid_argument("gibbs_measure: exponent must be >= 0");
  std::vector<double> w(scape.tau.size());
  double total = 0.0;
  for (std::size_t i = 0; i < scape.tau.size(); ++i) {
    w[i] = exponent == 0.0 ? 1.0 : std::pow(scape.tau[i], exponent);
    total += w[i];
  }
  for (double& v : w) v /= total;
  return w;
}

}  // namespace trapsim
