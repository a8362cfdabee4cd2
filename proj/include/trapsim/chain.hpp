#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "trapsim/alias.hpp"
#include "trapsim/landscape.hpp"
#include "trapsim/scales.hpp"

// The asymmetric trap chain on the complete graph (with a loop at every
// vertex). Holding rates lambda(x) = tau(x)^{-(1-a)}; the jump law is
// pi(x) ~ tau(x)^a independently of the current state, so the jump chain
// is an i.i.d. sequence after the initial draw.

namespace trapsim {

struct ChainModel {
  std::shared_ptr<const Landscape> scape;
  double a = 0.0;
  ScaleSpec scale;
  std::vector<double> lambda;    // tau^{-(1-a)}
  std::vector<double> pi;        // tau^a / sum tau^a
  std::vector<double> mean_inc;  // (tau/r_n)^{1-a} = (c_n lambda)^{-1}
  AliasTable sampler;            // alias table over pi

  std::size_t n() const { return scape ? scape->n : 0; }
};

inline ChainModel build_chain(std::shared_ptr<const Landscape> scape, double a,
                              const ScaleSpec& scale) {
  if (!scape || scape->tau.empty())
    throw std::invalid_argument("build_chain: empty landscape");
  if (!(a >= 0.0 && a < 1.0))
    throw std::invalid_argument("build_chain: a in [0,1) required");
  ChainModel chain;
  chain.scape = std::move(scape);
  chain.a = a;
  chain.scale = scale;
  const auto& tau = chain.scape->tau;
  const std::size_t n = tau.size();
  chain.lambda.resize(n);
  chain.pi.resize(n);
  chain.mean_inc.resize(n);
  double pi_total = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    chain.lambda[x] = std::pow(tau[x], -(1.0 - a));
    chain.pi[x] = a == 0.0 ? 1.0 : std::pow(tau[x], a);
    chain.mean_inc[x] = std::pow(tau[x] / scale.r_n, 1.0 - a);
    pi_total += chain.pi[x];
  }
  for (double& p : chain.pi) p /= pi_total;
  chain.sampler = AliasTable(chain.pi);
  return chain;
}

// Initial distributions for the jump chain.
enum class InitialPreset { pi_n, gibbs, uniform, point_mass, custom };

struct InitialDist {
  InitialPreset preset = InitialPreset::pi_n;
  std::size_t point = 0;
  std::vector<double> weights;  // custom only

  static InitialDist pi_n() { return {}; }
  static InitialDist gibbs() { return {InitialPreset::gibbs, 0, {}}; }
  static InitialDist uniform() { return {InitialPreset::uniform, 0, {}}; }
  static InitialDist point_mass(std::size_t x) {
    return {InitialPreset::point_mass, x, {}};
  }
  static InitialDist custom(std::vector<double> w) {
    return {InitialPreset::custom, 0, std::move(w)};
  }
};

// An initial distribution resolved against a chain: exposes per-site
// weights and one-draw sampling.
class ResolvedInitial {
 public:
  ResolvedInitial(const ChainModel& chain, const InitialDist& dist)
      : chain_(&chain), preset_(dist.preset), point_(dist.point) {
    const std::size_t n = chain.n();
    switch (preset_) {
      case InitialPreset::pi_n:
        break;  // reuse chain.pi / chain.sampler
      case InitialPreset::uniform:
        break;
      case InitialPreset::point_mass:
        if (point_ >= n)
          throw std::invalid_argument("initial: point mass out of range");
        break;
      case InitialPreset::gibbs:
        weights_ = gibbs_measure(*chain.scape, 1.0);
        table_ = AliasTable(weights_);
        break;
      case InitialPreset::custom: {
        if (dist.weights.size() != n)
          throw std::invalid_argument("initial: weight vector size mismatch");
        weights_ = dist.weights;
        double total = 0.0;
        for (double w : weights_) total += w;
        if (!(std::fabs(total - 1.0) < 1e-9))
          throw std::invalid_argument("initial: weights must sum to 1");
        table_ = AliasTable(weights_);
        break;
      }
    }
  }

  double weight(std::size_t x) const {
    switch (preset_) {
      case InitialPreset::pi_n: return chain_->pi[x];
      case InitialPreset::uniform:
        return 1.0 / static_cast<double>(chain_->n());
      case InitialPreset::point_mass: return x == point_ ? 1.0 : 0.0;
      default: return weights_[x];
    }
  }

  std::size_t sample(Rng& rng) const {
    switch (preset_) {
      case InitialPreset::pi_n: return chain_->sampler.sample(rng);
      case InitialPreset::uniform: {
        auto x = static_cast<std::size_t>(rng.uniform01() *
                                          static_cast<double>(chain_->n()));
        return x < chain_->n() ? x : chain_->n() - 1;
      }
      case InitialPreset::point_mass: return point_;
      default: return table_.sample(rng);
    }
  }

 private:
  const ChainModel* chain_;
  InitialPreset preset_;
  std::size_t point_;
  std::vector<double> weights_;
  AliasTable table_;
};

// nu_n(u,inf) = a_n sum_x pi(x) exp(-u (r_n/tau(x))^{1-a}), evaluated
// exactly; the chain-independent quantity the convergence conditions
// reduce to on the complete graph.
inline double clock_increment_tail(const ChainModel& chain, double u) {
  if (!(u >= 0.0))
    throw std::invalid_argument("clock_increment_tail: u >= 0 required");
  double acc = 0.0;
  for (std::size_t x = 0; x < chain.n(); ++x)
    acc += chain.pi[x] * std::exp(-u / chain.mean_inc[x]);
  return chain.scale.a_n * acc;
}

// sum_x mu(x) exp(-v c_n lambda(x)) = P(sigma_n >= v), the survival of the
// re-scaled initial increment.
inline double initial_tail(const ChainModel& chain, const InitialDist& dist,
                           double v) {
  if (!(v >= 0.0))
    throw std::invalid_argument("initial_tail: v >= 0 required");
  ResolvedInitial init(chain, dist);
  double acc = 0.0;
  for (std::size_t x = 0; x < chain.n(); ++x)
    acc += init.weight(x) * std::exp(-v / chain.mean_inc[x]);
  return acc;
}

}  // namespace trapsim
