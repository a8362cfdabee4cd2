#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "trapsim/alias.hpp"
#include "trapsim/arcsine.hpp"
#include "trapsim/clock.hpp"
#include "trapsim/correlation.hpp"
#include "trapsim/levy.hpp"
#include "trapsim/quadrature.hpp"
#include "trapsim/rng.hpp"

// Simulation of the limiting processes: truncated subordinators driven by a
// Poisson random measure dt x dnu, renewal processes for the probability
// kinds, the overshoot functional, and the limiting correlation function.

namespace trapsim {

struct LimitPath {
  std::vector<double> times;   // jump times (renewal: 1,2,3,...)
  std::vector<double> sizes;   // jump sizes xi_k
  std::vector<double> values;  // cumulative values
  double eps = 0.0;            // jump-size cutoff (subordinator only)
  double bias_bound = 0.0;     // T * int_0^eps x nu(dx)
  double horizon = 0.0;        // overshoot queries valid for t < horizon
  bool renewal = false;
};

namespace detail {

// Samples from the normalized restriction of nu to (eps, inf) by inverting
// the tail evaluator. Closed forms where available, bisection otherwise.
class RestrictedJumpSampler {
 public:
  RestrictedJumpSampler(const LevyTail& tail, double eps)
      : tail_(&tail), eps_(eps) {
    mass_ = tail.tail(eps > 0.0 ? eps : smallest_positive());
    if (!(mass_ > 0.0 && std::isfinite(mass_)))
      throw std::invalid_argument("subordinator: truncated mass not finite");
    switch (tail.kind()) {
      case LevyKind::stable:
      case LevyKind::int_minus:
        if (!(eps > 0.0))
          throw std::invalid_argument(
              "subordinator: stable kinds need eps > 0");
        break;
      case LevyKind::ext_minus:
      case LevyKind::ext_plus: {
        // component k retains mass ~ gamma_k^a e^{-eps gamma_k^{-(1-a)}}
        std::vector<double> w(tail.atoms().size());
        rates_.resize(w.size());
        for (std::size_t k = 0; k < w.size(); ++k) {
          rates_[k] = std::pow(tail.atoms()[k], -(1.0 - tail.a()));
          w[k] = std::pow(tail.atoms()[k], tail.a()) *
                 std::exp(-eps_ * rates_[k]);
        }
        components_ = AliasTable(w);
        break;
      }
      default:
        break;
    }
  }

  double mass() const { return mass_; }

  double sample(Rng& rng) const {
    switch (tail_->kind()) {
      case LevyKind::stable:
      case LevyKind::int_minus:
        // restricted Pareto tail: (u/eps)^{-alpha_bar}
        return eps_ *
               std::pow(rng.uniform_open01(), -1.0 / tail_->alpha_bar());
      case LevyKind::ext_minus:
      case LevyKind::ext_plus: {
        const std::size_t k = components_.sample(rng);
        return eps_ + rng.exponential() / rates_[k];
      }
      case LevyKind::tabulated: {
        // step tail: atoms sit at the table breakpoints
        const double v = rng.uniform_open01() * mass_;
        double u = eps_;
        for (std::size_t i = 0; i < 400; ++i) {
          // coarse expansion then bisection on the step function
          if (tail_->tail(u) <= v) break;
          u = u == 0.0 ? 1e-12 : u * 2.0;
        }
        double lo = eps_, hi = u;
        for (int i = 0; i < 80; ++i) {
          const double mid = 0.5 * (lo + hi);
          (tail_->tail(mid) > v ? lo : hi) = mid;
        }
        return hi;
      }
      default: {
        // continuous evaluator (cst_minus): numeric inversion
        const double v = rng.uniform_open01() * mass_;
        double hi = std::max(eps_, 1.0);
        while (tail_->tail(hi) > v) hi *= 2.0;
        double lo = eps_;
        for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
          const double mid = 0.5 * (lo + hi);
          (tail_->tail(mid) > v ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
      }
    }
  }

 private:
  static double smallest_positive() { return 1e-300; }

  const LevyTail* tail_;
  double eps_;
  double mass_ = 0.0;
  AliasTable components_;
  std::vector<double> rates_;
};

}  // namespace detail

// T * int_0^eps x nu(dx); closed form (kappa ab/(1-ab)) eps^{1-ab} T for the
// stable kinds, quadrature of nu(u,(eps,inf)) otherwise.
inline double small_jump_bias_bound(const LevyTail& tail, double T,
                                    double eps) {
  if (eps <= 0.0) return 0.0;
  const double kind_mass = tail.tail(eps);
  switch (tail.kind()) {
    case LevyKind::stable:
    case LevyKind::int_minus: {
      const double ab = tail.alpha_bar();
      return tail.tail(1.0) * ab / (1.0 - ab) * std::pow(eps, 1.0 - ab) * T;
    }
    default: {
      auto f = [&](double u) { return tail.tail(u) - kind_mass; };
      return T * integrate(f, 0.0, eps, 1e-14, 1e-9);
    }
  }
}

// Homogeneous Poisson jump times of rate nu(eps,inf) on [0,T]; i.i.d. sizes
// from the normalized restriction of nu above eps.
inline LimitPath simulate_subordinator(const LevyTail& tail, double T,
                                       double eps, Rng& rng) {
  if (!(T > 0.0))
    throw std::invalid_argument("simulate_subordinator: T > 0 required");
  detail::RestrictedJumpSampler jumps(tail, eps);
  LimitPath path;
  path.eps = eps;
  path.bias_bound = small_jump_bias_bound(tail, T, eps);
  double t = 0.0, value = 0.0;
  for (;;) {
    t += rng.exponential() / jumps.mass();
    if (t > T) break;
    const double xi = jumps.sample(rng);
    path.times.push_back(t);
    path.sizes.push_back(xi);
    value += xi;
    path.values.push_back(value);
  }
  path.horizon = value;
  return path;
}

// Inter-arrival sampler for the probability kinds. cst_minus draws the
// trap depth tau* from the tau^a-size-biased tail law and then an
// exponential of rate tau*^{-(1-a)}; ext_plus picks atom k with weight
// gamma_k^a and proceeds the same way.
class InterArrivalSampler {
 public:
  explicit InterArrivalSampler(const LevyTail& tail, const TailSpec* spec = nullptr)
      : tail_(tail) {
    if (!tail.is_probability() && tail.kind() != LevyKind::tabulated)
      throw std::invalid_argument(
          "simulate_renewal: inter-arrival law must be a probability "
          "distribution (cst_minus or ext_plus)");
    if (tail.kind() == LevyKind::tabulated &&
        std::fabs(tail.tail(0.0) - 1.0) > 1e-12)
      throw std::invalid_argument(
          "simulate_renewal: tabulated tail must have nu(0,inf) = 1");
    switch (tail.kind()) {
      case LevyKind::ext_plus: {
        std::vector<double> w(tail.atoms().size());
        rates_.resize(w.size());
        for (std::size_t k = 0; k < w.size(); ++k) {
          w[k] = std::pow(tail.atoms()[k], tail.a());
          rates_[k] = std::pow(tail.atoms()[k], -(1.0 - tail.a()));
        }
        atom_table_ = AliasTable(w);
        break;
      }
      case LevyKind::cst_minus: {
        if (spec == nullptr)
          throw std::invalid_argument(
              "simulate_renewal: cst_minus needs its TailSpec");
        spec_ = *spec;
        if (spec_.kind() == TailKind::quantile_table) build_size_biased_bins();
        break;
      }
      default:
        break;
    }
  }

  // One inter-arrival time.
  double sample(Rng& rng) const {
    switch (tail_.kind()) {
      case LevyKind::ext_plus: {
        const std::size_t k = atom_table_.sample(rng);
        return rng.exponential() / rates_[k];
      }
      case LevyKind::cst_minus: {
        const double tau = sample_size_biased(rng);
        return rng.exponential() * std::pow(tau, 1.0 - tail_.a());
      }
      default: {  // tabulated probability, step inversion
        detail::RestrictedJumpSampler s(tail_, 0.0);
        return s.sample(rng);
      }
    }
  }

  // The size-biased trap depth tau*; exposed for distribution tests.
  double sample_size_biased(Rng& rng) const {
    switch (spec_.kind()) {
      case TailKind::degenerate:
        return spec_.x_min();
      case TailKind::pareto:
        // tau^a-biased Pareto(alpha) is Pareto(alpha - a)
        return spec_.x_min() *
               std::pow(rng.uniform_open01(),
                        -1.0 / (spec_.alpha() - tail_.a()));
      default: {
        const std::size_t bin = bins_.sample(rng);
        return bin_tau_[bin];
      }
    }
  }

 private:
  void build_size_biased_bins() {
    constexpr std::size_t kBins = 1 << 14;
    std::vector<double> mass(kBins);
    bin_tau_.resize(kBins);
    for (std::size_t i = 0; i < kBins; ++i) {
      const double w = (static_cast<double>(i) + 0.5) / kBins;
      bin_tau_[i] = spec_.quantile(w);
      mass[i] = std::pow(bin_tau_[i], tail_.a());
    }
    bins_ = AliasTable(mass);
  }

  LevyTail tail_;
  TailSpec spec_ = TailSpec::degenerate(1.0);
  AliasTable atom_table_;
  std::vector<double> rates_;
  AliasTable bins_;
  std::vector<double> bin_tau_;
};

inline LimitPath simulate_renewal(const InterArrivalSampler& sampler,
                                  std::size_t k_max, Rng& rng) {
  if (k_max < 1)
    throw std::invalid_argument("simulate_renewal: k_max >= 1 required");
  LimitPath path;
  path.renewal = true;
  double value = 0.0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    const double xi = sampler.sample(rng);
    path.times.push_back(static_cast<double>(k));
    path.sizes.push_back(xi);
    value += xi;
    path.values.push_back(value);
  }
  path.horizon = value;
  return path;
}

// Overshoot of an increasing range beyond level t: D_t is the first range
// value strictly exceeding t, theta_t = D_t - t.
struct Overshoot {
  double D = 0.0;
  double theta = 0.0;
};

inline Overshoot overshoot(std::span<const double> values, double horizon,
                           double t) {
  if (!(horizon > t))
    throw std::runtime_error("overshoot: path incomplete beyond t");
  auto it = std::upper_bound(values.begin(), values.end(), t);
  if (it == values.end())
    throw std::runtime_error("overshoot: path incomplete beyond t");
  return {*it, *it - t};
}

inline Overshoot overshoot(const LimitPath& path, double t) {
  return overshoot(std::span<const double>(path.values), path.horizon, t);
}

inline Overshoot overshoot(const ClockPath& path, double t) {
  return overshoot(std::span<const double>(path.values), path.horizon, t);
}

// Optional independent delay applied before the limit process.
class DelaySpec {
 public:
  static DelaySpec none() { return DelaySpec{}; }

  // sigma^sta: survival C^sta(v), sampled exactly as an exponential mixture
  // with Poisson-Dirichlet component weights.
  static DelaySpec stationary(std::span<const double> atoms, double a) {
    DelaySpec d;
    std::vector<double> rates(atoms.size());
    std::vector<double> w(atoms.begin(), atoms.end());
    for (std::size_t k = 0; k < atoms.size(); ++k)
      rates[k] = std::pow(atoms[k], -(1.0 - a));
    d.table_ = AliasTable(w);
    d.rates_ = std::move(rates);
    d.kind_ = Kind::stationary;
    return d;
  }

  static DelaySpec custom(std::function<double(Rng&)> sampler) {
    DelaySpec d;
    d.custom_ = std::move(sampler);
    d.kind_ = Kind::custom;
    return d;
  }

  bool empty() const { return kind_ == Kind::none; }

  double sample(Rng& rng) const {
    switch (kind_) {
      case Kind::none: return 0.0;
      case Kind::stationary: {
        const std::size_t k = table_.sample(rng);
        return rng.exponential() / rates_[k];
      }
      case Kind::custom: return custom_(rng);
    }
    return 0.0;
  }

 private:
  enum class Kind { none, stationary, custom };
  Kind kind_ = Kind::none;
  AliasTable table_;
  std::vector<double> rates_;
  std::function<double(Rng&)> custom_;
};

// P(theta_t >= s) for the (optionally delayed) limit process. Stable kinds
// without delay take the exact arcsine fast path. The simulated route only
// needs the range values, so jumps are accumulated in i.i.d. order without
// storing paths; jump truncation for the sigma-finite kinds defaults to
// eps = 1e-4 * min(t, s).
inline CorrelationEstimate limit_correlation(const LevyTail& tail,
                                             const DelaySpec& delay, double t,
                                             double s, std::size_t replicas,
                                             SeedRecord seed,
                                             unsigned threads = 1,
                                             double eps = -1.0,
                                             const TailSpec* spec = nullptr) {
  if (!(t >= 0.0 && s >= 0.0))
    throw std::invalid_argument("limit_correlation: 0 <= t < t+s required");
  CorrelationEstimate est;
  est.replicas = replicas;
  if (s == 0.0) {
    est.mean = 1.0;
    return est;
  }

  const bool stable_kind =
      tail.kind() == LevyKind::stable || tail.kind() == LevyKind::int_minus;
  if (stable_kind && delay.empty()) {
    est.mean = t == 0.0 ? 0.0 : asl_cdf(tail.alpha_bar(), t / (t + s));
    return est;
  }

  if (replicas < 1)
    throw std::invalid_argument("limit_correlation: M >= 1 required");

  // renewal kinds sample the full law; sigma-finite kinds are truncated
  const bool probability = tail.is_probability();
  if (eps < 0.0) eps = probability ? 0.0 : 1e-4 * std::min(t, s);

  std::optional<InterArrivalSampler> renewal_sampler;
  std::optional<detail::RestrictedJumpSampler> jump_sampler;
  if (probability)
    renewal_sampler.emplace(tail, spec);
  else
    jump_sampler.emplace(tail, eps);

  std::vector<std::size_t> hits(std::max<unsigned>(threads, 1), 0);
  auto run = [&](std::size_t first, std::size_t last) {
    const std::size_t chunk =
        (replicas + std::max<unsigned>(threads, 1) - 1) /
        std::max<unsigned>(threads, 1);
    std::size_t& local = hits[threads <= 1 ? 0 : first / chunk];
    for (std::size_t m = first; m < last; ++m) {
      Rng rng{child_seed(seed, streams::limit_path, m)};
      Rng delay_rng{child_seed(seed, streams::delay, m)};
      double value = delay.empty() ? 0.0 : delay.sample(delay_rng);
      while (value <= t)
        value += probability ? renewal_sampler->sample(rng)
                             : jump_sampler->sample(rng);
      if (value >= t + s) ++local;
    }
  };
  detail::for_each_chunk(replicas, threads, run);

  std::size_t total = 0;
  for (std::size_t h : hits) total += h;
  est.mean = static_cast<double>(total) / static_cast<double>(replicas);
  est.stderr_ = binomial_stderr(est.mean, replicas);
  return est;
}

}  // namespace trapsim
