#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "trapsim/chain.hpp"
#include "trapsim/rng.hpp"

// Monte Carlo estimation of the time-time correlation function
//   C_n(t,s) = P( range of the re-scaled clock avoids the open (t, t+s) ).
// By monotonicity of the clock this is a first-passage event: simulate
// until the first mark strictly above t and succeed iff it is >= t+s.
// Only the running clock value is kept, O(1) memory per replica.
// Boundary ties (a mark equal to t or t+s) count as avoiding the open
// interval.

namespace trapsim {

struct CorrelationEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;  // sqrt(mean(1-mean)/M)
  std::size_t replicas = 0;
  std::uint64_t landscape_id = 0;
};

inline double binomial_stderr(double p, std::size_t m) {
  return m == 0 ? 0.0 : std::sqrt(p * (1.0 - p) / static_cast<double>(m));
}

// First value of the clock range strictly exceeding t, for one replica.
inline double first_passage_value(const ChainModel& chain,
                                  const ResolvedInitial& initial, double t,
                                  Rng& rng) {
  std::size_t x = initial.sample(rng);
  double clock = chain.mean_inc[x] * rng.exponential();
  while (clock <= t) {
    x = chain.sampler.sample(rng);
    clock += chain.mean_inc[x] * rng.exponential();
  }
  return clock;
}

namespace detail {

// Splits [0,m) into chunks and runs fn(first, last) on each; used for
// replica-level parallelism. Counters are merged per replica index, so
// results do not depend on the thread count.
template <typename Fn>
void for_each_chunk(std::size_t m, unsigned threads, Fn fn) {
  if (threads <= 1 || m < 2 * threads) {
    fn(std::size_t{0}, m);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (m + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    const std::size_t first = w * chunk;
    if (first >= m) break;
    const std::size_t last = std::min(m, first + chunk);
    pool.emplace_back([=] { fn(first, last); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace detail

// Estimates C_n(t, s) for every s in `s_values` at a common t, sharing the
// first-passage value (hence the random numbers) across the sweep.
inline std::vector<CorrelationEstimate> correlation_sweep(
    const ChainModel& chain, const InitialDist& dist, double t,
    std::span<const double> s_values, std::size_t replicas,
    SeedRecord dynamics_seed, unsigned threads = 1) {
  if (replicas < 1)
    throw std::invalid_argument("correlation_fn: M >= 1 required");
  if (!(t >= 0.0))
    throw std::invalid_argument("correlation_fn: t >= 0 required");
  for (double s : s_values)
    if (!(s >= 0.0))
      throw std::invalid_argument("correlation_fn: s >= 0 required");

  ResolvedInitial initial(chain, dist);
  std::vector<std::vector<std::size_t>> hits(
      std::max<unsigned>(threads, 1), std::vector<std::size_t>(s_values.size(), 0));

  detail::for_each_chunk(replicas, threads, [&](std::size_t first, std::size_t last) {
    // chunk index recovered from the range start; chunks never interleave
    const std::size_t chunk = (replicas + std::max<unsigned>(threads, 1) - 1) /
                              std::max<unsigned>(threads, 1);
    auto& local = hits[threads <= 1 ? 0 : first / chunk];
    for (std::size_t m = first; m < last; ++m) {
      Rng rng{child_seed(dynamics_seed, streams::dynamics, m)};
      const double passage = first_passage_value(chain, initial, t, rng);
      for (std::size_t j = 0; j < s_values.size(); ++j)
        if (passage >= t + s_values[j]) ++local[j];
    }
  });

  std::vector<CorrelationEstimate> out(s_values.size());
  for (std::size_t j = 0; j < s_values.size(); ++j) {
    std::size_t total = 0;
    for (const auto& local : hits) total += local[j];
    out[j].replicas = replicas;
    out[j].mean = static_cast<double>(total) / static_cast<double>(replicas);
    out[j].stderr_ = binomial_stderr(out[j].mean, replicas);
    out[j].landscape_id = chain.scape->seed.replica;
  }
  return out;
}

inline CorrelationEstimate correlation_fn(const ChainModel& chain,
                                          const InitialDist& dist, double t,
                                          double s, std::size_t replicas,
                                          SeedRecord dynamics_seed,
                                          unsigned threads = 1) {
  const double sv[1] = {s};
  return correlation_sweep(chain, dist, t, sv, replicas, dynamics_seed,
                           threads)[0];
}

}  // namespace trapsim
