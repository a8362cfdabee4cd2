#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "trapsim/chain.hpp"
#include "trapsim/rng.hpp"

// Clock-process simulation. The re-scaled clock marks are
//   c_n^{-1} S~_n(i) = sum_{j<=i} (tau(J_j)/r_n)^{1-a} e_j,
// with J_0 from the initial distribution and J_i ~ pi_n i.i.d. afterwards
// (complete-graph simplification). Mark 0 is the initial increment sigma_n.

namespace trapsim {

struct ClockPath {
  std::vector<double> values;   // strictly increasing re-scaled marks
  bool includes_initial = true; // index 0 carries sigma_n
  double horizon = 0.0;         // range complete for queries t < horizon
};

struct StopRule {
  double t_max = std::numeric_limits<double>::infinity();
  std::size_t k_max = std::numeric_limits<std::size_t>::max();

  static StopRule at_time(double t) { return {t, std::numeric_limits<std::size_t>::max()}; }
  static StopRule at_steps(std::size_t k) {
    return {std::numeric_limits<double>::infinity(), k};
  }
};

inline ClockPath simulate_clock(const ChainModel& chain,
                                const ResolvedInitial& initial, StopRule stop,
                                Rng& rng) {
  if (stop.t_max == std::numeric_limits<double>::infinity() &&
      stop.k_max == std::numeric_limits<std::size_t>::max())
    throw std::invalid_argument("simulate_clock: unbounded stop rule");
  ClockPath path;
  double clock = 0.0;
  std::size_t x = initial.sample(rng);
  for (std::size_t step = 0;; ++step) {
    clock += chain.mean_inc[x] * rng.exponential();
    path.values.push_back(clock);
    if (clock >= stop.t_max || step + 1 >= stop.k_max) break;
    x = chain.sampler.sample(rng);
  }
  path.horizon =
      stop.t_max < std::numeric_limits<double>::infinity() &&
              path.values.back() >= stop.t_max
          ? stop.t_max
          : path.values.back();
  return path;
}

}  // namespace trapsim
