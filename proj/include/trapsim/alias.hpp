#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "trapsim/rng.hpp"

// Walker alias table for O(1) categorical sampling. Construction is the
// standard two-queue (Vose) split in O(n); sampling consumes exactly one
// uniform, split into bucket index and coin.

namespace trapsim {

class AliasTable {
 public:
  AliasTable() = default;

  explicit AliasTable(std::span<const double> weights) {
    const std::size_t n = weights.size();
    if (n == 0) throw std::invalid_argument("AliasTable: empty weights");
    double total = 0.0;
    for (double w : weights) {
      if (!(w >= 0.0)) throw std::invalid_argument("AliasTable: negative weight");
      total += w;
    }
    if (!(total > 0.0)) throw std::invalid_argument("AliasTable: zero mass");

    prob_.resize(n);
    alias_.resize(n);
    std::vector<std::size_t> small, large;
    small.reserve(n);
    large.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      prob_[i] = weights[i] * static_cast<double>(n) / total;
      (prob_[i] < 1.0 ? small : large).push_back(i);
    }
    while (!small.empty() && !large.empty()) {
      const std::size_t s = small.back();
      const std::size_t l = large.back();
      small.pop_back();
      large.pop_back();
      alias_[s] = l;
      prob_[l] -= 1.0 - prob_[s];
      (prob_[l] < 1.0 ? small : large).push_back(l);
    }
    // leftovers are within rounding of 1
    for (std::size_t i : small) prob_[i] = 1.0;
    for (std::size_t i : large) prob_[i] = 1.0;
    for (std::size_t i = 0; i < n; ++i)
      if (prob_[i] >= 1.0) alias_[i] = i;
  }

  std::size_t size() const { return prob_.size(); }

  // u must be uniform on [0,1).
  std::size_t sample(double u) const {
    const double scaled = u * static_cast<double>(prob_.size());
    auto i = static_cast<std::size_t>(scaled);
    if (i >= prob_.size()) i = prob_.size() - 1;
    const double coin = scaled - static_cast<double>(i);
    return coin < prob_[i] ? i : alias_[i];
  }

  std::size_t sample(Rng& rng) const { return sample(rng.uniform01()); }

 private:
  std::vector<double> prob_;
  std::vector<std::size_t> alias_;
};

}  // namespace trapsim
