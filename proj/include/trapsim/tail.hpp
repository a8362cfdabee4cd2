#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "trapsim/quadrature.hpp"

// Trap-depth tail laws G(u) = P(tau > u) together with the generalized
// inverse G^{-1}(p) = inf{y : G(y) <= p} and fractional moments E tau^a.
//
// The default landscape law is pure Pareto, G(u) = (u/x_min)^{-alpha} for
// u >= x_min, which keeps quantiles, moments and the Frechet limit in
// closed form. A quantile-table kind supports experiments with slowly
// varying corrections.

namespace trapsim {

enum class TailKind { pareto, degenerate, quantile_table };

class TailSpec {
 public:
  static TailSpec pareto(double alpha, double x_min = 1.0) {
    if (!(alpha > 0.0 && alpha < 1.0))
      throw std::invalid_argument("TailSpec: pareto needs alpha in (0,1)");
    if (!(x_min > 0.0))
      throw std::invalid_argument("TailSpec: pareto needs x_min > 0");
    TailSpec t;
    t.kind_ = TailKind::pareto;
    t.alpha_ = alpha;
    t.x_min_ = x_min;
    return t;
  }

  static TailSpec degenerate(double value) {
    if (!(value > 0.0))
      throw std::invalid_argument("TailSpec: degenerate needs value > 0");
    TailSpec t;
    t.kind_ = TailKind::degenerate;
    t.x_min_ = value;
    return t;
  }

  // Table of (p_i, q_i) with q_i = G^{-1}(p_i); p strictly decreasing in i,
  // q strictly increasing. Interpolated log-log between knots; beyond the
  // last knot the law continues as a pure power with index alpha_tail.
  static TailSpec quantile_table(std::vector<std::pair<double, double>> knots,
                                 double alpha_tail) {
    if (knots.size() < 2)
      throw std::invalid_argument("TailSpec: table needs >= 2 knots");
    if (!(alpha_tail > 0.0 && alpha_tail < 1.0))
      throw std::invalid_argument("TailSpec: table needs alpha in (0,1)");
    for (std::size_t i = 0; i < knots.size(); ++i) {
      if (!(knots[i].first > 0.0 && knots[i].first <= 1.0) ||
          !(knots[i].second > 0.0))
        throw std::invalid_argument("TailSpec: table knots out of range");
      if (i > 0 && (knots[i].first >= knots[i - 1].first ||
                    knots[i].second <= knots[i - 1].second))
        throw std::invalid_argument("TailSpec: table knots not monotone");
    }
    if (knots.front().first != 1.0)
      throw std::invalid_argument("TailSpec: first knot must have p = 1");
    TailSpec t;
    t.kind_ = TailKind::quantile_table;
    t.alpha_ = alpha_tail;
    t.x_min_ = knots.front().second;
    t.knots_ = std::move(knots);
    return t;
  }

  TailKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double x_min() const { return x_min_; }

  // G(u) = P(tau > u); non-increasing, right-continuous, G(x_min) = 1.
  double survival(double u) const {
    switch (kind_) {
      case TailKind::pareto:
        return u <= x_min_ ? 1.0 : std::pow(u / x_min_, -alpha_);
      case TailKind::degenerate:
        return u < x_min_ ? 1.0 : 0.0;
      case TailKind::quantile_table: {
        if (u <= knots_.front().second) return 1.0;
        if (u >= knots_.back().second) {
          // power-law continuation matched at the last knot
          const auto& [pk, qk] = knots_.back();
          return pk * std::pow(u / qk, -alpha_);
        }
        auto it = std::upper_bound(
            knots_.begin(), knots_.end(), u,
            [](double v, const auto& kn) { return v < kn.second; });
        const auto& [p1, q1] = *it;
        const auto& [p0, q0] = *(it - 1);
        const double w = std::log(u / q0) / std::log(q1 / q0);
        return std::exp(std::log(p0) + w * std::log(p1 / p0));
      }
    }
    return 0.0;
  }

  // Generalized inverse, G^{-1}(p) = inf{y >= 0 : G(y) <= p}, p in (0,1].
  double quantile(double p) const {
    if (!(p > 0.0 && p <= 1.0))
      throw std::invalid_argument("TailSpec: quantile needs p in (0,1]");
    switch (kind_) {
      case TailKind::pareto:
        return x_min_ * std::pow(p, -1.0 / alpha_);
      case TailKind::degenerate:
        return x_min_;
      case TailKind::quantile_table: {
        if (p >= knots_.front().first) return knots_.front().second;
        if (p <= knots_.back().first) {
          const auto& [pk, qk] = knots_.back();
          return qk * std::pow(p / pk, -1.0 / alpha_);
        }
        auto it = std::lower_bound(
            knots_.begin(), knots_.end(), p,
            [](const auto& kn, double v) { return kn.first > v; });
        const auto& [p1, q1] = *it;
        const auto& [p0, q0] = *(it - 1);
        const double w = std::log(p / p0) / std::log(p1 / p0);
        return std::exp(std::log(q0) + w * std::log(q1 / q0));
      }
    }
    return x_min_;
  }

  // E tau^a for 0 <= a < alpha. Closed form for pareto and degenerate;
  // quadrature of the quantile transform otherwise.
  double moment(double a) const {
    if (a == 0.0) return 1.0;
    if (!(a > 0.0 && a < alpha_or_one()))
      throw std::invalid_argument("TailSpec: moment needs 0 <= a < alpha");
    switch (kind_) {
      case TailKind::pareto:
        return std::pow(x_min_, a) * alpha_ / (alpha_ - a);
      case TailKind::degenerate:
        return std::pow(x_min_, a);
      case TailKind::quantile_table:
        return moment_by_quadrature(a);
    }
    return 0.0;
  }

 private:
  TailSpec() = default;

  double alpha_or_one() const {
    return kind_ == TailKind::degenerate ? 1.0 : alpha_;
  }

  // E tau^a = int_0^1 G^{-1}(w)^a dw; the w->0 endpoint behaves like
  // w^{-a/alpha}, removed by the substitution w = z^{1/(1 - a/alpha)}.
  double moment_by_quadrature(double a) const {
    const double p = 1.0 / (1.0 - a / alpha_);
    auto f = [&](double z) {
      if (z <= 0.0) return 0.0;
      const double w = std::pow(z, p);
      return std::pow(quantile(w), a) * p * std::pow(z, p - 1.0);
    };
    return integrate(f, 0.0, 1.0, 1e-13, 1e-9);
  }

  TailKind kind_ = TailKind::pareto;
  double alpha_ = 0.5;
  double x_min_ = 1.0;
  std::vector<std::pair<double, double>> knots_;
};

}  // namespace trapsim
