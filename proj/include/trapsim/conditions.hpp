#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "trapsim/arcsine.hpp"
#include "trapsim/chain.hpp"
#include "trapsim/correlation.hpp"
#include "trapsim/levy.hpp"
#include "trapsim/stats.hpp"

// Numerical verification of the clock-process convergence conditions. On
// the complete graph the chain dependence drops out and the conditions
// reduce to statements about nu_n(u,inf) = clock_increment_tail:
//
//   A1:  (floor(a_n t)/a_n) nu_n(u,inf)  ->  t nu(u,inf)
//   A2:  [nu_n(u,inf)]^2 floor(a_n t)/a_n^2  ->  0
//   A3:  int_0^delta nu_n(u,inf) du  <=  eps(delta), eps(0+) = 0
//   A0:  sum_x mu_n(x) e^{-v c_n lambda_n(x)}  ->  1 - F(v)
//
// Verdicts are finite-n tolerance checks; convergence across an n-grid is
// the caller's monotonicity comparison of sup deviations.

namespace trapsim {

struct ConditionReport {
  std::string condition;
  std::vector<double> t_grid;      // A1/A2 only
  std::vector<double> u_grid;      // u, v or delta grid
  std::vector<double> computed;    // flattened, t-major where applicable
  std::vector<double> target;
  std::vector<double> deviations;  // |computed - target|
  double sup_deviation = 0.0;
  double tol = 0.0;
  bool pass = false;
  bool verdict_applicable = true;   // A2 with constant a_n reports only
  bool degenerate_target = false;   // target is delta_inf (stranded regime)
  double bn_over_n = 0.0;
  std::vector<double> cross_check;  // A3: the (A3') indicator sums
  struct Envelope {
    bool fitted = false;
    double c0 = 0.0, c1 = 0.0, c2 = 0.0;
  } envelope;
};

inline ConditionReport check_condition_A1(const ChainModel& chain,
                                          const LevyTail& target,
                                          std::span<const double> t_grid,
                                          std::span<const double> u_grid,
                                          double tol) {
  if (t_grid.empty() || u_grid.empty())
    throw std::invalid_argument("check_condition_A1: empty grid");
  ConditionReport rep;
  rep.condition = "A1";
  rep.tol = tol;
  rep.t_grid.assign(t_grid.begin(), t_grid.end());
  rep.u_grid.assign(u_grid.begin(), u_grid.end());
  rep.bn_over_n =
      chain.scale.b_n / static_cast<double>(chain.n());

  std::vector<double> nu_n(u_grid.size()), nu(u_grid.size());
  rep.degenerate_target = true;
  for (std::size_t j = 0; j < u_grid.size(); ++j) {
    if (!(u_grid[j] > 0.0))
      throw std::invalid_argument("check_condition_A1: u_grid must be > 0");
    nu_n[j] = clock_increment_tail(chain, u_grid[j]);
    nu[j] = target.tail(u_grid[j]);
    if (nu[j] != 1.0) rep.degenerate_target = false;
  }

  const double a_n = chain.scale.a_n;
  for (double t : t_grid) {
    const double steps = std::floor(a_n * t) / a_n;
    for (std::size_t j = 0; j < u_grid.size(); ++j) {
      rep.computed.push_back(steps * nu_n[j]);
      rep.target.push_back(t * nu[j]);
      rep.deviations.push_back(std::fabs(rep.computed.back() - rep.target.back()));
      rep.sup_deviation = std::max(rep.sup_deviation, rep.deviations.back());
    }
  }
  rep.pass = rep.sup_deviation <= tol;
  return rep;
}

inline ConditionReport check_condition_A2(const ChainModel& chain,
                                          std::span<const double> t_grid,
                                          std::span<const double> u_grid,
                                          double tol) {
  if (t_grid.empty() || u_grid.empty())
    throw std::invalid_argument("check_condition_A2: empty grid");
  ConditionReport rep;
  rep.condition = "A2";
  rep.tol = tol;
  rep.t_grid.assign(t_grid.begin(), t_grid.end());
  rep.u_grid.assign(u_grid.begin(), u_grid.end());
  rep.bn_over_n = chain.scale.b_n / static_cast<double>(chain.n());
  const double a_n = chain.scale.a_n;
  rep.verdict_applicable = a_n > 1.0;  // the condition targets diverging a_n

  for (double t : t_grid) {
    for (double u : u_grid) {
      const double nu_n = clock_increment_tail(chain, u);
      const double value = nu_n * nu_n * std::floor(a_n * t) / (a_n * a_n);
      rep.computed.push_back(value);
      rep.target.push_back(0.0);
      rep.deviations.push_back(value);
      rep.sup_deviation = std::max(rep.sup_deviation, value);
    }
  }
  rep.pass = rep.verdict_applicable && rep.sup_deviation <= tol;
  return rep;
}

// int_0^delta nu_n(u,inf) du has the exact antiderivative
// a_n sum_x pi(x) w(x) (1 - e^{-delta/w(x)}), w(x) = (tau/r_n)^{1-a}.
inline double clock_increment_tail_integral(const ChainModel& chain,
                                            double delta) {
  double acc = 0.0;
  for (std::size_t x = 0; x < chain.n(); ++x) {
    const double w = chain.mean_inc[x];
    acc += chain.pi[x] * w * -std::expm1(-delta / w);
  }
  return chain.scale.a_n * acc;
}

inline ConditionReport check_condition_A3(const ChainModel& chain,
                                          std::span<const double> delta_grid,
                                          double tol) {
  if (delta_grid.empty())
    throw std::invalid_argument("check_condition_A3: empty grid");
  for (double d : delta_grid)
    if (!(d > 0.0 && d <= 1.0))
      throw std::invalid_argument("check_condition_A3: delta in (0,1] required");
  ConditionReport rep;
  rep.condition = "A3";
  rep.tol = tol;
  rep.u_grid.assign(delta_grid.begin(), delta_grid.end());
  rep.bn_over_n = chain.scale.b_n / static_cast<double>(chain.n());

  for (double delta : delta_grid) {
    const double integral = clock_increment_tail_integral(chain, delta);
    rep.computed.push_back(integral);
    rep.target.push_back(0.0);
    rep.deviations.push_back(integral);
    // (A3') cross-check: a_n sum pi(x) w(x) 1{w(x) <= delta}
    double a3p = 0.0;
    for (std::size_t x = 0; x < chain.n(); ++x)
      if (chain.mean_inc[x] <= delta)
        a3p += chain.pi[x] * chain.mean_inc[x];
    rep.cross_check.push_back(chain.scale.a_n * a3p);
  }

  // envelope eps(delta) = c delta^kappa from the log-log fit
  PowerFit fit = rv_index_estimate(rep.u_grid, rep.computed);
  rep.envelope.fitted = true;
  rep.envelope.c0 = std::exp(fit.intercept);
  rep.envelope.c1 = 0.0;
  rep.envelope.c2 = fit.slope;  // kappa

  const double smallest = rep.computed[std::min_element(rep.u_grid.begin(),
                                                        rep.u_grid.end()) -
                                       rep.u_grid.begin()];
  rep.sup_deviation = smallest;
  rep.pass = fit.slope > 0.0 && smallest <= tol;
  return rep;
}

inline ConditionReport check_condition_A0(
    const ChainModel& chain, const InitialDist& dist,
    const std::function<double(double)>& target_tail,  // v -> 1 - F(v)
    std::span<const double> v_grid, double tol) {
  if (v_grid.empty())
    throw std::invalid_argument("check_condition_A0: empty grid");
  ConditionReport rep;
  rep.condition = "A0";
  rep.tol = tol;
  rep.u_grid.assign(v_grid.begin(), v_grid.end());
  rep.bn_over_n = chain.scale.b_n / static_cast<double>(chain.n());
  for (double v : v_grid) {
    if (!(v >= 0.0))
      throw std::invalid_argument("check_condition_A0: v >= 0 required");
    rep.computed.push_back(initial_tail(chain, dist, v));
    rep.target.push_back(target_tail(v));
    rep.deviations.push_back(std::fabs(rep.computed.back() - rep.target.back()));
    rep.sup_deviation = std::max(rep.sup_deviation, rep.deviations.back());
  }
  rep.pass = rep.sup_deviation <= tol;
  return rep;
}

// ---------------------------------------------------------------------------
// Aging comparison against the generalized arcsine law.

enum class AgingRegime { t_to_infinity, fixed_t, t_to_zero };

inline const char* to_string(AgingRegime r) {
  switch (r) {
    case AgingRegime::t_to_infinity: return "t->inf";
    case AgingRegime::fixed_t: return "fixed t";
    case AgingRegime::t_to_zero: return "t->0+";
  }
  return "?";
}

struct AgingRow {
  double t = 1.0;
  std::vector<CorrelationEstimate> estimates;  // one per rho
};

struct AgingReport {
  std::vector<double> rho;
  std::vector<double> t;           // in regime order (toward the limit)
  std::vector<double> deviations;  // flattened, t-major
  double max_deviation_limit = 0.0;  // over the last (limit-proxy) row
  bool deviations_shrink = true;     // per-rho trend along the t sequence
  bool stranded = false;             // all estimates >= 0.99
  AgingRegime regime = AgingRegime::fixed_t;
};

inline AgingReport compare_aging(std::span<const AgingRow> rows,
                                 std::span<const double> rho,
                                 double alpha_bar, AgingRegime regime) {
  if (rows.empty() || rho.size() < 3)
    throw std::invalid_argument("compare_aging: needs >= 3 rho values");
  for (const auto& row : rows)
    if (row.estimates.size() != rho.size())
      throw std::invalid_argument("compare_aging: ragged sweep");

  std::vector<AgingRow> ordered(rows.begin(), rows.end());
  std::sort(ordered.begin(), ordered.end(),
            [&](const AgingRow& x, const AgingRow& y) {
              return regime == AgingRegime::t_to_zero ? x.t > y.t : x.t < y.t;
            });

  AgingReport rep;
  rep.regime = regime;
  rep.rho.assign(rho.begin(), rho.end());
  rep.stranded = true;
  std::vector<double> previous(rho.size(), 0.0);
  for (std::size_t r = 0; r < ordered.size(); ++r) {
    rep.t.push_back(ordered[r].t);
    for (std::size_t j = 0; j < rho.size(); ++j) {
      const double target = asl_cdf(alpha_bar, 1.0 / (1.0 + rho[j]));
      const double dev = std::fabs(ordered[r].estimates[j].mean - target);
      rep.deviations.push_back(dev);
      if (ordered[r].estimates[j].mean < 0.99) rep.stranded = false;
      if (r + 1 == ordered.size())
        rep.max_deviation_limit = std::max(rep.max_deviation_limit, dev);
      if (r > 0 && dev > previous[j] + 1e-12) rep.deviations_shrink = false;
      previous[j] = dev;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Deviation envelope of Prop-style rate bounds: fits sigma^2(u) = c0 + c1
// u^{-1+c2} so that dev(u; n) <= (b_n/n)^{1/3} sigma(u) on the fit set.

struct EnvelopePoint {
  double bn_over_n = 0.0;
  double u = 0.0;
  double deviation = 0.0;
};

struct EnvelopeFit {
  double c0 = 0.0, c1 = 0.0, c2 = 1.0;
  double sigma(double u) const {
    return std::sqrt(c0 + c1 * std::pow(u, -1.0 + c2));
  }
  double bound(double bn_over_n, double u) const {
    return std::cbrt(bn_over_n) * sigma(u);
  }
};

inline EnvelopeFit fit_deviation_envelope(std::span<const EnvelopePoint> pts) {
  if (pts.size() < 3)
    throw std::invalid_argument("fit_deviation_envelope: needs >= 3 points");
  // least squares for (c0, c1) on the basis [1, u^{-1+c2}], c2 on a grid
  EnvelopeFit best;
  double best_sse = std::numeric_limits<double>::infinity();
  for (double c2 = 0.05; c2 <= 1.0; c2 += 0.05) {
    double s11 = 0, s1b = 0, sbb = 0, s1y = 0, sby = 0;
    for (const auto& p : pts) {
      const double y = p.deviation / std::cbrt(p.bn_over_n);
      const double b = std::pow(p.u, -1.0 + c2);
      s11 += 1.0;
      s1b += b;
      sbb += b * b;
      s1y += y * y;
      sby += b * y * y;
    }
    const double det = s11 * sbb - s1b * s1b;
    if (std::fabs(det) < 1e-30) continue;
    double c0 = (s1y * sbb - sby * s1b) / det;
    double c1 = (s11 * sby - s1b * s1y) / det;
    if (c1 < 0.0) {  // degrade to a flat envelope
      c1 = 0.0;
      c0 = s1y / s11;
    }
    if (c0 < 0.0) {
      c0 = 0.0;
      c1 = sby / sbb;
    }
    double sse = 0.0;
    for (const auto& p : pts) {
      const double y2 = p.deviation * p.deviation / std::cbrt(p.bn_over_n * p.bn_over_n);
      const double m = c0 + c1 * std::pow(p.u, -1.0 + c2);
      sse += (y2 - m) * (y2 - m);
    }
    if (sse < best_sse) {
      best_sse = sse;
      best = EnvelopeFit{c0, c1, c2};
    }
  }
  // scale up so the envelope dominates every fitted point
  double scale = 1.0;
  for (const auto& p : pts) {
    const double bound = best.bound(p.bn_over_n, p.u);
    if (bound > 0.0 && p.deviation > bound * std::sqrt(scale))
      scale = (p.deviation / bound) * (p.deviation / bound);
  }
  best.c0 *= scale;
  best.c1 *= scale;
  return best;
}

}  // namespace trapsim
