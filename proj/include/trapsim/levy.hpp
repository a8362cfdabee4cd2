#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "trapsim/prm.hpp"
#include "trapsim/quadrature.hpp"
#include "trapsim/tail.hpp"

// Tail evaluators nu(u,inf) for the limiting inter-arrival distributions and
// Levy measures of the clock process, with alpha_bar = (alpha-a)/(1-a):
//
//   cst_minus  E[tau^a e^{-u tau^{-(1-a)}}] / E tau^a          (probability)
//   int_minus  u^{-alpha_bar} (alpha/(1-a)) Gamma(alpha_bar) / E tau^a
//   ext_minus  sum_k gamma_k^a e^{-u gamma_k^{-(1-a)}} / E tau^a
//   ext_plus   same sum normalized by sum_l gamma_l^a          (probability)
//   stable     kappa u^{-alpha_bar}
//   tabulated  interpolated (u, nu(u,inf)) table
//
// E tau^a is kept explicit throughout; no unit normalization is assumed.

namespace trapsim {

enum class LevyKind {
  cst_minus,
  int_minus,
  ext_minus,
  ext_plus,
  stable,
  tabulated
};

inline const char* to_string(LevyKind k) {
  switch (k) {
    case LevyKind::cst_minus: return "cst_minus";
    case LevyKind::int_minus: return "int_minus";
    case LevyKind::ext_minus: return "ext_minus";
    case LevyKind::ext_plus: return "ext_plus";
    case LevyKind::stable: return "stable";
    case LevyKind::tabulated: return "tabulated";
  }
  return "?";
}

class LevyTail {
 public:
  static LevyTail cst_minus(const TailSpec& tail, double a) {
    check_a(a);
    LevyTail t;
    t.kind_ = LevyKind::cst_minus;
    t.alpha_ = tail.kind() == TailKind::degenerate ? 1.0 : tail.alpha();
    t.a_ = a;
    t.tail_spec_ = tail;
    t.e_tau_a_ = tail.moment(a);
    return t;
  }

  static LevyTail int_minus(double alpha, double a, double e_tau_a) {
    check_a(a);
    if (!(alpha > a && alpha < 1.0))
      throw std::invalid_argument("LevyTail: int_minus needs a < alpha < 1");
    if (!(e_tau_a > 0.0))
      throw std::invalid_argument("LevyTail: E tau^a must be positive");
    LevyTail t;
    t.kind_ = LevyKind::int_minus;
    t.alpha_ = alpha;
    t.a_ = a;
    t.e_tau_a_ = e_tau_a;
    const double ab = t.alpha_bar();
    t.kappa_ = alpha / (1.0 - a) * std::tgamma(ab) / e_tau_a;
    return t;
  }

  static LevyTail ext_minus(std::vector<double> atoms, double a,
                            double e_tau_a) {
    check_atoms(atoms);
    check_a(a);
    if (!(e_tau_a > 0.0))
      throw std::invalid_argument("LevyTail: E tau^a must be positive");
    LevyTail t;
    t.kind_ = LevyKind::ext_minus;
    t.a_ = a;
    t.e_tau_a_ = e_tau_a;
    t.atoms_ = std::move(atoms);
    return t;
  }

  static LevyTail ext_plus(std::vector<double> atoms, double a) {
    check_atoms(atoms);
    check_a(a);
    LevyTail t;
    t.kind_ = LevyKind::ext_plus;
    t.a_ = a;
    t.atoms_ = std::move(atoms);
    double norm = 0.0;
    for (double g : t.atoms_) norm += std::pow(g, a);
    t.atom_norm_ = norm;
    return t;
  }

  static LevyTail stable(double alpha_bar, double kappa) {
    if (!(alpha_bar > 0.0 && alpha_bar < 1.0))
      throw std::invalid_argument("LevyTail: stable index in (0,1) required");
    if (!(kappa > 0.0))
      throw std::invalid_argument("LevyTail: kappa > 0 required");
    LevyTail t;
    t.kind_ = LevyKind::stable;
    t.alpha_ = alpha_bar;  // already the effective index
    t.a_ = 0.0;
    t.kappa_ = kappa;
    return t;
  }

  // Table of (u_i, nu(u_i,inf)), u increasing, nu non-increasing; evaluated
  // as a right-continuous step function (suits atomic measures).
  static LevyTail tabulated(std::vector<std::pair<double, double>> table) {
    if (table.empty())
      throw std::invalid_argument("LevyTail: empty table");
    for (std::size_t i = 1; i < table.size(); ++i)
      if (table[i].first <= table[i - 1].first ||
          table[i].second > table[i - 1].second)
        throw std::invalid_argument("LevyTail: table not monotone");
    LevyTail t;
    t.kind_ = LevyKind::tabulated;
    t.table_ = std::move(table);
    return t;
  }

  // Degenerate target delta_inf: survival identically 1 (stranded regimes).
  static LevyTail degenerate_infinity() {
    return tabulated({{0.0, 1.0}});
  }

  LevyKind kind() const { return kind_; }
  double a() const { return a_; }
  double alpha() const { return alpha_; }
  double e_tau_a() const { return e_tau_a_; }
  double kappa() const { return kappa_; }
  const std::vector<double>& atoms() const { return atoms_; }

  double alpha_bar() const {
    if (kind_ == LevyKind::stable) return alpha_;
    return (alpha_ - a_) / (1.0 - a_);
  }

  bool is_probability() const {
    return kind_ == LevyKind::cst_minus || kind_ == LevyKind::ext_plus;
  }

  // nu(u, inf) for u > 0 (u = 0 also allowed for the probability kinds).
  double tail(double u) const {
    if (!(u > 0.0) && !(u == 0.0 && (is_probability() || kind_ == LevyKind::tabulated)))
      throw std::invalid_argument("LevyTail: u > 0 required");
    switch (kind_) {
      case LevyKind::cst_minus: {
        if (tail_spec_.kind() == TailKind::degenerate) {
          const double c = tail_spec_.x_min();
          return std::exp(-u / std::pow(c, 1.0 - a_));
        }
        return biased_exp_moment(u) / e_tau_a_;
      }
      case LevyKind::int_minus:
      case LevyKind::stable:
        return kappa_ * std::pow(u, -alpha_bar());
      case LevyKind::ext_minus:
        return atom_sum(u) / e_tau_a_;
      case LevyKind::ext_plus:
        return atom_sum(u) / atom_norm_;
      case LevyKind::tabulated: {
        if (u < table_.front().first) return table_.front().second;
        auto it = std::upper_bound(
            table_.begin(), table_.end(), u,
            [](double v, const auto& kn) { return v < kn.first; });
        return (it - 1)->second;
      }
    }
    return 0.0;
  }

  double operator()(double u) const { return tail(u); }

 private:
  static void check_a(double a) {
    if (!(a >= 0.0 && a < 1.0))
      throw std::invalid_argument("LevyTail: a in [0,1) required");
  }
  static void check_atoms(const std::vector<double>& atoms) {
    if (atoms.empty())
      throw std::invalid_argument("LevyTail: atom list is empty");
    for (double g : atoms)
      if (!(g > 0.0))
        throw std::invalid_argument("LevyTail: atoms must be positive");
  }

  double atom_sum(double u) const {
    double acc = 0.0;
    for (double g : atoms_)
      acc += std::pow(g, a_) * std::exp(-u * std::pow(g, -(1.0 - a_)));
    return acc;
  }

  // E[tau^a e^{-u tau^{-(1-a)}}] as a quantile-transform integral
  // int_0^1 phi_u(G^{-1}(w)) dw with the w^{-a/alpha} endpoint smoothed by
  // w = z^{1/(1-a/alpha)}.
  double biased_exp_moment(double u) const {
    const double p = 1.0 / (1.0 - a_ / alpha_);
    auto f = [&](double z) {
      if (z <= 0.0) return 0.0;
      const double w = std::pow(z, p);
      const double tau = tail_spec_.quantile(w);
      const double phi =
          std::pow(tau, a_) * std::exp(-u * std::pow(tau, -(1.0 - a_)));
      return phi * p * std::pow(z, p - 1.0);
    };
    return integrate(f, 0.0, 1.0, 1e-14, 1e-10);
  }

  LevyKind kind_ = LevyKind::stable;
  double alpha_ = 0.5;
  double a_ = 0.0;
  double e_tau_a_ = 1.0;
  double kappa_ = 1.0;
  double atom_norm_ = 1.0;
  std::vector<double> atoms_;
  TailSpec tail_spec_ = TailSpec::pareto(0.5);
  std::vector<std::pair<double, double>> table_;
};

inline double levy_tail(const LevyTail& t, double u) { return t.tail(u); }

// m^- = sum_k gamma_k / E tau^a (ext_minus) or m^+ = sum gamma_k / sum
// gamma_k^a (ext_plus): the mean inter-arrival time int_0^inf nu(u,inf) du
// over the truncated atom set.
inline double mean_lifetime(const LevyTail& t) {
  if (t.kind() != LevyKind::ext_minus && t.kind() != LevyKind::ext_plus)
    throw std::invalid_argument("mean_lifetime: ext kind required");
  double num = 0.0, den = 0.0;
  for (double g : t.atoms()) {
    num += g;
    if (t.kind() == LevyKind::ext_plus) den += std::pow(g, t.a());
  }
  if (t.kind() == LevyKind::ext_minus) den = t.e_tau_a();
  return num / den;
}

// C^sta(s) = sum_k (gamma_k / sum_l gamma_l) e^{-s gamma_k^{-(1-a)}}
// over the truncation; the stationary time-time correlation function.
inline double stationary_correlation(std::span<const double> atoms, double a,
                                     double s) {
  if (atoms.empty())
    throw std::invalid_argument("stationary_correlation: no atoms");
  if (!(s >= 0.0))
    throw std::invalid_argument("stationary_correlation: s >= 0 required");
  double num = 0.0, den = 0.0;
  for (double g : atoms) {
    num += g * std::exp(-s * std::pow(g, -(1.0 - a)));
    den += g;
  }
  return num / den;
}

inline double stationary_correlation(const PRMPoints& prm, double a,
                                     double s) {
  return stationary_correlation(std::span<const double>(prm.gamma), a, s);
}

// Relative truncation bound carried by the atom set: residual mass of the
// un-normalized numerator, sum_{k>K} gamma_k, over the retained sum.
inline double stationary_truncation_bound(const PRMPoints& prm) {
  double retained = 0.0;
  for (double g : prm.gamma) retained += g;
  return prm.tail_bound / retained;
}

}  // namespace trapsim
