#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "trapsim/tail.hpp"

// Space/time scales. A space scale r_n is the landscape quantile solving
// b_n G(r_n) ~ 1; we fix the exact-quantile representative r_n = G^{-1}(1/b_n).
// The time scale is always c_n = r_n^{1-a}. The auxiliary scale a_n follows
// the case table of the convergence results:
//   constant        a_n = 1   (renewal regime)
//   non-constant    a_n = r_n^{-a} b_n  if a < alpha  (subordinator regime)
//                   a_n = 1             if a > alpha  (degenerate/renewal)

namespace trapsim {

enum class ScaleClass { constant, intermediate, extreme };

struct ScaleSpec {
  ScaleClass cls = ScaleClass::constant;
  double b_n = 1.0;
  double r_n = 1.0;
  double c_n = 1.0;
  double a_n = 1.0;
};

inline const char* to_string(ScaleClass c) {
  switch (c) {
    case ScaleClass::constant: return "constant";
    case ScaleClass::intermediate: return "intermediate";
    case ScaleClass::extreme: return "extreme";
  }
  return "?";
}

inline ScaleSpec constant_scale(const TailSpec& tail, double r, double a) {
  if (!(r > 0.0)) throw std::invalid_argument("constant_scale: r > 0 required");
  ScaleSpec s;
  s.cls = ScaleClass::constant;
  s.r_n = r;
  s.c_n = std::pow(r, 1.0 - a);
  s.a_n = 1.0;
  const double g = tail.survival(r);
  s.b_n = g > 0.0 ? 1.0 / g : 1.0;
  return s;
}

inline ScaleSpec space_scale(const TailSpec& tail, ScaleClass cls, double b_n,
                             double a, std::size_t n) {
  if (cls == ScaleClass::constant)
    throw std::invalid_argument("space_scale: use constant_scale for class=constant");
  if (cls == ScaleClass::extreme) b_n = static_cast<double>(n);
  if (!(b_n > 1.0))
    throw std::invalid_argument("space_scale: b_n > 1 required");
  if (cls == ScaleClass::intermediate && b_n >= static_cast<double>(n))
    throw std::invalid_argument("space_scale: intermediate scale needs b_n < n");

  ScaleSpec s;
  s.cls = cls;
  s.b_n = b_n;
  s.r_n = tail.quantile(1.0 / b_n);
  s.c_n = std::pow(s.r_n, 1.0 - a);
  s.a_n = a < tail.alpha() ? std::pow(s.r_n, -a) * b_n : 1.0;

  // b_n G(r_n) ~ 1 must hold exactly up to quantile-table slack.
  const double bg = b_n * tail.survival(s.r_n);
  if (!(bg > 0.9 && bg < 1.1))
    throw std::runtime_error("space_scale: b_n * G(r_n) deviates from 1");
  return s;
}

}  // namespace trapsim
