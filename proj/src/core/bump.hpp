#pragma once

#include <cmath>
#include <functional>
#include <utility>

#include "core/common.hpp"
#include "core/jets.hpp"

namespace lapbox {

/* C_c^infinity mollifier profile: exp(-1/(1-u^2)) on (-1,1), zero outside.
   Peak value is e^{-1} at u = 0; no normalization, the callers only care
   about support and smoothness. */
inline double bump_profile(double u) {
  if (std::abs(u) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - u * u));
}

/* The profile rescaled so its support is exactly (lo, hi). */
inline std::function<double(double)> bump_on_interval(double lo, double hi) {
  require(hi > lo, Err::invalid_argument, "bump support must be a nonempty interval");
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  return [center, half](double x) { return bump_profile((x - center) / half); };
}

/* Flat-top cutoff: exactly 1 on |u| <= 1/2, exactly 0 on |u| >= 1. */
inline double plateau_profile(double u) { return jet_plateau(Jet::variable(u, 0)).value(); }

inline double plateau_profile_prime(double u) {
  return jet_plateau(Jet::variable(u, 1)).deriv(1);
}

/* Plateau rescaled to support (lo, hi); identically 1 on the middle half. */
inline std::function<double(double)> plateau_on_interval(double lo, double hi) {
  require(hi > lo, Err::invalid_argument, "plateau support must be a nonempty interval");
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  return [center, half](double x) { return plateau_profile((x - center) / half); };
}

/* The subinterval where plateau_on_interval(lo, hi) is exactly 1; nesting
   checks between stacked cutoffs compare against this region. */
inline std::pair<double, double> plateau_one_region(double lo, double hi) {
  require(hi > lo, Err::invalid_argument, "plateau support must be a nonempty interval");
  const double quarter = 0.25 * (hi - lo);
  return {lo + quarter, hi - quarter};
}

}  // namespace lapbox
