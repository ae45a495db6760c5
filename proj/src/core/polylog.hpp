#pragma once

#include <functional>
#include <vector>

#include "core/common.hpp"

namespace lapbox {

/* Polylogarithm Li_sigma(z), order sigma > 0, principal branch with cut along
   [1, inf).  Inside |z| <= 0.5 the power series is summed to round-off; off
   the cut the value comes from the integral representation
   Li_sigma(z) = z / Gamma(sigma) * int_1^inf log^(sigma-1)(u) / (u(u-z)) du.
   z = 1 itself is accepted only for sigma > 1. */
cplx li(double sigma, cplx z);

/* Phi_n(z) = -Li_n(-z), the Nevanlinna logarithm surrogate, cut (-inf, -1].
   Phi_1 is evaluated as log(1+z) in closed form. */
cplx phi_poly(int n, cplx z);
double phi_poly(int n, double x);

/* Ratios n! * Phi_n(x) / log^n(x) over an ascending grid with entries >= 10;
   they approach 1 from above as x grows. */
std::vector<double> verify_asymptotic(int n, const std::vector<double>& x_grid);

/* Largest failure of upper-half-plane preservation, max(0, -Im Phi_n(z)),
   over the samples.  Samples on the cut are refused. */
double verify_nevanlinna(int n, const std::vector<cplx>& samples);

/* Max |series - integral representation| for Li_{sigma+1} over samples with
   |z| < 1, the region where both evaluations are valid. */
double integral_rep_residual(double sigma, const std::vector<cplx>& z_samples);

/* Herglotz data f(z) = alpha + beta z + int (1/(l-z) - l/(l^2+1)) density(l) dl
   with the density supported on [support_lo, support_hi]; support_lo may be
   -inf provided support_hi < 0. */
struct NevanlinnaRep {
  double alpha = 0.0;
  double beta = 0.0;
  std::function<double(double)> density;
  double support_lo = 0.0;
  double support_hi = 0.0;
};

/* The representation of Phi_n: beta = 0, density log^(n-1)(-l)/(n-1)! on
   (-inf, -1], alpha the explicit constant integral. */
NevanlinnaRep phi_nevanlinna_rep(int n);

cplx nevanlinna_eval(const NevanlinnaRep& rep, cplx z);

/* int density(l) / (l^2 + 1) dl over the support; finite for a valid rep. */
double nevanlinna_density_mass(const NevanlinnaRep& rep);

}  // namespace lapbox
