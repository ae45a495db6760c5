#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "core/builders.hpp"
#include "core/weights.hpp"

namespace lapbox {

/* Taylor-with-cutoff continuation of a real function off the real axis:

     ext(x + iy) = chi(y/<x>) * sum_{j<=N} f^{(j)}(x) (iy)^j / j!

   with chi the plateau cutoff, so the support lies in the cone |y| <= <x>
   and ext(x, 0) = f(x) exactly.  dbar needs the order-(N+1) derivative for
   its Taylor remainder, hence the derivative list runs to N+1.  A compact
   build multiplies f by a plateau in x; only those can be integrated. */
class AlmostAnalyticExtension {
 public:
  AlmostAnalyticExtension() = default;

  int order() const { return n_ord_; }
  double decay_rate() const { return rho_; }
  bool compact() const { return x_cut_ > 0.0; }
  double x_cut() const { return x_cut_; }

  bool in_support(double x, double y) const;
  /* f^{(j)}(x) for j = 0..order+1, cut factor folded in by Leibniz. */
  std::vector<double> derivatives_at(double x) const;
  cplx value(double x, double y) const;
  cplx dbar(double x, double y) const;
  /* dbar with the derivative column precomputed; the quadrature reuses one
     column across every y node. */
  cplx dbar_from(const std::vector<double>& derivs, double x, double y) const;

 private:
  friend AlmostAnalyticExtension build_extension(std::vector<std::function<double(double)>>,
                                                 double, int);
  friend AlmostAnalyticExtension build_compact_extension(
      std::vector<std::function<double(double)>>, double, int, double);

  std::vector<std::function<double(double)>> derivs_;
  double rho_ = 0.0;
  int n_ord_ = 0;
  double x_cut_ = 0.0; /* 0: no x cutoff */
};

/* derivs[j] must evaluate f^{(j)}; at least n_ord + 2 entries. */
AlmostAnalyticExtension build_extension(std::vector<std::function<double(double)>> derivs,
                                        double rho, int n_ord);
AlmostAnalyticExtension build_compact_extension(std::vector<std::function<double(double)>> derivs,
                                                double rho, int n_ord, double x_cut);

/* Cut radius for a given operator: the plateau is exactly 1 on a window
   twice as wide as the spectrum, so the cut never shows on the spectrum and
   the chi-prime band sits far from it. */
double hs_cut_radius(const LatOp& t);

/* Largest |dbar| / (<x>^{rho-1-ell} |y|^ell) over a nested log grid, one row
   per ell = 0..order.  The bound's constants are never pinned analytically;
   these are observations, stable under grid doubling. */
struct DbarFit {
  int ell = 0;
  double c_fit = 0.0;
};
std::vector<DbarFit> fit_dbar_constants(const AlmostAnalyticExtension& ext, int nx, int ny);

struct HsQuadrature {
  int nx = 1024; /* uniform midpoint columns over [-x_cut, x_cut] */
  int ny = 256;  /* graded midpoint rows, both half planes together */
  double grading = 3.0;
  void validate() const;
};

/* f^{(k)}(T) = -(k!/pi) * integral of dbar_ext(z) (z-T)^{-1-k} dx dy, the
   resolvent factored densely per node.  Columns are integrated in parallel
   and reduced in index order, so results do not depend on thread count.
   residual_estimate (optional out) reports the even/odd column imbalance. */
LatOp hs_apply(const LatOp& t, const AlmostAnalyticExtension& ext, int deriv_order,
               const HsQuadrature& mesh = {}, double* residual_estimate = nullptr);

/* Operator-norm distance between hs_apply and the eigendecomposition image
   of the scalar function; the two routes share no linear algebra. */
double hs_compare(const LatOp& t, const AlmostAnalyticExtension& ext, int deriv_order,
                  const std::function<double(double)>& scalar, const HsQuadrature& mesh = {});

/* Three stacked plateau cutoffs on nested intervals: theta's support must sit
   inside eta's flat top, eta's support inside chi's flat top. */
struct GapBumps {
  double theta_lo = 0.0, theta_hi = 0.0;
  double eta_lo = 0.0, eta_hi = 0.0;
  double chi_lo = 0.0, chi_hi = 0.0;
};

struct WeightedGapScan {
  std::vector<int> r_grid;
  std::vector<double> gap_by_r; /* min eigenvalue of F - (gamma/3R) RHS per R */
  double min_gap = 0.0;         /* best entry of gap_by_r */
  double rhs_norm = 0.0;        /* norm of the weighted right side at that R */
  int r_scale = 0;
  double gamma = 0.0; /* commutator lower bound on the chi window, clamped at 0 */
  bool satisfied = false;
};

/* Tests F = Pp theta(H) [H, i phi(A/R)] theta(H) Pp against the weighted
   lower bound (gamma/3R) Pp theta(H) <A/R>^{-1} w^{-2p,-1}(A/R) theta(H) Pp
   on the range of theta(H) Pp, searching the R grid for a nonnegative gap.
   Pp projects out window eigenvectors with at least half their mass within
   R_box/2 of the center.  An exhausted grid is a finding, not an error. */
WeightedGapScan weighted_commutator_gap(DomainPtr dom, const std::optional<PotentialSpec>& v,
                                        const std::optional<PotentialSpec>& w,
                                        const GapBumps& bumps, const WeightSpec& wspec,
                                        const std::vector<int>& r_grid = {2, 4, 8, 16, 32},
                                        double tol = 1e-8);

}  // namespace lapbox
