#include "core/polylog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/quadrature.hpp"

namespace lapbox {

namespace {

bool on_upper_cut(cplx z) { return z.imag() == 0.0 && z.real() >= 1.0; }
bool on_lower_cut(cplx z) { return z.imag() == 0.0 && z.real() <= -1.0; }

cplx li_series(double sigma, cplx z) {
  const double r = std::abs(z);
  require(r < 1.0, Err::invalid_argument, "series requires |z| < 1");
  cplx sum = 0.0, zk = 1.0;
  for (int k = 1; k <= 200000; ++k) {
    zk *= z;
    const cplx term = zk / std::pow(double(k), sigma);
    sum += term;
    /* terms shrink at least geometrically, so this bounds the whole tail */
    if (std::abs(term) * r / (1.0 - r) < 1e-17 * (1.0 + std::abs(sum))) return sum;
  }
  throw Error(Err::solver_failure, "polylog series failed to converge");
}

/* Sum of adaptive integrals over consecutive knot intervals, with the
   absolute tolerance scaled to a one-panel estimate of the total mass so the
   result carries ~12 relative digits even when the value is tiny. */
template <typename F>
auto integrate_segments(F&& f, const std::vector<double>& knots) {
  using T = std::invoke_result_t<F&, double>;
  double scale = 0.0, err = 0.0;
  T probe{};
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    gk15_panel(f, knots[i], knots[i + 1], probe, err);
    scale += std::abs(probe);
  }
  const double tol = std::max(scale * 1e-12, 1e-16) / double(knots.size());
  T acc{};
  for (std::size_t i = 0; i + 1 < knots.size(); ++i)
    acc += integrate_adaptive(f, knots[i], knots[i + 1], tol, 100, 60000);
  return acc;
}

/* Knots 0 < 4^-k < ... < 1/4 < 1 descending to below min(1e-3, 0.01/|z|), so
   the mass that a large |z| pushes toward t = 0 is always sampled. */
std::vector<double> geometric_knots(double zmag) {
  const double lo = std::min(1e-3, 0.01 / std::max(1.0, zmag));
  std::vector<double> knots{0.0};
  double t = 1.0;
  while (t > lo) {
    knots.push_back(t);
    t *= 0.25;
  }
  knots.push_back(t);
  std::sort(knots.begin(), knots.end());
  return knots;
}

/* Integral representation after u = 1/t:
   Li_sigma(z) = z / Gamma(sigma) * int_0^1 (-log t)^(sigma-1) / (1 - z t) dt.
   Valid off the cut for sigma > 0, and at z = 1 for sigma > 1.  The piece
   near t = 1 is taken in the variable v = -log t, which moves the endpoint
   singularity of the (sigma-1) power to v = 0 where bisection never runs out
   of representable points. */
cplx li_integral(double sigma, cplx z) {
  if (z == 0.0) return 0.0;
  const double sp = sigma - 1.0;
  auto low = [&](double t) -> cplx { return std::pow(-std::log(t), sp) / (1.0 - z * t); };
  auto high = [&](double v) -> cplx {
    const double t = std::exp(-v);
    return std::pow(v, sp) * t / (1.0 - z * t);
  };
  std::vector<double> knots = geometric_knots(std::abs(z));
  std::erase_if(knots, [](double t) { return t > 0.26; });
  const cplx acc = integrate_segments(low, knots) +
                   integrate_segments(high, {0.0, std::log(4.0)});
  return z / std::tgamma(sigma) * acc;
}

}  // namespace

cplx li(double sigma, cplx z) {
  require(sigma > 0.0, Err::invalid_argument, "polylog order must be positive");
  if (on_upper_cut(z)) {
    require(z.real() == 1.0 && sigma > 1.0, Err::invalid_argument,
            "z is on the branch cut [1, inf)");
    return li_integral(sigma, z);
  }
  if (std::abs(z) <= 0.5) return li_series(sigma, z);
  return li_integral(sigma, z);
}

cplx phi_poly(int n, cplx z) {
  require(n >= 1, Err::invalid_argument, "phi order must be a positive integer");
  require(!on_lower_cut(z), Err::invalid_argument, "z is on the branch cut (-inf, -1]");
  if (n == 1) return std::log(1.0 + z);
  return -li(double(n), -z);
}

double phi_poly(int n, double x) {
  require(x > -1.0, Err::invalid_argument, "phi needs x > -1");
  if (n == 1) return std::log1p(x);
  return phi_poly(n, cplx(x, 0.0)).real();
}

std::vector<double> verify_asymptotic(int n, const std::vector<double>& x_grid) {
  require(n >= 1, Err::invalid_argument, "phi order must be a positive integer");
  require(!x_grid.empty(), Err::invalid_argument, "empty grid");
  const double nfact = std::tgamma(double(n) + 1.0);
  std::vector<double> ratios;
  ratios.reserve(x_grid.size());
  double prev = 0.0;
  for (double x : x_grid) {
    require(x >= 10.0, Err::invalid_argument, "asymptotic grid needs x >= 10");
    require(ratios.empty() || x > prev, Err::invalid_argument, "grid must ascend");
    prev = x;
    ratios.push_back(nfact * phi_poly(n, x) / std::pow(std::log(x), n));
  }
  return ratios;
}

double verify_nevanlinna(int n, const std::vector<cplx>& samples) {
  double worst = 0.0;
  for (cplx z : samples) worst = std::max(worst, -phi_poly(n, z).imag());
  return std::max(worst, 0.0);
}

double integral_rep_residual(double sigma, const std::vector<cplx>& z_samples) {
  require(sigma > -1.0, Err::invalid_argument, "representation needs order > -1");
  double worst = 0.0;
  for (cplx z : z_samples) {
    require(std::abs(z) < 1.0, Err::invalid_argument, "both routes need |z| < 1");
    worst = std::max(worst, std::abs(li_series(sigma + 1.0, z) - li_integral(sigma + 1.0, z)));
  }
  return worst;
}

NevanlinnaRep phi_nevanlinna_rep(int n) {
  require(n >= 1, Err::invalid_argument, "phi order must be a positive integer");
  const double s = double(n) - 1.0, gam = std::tgamma(double(n));
  NevanlinnaRep rep;
  /* alpha = 1/Gamma(n) int_1^inf log^s(u) / (u(u^2+1)) du, mapped by u = 1/t */
  rep.alpha = integrate_segments(
      [&](double t) { return t * std::pow(-std::log(t), s) / (1.0 + t * t); },
      geometric_knots(1.0));
  rep.alpha /= gam;
  rep.beta = 0.0;
  rep.density = [s, gam](double l) { return std::pow(std::log(-l), s) / gam; };
  rep.support_lo = -std::numeric_limits<double>::infinity();
  rep.support_hi = -1.0;
  return rep;
}

cplx nevanlinna_eval(const NevanlinnaRep& rep, cplx z) {
  require(rep.beta >= 0.0, Err::invalid_argument, "beta must be nonnegative");
  cplx acc = rep.alpha + rep.beta * z;
  if (std::isinf(rep.support_lo)) {
    require(rep.support_hi < 0.0, Err::unsupported,
            "unbounded support is handled only for support_hi < 0");
    require(!(z.imag() == 0.0 && z.real() <= rep.support_hi), Err::invalid_argument,
            "z lies on the support of the measure");
    /* l = -1/t turns the Herglotz kernel into
       (z - t) density(-1/t) / ((1+t^2)(1+zt)) on 0 < t <= -1/support_hi */
    auto f = [&](double t) -> cplx {
      return (z - t) * rep.density(-1.0 / t) / ((1.0 + t * t) * (1.0 + z * t));
    };
    std::vector<double> knots = geometric_knots(std::abs(z));
    const double top = -1.0 / rep.support_hi;
    std::erase_if(knots, [top](double t) { return t >= top; });
    knots.push_back(top);
    return acc + integrate_segments(f, knots);
  }
  require(!(z.imag() == 0.0 && z.real() >= rep.support_lo && z.real() <= rep.support_hi),
          Err::invalid_argument, "z lies on the support of the measure");
  auto f = [&](double l) -> cplx {
    return (1.0 / (l - z) - l / (l * l + 1.0)) * rep.density(l);
  };
  return acc + integrate_adaptive(f, rep.support_lo, rep.support_hi, 1e-12, 100, 60000);
}

double nevanlinna_density_mass(const NevanlinnaRep& rep) {
  if (std::isinf(rep.support_lo)) {
    require(rep.support_hi < 0.0, Err::unsupported,
            "unbounded support is handled only for support_hi < 0");
    auto f = [&](double t) { return rep.density(-1.0 / t) / (1.0 + t * t); };
    std::vector<double> knots = geometric_knots(1.0);
    const double top = -1.0 / rep.support_hi;
    std::erase_if(knots, [top](double t) { return t >= top; });
    knots.push_back(top);
    return integrate_segments(f, knots);
  }
  auto f = [&](double l) { return rep.density(l) / (l * l + 1.0); };
  return integrate_adaptive(f, rep.support_lo, rep.support_hi, 1e-12, 100, 60000);
}

}  // namespace lapbox
