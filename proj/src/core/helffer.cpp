#include "core/helffer.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "core/bump.hpp"
#include "core/jets.hpp"
#include "core/mourre.hpp"
#include "core/spectral.hpp"

namespace lapbox {

namespace {

const double kPi = std::acos(-1.0);
const cplx kI(0.0, 1.0);

double binom(int n, int k) {
  double b = 1.0;
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

bool AlmostAnalyticExtension::in_support(double x, double y) const {
  if (x_cut_ > 0.0 && std::abs(x) >= x_cut_) return false;
  return std::abs(y) <= jbracket(x);
}

std::vector<double> AlmostAnalyticExtension::derivatives_at(double x) const {
  const int count = n_ord_ + 2;
  std::vector<double> out(count, 0.0);
  if (x_cut_ > 0.0 && std::abs(x) >= x_cut_) return out;
  std::vector<double> base(count);
  for (int j = 0; j < count; ++j) base[j] = derivs_[j](x);
  if (x_cut_ == 0.0) return base;
  const Jet cut = jet_plateau((1.0 / x_cut_) * Jet::variable(x, count - 1));
  if (cut.value() == 1.0 && cut.deriv(1) == 0.0) return base; /* on the flat top */
  for (int j = 0; j < count; ++j) {
    double s = 0.0;
    for (int i = 0; i <= j; ++i) s += binom(j, i) * base[i] * cut.deriv(j - i);
    out[j] = s;
  }
  return out;
}

cplx AlmostAnalyticExtension::value(double x, double y) const {
  if (!in_support(x, y)) return cplx(0.0, 0.0);
  const double chi = plateau_profile(y / jbracket(x));
  if (chi == 0.0) return cplx(0.0, 0.0);
  const auto d = derivatives_at(x);
  const cplx iy(0.0, y);
  cplx pw(1.0, 0.0), sum(0.0, 0.0);
  double fact = 1.0;
  for (int j = 0; j <= n_ord_; ++j) {
    sum += d[j] * pw / fact;
    pw *= iy;
    fact *= j + 1;
  }
  return chi * sum;
}

cplx AlmostAnalyticExtension::dbar(double x, double y) const {
  return dbar_from(derivatives_at(x), x, y);
}

cplx AlmostAnalyticExtension::dbar_from(const std::vector<double>& d, double x, double y) const {
  const double jb = jbracket(x);
  const Jet pj = jet_plateau(Jet::variable(y / jb, 1));
  const double chi = pj.value();
  const double chip = pj.deriv(1);
  if (chi == 0.0 && chip == 0.0) return cplx(0.0, 0.0);
  const cplx iy(0.0, y);
  cplx pw(1.0, 0.0), sum(0.0, 0.0), top(1.0, 0.0);
  double fact = 1.0;
  for (int j = 0; j <= n_ord_; ++j) {
    if (j == n_ord_) top = pw / fact;
    sum += d[j] * pw / fact;
    pw *= iy;
    fact *= j + 1;
  }
  /* dbar = (d/dx + i d/dy)/2; the Taylor part telescopes to its remainder
     f^{(N+1)}(x) (iy)^N / N!, the cutoff contributes through grad(y/<x>). */
  const cplx rem = d[n_ord_ + 1] * top;
  const double ux = -x * y / (jb * jb * jb);
  const double uy = 1.0 / jb;
  return 0.5 * (chip * cplx(ux, uy) * sum + chi * rem);
}

namespace {

void check_ext_args(const std::vector<std::function<double(double)>>& derivs, int n_ord) {
  require(n_ord >= 1 && n_ord <= Jet::kMaxOrder - 1, Err::invalid_argument,
          "taylor order must lie in 1..5");
  require(static_cast<int>(derivs.size()) >= n_ord + 2, Err::precondition,
          "derivative list must reach order n_ord + 1");
  for (const auto& f : derivs)
    require(static_cast<bool>(f), Err::precondition, "derivative entry is empty");
}

}  // namespace

AlmostAnalyticExtension build_extension(std::vector<std::function<double(double)>> derivs,
                                        double rho, int n_ord) {
  check_ext_args(derivs, n_ord);
  AlmostAnalyticExtension ext;
  ext.derivs_ = std::move(derivs);
  ext.rho_ = rho;
  ext.n_ord_ = n_ord;
  return ext;
}

AlmostAnalyticExtension build_compact_extension(std::vector<std::function<double(double)>> derivs,
                                                double rho, int n_ord, double x_cut) {
  require(x_cut > 0.0, Err::invalid_argument, "cut radius must be positive");
  check_ext_args(derivs, n_ord);
  AlmostAnalyticExtension ext;
  ext.derivs_ = std::move(derivs);
  ext.rho_ = rho;
  ext.n_ord_ = n_ord;
  ext.x_cut_ = x_cut;
  return ext;
}

double hs_cut_radius(const LatOp& t) { return 4.0 * operator_norm(t) + 2.0; }

std::vector<DbarFit> fit_dbar_constants(const AlmostAnalyticExtension& ext, int nx, int ny) {
  require(nx >= 4 && ny >= 4, Err::invalid_argument, "fit grid too small");
  std::vector<DbarFit> rows(ext.order() + 1);
  for (int ell = 0; ell <= ext.order(); ++ell) rows[ell].ell = ell;
  std::vector<double> xs{0.0};
  for (int i = 0; i <= nx; ++i) {
    const double ex = std::pow(10.0, -2.0 + 4.0 * i / double(nx));
    xs.push_back(ex);
    xs.push_back(-ex);
  }
  for (double x : xs) {
    const double jb = jbracket(x);
    const auto d = ext.derivatives_at(x);
    for (int iy = 0; iy <= ny; ++iy) {
      const double y = jb * std::pow(10.0, -6.0 * iy / double(ny));
      for (double sign : {1.0, -1.0}) {
        const double db = std::abs(ext.dbar_from(d, x, sign * y));
        for (int ell = 0; ell <= ext.order(); ++ell) {
          const double denom = std::pow(jb, ext.decay_rate() - 1.0 - ell) * std::pow(y, ell);
          rows[ell].c_fit = std::max(rows[ell].c_fit, db / denom);
        }
      }
    }
  }
  return rows;
}

void HsQuadrature::validate() const {
  require(nx >= 8 && nx % 2 == 0 && nx <= (1 << 20), Err::invalid_argument,
          "mesh columns must be even and >= 8");
  require(ny >= 8 && ny % 2 == 0 && ny <= (1 << 20), Err::invalid_argument,
          "mesh rows must be even and >= 8");
  require(std::isfinite(grading) && grading >= 1.0 && grading <= 8.0, Err::invalid_argument,
          "mesh grading must lie in [1, 8]");
}

LatOp hs_apply(const LatOp& t, const AlmostAnalyticExtension& ext, int deriv_order,
               const HsQuadrature& mesh, double* residual_estimate) {
  mesh.validate();
  require(t.is_hermitian(), Err::precondition, "quadrature target must be hermitian");
  require(ext.compact(), Err::precondition, "quadrature needs a compactly cut extension");
  require(deriv_order >= 0 && deriv_order < ext.order(), Err::precondition,
          "derivative order must stay below the taylor order");
  const long dim = t.dim();
  require(dim <= 512, Err::unsupported, "dense per-node factorization is capped at dim 512");

  const double X = ext.x_cut();
  const double Y = jbracket(X);
  const int half_ny = mesh.ny / 2;
  const double hx = 2.0 * X / mesh.nx;
  const DMat td = DMat(t.mat());
  const DMat id = DMat::Identity(dim, dim);

  /* One partial sum per column, filled by any thread, reduced in column
     order afterwards: the result is independent of the thread count. */
  std::vector<DMat> column(mesh.nx);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto run_column = [&](int ix) {
    const double x = -X + (ix + 0.5) * hx;
    DMat acc = DMat::Zero(dim, dim);
    const auto d = ext.derivatives_at(x);
    double dmax = 0.0;
    for (double v : d) dmax = std::max(dmax, std::abs(v));
    if (dmax > 0.0) {
      const double cone = jbracket(x);
      for (int iy = 0; iy < half_ny; ++iy) {
        const double s = (iy + 0.5) / half_ny;
        const double y = Y * std::pow(s, mesh.grading);
        if (y > cone) break;
        const cplx db = ext.dbar_from(d, x, y);
        if (db == cplx(0.0, 0.0)) continue;
        const double wy = Y * mesh.grading * std::pow(s, mesh.grading - 1.0) / half_ny;
        Eigen::PartialPivLU<DMat> lu(cplx(x, y) * id - td);
        const DMat inv = lu.inverse();
        DMat ipow = inv;
        for (int j = 0; j < deriv_order; ++j) ipow = ipow * inv;
        acc.noalias() += (hx * wy * db) * ipow;
      }
    }
    column[ix] = std::move(acc);
  };

  auto worker = [&] {
    try {
      for (;;) {
        const int ix = next.fetch_add(1);
        if (ix >= mesh.nx) return;
        run_column(ix);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mu);
      if (!failure) failure = std::current_exception();
    }
  };

  const unsigned hw = std::thread::hardware_concurrency();
  const int extra = std::max(0, std::min<int>(hw ? int(hw) : 1, 8) - 1);
  std::vector<std::thread> threads;
  threads.reserve(extra);
  for (int i = 0; i < extra; ++i) threads.emplace_back(worker);
  worker();
  for (auto& th : threads) th.join();
  if (failure) std::rethrow_exception(failure);

  const double pref = -factorial(deriv_order) / kPi;
  DMat sum = DMat::Zero(dim, dim);
  DMat even = DMat::Zero(dim, dim);
  for (int ix = 0; ix < mesh.nx; ++ix) {
    sum += column[ix];
    if (ix % 2 == 0) even += column[ix];
  }
  /* the lower half plane mirrors the upper one into the adjoint */
  const DMat upper = pref * sum;
  const DMat full = upper + upper.adjoint();
  const DMat coarse_half = (2.0 * pref) * even;
  const double resid = operator_norm_dense(full - (coarse_half + coarse_half.adjoint()));
  if (residual_estimate) *residual_estimate = resid;
  require(full.allFinite(), Err::solver_failure, "quadrature produced non-finite entries");
  require(resid <= 0.1 * (operator_norm_dense(full) + 1.0), Err::solver_failure,
          "quadrature failed to settle; residual estimate " + std::to_string(resid));
  return LatOp::hermitian(t.domain_ptr(), to_sparse(full));
}

double hs_compare(const LatOp& t, const AlmostAnalyticExtension& ext, int deriv_order,
                  const std::function<double(double)>& scalar, const HsQuadrature& mesh) {
  const LatOp got = hs_apply(t, ext, deriv_order, mesh);
  const EigenSystem es(t);
  const LatOp want = es.apply_function([&](double x) { return cplx(scalar(x), 0.0); });
  return operator_norm_dense(DMat(got.mat()) - DMat(want.mat()));
}

WeightedGapScan weighted_commutator_gap(DomainPtr dom, const std::optional<PotentialSpec>& v,
                                        const std::optional<PotentialSpec>& w,
                                        const GapBumps& bumps, const WeightSpec& wspec,
                                        const std::vector<int>& r_grid, double tol) {
  require(wspec.p > 0.5, Err::precondition, "weighted estimate needs p > 1/2");
  require(bumps.theta_lo < bumps.theta_hi && bumps.eta_lo < bumps.eta_hi &&
              bumps.chi_lo < bumps.chi_hi,
          Err::invalid_argument, "bump intervals must be nonempty");
  const auto eta_top = plateau_one_region(bumps.eta_lo, bumps.eta_hi);
  require(bumps.theta_lo >= eta_top.first && bumps.theta_hi <= eta_top.second, Err::precondition,
          "bump nesting violated: eta must be 1 on the support of theta");
  const auto chi_top = plateau_one_region(bumps.chi_lo, bumps.chi_hi);
  require(bumps.eta_lo >= chi_top.first && bumps.eta_hi <= chi_top.second, Err::precondition,
          "bump nesting violated: chi must be 1 on the support of eta");
  require(!r_grid.empty(), Err::invalid_argument, "scale grid is empty");
  for (size_t i = 0; i < r_grid.size(); ++i) {
    require(r_grid[i] >= 1, Err::invalid_argument, "scales must be >= 1");
    require(i == 0 || r_grid[i] > r_grid[i - 1], Err::invalid_argument,
            "scales must be ascending");
  }

  /* commutator lower bound on the widest window; a window without a positive
     bound contributes no weighted term and the scan reports the bare form */
  const MourreWindow mw = mourre_gap(dom, v, w, bumps.chi_lo, bumps.chi_hi, 2);
  require(!mw.empty, Err::precondition, "window holds no spectrum at this radius");
  const double gamma = std::max(mw.gamma_lower, 0.0);

  LatOp h = build_laplacian(dom);
  if (v) h = h + build_potential(dom, *v);
  if (w) h = h + build_potential(dom, *w);
  h = LatOp::hermitian(dom, h.mat());
  const EigenSystem es(h);
  const long dim = es.size();
  const long r_box = dom->radius();

  /* window eigenvectors concentrated near the center model point spectrum
     and are projected out; extended box modes put about half their mass on
     the central half, so the cut sits safely above that */
  std::vector<bool> candidate(dim, false);
  DMat pperp = DMat::Identity(dim, dim);
  for (long j = 0; j < dim; ++j) {
    if (!interval_takes(es.eigenvalues()[j], bumps.chi_lo, bumps.chi_hi)) continue;
    double mass = 0.0;
    for (long i = 0; i < dim; ++i)
      if (dom->boundary_distance(i) >= r_box - r_box / 2)
        mass += std::norm(es.eigenvectors()(i, j));
    if (mass >= 0.65) {
      candidate[j] = true;
      pperp -= es.eigenvectors().col(j) * es.eigenvectors().col(j).adjoint();
    }
  }

  const auto theta = plateau_on_interval(bumps.theta_lo, bumps.theta_hi);
  const DMat th = DMat(
      es.apply_function([&](double x) { return cplx(theta(x), 0.0); }).mat());
  const DMat left = pperp * th;

  std::vector<long> kept;
  for (long j = 0; j < dim; ++j)
    if (!candidate[j] && theta(es.eigenvalues()[j]) > 1e-14) kept.push_back(j);
  require(!kept.empty(), Err::precondition, "theta window misses the spectrum");
  DMat basis(dim, long(kept.size()));
  for (size_t c = 0; c < kept.size(); ++c) basis.col(long(c)) = es.eigenvectors().col(kept[c]);

  const DMat hd = DMat(h.mat());
  const LatOp a = build_dilation_generator(dom);

  WeightedGapScan scan;
  scan.r_grid = r_grid;
  scan.gamma = gamma;
  double best = -std::numeric_limits<double>::infinity();
  for (int r : r_grid) {
    WeightSpec ps = wspec;
    ps.scale_R = r;
    ps.variant = WeightSpec::Variant::phi;
    const DMat phi = DMat(weight_operator(a, ps).mat());
    ps.variant = WeightSpec::Variant::phi_prime;
    const DMat wprime = DMat(weight_operator(a, ps).mat());
    const DMat form = left * (kI * (hd * phi - phi * hd)) * left.adjoint();
    const DMat rhs = (gamma / (3.0 * r)) * (left * wprime * left.adjoint());
    const DMat gap = basis.adjoint() * (form - rhs) * basis;
    Eigen::SelfAdjointEigenSolver<DMat> eig(0.5 * (gap + gap.adjoint()),
                                            Eigen::EigenvaluesOnly);
    const double m = eig.eigenvalues().minCoeff();
    scan.gap_by_r.push_back(m);
    if (m > best) {
      best = m;
      scan.min_gap = m;
      scan.r_scale = r;
      scan.rhs_norm = operator_norm_dense(rhs);
    }
  }
  scan.satisfied = best >= -tol;
  return scan;
}

}  // namespace lapbox
