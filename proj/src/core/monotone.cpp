#include "core/monotone.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <Eigen/Eigenvalues>

#include "core/builders.hpp"
#include "core/polylog.hpp"
#include "core/rng.hpp"
#include "core/spectral.hpp"
#include "core/weights.hpp"
#include "json.hpp"

namespace lapbox {

namespace {

double min_eigenvalue(const DMat& h) {
  Eigen::SelfAdjointEigenSolver<DMat> es(DMat(0.5 * (h + h.adjoint())),
                                         Eigen::EigenvaluesOnly);
  require(es.info() == Eigen::Success, Err::solver_failure, "eigensolve failed");
  return es.eigenvalues()(0);
}

double max_eigenvalue(const DMat& h) {
  Eigen::SelfAdjointEigenSolver<DMat> es(DMat(0.5 * (h + h.adjoint())),
                                         Eigen::EigenvaluesOnly);
  require(es.info() == Eigen::Success, Err::solver_failure, "eigensolve failed");
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

DMat dense_function(const DMat& h, const std::function<double(double)>& f) {
  Eigen::SelfAdjointEigenSolver<DMat> es(DMat(0.5 * (h + h.adjoint())));
  require(es.info() == Eigen::Success, Err::solver_failure, "eigensolve failed");
  DVec fd(es.eigenvalues().size());
  for (long i = 0; i < fd.size(); ++i) {
    const double v = f(es.eigenvalues()(i));
    require(std::isfinite(v), Err::invalid_argument, "function not finite on the spectrum");
    fd(i) = v;
  }
  return es.eigenvectors() * fd.asDiagonal() * es.eigenvectors().adjoint();
}

/* Fractional power of a PSD matrix; eigenvalue round-off below zero is
   clipped before pow. */
DMat psd_power(const DMat& h, double alpha) {
  return dense_function(h, [alpha](double v) { return std::pow(std::max(v, 0.0), alpha); });
}

FormInequalityReport make_report(double min_eig, double tol) {
  return {min_eig, min_eig < -tol, tol};
}

std::vector<long> interior_indices(const BoxDomain& dom, long margin) {
  std::vector<long> idx;
  for (long i = 0; i < dom.size(); ++i)
    if (dom.boundary_distance(i) >= margin) idx.push_back(i);
  return idx;
}

/* Interior compressions of A^2+1 (dense) and of the diagonal 1+|n|^2; on
   vectors supported >= 2 sites inside, the box forms equal the full-lattice
   forms, so the domination inequality transfers verbatim. */
void interior_pair(int d, int r_box, DMat& a_sq, RVec& n_sq) {
  DomainPtr dom = make_domain(d, r_box);
  const DMat a = DMat(build_dilation_generator(dom).mat());
  const std::vector<long> idx = interior_indices(*dom, 2);
  require(!idx.empty(), Err::invalid_argument, "box too small for an interior subspace");
  const DMat full = a * a + DMat::Identity(a.rows(), a.cols());
  a_sq = full(idx, idx);
  n_sq.resize(long(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) {
    double sq = 1.0;
    for (long c : dom->point(idx[j])) sq += double(c) * double(c);
    n_sq(long(j)) = sq;
  }
}

double euclid(const std::vector<long>& pt) {
  double sq = 0.0;
  for (long c : pt) sq += double(c) * double(c);
  return std::sqrt(sq);
}

nlohmann::json matrix_to_json(const DMat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (long r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (long c = 0; c < m.cols(); ++c)
      row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

DMat matrix_from_json(const nlohmann::json& rows) {
  const long n = long(rows.size());
  require(n > 0, Err::io_error, "empty matrix in fixture");
  DMat m(n, n);
  for (long r = 0; r < n; ++r) {
    require(long(rows[r].size()) == n, Err::io_error, "ragged matrix in fixture");
    for (long c = 0; c < n; ++c)
      m(r, c) = cplx(rows[r][c][0].get<double>(), rows[r][c][1].get<double>());
  }
  return m;
}

}  // namespace

FormInequalityReport check_form_inequality(const LatOp& x, const LatOp& y, double tol) {
  require(x.is_hermitian() && y.is_hermitian(), Err::not_hermitian,
          "form inequality needs Hermitian operators");
  const LatOp diff = y - x; /* also enforces matching domains */
  return make_report(min_eigenvalue(DMat(diff.mat())), tol);
}

double domination_constant(int d) {
  require(d >= 1, Err::invalid_argument, "dimension must be positive");
  const double dd = d;
  return std::max(dd * dd * dd + dd * dd + 1.0, 4.0 * (dd + 1.0));
}

FormInequalityReport verify_A_dominated_by_N(int d, int r_box, double alpha) {
  require(alpha >= 0.0 && alpha <= 1.0, Err::invalid_argument, "alpha must be in [0,1]");
  DMat a_sq;
  RVec n_sq;
  interior_pair(d, r_box, a_sq, n_sq);
  const double cd = domination_constant(d);
  const DMat lhs = psd_power(a_sq, alpha);
  DMat rhs = DMat::Zero(a_sq.rows(), a_sq.cols());
  for (long i = 0; i < n_sq.size(); ++i) rhs(i, i) = std::pow(cd * n_sq(i), alpha);
  return make_report(min_eigenvalue(rhs - lhs), 1e-10);
}

FormInequalityReport heinz_report_dense(const DMat& x, const DMat& y,
                                        const std::vector<double>& alphas) {
  require(x.rows() == y.rows() && x.cols() == y.cols(), Err::dimension_mismatch,
          "size mismatch");
  require(min_eigenvalue(x) >= -1e-10, Err::precondition, "X must be positive");
  require(min_eigenvalue(y - x) >= -1e-10, Err::precondition, "X <= Y must hold");
  FormInequalityReport worst = make_report(std::numeric_limits<double>::infinity(), 1e-10);
  for (double alpha : alphas) {
    require(alpha >= 0.0 && alpha <= 1.0, Err::invalid_argument, "alpha must be in [0,1]");
    const double m = min_eigenvalue(psd_power(y, alpha) - psd_power(x, alpha));
    if (m < worst.min_eigenvalue_of_difference) worst = make_report(m, 1e-10);
  }
  return worst;
}

FormInequalityReport verify_heinz(const LatOp& x, const LatOp& y,
                                  const std::vector<double>& alphas) {
  require(x.is_hermitian() && y.is_hermitian(), Err::not_hermitian,
          "Heinz needs Hermitian operators");
  (void)(y - x);
  return heinz_report_dense(DMat(x.mat()), DMat(y.mat()), alphas);
}

std::vector<FormInequalityReport> power_domination_report(int d, int r_box, int n_lo,
                                                          int n_hi) {
  require(n_lo >= 1 && n_hi >= n_lo, Err::invalid_argument, "bad power range");
  DMat a_sq;
  RVec n_sq;
  interior_pair(d, r_box, a_sq, n_sq);
  const double cd = domination_constant(d);
  std::vector<FormInequalityReport> reports;
  for (int n = n_lo; n <= n_hi; ++n) {
    const double half = 0.5 * n;
    const DMat lhs = psd_power(a_sq, half);
    DMat rhs = DMat::Zero(a_sq.rows(), a_sq.cols());
    for (long i = 0; i < n_sq.size(); ++i) rhs(i, i) = std::pow(cd * n_sq(i), half);
    reports.push_back(make_report(min_eigenvalue(rhs - lhs), 1e-10));
  }
  return reports;
}

MonotoneSuiteResult matrix_monotone_suite(const std::function<double(double)>& f, double a,
                                          double b, int n_max, int trials,
                                          std::uint64_t seed, double tol) {
  require(n_max >= 2, Err::invalid_argument, "need sizes >= 2");
  require(trials >= 1, Err::invalid_argument, "need at least one trial");
  require(b > a, Err::invalid_argument, "empty interval");
  MonotoneSuiteResult result;
  result.worst_min_eigenvalue = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t tseed = derive_seed(seed, std::uint64_t(trial));
    SplitMix64 rng(tseed);
    const long n = 2 + long(trial % (n_max - 1));
    /* per-trial sub-window of (a,b), log-uniform in offset and width, so the
       search visits tight clusters near the left endpoint as well as wide
       spreads; monotonicity failures tend to hide at small scales */
    double lo, hi;
    if (std::isinf(b)) {
      lo = a + std::pow(10.0, -2.0 + 3.0 * rng.uniform());
      hi = lo + std::pow(10.0, -2.0 + 3.5 * rng.uniform());
    } else {
      const double span = b - a;
      lo = a + span * std::pow(10.0, -3.0 + 2.3 * rng.uniform());
      hi = lo + (b - 0.001 * span - lo) * std::pow(10.0, -2.0 + 2.0 * rng.uniform());
    }
    DMat raw(n, n);
    for (long r = 0; r < n; ++r) {
      raw(r, r) = rng.symmetric();
      for (long c = r + 1; c < n; ++c) {
        raw(r, c) = rng.complex_symmetric();
        raw(c, r) = std::conj(raw(r, c));
      }
    }
    /* affine-map the raw spectrum into the lower 60% of the window */
    const double rlo = min_eigenvalue(raw), rhi = max_eigenvalue(raw);
    const double span = std::max(rhi - rlo, 1e-12);
    const double alo = lo, ahi = lo + 0.6 * (hi - lo);
    DMat A = ((ahi - alo) / span) * (raw - rlo * DMat::Identity(n, n)) +
             alo * DMat::Identity(n, n);
    DMat g(n, n);
    for (long r = 0; r < n; ++r)
      for (long c = 0; c < n; ++c) g(r, c) = rng.complex_symmetric();
    DMat bump = g.adjoint() * g;
    bump /= max_eigenvalue(bump);
    /* bisect the bump scale until the top of the spectrum fits */
    double t = 4.0 * (hi - max_eigenvalue(A));
    int halvings = 0;
    while (max_eigenvalue(A + t * bump) > hi) {
      require(++halvings <= 60, Err::solver_failure,
              "could not keep the sampled spectrum inside the interval");
      t *= 0.5;
    }
    const DMat B = A + t * bump;
    const double m = min_eigenvalue(dense_function(B, f) - dense_function(A, f));
    ++result.trials_run;
    if (m < result.worst_min_eigenvalue) result.worst_min_eigenvalue = m;
    if (m < -tol && !result.violation_found) {
      result.violation_found = true;
      result.counterexample = MonotoneCounterexample{A, B, m, tseed};
    }
  }
  return result;
}

void write_counterexample_json(const std::string& path, const std::string& f_id,
                               const MonotoneCounterexample& ce) {
  nlohmann::json j;
  j["function"] = f_id;
  j["violation"] = ce.violation;
  j["trial_seed"] = ce.trial_seed;
  j["a"] = matrix_to_json(ce.a);
  j["b"] = matrix_to_json(ce.b);
  std::ofstream out(path);
  require(out.good(), Err::io_error, "cannot open fixture for writing: " + path);
  out << j.dump(2) << "\n";
  require(out.good(), Err::io_error, "failed writing fixture: " + path);
}

MonotoneCounterexample read_counterexample_json(const std::string& path, std::string* f_id) {
  std::ifstream in(path);
  require(in.good(), Err::io_error, "cannot open fixture: " + path);
  nlohmann::json j;
  in >> j;
  MonotoneCounterexample ce;
  ce.a = matrix_from_json(j.at("a"));
  ce.b = matrix_from_json(j.at("b"));
  ce.violation = j.at("violation").get<double>();
  ce.trial_seed = j.at("trial_seed").get<std::uint64_t>();
  if (f_id) *f_id = j.at("function").get<std::string>();
  return ce;
}

BoundednessCurve boundedness_curve(CurveKind kind, int d, const std::vector<int>& radii,
                                   const CurveParams& par) {
  require(!radii.empty(), Err::invalid_argument, "need at least one radius");
  require(std::is_sorted(radii.begin(), radii.end()), Err::invalid_argument,
          "radii must ascend");
  const double cd = domination_constant(d);
  const double root_cd = std::sqrt(cd);
  /* f acts on the dilation spectrum, g on the position diagonal */
  std::function<double(double)> fa;
  std::function<double(double)> gn;
  switch (kind) {
    case CurveKind::phi_ratio:
      fa = [&](double v) { return std::pow(phi_poly(par.n, jbracket(v)), par.alpha); };
      gn = [&](double v) { return std::pow(phi_poly(par.n, root_cd * jbracket(v)), -par.alpha); };
      break;
    case CurveKind::phi_log_ratio:
      fa = [&](double v) {
        return std::pow(phi_poly(par.n, iterated_log(par.k, jbracket(v))), par.alpha);
      };
      gn = [&](double v) {
        return std::pow(phi_poly(par.n, iterated_log(par.k, root_cd * jbracket(v))),
                        -par.alpha);
      };
      break;
    case CurveKind::log_ratio:
      fa = [&](double v) { return std::pow(std::log1p(jbracket(v)), par.p); };
      gn = [&](double v) { return std::pow(std::log1p(jbracket(v)), -par.p); };
      break;
    case CurveKind::iterlog_ratio:
      fa = [&](double v) { return std::pow(iterated_log(par.k, jbracket(v)), par.p); };
      gn = [&](double v) { return std::pow(iterated_log(par.k, jbracket(v)), -par.p); };
      break;
    case CurveKind::logprod_ratio:
      fa = [&](double v) { return w_scalar(par.m, par.p, 1.0, v); };
      gn = [&](double v) { return w_scalar(par.m, -par.p, -1.0, v); };
      break;
    case CurveKind::weight_transfer:
      fa = [&](double v) {
        return std::sqrt(jbracket(v)) * std::pow(std::log1p(jbracket(v)), par.p);
      };
      gn = [&](double v) {
        return std::pow(std::log1p(jbracket(v)), -par.p) / std::sqrt(jbracket(v));
      };
      break;
    case CurveKind::swapped_control:
      /* position weight on the growing side, exponent beyond the claim */
      fa = [&](double v) {
        return std::pow(std::log1p(jbracket(v)), -3.0) / std::sqrt(jbracket(v));
      };
      gn = [&](double v) {
        return std::sqrt(jbracket(v)) * std::pow(std::log1p(jbracket(v)), 3.0);
      };
      break;
    case CurveKind::commutator_class:
      break;
  }
  BoundednessCurve curve;
  for (int r : radii) {
    DomainPtr dom = make_domain(d, r);
    const LatOp gen = build_dilation_generator(dom);
    double norm;
    if (kind == CurveKind::commutator_class) {
      const LatOp decay = build_diagonal(dom, [&](const std::vector<long>& pt) {
        return w_scalar(par.m, 0.0, -par.sigma, euclid(pt));
      });
      norm = operator_norm(commutator(gen, decay));
    } else {
      const EigenSystem es(gen);
      const LatOp left = es.apply_function([&](double v) { return cplx(fa(v), 0.0); });
      const LatOp right =
          build_diagonal(dom, [&](const std::vector<long>& pt) { return gn(euclid(pt)); });
      norm = operator_norm(left * right);
    }
    curve.box_radii.push_back(r);
    curve.norms.push_back(norm);
  }
  return curve;
}

double scalar_bound_value(ScalarBoundKind kind, const ScalarBoundParams& par, double x,
                          double y, double t) {
  require(std::abs(y) <= par.c * jbracket(x), Err::invalid_argument,
          "(x,y) outside the cone");
  if (y == 0.0 && t == x) throw Error(Err::invalid_argument, "excluded diagonal point");
  const double core = y * y / ((t - x) * (t - x) + y * y);
  const double jt = jbracket(t), jx = jbracket(x);
  double v = std::pow(jt / jx, 2.0 * par.s) * core;
  switch (kind) {
    case ScalarBoundKind::resolvent_power:
      require(par.s >= 0.0 && par.s <= 1.0, Err::invalid_argument, "s must be in [0,1]");
      break;
    case ScalarBoundKind::resolvent_power_log:
      require(par.s > 0.0 && par.s < 1.0, Err::invalid_argument, "s must be in (0,1)");
      v *= std::pow(std::log1p(jt) / std::log1p(jx), 2.0 * par.p);
      break;
    case ScalarBoundKind::resolvent_power_iterlog:
      require(par.s > 0.0 && par.s < 1.0, Err::invalid_argument, "s must be in (0,1)");
      v *= std::pow(w_scalar(par.m, par.p, par.q, t) / w_scalar(par.m, par.p, par.q, x),
                    2.0);
      break;
  }
  return v;
}

double scalar_bound_sup(ScalarBoundKind kind, const ScalarBoundParams& par, int points) {
  require(points >= 4, Err::invalid_argument, "grid too small");
  /* log-spaced axes, nested under doubling of `points` so refinement can only
     raise the recorded sup; near-diagonal t samples track the peak of the
     Poisson factor, whose width is set by y rather than by the decade grid */
  std::vector<double> xs{0.0}, ts{0.0}, fracs;
  for (int i = 0; i <= points; ++i) {
    const double ex = -2.0 + 8.0 * i / double(points);
    xs.push_back(std::pow(10.0, ex));
    xs.push_back(-std::pow(10.0, ex));
    const double et = -2.0 + 10.0 * i / double(points);
    ts.push_back(std::pow(10.0, et));
    ts.push_back(-std::pow(10.0, et));
    fracs.push_back(std::pow(10.0, -6.0 * i / double(points)));
  }
  static const double kNearDiag[] = {0.25, 0.5, 1.0, 2.0, 4.0};
  double sup = 0.0;
  for (double x : xs)
    for (double fr : fracs) {
      const double y = fr * par.c * jbracket(x);
      for (double t : ts) sup = std::max(sup, scalar_bound_value(kind, par, x, y, t));
      sup = std::max(sup, scalar_bound_value(kind, par, x, y, x));
      for (double tau : kNearDiag) {
        sup = std::max(sup, scalar_bound_value(kind, par, x, y, x + tau * y));
        sup = std::max(sup, scalar_bound_value(kind, par, x, y, x - tau * y));
      }
    }
  return sup;
}

}  // namespace lapbox
