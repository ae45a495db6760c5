#include "core/mourre.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <Eigen/Eigenvalues>

#include "core/bump.hpp"
#include "core/identities.hpp"
#include "core/spectral.hpp"

namespace lapbox {

namespace {

const cplx kI(0.0, 1.0);
constexpr double kPi = 3.14159265358979323846;

double min_eig_hermitized(const DMat& h) {
  Eigen::SelfAdjointEigenSolver<DMat> es(DMat(0.5 * (h + h.adjoint())),
                                         Eigen::EigenvaluesOnly);
  require(es.info() == Eigen::Success, Err::solver_failure, "dense eigensolve failed");
  return es.eigenvalues()(0);
}

double norm_hermitized(const DMat& h) {
  if (h.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<DMat> es(DMat(0.5 * (h + h.adjoint())),
                                         Eigen::EigenvaluesOnly);
  require(es.info() == Eigen::Success, Err::solver_failure, "dense eigensolve failed");
  return std::max(std::abs(es.eigenvalues()(0)),
                  std::abs(es.eigenvalues()(es.eigenvalues().size() - 1)));
}

/* Pure oscillation amplitude * sin(k * (n_1 + ... + n_d)). */
LatOp build_oscillation(DomainPtr dom, double k, double amplitude) {
  return build_diagonal(dom, [k, amplitude](const std::vector<long>& pt) {
    long s = 0;
    for (long c : pt) s += c;
    return amplitude * std::sin(k * static_cast<double>(s));
  });
}

}  // namespace

ThresholdSet thresholds(int d) {
  require(d >= 1, Err::invalid_argument, "dimension must be >= 1");
  ThresholdSet set;
  set.d = d;
  for (int j = 0; j <= d; ++j) set.values.push_back(4.0 * j);
  return set;
}

CriticalEnergies critical_energies(int d, double k) {
  require(d >= 1, Err::invalid_argument, "dimension must be >= 1");
  require(k > 0.0 && k < 2.0 * kPi, Err::invalid_argument,
          "frequency must lie in (0, 2*pi)");
  require(std::abs(k - kPi) > 1e-12, Err::invalid_argument,
          "frequency pi collapses the band-edge pair");
  CriticalEnergies ce;
  const double c = std::cos(0.5 * k);
  ce.e_minus = 2.0 - 2.0 * c;
  ce.e_plus = 2.0 + 2.0 * c;
  ce.e_of_k = k < kPi ? 4.0 - 4.0 * c : 4.0 + 4.0 * c;
  if (d == 1) {
    const double lo = std::min(ce.e_minus, ce.e_plus);
    const double hi = std::max(ce.e_minus, ce.e_plus);
    ce.good_intervals = {{0.0, lo}, {lo, hi}, {hi, 4.0}};
  } else {
    ce.good_intervals = {{0.0, ce.e_of_k}, {4.0 * d - ce.e_of_k, 4.0 * d}};
  }
  return ce;
}

double rho_delta(double e, int d) {
  require(d >= 1, Err::invalid_argument, "dimension must be >= 1");
  require(e > 0.0 && e < 4.0 * d, Err::invalid_argument,
          "energy outside the open spectrum (0, 4d)");
  require(std::fmod(e, 4.0) != 0.0, Err::invalid_argument,
          "the band bound vanishes at a threshold");
  const double t_lo = 4.0 * std::floor(e / 4.0);
  return -(e - t_lo) * (e - t_lo - 4.0);
}

BandSplitReport verify_bk_decomposition(DomainPtr dom, int k_band, long margin) {
  const int d = dom->dim();
  require(k_band >= 1 && k_band <= d, Err::invalid_argument, "band index outside 1..d");
  require(margin >= 2 && margin < dom->radius(), Err::invalid_argument,
          "need 2 <= margin < R");
  LatOp lap = build_laplacian(dom);
  LatOp gen = build_dilation_generator(dom);
  LatOp lhs = kI * commutator(lap, gen);

  LatOp id = identity_op(dom);
  const double t_lo = 4.0 * (k_band - 1), t_hi = 4.0 * k_band;
  LatOp quad = cplx(-1.0, 0.0) * ((lap - cplx(t_lo, 0.0) * id) * (lap - cplx(t_hi, 0.0) * id));
  /* b_k = -8(k-1)Delta + 16k(k-1) + sum over distinct axis pairs */
  LatOp remainder = cplx(-8.0 * (k_band - 1), 0.0) * lap +
                    cplx(16.0 * k_band * (k_band - 1), 0.0) * id;
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j) {
      if (i == j) continue;
      remainder = remainder + build_axis_laplacian(dom, i) * build_axis_laplacian(dom, j);
    }

  BandSplitReport report;
  report.residual = interior_column_residual(lhs - (quad + remainder), margin);

  std::vector<long> idx;
  for (long i = 0; i < dom->size(); ++i)
    if (dom->boundary_distance(i) >= margin) idx.push_back(i);
  DMat full = DMat(remainder.mat());
  DMat sub(idx.size(), idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (std::size_t c = 0; c < idx.size(); ++c) sub(r, c) = full(idx[r], idx[c]);
  report.remainder_min_eigenvalue = idx.empty() ? 0.0 : min_eig_hermitized(sub);
  return report;
}

VanishingReport verify_vanishing(int d, const std::vector<int>& radii, double k,
                                 double i_lo, double i_hi, double amplitude,
                                 bool enforce_window,
                                 const std::function<double(double)>& theta) {
  require(radii.size() >= 2, Err::invalid_argument, "need at least two radii");
  require(std::is_sorted(radii.begin(), radii.end()) &&
              std::adjacent_find(radii.begin(), radii.end()) == radii.end(),
          Err::invalid_argument, "radii must be strictly ascending");
  require(i_lo < i_hi, Err::invalid_argument, "empty interval");
  const CriticalEnergies ce = critical_energies(d, k);
  if (enforce_window) {
    bool inside = false;
    for (const auto& g : ce.good_intervals)
      inside = inside || (g.first <= i_lo && i_hi <= g.second);
    require(inside, Err::precondition,
            "interval touches a band-edge energy; the cutoff product vanishes only "
            "strictly between the critical points");
  }
  const std::function<double(double)> profile =
      theta ? theta : bump_on_interval(i_lo, i_hi);

  VanishingReport report;
  for (int r : radii) {
    DomainPtr dom = make_domain(d, r);
    EigenSystem es(build_laplacian(dom));
    LatOp cutoff = es.apply_function([&profile](double x) { return cplx(profile(x), 0.0); });
    LatOp product = cutoff * build_oscillation(dom, k, amplitude) * cutoff;
    report.radii.push_back(r);
    report.norms.push_back(operator_norm(product));
  }
  const std::size_t n = report.norms.size();
  const double last = report.norms[n - 1], prev = report.norms[n - 2];
  report.decayed = last <= 1e-12 || (prev > 0.0 && last / prev <= 0.7);
  return report;
}

MourreWindow mourre_gap(DomainPtr dom, const std::optional<PotentialSpec>& v,
                        const std::optional<PotentialSpec>& w, double i_lo, double i_hi,
                        long margin) {
  require(i_lo < i_hi, Err::invalid_argument, "empty interval");
  require(margin >= 1 && margin < dom->radius(), Err::invalid_argument,
          "need 1 <= margin < R");
  const int d = dom->dim();
  if (w) {
    require(w->kind == PotentialSpec::Kind::wigner, Err::invalid_argument,
            "the oscillating part must be of the oscillating kind");
    const CriticalEnergies ce = critical_energies(d, w->k);
    if (d == 1) {
      require((ce.e_minus < i_lo || ce.e_minus > i_hi) &&
                  (ce.e_plus < i_lo || ce.e_plus > i_hi),
              Err::precondition, "window contains a band-edge energy of the oscillation");
    } else {
      require(i_hi < ce.e_of_k || i_lo > 4.0 * d - ce.e_of_k, Err::precondition,
              "window meets the central region where the oscillation couples bands");
    }
  } else {
    for (double t : thresholds(d).values)
      require(t <= i_lo || t >= i_hi, Err::precondition, "window contains a threshold");
  }

  LatOp h = build_laplacian(dom);
  LatOp commut = closed_commutator_laplacian(dom);
  if (v) {
    h = h + build_potential(dom, *v);
    commut = commut + closed_commutator_potential(dom, *v);
  }
  if (w) {
    h = h + build_potential(dom, *w);
    commut = commut + closed_commutator_wigner(dom, *w);
  }
  h = LatOp::hermitian(dom, h.mat());

  MourreWindow window;
  window.e = 0.5 * (i_lo + i_hi);
  window.i_lo = i_lo;
  window.i_hi = i_hi;

  EigenSystem es(h);
  std::vector<long> selected;
  for (long j = 0; j < es.size(); ++j)
    if (interval_takes(es.eigenvalues()(j), i_lo, i_hi)) selected.push_back(j);
  if (selected.empty()) {
    window.empty = true;
    window.gamma_lower = std::numeric_limits<double>::infinity();
    return window;
  }

  /* split the window eigenvectors by where their mass lives */
  std::vector<long> interior, boundary;
  for (long j : selected) {
    double core_mass = 0.0;
    for (long i = 0; i < dom->size(); ++i)
      if (dom->boundary_distance(i) >= margin) core_mass += std::norm(es.eigenvectors()(i, j));
    (core_mass >= 0.5 ? interior : boundary).push_back(j);
  }
  window.n_interior = static_cast<int>(interior.size());
  window.n_boundary = static_cast<int>(boundary.size());

  auto compress = [&](const std::vector<long>& cols) {
    DMat psi(dom->size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) psi.col(c) = es.eigenvectors().col(cols[c]);
    return DMat(psi.adjoint() * commut.mat() * psi);
  };
  window.gamma_lower = interior.empty() ? std::numeric_limits<double>::infinity()
                                        : min_eig_hermitized(compress(interior));
  window.compact_norm = boundary.empty() ? 0.0 : norm_hermitized(compress(boundary));
  return window;
}

void write_mourre_csv(const std::string& path, const std::vector<MourreScanRow>& rows) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  require(out != nullptr, Err::io_error, "cannot open for writing: " + path);
  bool ok = std::fprintf(out, "d,k,i_lo,i_hi,r_box,gamma_lower,compact_norm\n") > 0;
  for (const MourreScanRow& r : rows)
    ok = ok && std::fprintf(out, "%d,%.12g,%.12g,%.12g,%d,%.12g,%.12g\n", r.d, r.k, r.i_lo,
                            r.i_hi, r.r_box, r.gamma_lower, r.compact_norm) > 0;
  ok = std::fclose(out) == 0 && ok;
  require(ok, Err::io_error, "failed writing: " + path);
}

}  // namespace lapbox
