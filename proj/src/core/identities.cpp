#include "core/identities.hpp"

namespace lapbox {

namespace {

const cplx kI(0.0, 1.0);

void check_margin(const BoxDomain& dom, long margin) {
  require(margin >= 0 && margin < dom.radius(), Err::invalid_argument,
          "margin must satisfy 0 <= margin < R");
}

/* [X, iA] = i (XA - AX). */
LatOp commutator_with_ia(const LatOp& x, const LatOp& a) { return kI * commutator(x, a); }

}  // namespace

double interior_column_residual(const LatOp& diff, long margin) {
  const BoxDomain& dom = diff.domain();
  std::vector<double> colsq(diff.dim(), 0.0);
  const SpMat& m = diff.mat();
  for (long r = 0; r < m.outerSize(); ++r)
    for (SpMat::InnerIterator it(m, r); it; ++it) colsq[it.col()] += std::norm(it.value());
  double worst = 0.0;
  for (long c = 0; c < diff.dim(); ++c)
    if (dom.boundary_distance(c) >= margin) worst = std::max(worst, colsq[c]);
  return std::sqrt(worst);
}

LatOp closed_commutator_laplacian(DomainPtr dom) {
  /* sum_k Delta_k (4 - Delta_k) */
  LatOp id = identity_op(dom);
  LatOp rhs = LatOp::general(dom, SpMat(dom->size(), dom->size()));
  for (int ax = 1; ax <= dom->dim(); ++ax) {
    LatOp dk = build_axis_laplacian(dom, ax);
    rhs = rhs + dk * (cplx(4.0, 0.0) * id - dk);
  }
  return rhs;
}

double verify_commutator_identity_laplacian(DomainPtr dom, long margin) {
  check_margin(*dom, margin);
  LatOp lap = build_laplacian(dom);
  LatOp a = build_dilation_generator(dom);
  LatOp lhs = commutator_with_ia(lap, a);
  return interior_column_residual(lhs - closed_commutator_laplacian(dom), margin);
}

LatOp closed_commutator_wigner(DomainPtr dom, const PotentialSpec& spec) {
  require(spec.kind == PotentialSpec::Kind::wigner, Err::invalid_argument,
          "oscillating-potential commutator needs the oscillating kind");
  LatOp w = build_potential(dom, spec);
  /* K_W = (W H1 + H1 W)/2 with H1 = sum_i (S_i^* + S_i);
     B_W = sum_i U_i Wt (S_i^* - S_i) - (S_i^* - S_i) Wt U_i. */
  LatOp wt = build_diagonal(dom, [&spec](const std::vector<long>& pt) {
    long s = 0;
    for (long c : pt) s += c;
    return spec.w * std::sin(spec.k * static_cast<double>(s));
  });
  const long n = dom->size();
  LatOp rhs = LatOp::general(dom, SpMat(n, n));
  LatOp hop_sum = LatOp::general(dom, SpMat(n, n));
  for (int ax = 1; ax <= dom->dim(); ++ax) {
    LatOp s = build_shift(dom, ax);
    hop_sum = hop_sum + (s.adjoint() + s);
    LatOp skew = s.adjoint() - s;
    LatOp u = build_diagonal(dom, [ax](const std::vector<long>& pt) {
      double sq = 0.0;
      for (long c : pt) sq += static_cast<double>(c) * static_cast<double>(c);
      return sq == 0.0 ? 0.0 : static_cast<double>(pt[ax - 1]) / std::sqrt(sq);
    });
    rhs = rhs + (u * wt * skew - skew * wt * u);
  }
  return rhs + cplx(0.5, 0.0) * (w * hop_sum + hop_sum * w);
}

double verify_commutator_identity_wigner(DomainPtr dom, const PotentialSpec& spec, long margin) {
  check_margin(*dom, margin);
  LatOp w = build_potential(dom, spec);
  LatOp a = build_dilation_generator(dom);
  LatOp lhs = commutator_with_ia(w, a);
  return interior_column_residual(lhs - closed_commutator_wigner(dom, spec), margin);
}

LatOp closed_commutator_potential(DomainPtr dom, const PotentialSpec& spec) {
  require(spec.kind != PotentialSpec::Kind::custom_table, Err::unsupported,
          "shifted-potential values off the box need a closed form");
  LatOp v = build_potential(dom, spec);
  /* sum_i (1/2 - N_i)(V - tau_i V) S_i + (1/2 + N_i)(V - tau_i^* V) S_i^*,
     where (tau_i V)(n) = V(n - e_i); off-box arguments use the scalar form. */
  const long n = dom->size();
  LatOp id = identity_op(dom);
  LatOp rhs = LatOp::general(dom, SpMat(n, n));
  for (int ax = 1; ax <= dom->dim(); ++ax) {
    LatOp s = build_shift(dom, ax);
    LatOp ni = build_position(dom, ax);
    LatOp tau = build_diagonal(dom, [&spec, ax](std::vector<long> pt) {
      pt[ax - 1] -= 1;
      return potential_value(spec, pt);
    });
    LatOp tau_star = build_diagonal(dom, [&spec, ax](std::vector<long> pt) {
      pt[ax - 1] += 1;
      return potential_value(spec, pt);
    });
    rhs = rhs + (cplx(0.5, 0.0) * id - ni) * (v - tau) * s +
          (cplx(0.5, 0.0) * id + ni) * (v - tau_star) * s.adjoint();
  }
  return rhs;
}

double verify_commutator_identity_potential(DomainPtr dom, const PotentialSpec& spec, long margin) {
  check_margin(*dom, margin);
  LatOp v = build_potential(dom, spec);
  LatOp a = build_dilation_generator(dom);
  LatOp lhs = commutator_with_ia(v, a);
  return interior_column_residual(lhs - closed_commutator_potential(dom, spec), margin);
}

}  // namespace lapbox
