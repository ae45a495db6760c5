#include "core/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "core/rng.hpp"

namespace lapbox {

bool interval_takes(double lambda, double lo, double hi) {
  constexpr double kSnap = 1e-9;
  if (std::abs(lambda - lo) <= kSnap) return false;
  if (std::abs(lambda - hi) <= kSnap) return true;
  return lambda > lo && lambda < hi;
}

EigenSystem::EigenSystem(const LatOp& t, long dense_cap) : dom_(t.domain_ptr()) {
  require(t.is_hermitian(), Err::not_hermitian, "eigendecomposition needs a hermitian operator");
  require(t.dim() <= dense_cap, Err::unsupported,
          "operator exceeds the dense eigendecomposition cap");
  Eigen::SelfAdjointEigenSolver<DMat> es{DMat(t.mat())};
  require(es.info() == Eigen::Success, Err::solver_failure, "dense eigendecomposition failed");
  evals_ = es.eigenvalues();
  evecs_ = es.eigenvectors();
}

namespace {

/* (m + m^*)/2 evaluated so the result is conjugate symmetric bit-for-bit;
   needed because the hermitian factory checks stored entries exactly. */
DMat exact_symmetrize(const DMat& m) {
  DMat out(m.rows(), m.cols());
  for (long r = 0; r < m.rows(); ++r)
    for (long c = 0; c < m.cols(); ++c) out(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
  return out;
}

}  // namespace

LatOp EigenSystem::spectral_projector(double lo, double hi) const {
  std::vector<long> take;
  for (long j = 0; j < size(); ++j)
    if (interval_takes(evals_[j], lo, hi)) take.push_back(j);
  if (take.empty()) return LatOp::hermitian(dom_, SpMat(evecs_.rows(), evecs_.rows()));
  DMat sel(evecs_.rows(), static_cast<long>(take.size()));
  for (std::size_t c = 0; c < take.size(); ++c) sel.col(static_cast<long>(c)) = evecs_.col(take[c]);
  return LatOp::hermitian(dom_, to_sparse(exact_symmetrize(sel * sel.adjoint())));
}

LatOp EigenSystem::apply_function(const std::function<cplx(double)>& f) const {
  DVec fv(size());
  bool real_valued = true;
  for (long j = 0; j < size(); ++j) {
    const cplx w = f(evals_[j]);
    require(std::isfinite(w.real()) && std::isfinite(w.imag()), Err::invalid_argument,
            "function is not finite at an eigenvalue");
    real_valued = real_valued && w.imag() == 0.0;
    fv[j] = w;
  }
  DMat m = evecs_ * fv.asDiagonal() * evecs_.adjoint();
  if (!real_valued) return LatOp::general(dom_, to_sparse(m));
  return LatOp::hermitian(dom_, to_sparse(exact_symmetrize(m)));
}

Resolvent::Resolvent(const LatOp& t, cplx z) : dom_(t.domain_ptr()), z_(z) {
  require(z.imag() != 0.0, Err::precondition,
          "resolvent shift must have a nonzero imaginary part");
  const long n = t.dim();
  SpMatCol id(n, n);
  id.setIdentity();
  shifted_ = SpMatCol(t.mat()) - z * id;
  shifted_.makeCompressed();
  lu_.compute(shifted_);
  require(lu_.info() == Eigen::Success, Err::solver_failure, "shifted factorization failed");
}

DVec Resolvent::solve(const DVec& b) const {
  require(b.size() == shifted_.rows(), Err::dimension_mismatch, "solve vector length mismatch");
  DVec x = lu_.solve(b);
  const double nb = b.norm();
  double res = (shifted_ * x - b).norm();
  if (res > 1e-10 * nb) {
    x += lu_.solve(b - shifted_ * x); /* one refinement step */
    res = (shifted_ * x - b).norm();
  }
  require(res <= 1e-10 * nb, Err::solver_failure,
          "resolvent solve residual " + std::to_string(res) + " exceeds tolerance");
  return x;
}

DVec resolvent_apply(const LatOp& t, cplx z, const DVec& b) { return Resolvent(t, z).solve(b); }

double operator_norm_callback(long n, const std::function<DVec(const DVec&)>& apply,
                              const std::function<DVec(const DVec&)>& apply_adjoint) {
  require(n >= 1, Err::invalid_argument, "operator norm needs a positive dimension");
  const long block = std::min<long>(4, n);
  SplitMix64 g(0x9042be5eedULL);
  DMat basis(n, block);
  for (long c = 0; c < block; ++c)
    for (long r = 0; r < n; ++r) basis(r, c) = g.complex_symmetric();
  auto orthonormalize = [&](const DMat& m) {
    Eigen::HouseholderQR<DMat> qr(m);
    return DMat(qr.householderQ() * DMat::Identity(n, block));
  };
  basis = orthonormalize(basis);

  constexpr int kMaxIter = 50000;
  constexpr double kRelTol = 1e-8;
  double prev = -1.0;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    DMat w(n, block);
    for (long c = 0; c < block; ++c) w.col(c) = apply_adjoint(apply(basis.col(c)));
    if (w.norm() == 0.0) return 0.0;
    /* Rayleigh block: top eigenvalue of B^* (X^*X) B estimates sigma^2. */
    DMat s = basis.adjoint() * w;
    Eigen::SelfAdjointEigenSolver<DMat> es(0.5 * (s + s.adjoint()));
    const double sigma = std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
    if (prev >= 0.0 && std::abs(sigma - prev) <= kRelTol * std::max(sigma, 1e-300)) return sigma;
    prev = sigma;
    basis = orthonormalize(w);
  }
  throw Error(Err::solver_failure, "operator norm power iteration did not converge");
}

double operator_norm(const LatOp& x) {
  const SpMat& m = x.mat();
  SpMat adj = SpMat(m.adjoint());
  return operator_norm_callback(
      x.dim(), [&m](const DVec& v) { return DVec(m * v); },
      [&adj](const DVec& v) { return DVec(adj * v); });
}

double operator_norm_dense(const DMat& x) {
  require(x.rows() == x.cols(), Err::dimension_mismatch, "operator norm needs a square matrix");
  DMat adj = x.adjoint();
  return operator_norm_callback(
      x.rows(), [&x](const DVec& v) { return DVec(x * v); },
      [&adj](const DVec& v) { return DVec(adj * v); });
}

}  // namespace lapbox
