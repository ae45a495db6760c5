#pragma once

#include <functional>

#include <Eigen/SparseLU>

#include "core/lat_op.hpp"

namespace lapbox {

/* Open-interval membership with endpoint snapping: eigenvalues within 1e-9
   of the left endpoint are excluded, within 1e-9 of the right are included.
   Keeps projector ranks deterministic when an eigenvalue sits on an edge. */
bool interval_takes(double lambda, double lo, double hi);

inline constexpr long kDenseEigCap = 4096;

/* Full Hermitian eigendecomposition: ascending eigenvalues, orthonormal
   columns.  Sizes over the dense cap are rejected; nothing here needs a full
   spectrum at large scale, the sweeps use factorized solves instead. */
class EigenSystem {
 public:
  explicit EigenSystem(const LatOp& t, long dense_cap = kDenseEigCap);

  DomainPtr domain_ptr() const { return dom_; }
  long size() const { return evals_.size(); }
  const RVec& eigenvalues() const { return evals_; }
  const DMat& eigenvectors() const { return evecs_; }

  LatOp spectral_projector(double lo, double hi) const;
  LatOp apply_function(const std::function<cplx(double)>& f) const;

 private:
  DomainPtr dom_;
  RVec evals_;
  DMat evecs_;
};

/* Reusable complex shift factorization of (T - z); solves carry a residual
   guard of 1e-10 * |b|.  Immutable after construction, safe to share. */
class Resolvent {
 public:
  Resolvent(const LatOp& t, cplx z);
  cplx shift() const { return z_; }
  DVec solve(const DVec& b) const;

 private:
  DomainPtr dom_;
  SpMatCol shifted_;
  Eigen::SparseLU<SpMatCol> lu_;
  cplx z_;
};

DVec resolvent_apply(const LatOp& t, cplx z, const DVec& b);

/* Largest singular value by block power iteration on X*X, relative accuracy
   1e-8; the callback form serves implicit operators (resolvent sweeps). */
double operator_norm(const LatOp& x);
double operator_norm_dense(const DMat& x);
double operator_norm_callback(long n, const std::function<DVec(const DVec&)>& apply,
                              const std::function<DVec(const DVec&)>& apply_adjoint);

}  // namespace lapbox
