#pragma once

#include <vector>

#include "core/lat_op.hpp"

namespace lapbox {

struct PotentialSpec {
  enum class Kind { wigner, hypothesis_h, custom_table };
  Kind kind = Kind::wigner;
  double w = 1.0;   /* oscillation amplitude */
  double k = 1.0;   /* oscillation frequency, valid in (0,2pi) minus pi */
  int m = 0;        /* iterated-log depth */
  double r = 0.0;   /* inner-log exponent, 0 <= r < q */
  double q = 1.0;   /* outer-log exponent */
  double c_amp = 1.0;
  std::vector<double> table; /* custom_table: one value per site, enumeration order */
  void validate() const;
};

/* Scalar value of the potential at a lattice point; the oscillating kind is
   set to 0 at the origin, where sin(k|n|...)/|n| has no canonical value. */
double potential_value(const PotentialSpec& spec, const std::vector<long>& pt);

LatOp identity_op(DomainPtr dom);
LatOp build_laplacian(DomainPtr dom);
LatOp build_axis_laplacian(DomainPtr dom, int axis); /* 2 - S_i - S_i^* */
LatOp build_shift(DomainPtr dom, int axis);          /* axis in 1..d */
LatOp build_position(DomainPtr dom, int axis);
LatOp build_dilation_generator(DomainPtr dom);
LatOp build_potential(DomainPtr dom, const PotentialSpec& spec);

/* Diagonal operator from an arbitrary site function. */
template <typename F>
LatOp build_diagonal(DomainPtr dom, F&& f) {
  const long n = dom->size();
  SpMat m(n, n);
  m.reserve(Eigen::VectorXi::Constant(n, 1));
  for (long i = 0; i < n; ++i) {
    double v = f(dom->point(i));
    if (v != 0.0) m.insert(i, i) = v;
  }
  m.makeCompressed();
  return LatOp::hermitian(std::move(dom), std::move(m));
}

}  // namespace lapbox
