#include "core/builders.hpp"

#include <numbers>

#include "core/weights.hpp"

namespace lapbox {

namespace {

double euclid_norm(const std::vector<long>& pt) {
  double s = 0.0;
  for (long c : pt) s += static_cast<double>(c) * static_cast<double>(c);
  return std::sqrt(s);
}

long coord_sum(const std::vector<long>& pt) {
  long s = 0;
  for (long c : pt) s += c;
  return s;
}

}  // namespace

void PotentialSpec::validate() const {
  switch (kind) {
    case Kind::wigner:
      require(k > 0.0 && k < 2.0 * std::numbers::pi && k != std::numbers::pi,
              Err::invalid_argument, "oscillation frequency must lie in (0,2pi) and avoid pi");
      return;
    case Kind::hypothesis_h:
      require(m >= 0, Err::invalid_argument, "potential spec: m must be >= 0");
      require(r >= 0.0 && q > r, Err::invalid_argument, "potential spec needs q > r >= 0");
      return;
    case Kind::custom_table:
      require(!table.empty(), Err::invalid_argument, "custom potential needs a site table");
      return;
  }
  throw Error(Err::invalid_argument, "unknown potential kind");
}

double potential_value(const PotentialSpec& spec, const std::vector<long>& pt) {
  switch (spec.kind) {
    case PotentialSpec::Kind::wigner: {
      const double nn = euclid_norm(pt);
      if (nn == 0.0) return 0.0;
      return spec.w * std::sin(spec.k * static_cast<double>(coord_sum(pt))) / nn;
    }
    case PotentialSpec::Kind::hypothesis_h: {
      /* log_{m+1}^{-q}(<n>) prod_{k<=m} log_k^{-r}(<n>), <n> regularized. */
      const double jn = jbracket(euclid_norm(pt));
      double v = spec.c_amp * std::pow(iterated_log(spec.m + 1, jn), -spec.q);
      for (int k = 0; k <= spec.m; ++k) v *= std::pow(iterated_log(k, jn), -spec.r);
      return v;
    }
    case PotentialSpec::Kind::custom_table:
      throw Error(Err::unsupported, "custom tables are indexed by site, not by point");
  }
  throw Error(Err::invalid_argument, "unknown potential kind");
}

LatOp identity_op(DomainPtr dom) {
  const long n = dom->size();
  SpMat m(n, n);
  m.setIdentity();
  return LatOp::hermitian(std::move(dom), std::move(m));
}

LatOp build_axis_laplacian(DomainPtr dom, int axis) {
  require(axis >= 1 && axis <= dom->dim(), Err::invalid_argument, "axis out of range");
  const long n = dom->size();
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(3 * n);
  for (long i = 0; i < n; ++i) {
    trips.emplace_back(i, i, cplx(2.0, 0.0));
    std::vector<long> pt = dom->point(i);
    pt[axis - 1] += 1;
    if (dom->contains(pt)) {
      const long j = dom->index(pt);
      /* Dirichlet: a hop across the face is simply dropped. */
      trips.emplace_back(j, i, cplx(-1.0, 0.0));
      trips.emplace_back(i, j, cplx(-1.0, 0.0));
    }
  }
  SpMat m(n, n);
  m.setFromTriplets(trips.begin(), trips.end());
  return LatOp::hermitian(std::move(dom), std::move(m));
}

LatOp build_laplacian(DomainPtr dom) {
  LatOp acc = build_axis_laplacian(dom, 1);
  for (int axis = 2; axis <= dom->dim(); ++axis) {
    SpMat s = acc.mat() + build_axis_laplacian(dom, axis).mat();
    acc = LatOp::hermitian(dom, std::move(s));
  }
  return acc;
}

LatOp build_shift(DomainPtr dom, int axis) {
  require(axis >= 1 && axis <= dom->dim(), Err::invalid_argument, "axis out of range");
  const long n = dom->size();
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(n);
  for (long i = 0; i < n; ++i) {
    std::vector<long> pt = dom->point(i);
    pt[axis - 1] += 1;
    if (dom->contains(pt)) trips.emplace_back(dom->index(pt), i, cplx(1.0, 0.0));
  }
  SpMat m(n, n);
  m.setFromTriplets(trips.begin(), trips.end());
  return LatOp::general(std::move(dom), std::move(m));
}

LatOp build_position(DomainPtr dom, int axis) {
  require(axis >= 1 && axis <= dom->dim(), Err::invalid_argument, "axis out of range");
  return build_diagonal(std::move(dom),
                        [axis](const std::vector<long>& pt) { return double(pt[axis - 1]); });
}

LatOp build_dilation_generator(DomainPtr dom) {
  /* (i/2) sum_i (S_i - S_i^*) N_i + N_i (S_i - S_i^*) collapses entrywise to
     A[m + e_i, m] = (i/2)(2 m_i + 1).  Pushing each pair from one real value
     keeps the stored matrix conjugate symmetric to the bit. */
  const long n = dom->size();
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(2 * dom->dim() * n);
  for (long i = 0; i < n; ++i) {
    std::vector<long> pt = dom->point(i);
    for (int ax = 0; ax < dom->dim(); ++ax) {
      std::vector<long> up = pt;
      up[ax] += 1;
      if (!dom->contains(up)) continue;
      const long j = dom->index(up);
      const double v = 0.5 * static_cast<double>(2 * pt[ax] + 1);
      trips.emplace_back(j, i, cplx(0.0, v));
      trips.emplace_back(i, j, cplx(0.0, -v));
    }
  }
  SpMat m(n, n);
  m.setFromTriplets(trips.begin(), trips.end());
  return LatOp::hermitian(std::move(dom), std::move(m));
}

LatOp build_potential(DomainPtr dom, const PotentialSpec& spec) {
  spec.validate();
  if (spec.kind == PotentialSpec::Kind::custom_table) {
    require(static_cast<long>(spec.table.size()) == dom->size(), Err::dimension_mismatch,
            "custom table length must equal the site count");
    return build_diagonal(dom, [dom, &spec](const std::vector<long>& pt) {
      return spec.table[dom->index(pt)];
    });
  }
  return build_diagonal(dom,
                        [&spec](const std::vector<long>& pt) { return potential_value(spec, pt); });
}

}  // namespace lapbox
