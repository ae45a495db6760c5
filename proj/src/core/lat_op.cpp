#include "core/lat_op.hpp"

#include <cinttypes>
#include <cstdio>
#include <memory>
#include <vector>

namespace lapbox {

namespace {

void check_shape(const BoxDomain& dom, const SpMat& m) {
  require(m.rows() == m.cols(), Err::dimension_mismatch, "operator matrix must be square");
  require(m.rows() == dom.size(), Err::dimension_mismatch,
          "operator size does not match domain site count");
}

void check_same_domain(const LatOp& x, const LatOp& y) {
  require(x.domain().dim() == y.domain().dim() && x.domain().radius() == y.domain().radius(),
          Err::dimension_mismatch, "operators live on different domains");
}

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};

}  // namespace

SpMat to_sparse(const DMat& m) {
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(static_cast<std::size_t>(m.size()));
  for (long r = 0; r < m.rows(); ++r)
    for (long c = 0; c < m.cols(); ++c)
      if (m(r, c) != cplx(0.0, 0.0)) trips.emplace_back(r, c, m(r, c));
  SpMat out(m.rows(), m.cols());
  out.setFromTriplets(trips.begin(), trips.end());
  out.makeCompressed();
  return out;
}

bool exactly_conjugate_symmetric(const SpMat& m) {
  SpMat adj = SpMat(m.adjoint());
  SpMat diff = m - adj;
  for (long r = 0; r < diff.outerSize(); ++r)
    for (SpMat::InnerIterator it(diff, r); it; ++it)
      if (it.value() != cplx(0.0, 0.0)) return false;
  return true;
}

LatOp::LatOp(DomainPtr dom, SpMat m, bool herm)
    : dom_(std::move(dom)), mat_(std::move(m)), herm_(herm) {
  mat_.makeCompressed();
}

LatOp LatOp::hermitian(DomainPtr dom, SpMat m) {
  check_shape(*dom, m);
  m.makeCompressed();
  require(exactly_conjugate_symmetric(m), Err::not_hermitian,
          "stored entries are not exactly conjugate symmetric");
  return LatOp(std::move(dom), std::move(m), true);
}

LatOp LatOp::general(DomainPtr dom, SpMat m) {
  check_shape(*dom, m);
  return LatOp(std::move(dom), std::move(m), false);
}

cplx LatOp::entry(long row, long col) const {
  require(row >= 0 && row < dim() && col >= 0 && col < dim(), Err::invalid_argument,
          "entry index out of range");
  return mat_.coeff(row, col);
}

LatOp LatOp::adjoint() const { return LatOp(dom_, SpMat(mat_.adjoint()), herm_); }

DVec LatOp::apply(const DVec& v) const {
  require(v.size() == dim(), Err::dimension_mismatch, "vector length does not match operator");
  return mat_ * v;
}

void LatOp::write_triplets(const std::string& path) const {
  std::unique_ptr<std::FILE, FileCloser> f(std::fopen(path.c_str(), "w"));
  require(f != nullptr, Err::io_error, "cannot open triplet file for writing: " + path);
  std::fprintf(f.get(), "dim %ld\n", dim());
  for (long r = 0; r < mat_.outerSize(); ++r)
    for (SpMat::InnerIterator it(mat_, r); it; ++it)
      std::fprintf(f.get(), "%ld %ld %.17g %.17g\n", static_cast<long>(it.row()),
                   static_cast<long>(it.col()), it.value().real(), it.value().imag());
  require(std::ferror(f.get()) == 0, Err::io_error, "write failed: " + path);
}

LatOp LatOp::read_triplets(DomainPtr dom, const std::string& path) {
  std::unique_ptr<std::FILE, FileCloser> f(std::fopen(path.c_str(), "r"));
  require(f != nullptr, Err::io_error, "cannot open triplet file: " + path);
  long n = 0;
  require(std::fscanf(f.get(), "dim %ld", &n) == 1, Err::io_error,
          "triplet file is missing the dim header: " + path);
  require(n == dom->size(), Err::dimension_mismatch,
          "triplet file dimension does not match domain");
  std::vector<Eigen::Triplet<cplx>> trips;
  long row = 0, col = 0;
  double re = 0.0, im = 0.0;
  int got = 0;
  while ((got = std::fscanf(f.get(), "%ld %ld %lg %lg", &row, &col, &re, &im)) == 4) {
    require(row >= 0 && row < n && col >= 0 && col < n, Err::io_error,
            "triplet index out of range: " + path);
    trips.emplace_back(static_cast<int>(row), static_cast<int>(col), cplx(re, im));
  }
  require(got == EOF, Err::io_error, "malformed triplet line: " + path);
  SpMat m(n, n);
  m.setFromTriplets(trips.begin(), trips.end());
  m.makeCompressed();
  bool herm = exactly_conjugate_symmetric(m);
  return LatOp(std::move(dom), std::move(m), herm);
}

LatOp operator+(const LatOp& x, const LatOp& y) {
  check_same_domain(x, y);
  return LatOp::general(x.domain_ptr(), x.mat() + y.mat());
}

LatOp operator-(const LatOp& x, const LatOp& y) {
  check_same_domain(x, y);
  return LatOp::general(x.domain_ptr(), x.mat() - y.mat());
}

LatOp operator*(const LatOp& x, const LatOp& y) {
  check_same_domain(x, y);
  return LatOp::general(x.domain_ptr(), SpMat(x.mat() * y.mat()));
}

LatOp operator*(cplx s, const LatOp& x) { return LatOp::general(x.domain_ptr(), SpMat(s * x.mat())); }

LatOp commutator(const LatOp& x, const LatOp& y) {
  check_same_domain(x, y);
  return LatOp::general(x.domain_ptr(), SpMat(x.mat() * y.mat() - y.mat() * x.mat()));
}

}  // namespace lapbox
