#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace lapbox {

using cplx = std::complex<double>;

/* Row-compressed storage: serialization and residual accumulation walk the
   stored entries in a deterministic order. */
using SpMat = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;
using SpMatCol = Eigen::SparseMatrix<cplx, Eigen::ColMajor>;
using DMat = Eigen::MatrixXcd;
using DVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

enum class Err {
  ok = 0,
  invalid_argument = 1,
  dimension_mismatch = 2,
  not_hermitian = 3,
  solver_failure = 4,
  unsupported = 5,
  io_error = 6,
  precondition = 7,
};

struct Error : std::runtime_error {
  Err code;
  Error(Err c, const std::string& what) : std::runtime_error(what), code(c) {}
};

inline void require(bool ok, Err code, const std::string& what) {
  if (!ok) throw Error(code, what);
}

/* <x> = sqrt(1 + x^2). */
inline double jbracket(double x) { return std::hypot(1.0, x); }

}  // namespace lapbox
