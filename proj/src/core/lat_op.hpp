#pragma once

#include <string>

#include "core/box.hpp"

namespace lapbox {

/* Finite-box operator in the domain's enumeration basis.  The hermitian
   factory refuses matrices whose stored entries are not exactly conjugate
   symmetric (bitwise, after compression); products and commutators carry no
   such guarantee and go through the general factory. */
class LatOp {
 public:
  static LatOp hermitian(DomainPtr dom, SpMat m);
  static LatOp general(DomainPtr dom, SpMat m);

  const BoxDomain& domain() const { return *dom_; }
  DomainPtr domain_ptr() const { return dom_; }
  long dim() const { return mat_.rows(); }
  bool is_hermitian() const { return herm_; }
  const SpMat& mat() const { return mat_; }

  cplx entry(long row, long col) const;
  LatOp adjoint() const;
  DVec apply(const DVec& v) const;

  /* Triplet text format: "dim <n>" header, then "row col re im" per stored
     entry in row-compressed order.  %.17g keeps round-trips bit exact. */
  void write_triplets(const std::string& path) const;
  static LatOp read_triplets(DomainPtr dom, const std::string& path);

 private:
  LatOp(DomainPtr dom, SpMat m, bool herm);

  DomainPtr dom_;
  SpMat mat_;
  bool herm_;
};

bool exactly_conjugate_symmetric(const SpMat& m);

/* Dense to sparse keeping every nonzero bit-exactly (no threshold pruning). */
SpMat to_sparse(const DMat& m);

LatOp operator+(const LatOp& x, const LatOp& y);
LatOp operator-(const LatOp& x, const LatOp& y);
LatOp operator*(const LatOp& x, const LatOp& y);
LatOp operator*(cplx s, const LatOp& x);

/* XY - YX. */
LatOp commutator(const LatOp& x, const LatOp& y);

}  // namespace lapbox
