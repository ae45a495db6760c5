#pragma once

#include <memory>
#include <vector>

#include "core/common.hpp"

namespace lapbox {

/* Box {-R,...,R}^d enumerated lexicographically: index 0 is (-R,...,-R) and
   the last axis varies fastest.  Every operator and serialization in this
   library is written in this basis, so the order is a stability contract. */
class BoxDomain {
 public:
  BoxDomain(int d, long R);

  int dim() const { return d_; }
  long radius() const { return R_; }
  long size() const { return size_; }

  long index(const std::vector<long>& pt) const;
  std::vector<long> point(long idx) const;
  bool contains(const std::vector<long>& pt) const;

  /* R - |n|_inf: hop count from the site to the nearest face. */
  long boundary_distance(long idx) const;

 private:
  int d_;
  long R_, side_, size_;
};

using DomainPtr = std::shared_ptr<const BoxDomain>;

inline DomainPtr make_domain(int d, long R) { return std::make_shared<BoxDomain>(d, R); }

}  // namespace lapbox
