#include "core/box.hpp"

#include <cstdlib>

namespace lapbox {

BoxDomain::BoxDomain(int d, long R) : d_(d), R_(R), side_(2 * R + 1) {
  require(d >= 1 && d <= 6, Err::invalid_argument, "domain dimension must be in 1..6");
  require(R >= 1, Err::invalid_argument, "box radius must be >= 1");
  double cells = std::pow(static_cast<double>(side_), d);
  require(cells <= 1e8, Err::invalid_argument, "box has too many sites");
  size_ = 1;
  for (int i = 0; i < d; ++i) size_ *= side_;
}

long BoxDomain::index(const std::vector<long>& pt) const {
  require(static_cast<int>(pt.size()) == d_, Err::dimension_mismatch,
          "point arity does not match domain dimension");
  long idx = 0;
  for (int i = 0; i < d_; ++i) {
    require(pt[i] >= -R_ && pt[i] <= R_, Err::invalid_argument, "point outside box");
    idx = idx * side_ + (pt[i] + R_);
  }
  return idx;
}

std::vector<long> BoxDomain::point(long idx) const {
  require(idx >= 0 && idx < size_, Err::invalid_argument, "site index out of range");
  std::vector<long> pt(d_);
  for (int i = d_ - 1; i >= 0; --i) {
    pt[i] = idx % side_ - R_;
    idx /= side_;
  }
  return pt;
}

bool BoxDomain::contains(const std::vector<long>& pt) const {
  if (static_cast<int>(pt.size()) != d_) return false;
  for (long c : pt)
    if (c < -R_ || c > R_) return false;
  return true;
}

long BoxDomain::boundary_distance(long idx) const {
  std::vector<long> pt = point(idx);
  long m = 0;
  for (long c : pt) m = std::max(m, std::labs(c));
  return R_ - m;
}

}  // namespace lapbox
