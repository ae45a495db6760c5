#pragma once

#include <array>

#include "core/common.hpp"

namespace lapbox {

/* Truncated Taylor expansion at a point: t[j] = f^{(j)}(x0) / j! for j <= n.
   Running a scalar formula on variable(x0) pushes derivatives through every
   arithmetic step, which is how the weight functions get their analytic
   derivative lists without numerical differentiation. */
struct Jet {
  static constexpr int kMaxOrder = 6;
  int n = 0;
  std::array<double, kMaxOrder + 1> t{};

  static Jet constant(double c, int order);
  static Jet variable(double x0, int order);

  double value() const { return t[0]; }
  double deriv(int j) const; /* t[j] * j! */
};

Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator-(const Jet& a);
Jet operator*(const Jet& a, const Jet& b);
Jet operator*(double s, const Jet& a);
Jet operator+(const Jet& a, double c);
Jet operator-(double c, const Jet& a);

Jet jet_recip(const Jet& a); /* a.value() != 0 */
Jet jet_div(const Jet& a, const Jet& b);
Jet jet_exp(const Jet& a);
Jet jet_log(const Jet& a);  /* a.value() > 0 */
Jet jet_sqrt(const Jet& a); /* a.value() > 0 */
Jet jet_pow(const Jet& a, double alpha);

/* sqrt(1 + x^2), the smooth bracket <x>. */
Jet jet_bracket(const Jet& x);

/* log_0 = 1, log_k = log(1 + log_{k-1}); mirrors iterated_log from the
   weight module, argument already bracketed by the caller when needed. */
Jet jet_iterated_log(int k, const Jet& x);

/* Plateau cutoff: exactly 1 on |u| <= 1/2, exactly 0 on |u| >= 1, glued by
   the smooth quotient B(s)/(B(s)+B(1-s)) with B(s) = exp(-1/s).  The flat
   regions return constant jets, so every derivative vanishes there. */
Jet jet_plateau(const Jet& u);

}  // namespace lapbox
