#pragma once

#include <functional>
#include <vector>

#include "core/lat_op.hpp"

namespace lapbox {

/* log_0 = 1, log_1(x) = log(1+x), log_k = log_1 applied k times.
   For x >= 0 every level is positive, so real powers are safe. */
double iterated_log(int k, double x);

/* w_M^{alpha,beta}(x) = log_{M+1}^alpha(<x>) * prod_{k=0}^M log_k^beta(<x>). */
double w_scalar(int M, double alpha, double beta, double x);

/* <x>^{-1/2} * w_M^{-p,-1/2}(x): the composite weight used by the resolvent
   sweeps.  Positive and decaying in |x|; the iterated logs sit below 1 near
   x = 0, so for p > 0 the sup exceeds 1 (1/log 2 at M = 0, p = 1). */
double weight_composite(int M, double p, double x);

/* phi(t) = integral over (-inf, t] of dx / (<x> w_M^{2p,1}(x)); increasing,
   bounded iff p > 1/2; normalized so phi(-inf) = 0.  phi_prime is the exact
   integrand, usable as a closed form. */
double phi_weight(int M, double p, double t);
double phi_weight_prime(int M, double p, double t);

/* Total mass phi(+inf); finite only for p > 1/2. */
double phi_weight_total(int M, double p);

struct WeightSpec {
  enum class Variant { w, w_composite, phi, phi_prime };
  Variant variant = Variant::w_composite;
  int m = 0;
  double p = 1.0;
  /* Only the plain-w variant reads alpha/beta; the others derive exponents
     from p as the definitions dictate. */
  double alpha = 1.0;
  double beta = 0.0;
  double scale_R = 1.0;
  void validate() const;
};

/* Scalar weight with the argument pre-scaled: f(x / scale_R). */
double weight_eval(const WeightSpec& spec, double x);

/* Functional-calculus image of the scalar weight under T's eigensystem. */
LatOp weight_operator(const LatOp& t, const WeightSpec& spec);

/* d^j/dx^j of weight_eval(spec, .) for j = 0..count-1, by jet propagation
   through the iterated logs; the phi variant differentiates its closed-form
   integrand, so only the j = 0 entry touches quadrature. */
std::vector<double> weight_derivatives(const WeightSpec& spec, double x, int count);
std::vector<std::function<double(double)>> weight_derivative_list(const WeightSpec& spec,
                                                                  int count);

}  // namespace lapbox
