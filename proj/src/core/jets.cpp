#include "core/jets.hpp"

#include <cmath>

namespace lapbox {

namespace {

void check_order(int order) {
  require(order >= 0 && order <= Jet::kMaxOrder, Err::invalid_argument,
          "jet order must lie in 0..6");
}

void check_match(const Jet& a, const Jet& b) {
  require(a.n == b.n, Err::dimension_mismatch, "jet orders differ");
}

}  // namespace

Jet Jet::constant(double c, int order) {
  check_order(order);
  Jet j;
  j.n = order;
  j.t[0] = c;
  return j;
}

Jet Jet::variable(double x0, int order) {
  check_order(order);
  Jet j;
  j.n = order;
  j.t[0] = x0;
  if (order >= 1) j.t[1] = 1.0;
  return j;
}

double Jet::deriv(int j) const {
  require(j >= 0 && j <= n, Err::invalid_argument, "derivative order exceeds jet order");
  double fact = 1.0;
  for (int i = 2; i <= j; ++i) fact *= i;
  return t[j] * fact;
}

Jet operator+(const Jet& a, const Jet& b) {
  check_match(a, b);
  Jet c = a;
  for (int i = 0; i <= a.n; ++i) c.t[i] += b.t[i];
  return c;
}

Jet operator-(const Jet& a, const Jet& b) {
  check_match(a, b);
  Jet c = a;
  for (int i = 0; i <= a.n; ++i) c.t[i] -= b.t[i];
  return c;
}

Jet operator-(const Jet& a) {
  Jet c = a;
  for (int i = 0; i <= a.n; ++i) c.t[i] = -c.t[i];
  return c;
}

Jet operator*(const Jet& a, const Jet& b) {
  check_match(a, b);
  Jet c;
  c.n = a.n;
  for (int k = 0; k <= a.n; ++k) {
    double s = 0.0;
    for (int i = 0; i <= k; ++i) s += a.t[i] * b.t[k - i];
    c.t[k] = s;
  }
  return c;
}

Jet operator*(double s, const Jet& a) {
  Jet c = a;
  for (int i = 0; i <= a.n; ++i) c.t[i] *= s;
  return c;
}

Jet operator+(const Jet& a, double c) {
  Jet r = a;
  r.t[0] += c;
  return r;
}

Jet operator-(double c, const Jet& a) { return Jet::constant(c, a.n) - a; }

Jet jet_recip(const Jet& a) {
  require(a.t[0] != 0.0, Err::precondition, "jet reciprocal at a zero value");
  Jet b;
  b.n = a.n;
  b.t[0] = 1.0 / a.t[0];
  for (int k = 1; k <= a.n; ++k) {
    double s = 0.0;
    for (int i = 1; i <= k; ++i) s += a.t[i] * b.t[k - i];
    b.t[k] = -s / a.t[0];
  }
  return b;
}

Jet jet_div(const Jet& a, const Jet& b) { return a * jet_recip(b); }

Jet jet_exp(const Jet& a) {
  Jet b;
  b.n = a.n;
  b.t[0] = std::exp(a.t[0]);
  for (int k = 1; k <= a.n; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += j * a.t[j] * b.t[k - j];
    b.t[k] = s / k;
  }
  return b;
}

Jet jet_log(const Jet& a) {
  require(a.t[0] > 0.0, Err::precondition, "jet log needs a positive value");
  Jet b;
  b.n = a.n;
  b.t[0] = std::log(a.t[0]);
  for (int k = 1; k <= a.n; ++k) {
    double s = 0.0;
    for (int j = 1; j < k; ++j) s += j * b.t[j] * a.t[k - j];
    b.t[k] = (a.t[k] - s / k) / a.t[0];
  }
  return b;
}

Jet jet_sqrt(const Jet& a) {
  require(a.t[0] > 0.0, Err::precondition, "jet sqrt needs a positive value");
  Jet b;
  b.n = a.n;
  b.t[0] = std::sqrt(a.t[0]);
  for (int k = 1; k <= a.n; ++k) {
    double s = 0.0;
    for (int i = 1; i < k; ++i) s += b.t[i] * b.t[k - i];
    b.t[k] = (a.t[k] - s) / (2.0 * b.t[0]);
  }
  return b;
}

Jet jet_pow(const Jet& a, double alpha) { return jet_exp(alpha * jet_log(a)); }

Jet jet_bracket(const Jet& x) { return jet_sqrt(x * x + 1.0); }

Jet jet_iterated_log(int k, const Jet& x) {
  require(k >= 0, Err::invalid_argument, "iterated log depth must be >= 0");
  if (k == 0) return Jet::constant(1.0, x.n);
  Jet v = jet_log(x + 1.0);
  for (int i = 2; i <= k; ++i) v = jet_log(v + 1.0);
  return v;
}

namespace {

/* exp(-1/s) continued by zero through s <= 0; all derivatives vanish there. */
Jet glue_half(const Jet& s) {
  if (s.t[0] <= 0.0) return Jet::constant(0.0, s.n);
  return jet_exp(-jet_recip(s));
}

}  // namespace

Jet jet_plateau(const Jet& u) {
  const double a = std::abs(u.t[0]);
  if (a <= 0.5) return Jet::constant(1.0, u.n);
  if (a >= 1.0) return Jet::constant(0.0, u.n);
  const Jet au = u.t[0] > 0.0 ? u : -u;
  const Jet s = 2.0 * (1.0 - au);
  const Jet up = glue_half(s);
  const Jet down = glue_half(1.0 - s);
  return jet_div(up, up + down);
}

}  // namespace lapbox
