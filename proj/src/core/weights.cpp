#include "core/weights.hpp"

#include <map>
#include <mutex>
#include <tuple>

#include "core/jets.hpp"
#include "core/quadrature.hpp"
#include "core/spectral.hpp"

namespace lapbox {

double iterated_log(int k, double x) {
  require(k >= 0, Err::invalid_argument, "iterated log depth must be >= 0");
  require(x >= 0.0, Err::invalid_argument, "iterated log argument must be >= 0");
  if (k == 0) return 1.0;
  double v = std::log1p(x);
  for (int i = 2; i <= k; ++i) v = std::log1p(v);
  return v;
}

double w_scalar(int M, double alpha, double beta, double x) {
  require(M >= 0, Err::invalid_argument, "weight depth must be >= 0");
  const double jx = jbracket(x);
  double out = std::pow(iterated_log(M + 1, jx), alpha);
  for (int k = 0; k <= M; ++k) out *= std::pow(iterated_log(k, jx), beta);
  return out;
}

double weight_composite(int M, double p, double x) {
  return w_scalar(M, -p, -0.5, x) / std::sqrt(jbracket(x));
}

double phi_weight_prime(int M, double p, double t) {
  /* 1 / (<t> w_M^{2p,1}(t)) written with negative exponents. */
  return w_scalar(M, -2.0 * p, -1.0, t) / jbracket(t);
}

namespace {

constexpr double kSplit = 1.0;

/* The tail of phi' has only iterated-log decay, so truncating in x can never
   reach an absolute tolerance.  Substituting v = 1/log_{M+1}(<x>) gives
   phi'(x) dx = v^{2p-2} g(v) dv exactly, with g bounded, smooth, g(0+) = 1:

     g = (1 + <x>)/x * prod_{j=1}^{M} (1 + log_j(<x>)) / log_j(<x>).

   Descending the exponential tower from 1/v saturates double precision fast;
   once a level passes ~45 every remaining factor is 1.0 to the bit. */
double tail_factor(int M, double v) {
  double level = 1.0 / v; /* log_{M+1}(<x>) */
  double prod = 1.0;
  for (int j = M; j >= 1; --j) {
    if (level > 45.0) return prod;
    level = std::expm1(level); /* log_j(<x>) */
    prod *= (1.0 + level) / level;
  }
  if (level > 45.0) return prod;
  const double jx = std::expm1(level); /* <x> */
  const double x = std::sqrt((jx - 1.0) * (jx + 1.0));
  return prod * (1.0 + jx) / x;
}

double tail_coordinate(int M, double T) { return 1.0 / iterated_log(M + 1, jbracket(T)); }

/* Integral of phi' over [a, b] in tail coordinates, for kSplit <= a <= b. */
double tail_between(int M, double p, double a, double b) {
  const double vlo = tail_coordinate(M, b), vhi = tail_coordinate(M, a);
  auto f = [&](double v) { return std::pow(v, 2.0 * p - 2.0) * tail_factor(M, v); };
  /* deep bisection walks the v^{2p-2} endpoint singularity down to round-off */
  return integrate_adaptive(f, vlo, vhi, 1e-13, 160, 20000);
}

double phi_core(int M, double p, double a, double b) {
  return integrate_adaptive([&](double x) { return phi_weight_prime(M, p, x); }, a, b, 1e-13, 160,
                            20000);
}

}  // namespace

namespace {

/* phi values are requested per quadrature column by the extension builder;
   the (M, p)-only pieces are memoized behind a mutex. */
double cached_pair_value(int M, double p, int which, const std::function<double()>& make) {
  static std::mutex mu;
  static std::map<std::tuple<int, double, int>, double> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(M, p, which);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const double v = make();
  cache.emplace(key, v);
  return v;
}

}  // namespace

double phi_weight_total(int M, double p) {
  require(p > 0.5, Err::precondition, "phi is bounded only for p > 1/2");
  /* Even integrand: total = 2 * (core + tail); the tail endpoint v = 0
     represents x = +inf exactly. */
  return cached_pair_value(M, p, 0, [&] {
    const double tail = integrate_adaptive(
        [&](double v) { return std::pow(v, 2.0 * p - 2.0) * tail_factor(M, v); }, 0.0,
        tail_coordinate(M, kSplit), 1e-13, 160, 20000);
    return 2.0 * (phi_core(M, p, 0.0, kSplit) + tail);
  });
}

double phi_weight(int M, double p, double t) {
  require(p > 0.5, Err::precondition, "phi is bounded only for p > 1/2");
  const double half = 0.5 * phi_weight_total(M, p);
  const double a = std::abs(t);
  const double core_split =
      cached_pair_value(M, p, 1, [&] { return phi_core(M, p, 0.0, kSplit); });
  const double run =
      a <= kSplit ? phi_core(M, p, 0.0, a) : core_split + tail_between(M, p, kSplit, a);
  return t >= 0.0 ? half + run : half - run;
}

void WeightSpec::validate() const {
  require(m >= 0, Err::invalid_argument, "weight spec: m must be >= 0");
  require(scale_R >= 1.0, Err::invalid_argument, "weight spec: scale_R must be >= 1");
  if (variant == Variant::phi || variant == Variant::phi_prime)
    require(p > 0.5, Err::precondition, "weight spec: phi variants need p > 1/2");
}

double weight_eval(const WeightSpec& spec, double x) {
  spec.validate();
  const double u = x / spec.scale_R;
  switch (spec.variant) {
    case WeightSpec::Variant::w:
      return w_scalar(spec.m, spec.alpha, spec.beta, u);
    case WeightSpec::Variant::w_composite:
      return weight_composite(spec.m, spec.p, u);
    case WeightSpec::Variant::phi:
      return phi_weight(spec.m, spec.p, u);
    case WeightSpec::Variant::phi_prime:
      return phi_weight_prime(spec.m, spec.p, u);
  }
  throw Error(Err::invalid_argument, "unknown weight variant");
}

LatOp weight_operator(const LatOp& t, const WeightSpec& spec) {
  spec.validate();
  EigenSystem es(t);
  return es.apply_function([&spec](double x) { return cplx(weight_eval(spec, x), 0.0); });
}

namespace {

Jet w_scalar_jet(int M, double alpha, double beta, const Jet& x) {
  const Jet jx = jet_bracket(x);
  Jet out = jet_pow(jet_iterated_log(M + 1, jx), alpha);
  for (int k = 0; k <= M; ++k) out = out * jet_pow(jet_iterated_log(k, jx), beta);
  return out;
}

/* j >= 1 only; entry 0 goes through weight_eval so values stay bitwise equal
   to the scalar path.  phi's derivative of order j is phi'^{(j-1)}. */
double jet_entry(const WeightSpec& spec, double x, int j, int count) {
  const double u = x / spec.scale_R;
  const int ord = count - 1;
  Jet f;
  int shift = 0;
  switch (spec.variant) {
    case WeightSpec::Variant::w:
      f = w_scalar_jet(spec.m, spec.alpha, spec.beta, Jet::variable(u, ord));
      break;
    case WeightSpec::Variant::w_composite: {
      const Jet xx = Jet::variable(u, ord);
      f = w_scalar_jet(spec.m, -spec.p, -0.5, xx) * jet_recip(jet_sqrt(jet_bracket(xx)));
      break;
    }
    case WeightSpec::Variant::phi_prime: {
      const Jet xx = Jet::variable(u, ord);
      f = w_scalar_jet(spec.m, -2.0 * spec.p, -1.0, xx) * jet_recip(jet_bracket(xx));
      break;
    }
    case WeightSpec::Variant::phi: {
      const Jet xx = Jet::variable(u, ord - 1);
      f = w_scalar_jet(spec.m, -2.0 * spec.p, -1.0, xx) * jet_recip(jet_bracket(xx));
      shift = 1;
      break;
    }
  }
  return f.deriv(j - shift) * std::pow(spec.scale_R, -double(j));
}

}  // namespace

std::vector<double> weight_derivatives(const WeightSpec& spec, double x, int count) {
  spec.validate();
  require(count >= 1 && count <= Jet::kMaxOrder + 1, Err::invalid_argument,
          "derivative count must lie in 1..7");
  std::vector<double> out(count);
  out[0] = weight_eval(spec, x);
  for (int j = 1; j < count; ++j) out[j] = jet_entry(spec, x, j, count);
  return out;
}

std::vector<std::function<double(double)>> weight_derivative_list(const WeightSpec& spec,
                                                                  int count) {
  spec.validate();
  require(count >= 1 && count <= Jet::kMaxOrder + 1, Err::invalid_argument,
          "derivative count must lie in 1..7");
  std::vector<std::function<double(double)>> out;
  out.reserve(count);
  for (int j = 0; j < count; ++j) {
    if (j == 0)
      out.push_back([spec](double x) { return weight_eval(spec, x); });
    else
      out.push_back([spec, j, count](double x) { return jet_entry(spec, x, j, count); });
  }
  return out;
}

}  // namespace lapbox
