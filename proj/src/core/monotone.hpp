#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "core/lat_op.hpp"

namespace lapbox {

struct FormInequalityReport {
  double min_eigenvalue_of_difference = 0.0;
  bool violated = false;
  double tolerance = 0.0;
};

/* Min eigenvalue of Y - X as a form; violated iff it dips below -tol. */
FormInequalityReport check_form_inequality(const LatOp& x, const LatOp& y, double tol);

/* max(d^3 + d^2 + 1, 4(d+1)): the constant dominating the dilation generator
   by the position operator. */
double domination_constant(int d);

/* (A^2+1)^alpha <= c_d^alpha (N^2+1)^alpha compressed to sites at distance
   >= 2 from the boundary, where truncation leaves both quadratic forms
   untouched; the fractional power is taken after compression. */
FormInequalityReport verify_A_dominated_by_N(int d, int r_box, double alpha);

/* Given 0 <= X <= Y, checks X^alpha <= Y^alpha across the grid; returns the
   worst report.  Fails with a precondition error if the hypothesis is off. */
FormInequalityReport heinz_report_dense(const DMat& x, const DMat& y,
                                        const std::vector<double>& alphas);
FormInequalityReport verify_heinz(const LatOp& x, const LatOp& y,
                                  const std::vector<double>& alphas);

/* Interior form reports for <A>^n vs (sqrt(c_d)<N>)^n, n in [n_lo, n_hi].
   Beyond n = 2 the inequality is an open question; these are observations. */
std::vector<FormInequalityReport> power_domination_report(int d, int r_box, int n_lo,
                                                          int n_hi);

struct MonotoneCounterexample {
  DMat a, b;
  double violation = 0.0;
  std::uint64_t trial_seed = 0;
};

struct MonotoneSuiteResult {
  double worst_min_eigenvalue = 0.0;
  int trials_run = 0;
  bool violation_found = false;
  std::optional<MonotoneCounterexample> counterexample;
};

/* Random ordered pairs A <= B = A + t G*G with both spectra kept inside
   (a, b) by bisecting t; reports the worst min eigenvalue of f(B) - f(A)
   over `trials` pairs of sizes 2..n_max.  Per-trial seeds are derived from
   the base seed, so results do not depend on evaluation order. */
MonotoneSuiteResult matrix_monotone_suite(const std::function<double(double)>& f,
                                          double a, double b, int n_max, int trials,
                                          std::uint64_t seed, double tol);

/* Counterexample fixtures as JSON: matrix entries, function id, violation. */
void write_counterexample_json(const std::string& path, const std::string& f_id,
                               const MonotoneCounterexample& ce);
MonotoneCounterexample read_counterexample_json(const std::string& path,
                                                std::string* f_id = nullptr);

/* Norm-vs-radius readouts of the bounded-product claims.  Each curve builds
   F(A) G(N) on every box (F through the eigendecomposition of the dilation
   generator, G directly on the position diagonal) and records its norm; a
   bounded claim should flatten as the radius grows. */
enum class CurveKind {
  phi_ratio,         /* Phi_n^alpha(bold A) Phi_n^-alpha(bold N) */
  phi_log_ratio,     /* same with log_k applied inside Phi_n */
  log_ratio,         /* log^p(1+<A>) log^-p(1+<N>) */
  iterlog_ratio,     /* log_k^p(<A>) log_k^-p(<N>) */
  logprod_ratio,     /* log_{m+1}^p times the full iterated-log product */
  commutator_class,  /* norm of [A, prod log_k^-sigma(<N>)] */
  weight_transfer,   /* <A>^1/2 log^p(1+<A>) <N>^-1/2 log^-p(1+<N>) */
  swapped_control,   /* growing side swapped, exponent out of range */
};

struct CurveParams {
  int n = 3;          /* polylog order */
  int k = 1;          /* iterated-log depth */
  int m = 1;          /* product depth */
  double alpha = 0.5; /* fractional power, in [0, 1/2] */
  double p = 1.0;     /* outer exponent, in [0, 3/2] */
  double sigma = 0.5; /* decay rate in the commutator readout */
};

struct BoundednessCurve {
  std::vector<int> box_radii;
  std::vector<double> norms;
};

BoundednessCurve boundedness_curve(CurveKind kind, int d, const std::vector<int>& radii,
                                   const CurveParams& params);

/* Scalar sup checks behind the weighted-resolvent norm bounds: the functions
   of (x, y, t) whose uniform bound on |y| <= c<x> gives the operator bound. */
enum class ScalarBoundKind {
  resolvent_power,         /* <t>^2s/<x>^2s * y^2/((t-x)^2+y^2) */
  resolvent_power_log,     /* with the log^2p(1+<.>) ratio */
  resolvent_power_iterlog, /* with the iterated-log product ratio */
};

struct ScalarBoundParams {
  double s = 0.5;
  double p = 1.0;
  double q = 1.0;
  double c = 1.0; /* cone opening |y| <= c<x> */
  int m = 1;
};

double scalar_bound_value(ScalarBoundKind kind, const ScalarBoundParams& par, double x,
                          double y, double t);

/* Sup over a log-spaced grid with `points` nodes per axis inside the cone. */
double scalar_bound_sup(ScalarBoundKind kind, const ScalarBoundParams& par, int points);

}  // namespace lapbox
