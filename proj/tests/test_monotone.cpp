#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <vector>

#include <Eigen/Eigenvalues>

#include "core/builders.hpp"
#include "core/monotone.hpp"
#include "core/polylog.hpp"
#include "core/rng.hpp"
#include "core/weights.hpp"
#include "doctest.h"

using namespace lapbox;

/* independent min-eigenvalue oracle */
static double oracle_min_eig(const DMat& h) {
  Eigen::SelfAdjointEigenSolver<DMat> es(DMat(0.5 * (h + h.adjoint())));
  return es.eigenvalues()(0);
}

static DMat oracle_func(const DMat& h, double (*f)(double)) {
  Eigen::SelfAdjointEigenSolver<DMat> es(DMat(0.5 * (h + h.adjoint())));
  DVec d(es.eigenvalues().size());
  for (long i = 0; i < d.size(); ++i) d(i) = f(es.eigenvalues()(i));
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

TEST_CASE("form inequality reports match hand values") {
  DomainPtr dom = make_domain(1, 1);
  const LatOp zero = build_diagonal(dom, [](const std::vector<long>&) { return 0.0; });
  const LatOp one = identity_op(dom);
  const LatOp two = build_diagonal(dom, [](const std::vector<long>&) { return 2.0; });
  const auto r1 = check_form_inequality(zero, one, 1e-10);
  CHECK(r1.min_eigenvalue_of_difference == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(!r1.violated);
  const auto r2 = check_form_inequality(one, one, 1e-10);
  CHECK(r2.min_eigenvalue_of_difference == 0.0);
  CHECK(!r2.violated);
  const auto r3 = check_form_inequality(two, one, 1e-10);
  CHECK(r3.min_eigenvalue_of_difference == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(r3.violated);
  CHECK(r3.tolerance == 1e-10);
  CHECK_THROWS_AS(check_form_inequality(one, identity_op(make_domain(1, 2)), 1e-10), Error);
  CHECK_THROWS_AS(check_form_inequality(build_shift(dom, 1), one, 1e-10), Error);
}

TEST_CASE("the domination constant follows the max formula") {
  CHECK(domination_constant(1) == 8.0);
  CHECK(domination_constant(2) == 13.0);
  CHECK(domination_constant(3) == 37.0);
  CHECK(domination_constant(4) == 81.0);
  CHECK_THROWS_AS(domination_constant(0), Error);
}

TEST_CASE("the dilation generator is dominated by position on interior vectors") {
  /* oracle: raw quadratic forms on random interior-supported vectors */
  for (int d : {1, 2}) {
    const int r_box = d == 1 ? 12 : 5;
    DomainPtr dom = make_domain(d, r_box);
    const LatOp gen = build_dilation_generator(dom);
    std::vector<LatOp> pos;
    for (int ax = 1; ax <= d; ++ax) pos.push_back(build_position(dom, ax));
    SplitMix64 rng(0xabcde0u + d);
    for (int trial = 0; trial < 40; ++trial) {
      DVec psi = DVec::Zero(dom->size());
      for (long i = 0; i < dom->size(); ++i)
        if (dom->boundary_distance(i) >= 2) psi(i) = rng.complex_symmetric();
      const double lhs = gen.apply(psi).squaredNorm() + psi.squaredNorm();
      double rhs = psi.squaredNorm();
      for (const LatOp& p : pos) rhs += p.apply(psi).squaredNorm();
      CHECK(lhs <= domination_constant(d) * rhs * (1.0 + 1e-12));
    }
  }
  /* both sides reduce to the identity at exponent zero, up to eigensolver
     reconstruction rounding */
  const auto zero_case = verify_A_dominated_by_N(1, 12, 0.0);
  CHECK(std::abs(zero_case.min_eigenvalue_of_difference) <= 1e-12);
  CHECK(!zero_case.violated);
  CHECK(!verify_A_dominated_by_N(1, 12, 1.0).violated);
  CHECK(!verify_A_dominated_by_N(1, 12, 0.5).violated);
  CHECK(!verify_A_dominated_by_N(2, 6, 1.0).violated);
  CHECK(!verify_A_dominated_by_N(2, 6, 0.7).violated);
  CHECK_THROWS_AS(verify_A_dominated_by_N(1, 12, 1.5), Error);
}

TEST_CASE("Heinz lifts ordered pairs to fractional powers") {
  DomainPtr dom = make_domain(1, 1);
  const LatOp low = build_diagonal(dom, [](const std::vector<long>& p) {
    return 1.0 + double(p[0] + 1);
  });
  const LatOp high = build_diagonal(dom, [](const std::vector<long>& p) {
    return 2.0 + double(p[0] + 1);
  });
  const std::vector<double> grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  const auto same = verify_heinz(low, low, grid);
  CHECK(same.min_eigenvalue_of_difference == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(!same.violated);
  CHECK(!verify_heinz(low, high, grid).violated);
  /* random PSD pair with X <= Y by construction */
  SplitMix64 rng(0x715aefULL);
  DMat g1(6, 6), g2(6, 6);
  for (long r = 0; r < 6; ++r)
    for (long c = 0; c < 6; ++c) {
      g1(r, c) = rng.complex_symmetric();
      g2(r, c) = rng.complex_symmetric();
    }
  const DMat x = g1.adjoint() * g1 + DMat::Identity(6, 6);
  const DMat y = x + g2.adjoint() * g2;
  CHECK(!heinz_report_dense(x, y, grid).violated);
  bool precondition_seen = false;
  try {
    verify_heinz(high, low, grid);
  } catch (const Error& e) {
    precondition_seen = (e.code == Err::precondition);
  }
  CHECK(precondition_seen);
  CHECK_THROWS_AS(heinz_report_dense(-x, y, grid), Error);
  CHECK_THROWS_AS(heinz_report_dense(x, y, {1.5}), Error);
}

TEST_CASE("the monotone suite passes Nevanlinna functions and catches squared logs") {
  const double inf = std::numeric_limits<double>::infinity();
  const auto ident = matrix_monotone_suite([](double v) { return v; }, 1.0, inf, 5, 100,
                                           0x100u, 1e-9);
  CHECK(ident.trials_run == 100);
  CHECK(!ident.violation_found);
  CHECK(ident.worst_min_eigenvalue >= -1e-12);
  using Fn = std::function<double(double)>;
  const std::vector<Fn> nevanlinna{
      [](double v) { return std::sqrt(v); },
      [](double v) { return std::log1p(v); },
      [](double v) { return phi_poly(2, v); },
      [](double v) { return phi_poly(3, v); },
      [](double v) { return phi_poly(3, iterated_log(2, v)); },
  };
  for (const Fn& f : nevanlinna) {
    const auto res = matrix_monotone_suite(f, 1.0, inf, 8, 500, 0xbeadu, 1e-9);
    CHECK(!res.violation_found);
    CHECK(res.worst_min_eigenvalue >= -1e-9);
  }
  const auto log2res = matrix_monotone_suite(
      [](double v) { return std::pow(std::log1p(v), 2.0); }, 1.0, inf, 8, 2000, 0xbeadu,
      1e-9);
  CHECK(log2res.violation_found);
  REQUIRE(log2res.counterexample.has_value());
  CHECK(log2res.counterexample->violation < -1e-9);
  const auto log3res = matrix_monotone_suite(
      [](double v) { return std::pow(std::log1p(v), 3.0); }, 1.0, inf, 8, 2000, 0xbeadu,
      1e-9);
  CHECK(log3res.violation_found);
  /* reruns with the same seed are bit-identical */
  const auto rerun = matrix_monotone_suite([](double v) { return phi_poly(3, v); }, 1.0,
                                           inf, 8, 50, 0x77u, 1e-9);
  const auto rerun2 = matrix_monotone_suite([](double v) { return phi_poly(3, v); }, 1.0,
                                            inf, 8, 50, 0x77u, 1e-9);
  CHECK(rerun.worst_min_eigenvalue == rerun2.worst_min_eigenvalue);
}

TEST_CASE("counterexample fixtures round-trip and still satisfy Heinz") {
  const auto res = matrix_monotone_suite(
      [](double v) { return std::pow(std::log1p(v), 2.0); }, 1.0,
      std::numeric_limits<double>::infinity(), 8, 2000, 0xbeadu, 1e-9);
  REQUIRE(res.counterexample.has_value());
  const MonotoneCounterexample& ce = *res.counterexample;
  const std::string path = "monotone_log2_fixture.json";
  write_counterexample_json(path, "log1p_squared", ce);
  std::string f_id;
  const MonotoneCounterexample back = read_counterexample_json(path, &f_id);
  CHECK(f_id == "log1p_squared");
  CHECK(back.violation == ce.violation);
  CHECK(back.trial_seed == ce.trial_seed);
  CHECK((back.a - ce.a).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.b - ce.b).cwiseAbs().maxCoeff() == 0.0);
  /* the persisted pair genuinely violates monotonicity of log^2(1+x)... */
  auto log2f = [](double v) { return std::pow(std::log1p(v), 2.0); };
  CHECK(oracle_min_eig(oracle_func(back.b, +log2f) - oracle_func(back.a, +log2f)) < -1e-9);
  /* ...while the pair itself is ordered and Heinz still holds for it */
  CHECK(oracle_min_eig(back.b - back.a) >= -1e-12);
  CHECK(!heinz_report_dense(back.a, back.b, {0.1, 0.3, 0.5, 0.7, 0.9}).violated);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_counterexample_json("no_such_fixture.json", nullptr), Error);
}

TEST_CASE("bounded products flatten with radius and the swapped control grows") {
  const std::vector<int> radii{8, 16, 32, 64};
  CurveParams par;
  auto flatness = [](const BoundednessCurve& c) {
    return c.norms.back() / c.norms[c.norms.size() / 2];
  };
  par.alpha = 0.0;
  const auto trivial = boundedness_curve(CurveKind::phi_ratio, 1, radii, par);
  for (double n : trivial.norms) CHECK(n == doctest::Approx(1.0).epsilon(1e-7));
  par.alpha = 0.5;
  for (CurveKind kind : {CurveKind::phi_ratio, CurveKind::phi_log_ratio,
                         CurveKind::log_ratio, CurveKind::iterlog_ratio,
                         CurveKind::logprod_ratio, CurveKind::weight_transfer,
                         CurveKind::commutator_class}) {
    const auto curve = boundedness_curve(kind, 1, radii, par);
    REQUIRE(curve.norms.size() == radii.size());
    for (double n : curve.norms) CHECK(std::isfinite(n));
    CHECK(flatness(curve) <= 1.25);
  }
  const auto control = boundedness_curve(CurveKind::swapped_control, 1, radii, par);
  CHECK(flatness(control) >= 2.0);
  const auto flat2d = boundedness_curve(CurveKind::log_ratio, 2, {3, 5, 7}, par);
  CHECK(flatness(flat2d) <= 1.25);
  CHECK_THROWS_AS(boundedness_curve(CurveKind::log_ratio, 1, {16, 8}, par), Error);
}

TEST_CASE("scalar bounds are finite, stable, and match spot values") {
  ScalarBoundParams par;
  /* oracle: the plain formula written out */
  auto oracle_f = [&](double x, double y, double t) {
    const double jt = std::sqrt(1.0 + t * t), jx = std::sqrt(1.0 + x * x);
    return std::pow(jt / jx, 2.0 * par.s) * y * y / ((t - x) * (t - x) + y * y);
  };
  for (double x : {0.0, 1.0, -3.0})
    for (double y : {0.5, -0.25})
      for (double t : {0.0, 2.0, 100.0})
        CHECK(scalar_bound_value(ScalarBoundKind::resolvent_power, par, x, y, t) ==
              doctest::Approx(oracle_f(x, y, t)).epsilon(1e-13));
  CHECK(scalar_bound_value(ScalarBoundKind::resolvent_power, par, 3.0, 0.7, 3.0) == 1.0);
  par.s = 0.0;
  CHECK(scalar_bound_sup(ScalarBoundKind::resolvent_power, par, 16) <= 1.0);
  /* the cone constant bounds the large-t limit for s = 1: on the cone edge
     y = c<x> the value tends to c^2 from above, with O(x/t) excess */
  par.s = 1.0;
  for (double x : {0.0, 1.0, -10.0})
    for (double fr : {1.0, 0.5})
      for (double t : {1e6, 1e8, 1e10}) {
        const double y = fr * par.c * std::sqrt(1.0 + x * x);
        const double v = scalar_bound_value(ScalarBoundKind::resolvent_power, par, x, y, t);
        CHECK(v <= fr * fr * par.c * par.c + 1e-4);
        if (t == 1e10) CHECK(v == doctest::Approx(fr * fr * par.c * par.c).epsilon(1e-6));
      }
  auto stable = [](ScalarBoundKind kind, const ScalarBoundParams& p) {
    const double coarse = scalar_bound_sup(kind, p, 24);
    const double fine = scalar_bound_sup(kind, p, 48);
    CHECK(std::isfinite(fine));
    CHECK(fine > 0.0);
    CHECK(fine >= coarse); /* the refined grid contains the coarse one */
    CHECK(fine / coarse <= 1.05);
  };
  for (double s : {0.25, 0.5, 0.9}) {
    par.s = s;
    par.p = 1.0;
    stable(ScalarBoundKind::resolvent_power, par);
    stable(ScalarBoundKind::resolvent_power_log, par);
    stable(ScalarBoundKind::resolvent_power_iterlog, par);
    par.p = -1.0;
    stable(ScalarBoundKind::resolvent_power_log, par);
    stable(ScalarBoundKind::resolvent_power_iterlog, par);
  }
  par.p = 1.0;
  par.s = 1.2;
  CHECK_THROWS_AS(scalar_bound_value(ScalarBoundKind::resolvent_power, par, 1, 0.5, 2),
                  Error);
  par.s = 1.0;
  CHECK_THROWS_AS(scalar_bound_value(ScalarBoundKind::resolvent_power_log, par, 1, 0.5, 2),
                  Error);
  par.s = 0.5;
  CHECK_THROWS_AS(scalar_bound_value(ScalarBoundKind::resolvent_power, par, 0.0, 2.0, 1.0),
                  Error); /* outside the cone */
  CHECK_THROWS_AS(scalar_bound_value(ScalarBoundKind::resolvent_power, par, 1.0, 0.0, 1.0),
                  Error); /* excluded diagonal point */
}

TEST_CASE("interior power reports are observations, not assertions") {
  const auto reports = power_domination_report(1, 10, 2, 6);
  REQUIRE(reports.size() == 5);
  CHECK(!reports[0].violated); /* n = 2 is the proved case */
  for (const auto& r : reports) CHECK(std::isfinite(r.min_eigenvalue_of_difference));
}
