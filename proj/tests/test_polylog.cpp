#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <vector>

#include "core/polylog.hpp"
#include "core/rng.hpp"
#include "doctest.h"

using namespace lapbox;

/* Brute-force series oracle on |z| < 1; deliberately uses std::pow per term
   instead of the library's running product. */
static cplx oracle_series(double sigma, cplx z, int terms) {
  cplx s = 0.0;
  for (int k = 1; k <= terms; ++k) s += std::pow(z, double(k)) / std::pow(double(k), sigma);
  return s;
}

/* Inversion identities for negative real arguments, x > 1:
     Li_2(-x) = -pi^2/6 - log^2(x)/2 - Li_2(-1/x)
     Li_3(-x) = Li_3(-1/x) - log^3(x)/6 - (pi^2/6) log(x)
   The right-hand sides only need the series at -1/x, so they provide an
   independent route to the continuation region. */
static double oracle_li2_neg(double x) {
  const double pi2 = M_PI * M_PI, L = std::log(x);
  return -pi2 / 6.0 - 0.5 * L * L - oracle_series(2.0, -1.0 / x, 200).real();
}
static double oracle_li3_neg(double x) {
  const double pi2 = M_PI * M_PI, L = std::log(x);
  return oracle_series(3.0, -1.0 / x, 200).real() - L * L * L / 6.0 - pi2 / 6.0 * L;
}

static bool close_rel(cplx got, cplx want, double rel) {
  return std::abs(got - want) <= rel * std::max(1.0, std::abs(want));
}

TEST_CASE("series region matches brute-force summation and frozen references") {
  /* reference values frozen from a 50-digit mpmath run */
  CHECK(li(2.0, cplx(0.5, 0.0)).real() == doctest::Approx(0.5822405264650125059).epsilon(1e-14));
  CHECK(li(1.0, cplx(0.5, 0.0)).real() ==
        doctest::Approx(0.69314718055994530942).epsilon(1e-14));
  CHECK(close_rel(li(2.0, cplx(-0.3, 0.4)),
                  cplx(-0.30749828803358166162, 0.34602430657936860581), 1e-13));
  SplitMix64 rng(0x51a7e5u);
  for (int trial = 0; trial < 25; ++trial) {
    const cplx z = 0.5 * rng.uniform() * std::exp(cplx(0.0, 2.0 * M_PI * rng.uniform()));
    for (double sigma : {0.7, 2.0, 3.0})
      CHECK(std::abs(li(sigma, z) - oracle_series(sigma, z, 220)) <= 1e-13);
  }
  for (double sigma : {0.5, 1.0, 2.0, 3.0}) CHECK(li(sigma, cplx(0.0, 0.0)) == cplx(0.0, 0.0));
}

TEST_CASE("analytic continuation matches frozen references and the z=1 clause") {
  CHECK(close_rel(li(3.0, cplx(0.2, -0.7)),
                  cplx(0.13645904122269983258, -0.72241124328996187157), 1e-9));
  CHECK(close_rel(li(2.0, cplx(3.0, 0.1)),
                  cplx(2.2159467368784708094, 3.4300079350374747681), 1e-9));
  CHECK(close_rel(li(2.0, cplx(-5.0, 0.0)), cplx(-2.74927912606080829, 0.0), 1e-9));
  CHECK(close_rel(li(3.0, cplx(-5.0, 0.0)), cplx(-3.5375114376186075357, 0.0), 1e-9));
  CHECK(close_rel(li(2.0, cplx(-1e4, 0.0)), cplx(-44.060018953175299416, 0.0), 1e-9));
  CHECK(close_rel(li(3.0, cplx(-1e4, 0.0)), cplx(-145.36993255066370255, 0.0), 1e-9));
  CHECK(close_rel(li(2.0, cplx(-1e8, 0.0)), cplx(-171.3056735921569628, 0.0), 1e-9));
  CHECK(close_rel(li(3.0, cplx(-1e8, 0.0)), cplx(-1072.0562445545221906, 0.0), 1e-9));
  /* z = 1 is off the open cut when the order exceeds 1 */
  CHECK(li(2.0, cplx(1.0, 0.0)).real() ==
        doctest::Approx(1.6449340668482264365).epsilon(1e-9));
  CHECK(li(2.0, cplx(1.0, 0.0)).real() == doctest::Approx(M_PI * M_PI / 6.0).epsilon(1e-9));
  CHECK(li(3.0, cplx(1.0, 0.0)).real() ==
        doctest::Approx(1.2020569031595942854).epsilon(1e-9));
}

TEST_CASE("branch cut and order preconditions are enforced") {
  CHECK_THROWS_AS(li(2.0, cplx(2.0, 0.0)), Error);
  CHECK_THROWS_AS(li(2.0, cplx(1.5, 0.0)), Error);
  CHECK_THROWS_AS(li(1.0, cplx(1.0, 0.0)), Error);
  CHECK_THROWS_AS(li(0.0, cplx(0.3, 0.0)), Error);
  CHECK_THROWS_AS(li(-1.0, cplx(0.3, 0.0)), Error);
  CHECK_THROWS_AS(phi_poly(2, -1.0), Error);
  CHECK_THROWS_AS(phi_poly(2, cplx(-3.0, 0.0)), Error);
  CHECK_THROWS_AS(phi_poly(0, 1.0), Error);
  bool cut_code_seen = false;
  try {
    li(2.0, cplx(4.0, 0.0));
  } catch (const Error& e) {
    cut_code_seen = (e.code == Err::invalid_argument);
  }
  CHECK(cut_code_seen);
}

TEST_CASE("series and integral representation agree where both are valid") {
  std::vector<cplx> annulus{cplx(0.0, 0.0)};
  for (double r : {0.3, 0.4, 0.5})
    for (int j = 0; j < 12; ++j)
      annulus.push_back(r * std::exp(cplx(0.0, 2.0 * M_PI * j / 12.0)));
  for (double sigma : {0.5, 1.0, 2.0}) CHECK(integral_rep_residual(sigma, annulus) <= 1e-9);
  CHECK(integral_rep_residual(2.0, {cplx(0.5, 0.0)}) <= 1e-9);
  CHECK(integral_rep_residual(0.5, {cplx(-0.9, 0.0)}) <= 1e-9);
  CHECK_THROWS_AS(integral_rep_residual(2.0, {cplx(1.1, 0.0)}), Error);
  CHECK_THROWS_AS(integral_rep_residual(-1.5, {cplx(0.5, 0.0)}), Error);
}

TEST_CASE("inversion identities validate the continuation at negative arguments") {
  for (double x : {2.5, 10.0, 137.0}) {
    CHECK(li(2.0, cplx(-x, 0.0)).real() == doctest::Approx(oracle_li2_neg(x)).epsilon(1e-9));
    CHECK(li(3.0, cplx(-x, 0.0)).real() == doctest::Approx(oracle_li3_neg(x)).epsilon(1e-9));
  }
  /* dual-route value for the logarithm surrogate itself */
  CHECK(phi_poly(3, 10.0) == doctest::Approx(-oracle_li3_neg(10.0)).epsilon(1e-9));
}

TEST_CASE("phi is a real increasing logarithm surrogate off its cut") {
  CHECK(phi_poly(1, 1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  for (int n : {1, 2, 3}) CHECK(phi_poly(n, 0.0) == 0.0);
  const std::vector<double> grid{-0.9, -0.5, 0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 1e2, 1e4};
  for (int n : {1, 2, 3})
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
      CHECK(phi_poly(n, grid[i + 1]) > phi_poly(n, grid[i]));
  for (cplx z : {cplx(0.3, 0.8), cplx(-0.4, 0.1), cplx(5.0, 2.0)})
    for (int n : {1, 2, 3})
      CHECK(std::abs(phi_poly(n, std::conj(z)) - std::conj(phi_poly(n, z))) <= 1e-12);
  CHECK(std::abs(phi_poly(2, cplx(7.3, 0.0)).imag()) <= 1e-13);
  CHECK(std::abs(phi_poly(3, cplx(-0.8, 0.0)).imag()) <= 1e-13);
}

TEST_CASE("asymptotic ratios approach one from above") {
  const auto r1 = verify_asymptotic(1, {1e8});
  CHECK(std::abs(r1[0] - 1.0) <= 1e-8);
  const std::vector<double> grid{1e4, 1e6, 1e8};
  const auto r2 = verify_asymptotic(2, grid);
  const auto r3 = verify_asymptotic(3, grid);
  REQUIRE(r2.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(r2[i] > 1.0);
    CHECK(r3[i] > 1.0);
    if (i) {
      CHECK(std::abs(r2[i] - 1.0) < std::abs(r2[i - 1] - 1.0));
      CHECK(std::abs(r3[i] - 1.0) < std::abs(r3[i - 1] - 1.0));
    }
  }
  /* frozen tail offsets from the same mpmath run */
  CHECK(r2[2] - 1.0 == doctest::Approx(0.009695431373).epsilon(1e-5));
  CHECK(r3[2] - 1.0 == doctest::Approx(0.02908629431).epsilon(1e-5));
  CHECK(std::abs(r2[2] - 1.0) <= 5e-2);
  CHECK(std::abs(r3[2] - 1.0) <= 5e-2);
  CHECK_THROWS_AS(verify_asymptotic(2, {1e4, 1e3}), Error);
  CHECK_THROWS_AS(verify_asymptotic(2, {5.0}), Error);
}

TEST_CASE("the upper half plane maps into its closure") {
  std::vector<cplx> samples;
  SplitMix64 rng(0xfeedbeefu);
  while (samples.size() < 200)
    samples.emplace_back(40.0 * rng.symmetric(), 30.0 * rng.uniform() + 1e-6);
  samples.emplace_back(-5.0, 1e-3); /* just above the cut */
  samples.emplace_back(7.0, 0.0);   /* real axis off the cut */
  for (int n : {2, 3}) CHECK(verify_nevanlinna(n, samples) <= 1e-12);
  CHECK_THROWS_AS(verify_nevanlinna(2, {cplx(-2.0, 0.0)}), Error);
}

TEST_CASE("Herglotz data reconstructs phi") {
  const NevanlinnaRep rep1 = phi_nevanlinna_rep(1);
  const NevanlinnaRep rep2 = phi_nevanlinna_rep(2);
  const NevanlinnaRep rep3 = phi_nevanlinna_rep(3);
  /* closed forms for order 1: alpha = log(2)/2 and mass = pi/4 */
  CHECK(rep1.alpha == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-12));
  CHECK(nevanlinna_density_mass(rep1) == doctest::Approx(M_PI / 4.0).epsilon(1e-12));
  /* frozen constants for orders 2 and 3 */
  CHECK(rep2.alpha == doctest::Approx(0.20561675835602830456).epsilon(1e-10));
  CHECK(rep3.alpha == doctest::Approx(0.11269283467121196426).epsilon(1e-10));
  for (const NevanlinnaRep* rep : {&rep1, &rep2, &rep3}) {
    CHECK(rep->beta == 0.0);
    CHECK(rep->support_hi == -1.0);
    for (double l : {-1.0, -2.0, -5.0, -1e3, -1e8}) CHECK(rep->density(l) >= 0.0);
    CHECK(std::isfinite(nevanlinna_density_mass(*rep)));
    CHECK(nevanlinna_density_mass(*rep) > 0.0);
  }
  CHECK(rep2.density(-1.0) == 0.0);
  const std::vector<cplx> zs{cplx(0.0, 1.0), cplx(2.0, 3.0), cplx(-0.5, 0.2),
                             cplx(10.0, 0.01)};
  for (int n : {1, 2, 3}) {
    const NevanlinnaRep rep = phi_nevanlinna_rep(n);
    for (cplx z : zs) CHECK(std::abs(nevanlinna_eval(rep, z) - phi_poly(n, z)) <= 1e-10);
  }
  CHECK_THROWS_AS(nevanlinna_eval(rep2, cplx(-4.0, 0.0)), Error);
}
