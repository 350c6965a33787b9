#include <cmath>
#include <random>

#include "doctest.h"
#include "regulab/mahler.hpp"

using namespace regulab;

namespace {

BivariatePoly univariate_x(std::vector<double> c) { return BivariatePoly::from_y_coefficients({c}); }

}  // namespace

TEST_CASE("family polynomials") {
  // P_0 = (x + 1)(y + 1)(x + y).
  BivariatePoly p0 = family_poly(Family::P, 0);
  std::mt19937 gen(31);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 20; ++i) {
    cplx x(u(gen), u(gen)), y(u(gen), u(gen));
    CHECK(std::abs(p0(x, y) - (x + 1.0) * (y + 1.0) * (x + y)) < 1e-12);
    double a = u(gen);
    CHECK(std::abs(family_poly(Family::P, a)(x, y) - ((x + 1.0) * (y + 1.0) * (x + y) - a * x * y)) < 1e-12);
  }
  BivariatePoly s = family_poly(Family::S, 2.5);
  CHECK(s.y_degree() == 2);
  CHECK(s.y_coefficient(0) == std::vector<double>{0, 0, 0, 0, 1});
  BivariatePoly r = family_poly(Family::R, 3.0);
  CHECK(r.coefficient(2, 1) == 2.0);  // (2 beta - 4) x^2 y
  CHECK_THROWS_AS(BivariatePoly(std::vector<std::vector<double>>{{0.0}}), DegenerateInput);
}

TEST_CASE("Jensen's formula in one variable") {
  std::vector<double> a = {-2, 1}, b = {1, 1, 1}, c = {1, 2};
  CHECK(std::abs(jensen_univariate(a) - std::log(2.0)) < 1e-15);
  CHECK(std::abs(jensen_univariate(b)) < 1e-15);
  CHECK(std::abs(jensen_univariate(c) - std::log(2.0)) < 1e-15);
  std::vector<double> z = {0, 0};
  CHECK_THROWS_AS(jensen_univariate(z), DegenerateInput);
}

TEST_CASE("Mahler measure through Jensen's formula in y") {
  CHECK(std::abs(mahler_quadratic_y(BivariatePoly::from_y_coefficients({{-2}, {1}})).value - std::log(2.0)) < 1e-12);
  CHECK(std::abs(mahler_quadratic_y(BivariatePoly::from_y_coefficients({{0}, {0, 1}})).value) < 1e-12);
  CHECK_THROWS_AS(mahler_quadratic_y(univariate_x({1, 1})), DomainError);
  // Known values (computed independently to high precision).
  CHECK(std::abs(mahler_quadratic_y(family_poly(Family::P, 1)).value - 0.22748122301234977) < 1e-10);
  CHECK(std::abs(mahler_quadratic_y(family_poly(Family::P, 3)).value - 0.616870938789552) < 1e-10);
  CHECK(std::abs(mahler_quadratic_y(family_poly(Family::P, -4)).value - 1.7143781498598356) < 1e-10);
  CHECK(std::abs(mahler_quadratic_y(family_poly(Family::Q, 5)).value - 1.6004722772083901) < 1e-10);
  double s2 = mahler_quadratic_y(family_poly(Family::S, 2)).value;
  double p2 = mahler_quadratic_y(family_poly(Family::P, 2)).value;
  CHECK(std::abs(s2 - 2 * p2) < 1e-8);
}

TEST_CASE("torus quadrature") {
  CHECK(std::abs(mahler_torus2(univariate_x({3, 1})).value - std::log(3.0)) < 1e-5);
  CHECK(std::abs(mahler_torus2(BivariatePoly::from_y_coefficients({{0, -1}, {1}})).value) < 1e-5);
  double t = mahler_torus2(family_poly(Family::P, -4)).value;
  double j = mahler_quadratic_y(family_poly(Family::P, -4)).value;
  CHECK(std::abs(t - j) < 1e-5);
}

TEST_CASE("eta path integrals") {
  // eta(x, 1 - x) = dD(x) integrates to 0 around closed loops.
  for (cplx centre : {cplx(0.5, 0), cplx(0, 0), cplx(1.0, 0.2)}) {
    ParametrizedPath loop;
    loop.x = [=](double t) { return centre + 0.37 * std::polar(1.0, t); };
    loop.dx = [](double t) { return 0.37 * cplx(0, 1) * std::polar(1.0, t); };
    loop.y = [=](double t) { return 1.0 - (centre + 0.37 * std::polar(1.0, t)); };
    loop.dy = [](double t) { return -0.37 * cplx(0, 1) * std::polar(1.0, t); };
    std::vector<double> part = {0, kPi / 2, kPi, 3 * kPi / 2, 2 * kPi};
    CHECK(std::abs(eta_path_integral(loop, part)) < 1e-10);
  }
  ParametrizedPath diag;
  diag.x = [](double t) { return cplx(1 + t, t * t); };
  diag.dx = [](double t) { return cplx(1, 2 * t); };
  diag.y = diag.x;
  diag.dy = diag.dx;
  std::vector<double> part = {0, 1};
  CHECK(std::abs(eta_path_integral(diag, part)) < 1e-14);
  ParametrizedPath through_zero;
  through_zero.x = [](double t) { return cplx(t - 0.5, 0); };
  through_zero.dx = [](double) { return cplx(1, 0); };
  through_zero.y = [](double) { return cplx(2, 0); };
  through_zero.dy = [](double) { return cplx(0, 0); };
  std::vector<double> grid = {0, 0.25, 0.5, 1};
  CHECK_THROWS_AS(eta_path_integral(through_zero, grid), SingularPath);
  // Jensen path of P_3: m(P*) = m(x + 1) = 0.
  double e = jensen_eta_integral(family_poly(Family::P, 3));
  CHECK(std::abs(e + 2 * kPi * mahler_quadratic_y(family_poly(Family::P, 3)).value) < 1e-6);
  double eq = jensen_eta_integral(family_poly(Family::Q, 5));
  double mq = mahler_quadratic_y(family_poly(Family::Q, 5)).value;
  std::vector<double> star = family_poly(Family::Q, 5).leading_y();
  CHECK(std::abs(eq + 2 * kPi * (mq - jensen_univariate(star))) < 1e-6);
}

TEST_CASE("roots are reciprocal on the unit circle") {
  std::mt19937 gen(37);
  std::uniform_real_distribution<double> th(0, 2 * kPi), al(-10, 10);
  for (Family f : {Family::P, Family::S, Family::Q, Family::R}) {
    for (int i = 0; i < 200; ++i) {
      BivariatePoly p = family_poly(f, al(gen));
      cplx x = std::polar(1.0, th(gen));
      auto r = solve_quadratic_stable(p.y_coefficient_at(2, x), p.y_coefficient_at(1, x), p.y_coefficient_at(0, x));
      CHECK(std::abs(std::abs(r[0] * r[1]) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("Mahler measure is invariant under inversion of both variables") {
  for (Family f : {Family::P, Family::S, Family::Q, Family::R}) {
    for (double a : {-3.5, 1.5, 6.0}) {
      BivariatePoly p = family_poly(f, a);
      CHECK(std::abs(mahler_quadratic_y(p).value - mahler_quadratic_y(p.inverted()).value) < 1e-8);
    }
  }
}

TEST_CASE("Jensen and torus quadrature agree across parameter grids") {
  for (Family f : {Family::P, Family::S, Family::Q, Family::R}) {
    for (int k = 0; k < 20; ++k) {
      double a = -9.3 + k;
      BivariatePoly p = family_poly(f, a);
      double j = mahler_quadratic_y(p).value;
      double t = mahler_torus2(p).value;
      INFO(family_name(f), " ", a);
      CHECK(std::abs(j - t) < 1e-4);
    }
  }
}

TEST_CASE("Mahler measures are continuous across regime boundaries") {
  for (Family f : {Family::P, Family::S, Family::Q, Family::R}) {
    for (double a : {0.0, 4.0, -1.0}) {
      double lo = mahler_quadratic_y(family_poly(f, a - 1e-9)).value;
      double hi = mahler_quadratic_y(family_poly(f, a + 1e-9)).value;
      double at = mahler_quadratic_y(family_poly(f, a)).value;
      INFO(family_name(f), " ", a);
      CHECK(std::abs(lo - hi) < 1e-6);
      CHECK(std::abs(lo - at) < 1e-6);
    }
  }
}
