#include <cmath>
#include <cstdlib>
#include <random>

#include "doctest.h"
#include "regulab/numerics.hpp"

using namespace regulab;

TEST_CASE("adaptive quadrature on smooth integrands") {
  Tolerance tol{1e-13};
  CHECK(integrate_adaptive([](double x) { return x * x; }, 0, 1, tol).value ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(integrate_adaptive([](double x) { return std::sin(x); }, 0, kPi, tol).value ==
        doctest::Approx(2.0).epsilon(1e-13));
  auto r = integrate_adaptive([](double x) { return std::sqrt(x); }, 0, 1, tol);
  CHECK(std::abs(r.value - 2.0 / 3.0) < 1e-12);
  CHECK(integrate_adaptive([](double x) { return x; }, 2, 2, tol).value == 0.0);
}

TEST_CASE("adaptive quadrature reports the best estimate when the budget runs out") {
  Tolerance tol{1e-14};
  tol.max_evaluations = 100;
  try {
    integrate_adaptive([](double x) { return std::sin(200 * x) / (x + 1e-3); }, 0, 10, tol);
    FAIL("expected NoConvergence");
  } catch (const NoConvergence& e) {
    CHECK(std::isfinite(e.best_estimate));
  }
  Tolerance bad{-1.0};
  CHECK_THROWS_AS(integrate_adaptive([](double) { return 1.0; }, 0, 1, bad), DomainError);
}

TEST_CASE("tanh-sinh handles inverse square-root endpoints") {
  Tolerance tol{1e-13};
  auto r = integrate_endpoint_singular(
      [](double, double da, double db) { return 1.0 / std::sqrt(da * db); }, 0.0, 1.0, tol);
  CHECK(std::abs(r.value - kPi) < 1e-12);
  auto l = integrate_endpoint_singular([](double x) { return std::log(x); }, 0.0, 1.0, tol);
  CHECK(std::abs(l.value + 1.0) < 1e-12);
  auto rev = integrate_endpoint_singular([](double x) { return x; }, 1.0, 0.0, tol);
  CHECK(std::abs(rev.value + 0.5) < 1e-13);
  // Shifted interval far from the origin keeps full accuracy thanks to the distances.
  auto s = integrate_endpoint_singular(
      [](double, double da, double db) { return 1.0 / std::sqrt(da * db); }, 1e6, 1e6 + 2.0, tol);
  CHECK(std::abs(s.value - kPi) < 1e-12);
}

TEST_CASE("stable quadratic solver") {
  auto r = solve_quadratic_stable(1.0, -3.0, 2.0);
  double lo = std::min(r[0].real(), r[1].real()), hi = std::max(r[0].real(), r[1].real());
  CHECK(lo == doctest::Approx(1.0));
  CHECK(hi == doctest::Approx(2.0));
  auto c = solve_quadratic_stable(1.0, 0.0, 1.0);
  CHECK(std::abs(c[0] * c[1] - 1.0) < 1e-15);
  CHECK(std::abs(std::abs(c[0].imag()) - 1.0) < 1e-15);
  auto s = solve_quadratic_stable(1.0, -1e8, 1.0);
  double small = std::min(std::abs(s[0]), std::abs(s[1]));
  CHECK(std::abs(small - 1e-8) < 1e-22);
  CHECK_THROWS_AS(solve_quadratic_stable(0.0, 1.0, 1.0), DegenerateInput);
}

TEST_CASE("stable quadratic solver: random coefficients satisfy Vieta") {
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int i = 0; i < 500; ++i) {
    cplx a(u(gen), u(gen)), b(u(gen), u(gen)), c(u(gen), u(gen));
    auto r = solve_quadratic_stable(a, b, c);
    CHECK(std::abs(r[0] + r[1] + b / a) < 1e-12 * (1 + std::abs(b / a)));
    CHECK(std::abs(r[0] * r[1] - c / a) < 1e-12 * (1 + std::abs(c / a)));
  }
}

TEST_CASE("polynomial roots") {
  std::vector<cplx> p = {-6.0, 11.0, -6.0, 1.0};
  auto r = polynomial_roots(p);
  REQUIRE(r.size() == 3);
  std::vector<double> re;
  for (auto z : r) re.push_back(z.real());
  std::sort(re.begin(), re.end());
  CHECK(re[0] == doctest::Approx(1.0));
  CHECK(re[1] == doctest::Approx(2.0));
  CHECK(re[2] == doctest::Approx(3.0));
  std::vector<cplx> zero_root = {0.0, 0.0, 1.0, 1.0};
  CHECK(polynomial_roots(zero_root).size() == 3);
  std::vector<cplx> zero = {0.0, 0.0};
  CHECK_THROWS_AS(polynomial_roots(zero), DegenerateInput);
}

TEST_CASE("Carlson R_F agrees with the AGM") {
  // R_F(0, 1, 2) is the lemniscate constant divided by sqrt 2.
  CHECK(std::abs(carlson_rf(0.0, 1.0, 2.0) - 1.3110287771460599052) < 1e-15);
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> u(0.1, 5);
  for (int i = 0; i < 200; ++i) {
    cplx y(u(gen), u(gen) - 2.5), z(u(gen), u(gen) - 2.5);
    cplx lhs = carlson_rf(0.0, y, z);
    cplx rhs = kPi / (2.0 * agm(std::sqrt(y), std::sqrt(z)));
    CHECK(std::abs(lhs - rhs) < 1e-13 * std::abs(lhs));
  }
  CHECK_THROWS_AS(carlson_rf(0.0, 0.0, 1.0), DomainError);
}

TEST_CASE("compensated accumulation") {
  Accumulator plain(Precision::Double), dd(Precision::DoubleDouble);
  plain.add(1.0);
  dd.add(1.0);
  for (int i = 0; i < 10000; ++i) {
    plain.add(1e-17);
    dd.add(1e-17);
  }
  CHECK(plain.sum() == 1.0);
  CHECK(std::abs(dd.sum() - (1.0 + 1e-13)) < 1e-16);
}

TEST_CASE("precision selection from the environment") {
  setenv("REGULAB_PRECISION", "dd", 1);
  CHECK(precision_from_env() == Precision::DoubleDouble);
  setenv("REGULAB_PRECISION", "quad", 1);
  CHECK_THROWS_AS(precision_from_env(), DomainError);
  unsetenv("REGULAB_PRECISION");
  CHECK(precision_from_env() == Precision::Double);
}
