#include <cmath>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "doctest.h"
#include "regulab/errors.hpp"
#include "regulab/periods.hpp"

using namespace regulab;

namespace {

using Wide = boost::multiprecision::cpp_bin_float_50;

// The polynomials under the square roots, evaluated in 50 digits.
Wide radicand(Family f, const Wide& a, const Wide& t) {
  switch (f) {
    case Family::P: return t * (1 - t) * ((a - 4 * t) * (a - 4 * t) - 16 * t);
    case Family::S: return (1 - t) * (2 * t + a - 2) * (2 * t * t + a * t + a);
    case Family::Q: return (1 - t) * (a * a * t - (4 * t - 1) * (4 * t - 1));
    case Family::R: return (1 - t) * ((a - 4) + 2 * t) * (2 * t * t + (a + 2) * t + (a - 2));
  }
  return 0;
}

// Integration limits from their closed forms, in 50 digits.
std::pair<Wide, Wide> limits(Family f, const Wide& a) {
  using boost::multiprecision::sqrt;
  switch (f) {
    case Family::P:
      if (a >= 0) return {Wide(0), (2 + a - 2 * sqrt(a + 1)) / 4};
      return {Wide(0), Wide(1)};
    case Family::S:
      if (a >= 0) return {(2 - a) / 2, Wide(1)};
      return {(-a - sqrt(a * a - 8 * a)) / 4, Wide(1)};
    case Family::Q: return {(8 + a * a - a * sqrt(a * a + 16)) / 32, Wide(1)};
    case Family::R: return {(-(a + 2) + sqrt(a * a - 4 * a + 20)) / 4, Wide(1)};
  }
  return {};
}

// int_lo^hi dt / sqrt(R(t)) with t = lo + (hi - lo) sin^2(phi), which removes
// the square-root singularities at both limits.
double sine_substitution(Family f, double a_) {
  Wide a = a_;
  auto [lo, hi] = limits(f, a);
  Tolerance tol;
  tol.absolute = 1e-13;
  return integrate_adaptive(
             [&](double phi) {
               Wide s = std::sin(phi), c = std::cos(phi);
               Wide t = lo + (hi - lo) * s * s;
               return static_cast<double>(2 * (hi - lo) * s * c / boost::multiprecision::sqrt(radicand(f, a, t)));
             },
             0.0, kPi / 2, tol)
      .value;
}

struct Case {
  Family f;
  double a;
};

const Case kCases[] = {{Family::P, 0.5}, {Family::P, 3.0}, {Family::P, 4.0},   {Family::P, -1.5}, {Family::P, -7.0},
                       {Family::S, 0.5}, {Family::S, 3.5}, {Family::S, -2.0},  {Family::S, -9.0}, {Family::Q, 4.0},
                       {Family::Q, 6.5}, {Family::Q, 15}, {Family::R, 6.0},   {Family::R, 7.0},  {Family::R, 20.0}};

}  // namespace

TEST_CASE("cycle integral limits") {
  auto p = cycle_integral(Family::P, 3);
  CHECK(p.lo == 0.0);
  CHECK(std::abs(p.hi - 0.25) < 1e-15);
  auto s = cycle_integral(Family::S, 2);
  CHECK(s.lo == 0.0);
  CHECK(s.hi == 1.0);
  auto sn = cycle_integral(Family::S, -2);
  CHECK(std::abs(sn.lo - (2.0 - std::sqrt(20.0)) / 4.0) < 1e-15);
  auto q = cycle_integral(Family::Q, 5);
  CHECK(std::abs(q.lo - (33.0 - 5.0 * std::sqrt(41.0)) / 32.0) < 1e-15);
  auto r = cycle_integral(Family::R, 7);
  CHECK(std::abs(r.lo - (-9.0 + std::sqrt(41.0)) / 4.0) < 1e-15);
  CHECK(cycle_integral(Family::P, -3).hi == 1.0);
}

TEST_CASE("cycle integrals outside the known regimes are rejected") {
  CHECK_THROWS_AS(cycle_integral(Family::P, -0.5), UnsupportedRegime);
  CHECK_THROWS_AS(cycle_integral(Family::P, 5.0), UnsupportedRegime);
  CHECK_THROWS_AS(cycle_integral(Family::S, 6.0), UnsupportedRegime);
  CHECK_THROWS_AS(cycle_integral(Family::Q, 3.9), UnsupportedRegime);
  CHECK_THROWS_AS(cycle_integral(Family::R, 5.5), UnsupportedRegime);
  CHECK_THROWS_AS(cycle_integral(Family::P, -1.0), DomainError);
}

TEST_CASE("cycle integrals match the sine-substitution oracle") {
  for (auto [f, a] : kCases) {
    auto c = cycle_integral(f, a);
    double oracle = c.multiplier * sine_substitution(f, a);
    INFO(family_name(f), " ", a);
    CHECK(std::abs(c.value.value - oracle) < 1e-10);
    CHECK(c.value.error_estimate < 1e-10);
  }
}

TEST_CASE("integrands are positive between their limits") {
  for (auto [f, a] : kCases) {
    auto c = cycle_integral(f, a);
    for (int k = 1; k < 1000; ++k) {
      double t = c.lo + (c.hi - c.lo) * k / 1000.0;
      double r = cycle_radicand(f, a, t);
      INFO(family_name(f), " ", a, " t=", t);
      REQUIRE(r > 0.0);
      // The factored form used for quadrature agrees with the raw polynomial.
      CHECK(std::abs(c.f(t) * std::sqrt(r) - 1.0) < 1e-8);
    }
  }
}

TEST_CASE("improper integrals") {
  RadicalIntegrand f;
  f.real_roots = {0.0};
  f.complex_roots = {cplx(0, 1)};
  double exact = std::pow(std::tgamma(0.25), 2) / (2.0 * std::sqrt(kPi));
  auto r = integrate_radical(f, 0.0, std::numeric_limits<double>::infinity(), Tolerance{1e-12});
  CHECK(std::abs(r.value - exact) < 1e-10);
}

TEST_CASE("P and S cycles agree below -1") {
  CHECK(std::abs(cycle_integral(Family::P, -2).value.value - cycle_integral(Family::S, -2).value.value) < 1e-10);
}

TEST_CASE("period identities") {
  for (double a = 0.5; a <= 7.5; a += 0.5) {
    auto r = verify_period_identity(PeriodIdentity::Doubled, a);
    INFO(r.name, " ", r.residual);
    CHECK(r.pass);
    CHECK(r.residual < 1e-8);
  }
  for (double a : {-1.5, -2.0, -5.0, -20.0}) {
    auto r = verify_period_identity(PeriodIdentity::Negative, a);
    INFO(r.name, " ", r.residual);
    CHECK(r.residual < 1e-8);
  }
  for (double a : {4.0, 5.0, 8.0, 12.0}) {
    auto r = verify_period_identity(PeriodIdentity::QuotientPair, a);
    INFO(r.name, " ", r.residual);
    CHECK(r.residual < 1e-8);
  }
  CHECK_THROWS_AS(verify_period_identity(PeriodIdentity::Doubled, 9.0), UnsupportedRegime);
  CHECK_THROWS_AS(verify_period_identity(PeriodIdentity::Negative, -0.5), UnsupportedRegime);
  CHECK_THROWS_AS(verify_period_identity(PeriodIdentity::QuotientPair, 3.0), UnsupportedRegime);
  CHECK(parse_period_identity("quotient") == PeriodIdentity::QuotientPair);
  CHECK_THROWS_AS(parse_period_identity("nope"), DomainError);
}

TEST_CASE("changes of variables") {
  for (auto id : all_variable_changes()) {
    CHECK(parse_variable_change(variable_change_name(id)) == id);
    for (double a : {-1.5, -2.0, -3.0, -5.0, -20.0, 0.5, 3.0, 4.0, 5.0, 7.5, 12.0}) {
      if (!variable_change_applies(id, a)) {
        CHECK_THROWS_AS(change_of_variable_check(id, a), UnsupportedRegime);
        continue;
      }
      auto r = change_of_variable_check(id, a);
      INFO(r.name, " ", r.residual);
      CHECK(r.residual < 1e-8);
    }
  }
  // t = (a s - a + 2) / 2 at a = 3.
  auto t_of = [](double a, double s) { return (a * s - a + 2) / 2; };
  CHECK(t_of(3, 1) == 1.0);
  CHECK(t_of(3, 0) == -0.5);
  CHECK(change_of_variable_check(VariableChange::Isogeny, -2).pass);
  CHECK(change_of_variable_check(VariableChange::Rescaling, -2).pass);
  CHECK_THROWS_AS(involution_map(-2.0, 0.5), DomainError);
}

TEST_CASE("involution is its own inverse") {
  std::mt19937 gen(41);
  std::uniform_real_distribution<double> w(0, 1), al(-30, -1.0001);
  for (int i = 0; i < 500; ++i) {
    double a = al(gen), x = w(gen);
    if (std::abs(1 + a * x) < 1e-3 || std::abs(1 + a * involution_map(a, x)) < 1e-3) continue;
    CHECK(std::abs(involution_map(a, involution_map(a, x)) - x) < 1e-12 * (1 + std::abs(x)) * std::abs(a));
  }
}

TEST_CASE("isogeny substitution is increasing past its lower limit") {
  for (double a : {-1.5, -2.0, -5.0, -20.0}) {
    double v0 = isogeny_lower_limit(a);
    CHECK(std::abs(isogeny_map(a, v0)) < 1e-10 * (1 + v0));
    double prev = isogeny_map(a, v0);
    for (int k = 1; k <= 2000; ++k) {
      double v = v0 * std::pow(1.01, k);
      double u = isogeny_map(a, v);
      REQUIRE(u > prev);
      prev = u;
    }
  }
}

TEST_CASE("cycles are rational multiples of the imaginary period") {
  auto p3 = cycle_vs_lattice(Family::P, 3);
  CHECK(p3.distance < 1e-6);
  CHECK(p3.denominator <= 4);
  auto s3 = cycle_vs_lattice(Family::S, 3);
  CHECK(s3.distance < 1e-6);
  // The S cycle is twice the P cycle for 0 < a < 8 on the same curve E_a.
  CHECK(std::abs(s3.ratio - 2 * p3.ratio) < 1e-6);
  auto q5 = cycle_vs_lattice(Family::Q, 5), r7 = cycle_vs_lattice(Family::R, 7);
  CHECK(std::abs(q5.ratio - r7.ratio) < 1e-6);
  for (auto [f, a] : kCases) {
    auto l = cycle_vs_lattice(f, a);
    INFO(family_name(f), " ", a, " ratio ", l.ratio);
    CHECK(l.distance < 1e-6);
  }
}
