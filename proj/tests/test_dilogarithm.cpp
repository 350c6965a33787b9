#include <cmath>
#include <random>

#include "doctest.h"
#include "regulab/dilogarithm.hpp"

using namespace regulab;

namespace {

// Catalan's constant from its defining alternating series, summed in pairs
// with an Euler-type tail correction.
double catalan_oracle() {
  long double s = 0;
  const int n = 2000000;
  for (int k = n - 1; k >= 0; --k) {
    long double t = 1.0L / ((2.0L * k + 1) * (2.0L * k + 1));
    s += (k % 2 == 0) ? t : -t;
  }
  // Tail of an alternating series is about half the first omitted term.
  long double first = 1.0L / ((2.0L * n + 1) * (2.0L * n + 1));
  s += (n % 2 == 0 ? 0.5L : -0.5L) * first;
  return static_cast<double>(s);
}

// Direct power series, valid for |z| < 1.
cplx li2_series_oracle(cplx z) {
  cplx s = 0, t = z;
  for (int k = 1; k < 20000; ++k) {
    s += t / double(k) / double(k);
    t *= z;
    if (std::abs(t) < 1e-20) break;
  }
  return s;
}

}  // namespace

TEST_CASE("dilogarithm special values") {
  CHECK(li2(0.0) == cplx(0.0));
  CHECK(std::abs(li2(1.0) - kPi * kPi / 6) < 1e-15);
  CHECK(std::abs(li2(-1.0) + kPi * kPi / 12) < 1e-15);
  double l2 = std::log(2.0);
  CHECK(std::abs(li2(0.5) - (kPi * kPi / 12 - l2 * l2 / 2)) < 1e-15);
  // On the cut the value is the limit from below.
  cplx two = li2(2.0);
  CHECK(std::abs(two.real() - kPi * kPi / 4) < 1e-14);
  CHECK(std::abs(two.imag() + kPi * l2) < 1e-14);
  cplx below = li2(cplx(2.0, -1e-12));
  CHECK(std::abs(two - below) < 1e-10);
}

TEST_CASE("dilogarithm matches the power series inside the unit disc") {
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> r(0, 0.9), t(-kPi, kPi);
  for (int i = 0; i < 300; ++i) {
    cplx z = std::polar(r(gen), t(gen));
    CHECK(std::abs(li2(z) - li2_series_oracle(z)) < 1e-13);
  }
}

TEST_CASE("dilogarithm functional equations") {
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 300; ++i) {
    cplx z(u(gen), u(gen));
    if (std::abs(z.imag()) < 1e-3) continue;
    // Reflection.
    cplx refl = li2(z) + li2(1.0 - z) - (kPi * kPi / 6 - std::log(z) * std::log(1.0 - z));
    CHECK(std::abs(refl) < 1e-12);
    // Inversion.
    cplx l = std::log(-z);
    cplx inv = li2(z) + li2(1.0 / z) + kPi * kPi / 6 + 0.5 * l * l;
    CHECK(std::abs(inv) < 1e-12);
  }
}

TEST_CASE("Bloch-Wigner special values") {
  CHECK(bloch_wigner(0.0) == 0.0);
  CHECK(bloch_wigner(1.0) == 0.0);
  CHECK(bloch_wigner(-2.5) == 0.0);
  CHECK(std::abs(bloch_wigner(cplx(0, 1)) - catalan_oracle()) < 1e-12);
  CHECK(std::abs(bloch_wigner(std::polar(1.0, kPi / 3)) - kBlochWignerMax) < 1e-14);
}

TEST_CASE("Bloch-Wigner symmetries and the five-term relation") {
  std::mt19937 gen(9);
  std::uniform_real_distribution<double> u(-4, 4);
  for (int i = 0; i < 400; ++i) {
    cplx x(u(gen), u(gen)), y(u(gen), u(gen));
    if (std::abs(x.imag()) < 1e-3 || std::abs(y.imag()) < 1e-3) continue;
    CHECK(std::abs(bloch_wigner(x) + bloch_wigner(1.0 / x)) < 1e-12);
    CHECK(std::abs(bloch_wigner(x) + bloch_wigner(1.0 - x)) < 1e-12);
    CHECK(std::abs(bloch_wigner(x) + bloch_wigner(std::conj(x))) < 1e-12);
    CHECK(std::abs(bloch_wigner(x)) <= kBlochWignerMax + 1e-12);
    cplx a = 1.0 - x * y;
    if (std::abs(a) < 1e-3) continue;
    double five = bloch_wigner(x) + bloch_wigner(y) + bloch_wigner((1.0 - x) / a) +
                  bloch_wigner(1.0 - x * y) + bloch_wigner((1.0 - y) / a);
    CHECK(std::abs(five) < 1e-11);
  }
}

TEST_CASE("QPoint normalizes into the annulus") {
  QPoint p(0.5, 5.0);
  CHECK(std::abs(p.z()) <= 1.0);
  CHECK(std::abs(p.z()) > 0.5);
  CHECK(std::abs(p.z() - 0.625) < 1e-15);
  CHECK_THROWS_AS(QPoint(1.0, 0.5), DomainError);
  CHECK_THROWS_AS(QPoint(0.5, 0.0), DomainError);
}

TEST_CASE("elliptic dilogarithm basic properties") {
  Tolerance tol{1e-14};
  CHECK(std::abs(elliptic_dilog(QPoint(0.1, 1.0), tol)) < 1e-15);
  cplx q(-0.24632, 0.0);
  std::mt19937 gen(13);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 100; ++i) {
    cplx z(u(gen), u(gen));
    if (std::abs(z) < 1e-2) continue;
    double base = elliptic_dilog(QPoint(q, z), tol);
    // Quasi-periodicity z -> q z holds exactly on C^*/q^Z.
    CHECK(std::abs(base - elliptic_dilog(QPoint(q, q * z), tol)) < 1e-12);
    CHECK(std::abs(base + elliptic_dilog(QPoint(q, 1.0 / z), tol)) < 1e-12);
    CHECK(std::abs(base + elliptic_dilog(QPoint(q, std::conj(z)), tol)) < 1e-12);
  }
  CHECK_THROWS_AS(elliptic_dilog(QPoint(1.0 - 1e-14, 0.5)), IllConditionedLattice);
}

TEST_CASE("elliptic dilogarithm agrees with a longer truncation") {
  cplx q = 0.3, z(0.2, 0.7);
  double fast = elliptic_dilog(QPoint(q, z), Tolerance{1e-10});
  double slow = 0;
  QPoint p(q, z);
  slow += bloch_wigner(p.z());
  for (int n = 1; n < 200; ++n) {
    slow += bloch_wigner(std::pow(q, n) * p.z()) - bloch_wigner(std::pow(q, n) / p.z());
  }
  CHECK(std::abs(fast - slow) < 1e-10);
}
