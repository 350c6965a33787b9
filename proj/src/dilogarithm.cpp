#include "regulab/dilogarithm.hpp"

#include <array>
#include <cmath>

namespace regulab {

namespace {

constexpr double kPi2over6 = kPi * kPi / 6.0;

// B_{2k} / (2k+1)!, k = 1..
constexpr std::array<double, 16> kBernoulliOverFactorial = {
    1.0 / 36.0,
    -1.0 / 3600.0,
    1.0 / 211680.0,
    -1.0 / 10886400.0,
    1.0 / 526901760.0,
    -4.064761645144225527e-11,
    8.921691020456452555e-13,
    -1.993929586072107569e-14,
    4.518980029619918192e-16,
    -1.035651761218124701e-17,
    2.395218621026186746e-19,
    -5.581785874325009e-21,
    1.309150755418321203e-22,
    -3.087419802426740294e-24,
    7.315975652702203321e-26,
    -1.740845657234001e-27};

cplx li2_power(cplx z) {
  cplx term = z, sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    cplx add = term / static_cast<double>(k * k);
    sum += add;
    if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    term *= z;
  }
  return sum;
}

cplx li2_bernoulli(cplx z) {
  cplx u = -std::log(1.0 - z);
  cplx u2 = u * u;
  cplx sum = u - 0.25 * u2;
  cplx pw = u;
  for (double c : kBernoulliOverFactorial) {
    pw *= u2;
    cplx add = c * pw;
    sum += add;
    if (std::abs(add) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// |z| <= 1, z != 1.
cplx li2_unit_disc(cplx z) {
  if (std::abs(z) <= 0.5) return li2_power(z);
  if (z.real() <= 0.5) return li2_bernoulli(z);
  // Reflection Li2(z) = pi^2/6 - log z log(1-z) - Li2(1-z).
  cplx w = 1.0 - z;
  cplx lw = std::abs(w) <= 0.5 ? li2_power(w) : li2_bernoulli(w);
  return kPi2over6 - std::log(z) * std::log(w) - lw;
}

double li2_real(double x) {
  if (x <= 1.0) return li2_unit_disc(cplx(x, 0.0)).real();
  return 0.0;  // unused
}

}  // namespace

cplx li2(cplx z) {
  if (z == 0.0) return 0.0;
  if (z == 1.0) return kPi2over6;
  if (z.imag() == 0.0 && z.real() > 1.0) {
    double x = z.real();
    double lx = std::log(x);
    double re = 2.0 * kPi2over6 - 0.5 * lx * lx - li2_real(1.0 / x);
    return {re, -kPi * lx};
  }
  if (std::abs(z) <= 1.0) return li2_unit_disc(z);
  // Inversion Li2(z) = -pi^2/6 - log^2(-z)/2 - Li2(1/z), z off [0, inf).
  cplx l = std::log(-z);
  return -kPi2over6 - 0.5 * l * l - li2_unit_disc(1.0 / z);
}

double bloch_wigner(cplx z) {
  if (z.imag() == 0.0) return 0.0;
  if (std::abs(z) > 1.0) return -bloch_wigner(1.0 / z);
  double r = std::abs(z);
  return li2(z).imag() + std::arg(1.0 - z) * std::log(r);
}

QPoint::QPoint(cplx q, cplx z) : q_(q), z_(z) {
  double aq = std::abs(q);
  if (!(aq > 0.0) || !(aq < 1.0)) throw DomainError("QPoint needs 0 < |q| < 1");
  if (z == 0.0 || !std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw DomainError("QPoint needs z in C^*");
  double lq = std::log(aq);
  double n = std::floor(std::log(std::abs(z)) / lq);
  if (n != 0.0) z_ = z * std::exp(-n * std::log(q));
  // Guard the annulus boundaries against rounding.
  while (std::abs(z_) > 1.0) z_ *= q;
  while (std::abs(z_) <= aq) z_ /= q;
}

double elliptic_dilog(const QPoint& p, const Tolerance& tol) {
  cplx q = p.q(), z = p.z();
  double aq = std::abs(q);
  if (aq >= 1.0 - 1e-12) throw IllConditionedLattice("|q| too close to 1 for the q-series");
  double lq = -std::log(aq);
  Accumulator sum(tol.accumulation);
  sum.add(bloch_wigner(z));
  cplx qn = 1.0;
  for (int n = 1; n < 100000; ++n) {
    qn *= q;
    sum.add(bloch_wigner(qn * z));
    sum.add(-bloch_wigner(qn / z));
    // Remaining terms are bounded by |q|^n (1 + n|log|q||) C / (1 - |q|).
    double tail = std::pow(aq, n) * (1.0 + (n + 1) * lq) * 2.0 * kBlochWignerMax / (1.0 - aq);
    if (tail < 0.1 * tol.absolute) return sum.sum();
  }
  throw NoConvergence("elliptic dilogarithm series did not reach tolerance", sum.sum(), 0.0);
}

}  // namespace regulab
