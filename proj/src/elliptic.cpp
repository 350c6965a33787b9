#include "regulab/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace regulab {

RealCurve to_real(const RationalCurve& c) {
  auto d = [](const Rational& r) { return static_cast<double>(r); };
  return {d(c.a1), d(c.a2), d(c.a3), d(c.a4), d(c.a6)};
}

std::string describe(const RationalCurve& c) {
  std::ostringstream os;
  os << "[" << c.a1 << "," << c.a2 << "," << c.a3 << "," << c.a4 << "," << c.a6 << "]";
  return os.str();
}

CurveInvariants<Rational> curve_validate(const RationalCurve& c) {
  Rational d = c.discriminant();
  if (d == 0) throw SingularModel("singular Weierstrass model " + describe(c));
  Rational c4 = c.c4();
  return {d, c4 * c4 * c4 / d};
}

CurveInvariants<double> curve_validate(const RealCurve& c) {
  double d = c.discriminant();
  double c4 = c.c4(), c6 = c.c6();
  double scale = std::max({std::abs(c4 * c4 * c4), c6 * c6, 1e-300}) / 1728.0;
  if (!(std::abs(d) > 1e-12 * scale)) throw SingularModel("singular Weierstrass model");
  return {d, c4 * c4 * c4 / d};
}

namespace {

template <class F, class K>
K curve_lhs_minus_rhs(const WeierstrassCurve<F>& c, const K& x, const K& y) {
  K A1(c.a1), A2(c.a2), A3(c.a3), A4(c.a4), A6(c.a6);
  return y * y + A1 * x * y + A3 * y - (x * x * x + A2 * x * x + A4 * x + A6);
}

// Shared chord-tangent law; `same` decides coordinate equality.
template <class F, class K, class Eq>
CurvePoint<K> add_points(const WeierstrassCurve<F>& c, const CurvePoint<K>& p,
                         const CurvePoint<K>& q, Eq same) {
  if (p.infinity) return q;
  if (q.infinity) return p;
  K A1(c.a1), A2(c.a2), A3(c.a3), A4(c.a4), A6(c.a6);
  K lambda, nu;
  if (same(p.x, q.x)) {
    K s = p.y + q.y + A1 * q.x + A3;
    if (same(s, K(0))) return CurvePoint<K>::at_infinity();
    K den = K(2) * p.y + A1 * p.x + A3;
    lambda = (K(3) * p.x * p.x + K(2) * A2 * p.x + A4 - A1 * p.y) / den;
    nu = (-p.x * p.x * p.x + A4 * p.x + K(2) * A6 - A3 * p.y) / den;
  } else {
    lambda = (q.y - p.y) / (q.x - p.x);
    nu = (p.y * q.x - q.y * p.x) / (q.x - p.x);
  }
  K x3 = lambda * lambda + A1 * lambda - A2 - p.x - q.x;
  K y3 = -(lambda + A1) * x3 - nu - A3;
  return CurvePoint<K>::affine(x3, y3);
}

bool exact_eq(const Rational& a, const Rational& b) { return a == b; }

bool near_eq(const cplx& a, const cplx& b) {
  return std::abs(a - b) <= 1e-10 * (1.0 + std::abs(a) + std::abs(b));
}

template <class Curve, class Point, class Op>
Point scalar_multiple(const Curve& c, long long n, Point p, Op op, Point (*neg)(const Curve&, const Point&)) {
  if (n < 0) {
    p = neg(c, p);
    n = -n;
  }
  Point acc = Point::at_infinity();
  while (n > 0) {
    if (n & 1) acc = op(c, acc, p);
    p = op(c, p, p);
    n >>= 1;
  }
  return acc;
}

}  // namespace

bool on_curve(const RationalCurve& c, const RationalPoint& p) {
  return p.infinity || curve_lhs_minus_rhs(c, p.x, p.y) == 0;
}

double on_curve_residual(const RealCurve& c, const ComplexPoint& p) {
  if (p.infinity) return 0.0;
  double scale = std::abs(p.y * p.y) + std::abs(p.x * p.x * p.x) + std::abs(c.a1 * p.x * p.y) +
                 std::abs(c.a3 * p.y) + std::abs(c.a2 * p.x * p.x) + std::abs(c.a4 * p.x) +
                 std::abs(c.a6);
  return std::abs(curve_lhs_minus_rhs(c, p.x, p.y)) / std::max(scale, 1e-300);
}

bool on_curve(const RealCurve& c, const ComplexPoint& p, double tol) {
  return on_curve_residual(c, p) <= tol;
}

RationalPoint negate(const RationalCurve& c, const RationalPoint& p) {
  if (p.infinity) return p;
  return RationalPoint::affine(p.x, -p.y - c.a1 * p.x - c.a3);
}

RationalPoint group_op(const RationalCurve& c, const RationalPoint& p, const RationalPoint& q) {
  if (!on_curve(c, p) || !on_curve(c, q)) throw DomainError("point is not on the curve " + describe(c));
  return add_points(c, p, q, exact_eq);
}

RationalPoint multiply(const RationalCurve& c, long long n, const RationalPoint& p) {
  if (!on_curve(c, p)) throw DomainError("point is not on the curve " + describe(c));
  return scalar_multiple<RationalCurve, RationalPoint>(
      c, n, p, [](const RationalCurve& cc, const RationalPoint& a, const RationalPoint& b) {
        return add_points(cc, a, b, exact_eq);
      }, &negate);
}

int torsion_order(const RationalCurve& c, const RationalPoint& p, int bound) {
  RationalPoint acc = p;
  for (int n = 1; n <= bound; ++n) {
    if (acc.infinity) return n;
    acc = group_op(c, acc, p);
  }
  return 0;
}

ComplexPoint negate(const RealCurve& c, const ComplexPoint& p) {
  if (p.infinity) return p;
  return ComplexPoint::affine(p.x, -p.y - c.a1 * p.x - c.a3);
}

ComplexPoint group_op(const RealCurve& c, const ComplexPoint& p, const ComplexPoint& q) {
  if (!on_curve(c, p) || !on_curve(c, q)) throw DomainError("point is not on the curve");
  return add_points(c, p, q, near_eq);
}

ComplexPoint multiply(const RealCurve& c, long long n, const ComplexPoint& p) {
  if (!on_curve(c, p)) throw DomainError("point is not on the curve");
  return scalar_multiple<RealCurve, ComplexPoint>(
      c, n, p, [](const RealCurve& cc, const ComplexPoint& a, const ComplexPoint& b) {
        return add_points(cc, a, b, near_eq);
      }, &negate);
}

cplx eta(const RealCurve& c, const ComplexPoint& p) { return 2.0 * p.y + c.a1 * p.x + c.a3; }

bool points_close(const ComplexPoint& p, const ComplexPoint& q, double tol) {
  if (p.infinity || q.infinity) return p.infinity == q.infinity;
  double s = 1.0 + std::abs(p.x) + std::abs(p.y);
  return std::abs(p.x - q.x) <= tol * s && std::abs(p.y - q.y) <= tol * s;
}

double PeriodLattice::imaginary_period() const {
  return rectangular ? std::abs(omega2) : 2.0 * std::abs(omega2.imag());
}

cplx PeriodLattice::normalize(cplx u) const {
  cplx w = u / omega1;
  w -= std::round(w.imag() / tau.imag()) * tau;
  w -= std::round(w.real());
  return w;
}

double PeriodLattice::distance_to_lattice(cplx u) const {
  cplx w = normalize(u);
  double best = std::abs(w);
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b) best = std::min(best, std::abs(w - double(a) - double(b) * tau));
  return best;
}

PeriodLattice period_lattice(const RealCurve& c) {
  auto inv = curve_validate(c);
  std::array<cplx, 4> cubic = {c.b6(), 2.0 * c.b4(), c.b2(), 4.0};
  auto r = polynomial_roots(cubic);
  PeriodLattice L;
  if (inv.discriminant > 0) {
    std::array<double, 3> e = {r[0].real(), r[1].real(), r[2].real()};
    std::sort(e.begin(), e.end(), std::greater<>());
    L.rectangular = true;
    L.roots = {e[0], e[1], e[2]};
    L.omega1 = kPi / agm(std::sqrt(e[0] - e[2]), std::sqrt(e[0] - e[1]));
    L.omega2 = cplx(0.0, kPi / agm(std::sqrt(e[0] - e[2]), std::sqrt(e[1] - e[2])));
  } else {
    std::sort(r.begin(), r.end(), [](cplx a, cplx b) { return std::abs(a.imag()) < std::abs(b.imag()); });
    cplx e1 = r[0].real(), e2 = r[1].imag() > 0 ? r[1] : r[2];
    cplx e3 = std::conj(e2);
    L.rectangular = false;
    L.roots = {e1, e2, e3};
    L.omega1 = (kPi / agm(std::sqrt(e1 - e2), std::sqrt(e1 - e3))).real();
    L.omega2 = kPi / agm(std::sqrt(e2 - e1), std::sqrt(e2 - e3));
  }
  cplx tau = L.omega2 / L.omega1;
  if (tau.imag() < 0) tau = -tau;
  tau -= std::round(tau.real());
  if (tau.real() <= -0.5) tau += 1.0;
  // Real curves have Re tau in {0, 1/2}; remove rounding noise.
  if (L.rectangular) tau = cplx(0.0, tau.imag());
  else tau = cplx(0.5, tau.imag());
  L.tau = tau;
  L.omega2 = tau * L.omega1;
  L.q = std::exp(2.0 * kPi * cplx(0, 1) * tau);
  L.q = cplx(L.q.real(), 0.0);
  return L;
}

cplx elliptic_log(const RealCurve& c, const PeriodLattice& L, const ComplexPoint& p) {
  if (p.infinity) return 0.0;
  if (!on_curve(c, p, 1e-8)) throw DomainError("point is not on the curve");
  const cplx x = p.x;
  // Integrate dX / eta along the ray X + d t, t in [0, inf), with d chosen to
  // keep the three branch points well away from the ray.
  double best_score = -1.0;
  cplx d = 1.0;
  for (int k = -20; k <= 20; ++k) {
    cplx dir = std::polar(1.0, k * 0.85 * kPi / 20.0);
    double score = kPi;
    for (cplx e : L.roots) {
      cplx v = (x - e) / dir;
      if (std::abs(v) < 1e-14 * (1.0 + std::abs(x))) continue;
      score = std::min(score, kPi - std::abs(std::arg(v)));
    }
    if (score > best_score + 1e-12) {
      best_score = score;
      d = dir;
    }
  }
  std::array<cplx, 3> v;
  for (int i = 0; i < 3; ++i) {
    v[i] = (x - L.roots[i]) / d;
    if (std::abs(v[i]) < 1e-14 * (1.0 + std::abs(x))) v[i] = 0.0;
  }
  cplx sd = std::sqrt(d);
  cplx integral = carlson_rf(v[0], v[1], v[2]) / sd;
  cplx eta_ray = 2.0 * sd * sd * sd * std::sqrt(v[0]) * std::sqrt(v[1]) * std::sqrt(v[2]);
  cplx e = eta(c, p);
  return std::abs(eta_ray - e) <= std::abs(eta_ray + e) ? -integral : integral;
}

QPoint q_point(const RealCurve& c, const PeriodLattice& L, const ComplexPoint& p) {
  cplx w = L.normalize(elliptic_log(c, L, p));
  return QPoint(L.q, std::exp(2.0 * kPi * cplx(0, 1) * w));
}

}  // namespace regulab
