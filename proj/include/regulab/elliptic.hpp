#pragma once

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "regulab/dilogarithm.hpp"
#include "regulab/numerics.hpp"

namespace regulab {

using Rational = boost::multiprecision::cpp_rational;

// Long Weierstrass model Y^2 + a1 XY + a3 Y = X^3 + a2 X^2 + a4 X + a6.
template <class F>
struct WeierstrassCurve {
  F a1{}, a2{}, a3{}, a4{}, a6{};

  F b2() const { return a1 * a1 + F(4) * a2; }
  F b4() const { return F(2) * a4 + a1 * a3; }
  F b6() const { return a3 * a3 + F(4) * a6; }
  F b8() const {
    return a1 * a1 * a6 + F(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  }
  F c4() const { return b2() * b2() - F(24) * b4(); }
  F c6() const { return -b2() * b2() * b2() + F(36) * b2() * b4() - F(216) * b6(); }
  F discriminant() const {
    F B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return -B2 * B2 * B8 - F(8) * B4 * B4 * B4 - F(27) * B6 * B6 + F(9) * B2 * B4 * B6;
  }
};

using RationalCurve = WeierstrassCurve<Rational>;
using RealCurve = WeierstrassCurve<double>;

RealCurve to_real(const RationalCurve& c);
std::string describe(const RationalCurve& c);

template <class K>
struct CurvePoint {
  K x{}, y{};
  bool infinity = true;

  static CurvePoint at_infinity() { return {}; }
  static CurvePoint affine(K x_, K y_) { return {std::move(x_), std::move(y_), false}; }
};

using RationalPoint = CurvePoint<Rational>;
using ComplexPoint = CurvePoint<cplx>;

template <class F>
struct CurveInvariants {
  F discriminant;
  F j_invariant;
};

// Throws SingularModel when the discriminant vanishes.
CurveInvariants<Rational> curve_validate(const RationalCurve& c);
CurveInvariants<double> curve_validate(const RealCurve& c);

bool on_curve(const RationalCurve& c, const RationalPoint& p);
// Residual of the curve equation scaled by the size of its terms.
double on_curve_residual(const RealCurve& c, const ComplexPoint& p);
bool on_curve(const RealCurve& c, const ComplexPoint& p, double tol = 1e-9);

RationalPoint negate(const RationalCurve& c, const RationalPoint& p);
RationalPoint group_op(const RationalCurve& c, const RationalPoint& p, const RationalPoint& q);
RationalPoint multiply(const RationalCurve& c, long long n, const RationalPoint& p);
// Smallest n <= bound with nP = O, or 0 if none.
int torsion_order(const RationalCurve& c, const RationalPoint& p, int bound = 12);

ComplexPoint negate(const RealCurve& c, const ComplexPoint& p);
ComplexPoint group_op(const RealCurve& c, const ComplexPoint& p, const ComplexPoint& q);
ComplexPoint multiply(const RealCurve& c, long long n, const ComplexPoint& p);

// 2Y + a1 X + a3, whose square is 4X^3 + b2 X^2 + 2 b4 X + b6.
cplx eta(const RealCurve& c, const ComplexPoint& p);
bool points_close(const ComplexPoint& p, const ComplexPoint& q, double tol = 1e-8);

// Periods of the invariant differential dX / (2Y + a1 X + a3).
struct PeriodLattice {
  cplx omega1;  // real period
  cplx omega2;  // Im(omega2 / omega1) > 0
  cplx tau;     // omega2 / omega1 with Re tau in (-1/2, 1/2]
  cplx q;       // exp(2 pi i tau)
  bool rectangular = true;
  std::array<cplx, 3> roots{};  // roots of 4X^3 + b2 X^2 + 2 b4 X + b6

  // Generator of the lattice's purely imaginary periods.
  double imaginary_period() const;
  // u / omega1 reduced modulo Z + tau Z into the fundamental parallelogram.
  cplx normalize(cplx u) const;
  double distance_to_lattice(cplx u) const;
};

PeriodLattice period_lattice(const RealCurve& c);

// Elliptic logarithm: u with P = (wp(u) - b2/12, ...) in C / Lambda. Not reduced.
cplx elliptic_log(const RealCurve& c, const PeriodLattice& lattice, const ComplexPoint& p);

// Image of P in C^* / q^Z, normalized so that the real period is 1.
QPoint q_point(const RealCurve& c, const PeriodLattice& lattice, const ComplexPoint& p);

}  // namespace regulab
