#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "regulab/families.hpp"
#include "regulab/numerics.hpp"
#include "regulab/report.hpp"

namespace regulab {

// 1 / sqrt(scale * prod |t - r| * prod |t - c|^2), with r over real_roots and
// c over one member of each conjugate pair. Roots equal to an integration limit
// are evaluated from the exact distance to that limit.
struct RadicalIntegrand {
  double scale = 1.0;
  std::vector<double> real_roots;
  std::vector<cplx> complex_roots;

  // Multiplies in the factor a t^2 + b t + c.
  void add_quadratic(double a, double b, double c);
  double operator()(double t) const;
  double eval(double t, double lo, double from_lo, double hi, double to_hi) const;
};

// Integral of f over [lo, hi]; hi may be +infinity, in which case the range is
// mapped onto [0, 1) by u = lo + rho s / (1 - s).
QuadratureResult integrate_radical(const RadicalIntegrand& f, double lo, double hi, const Tolerance& tol);

struct CycleIntegral {
  Family family;
  double param;
  std::string regime;
  std::string integrand;  // closed form, for reports
  double multiplier;      // the cycle is multiplier * int_lo^hi f
  double lo, hi;
  RadicalIntegrand f;
  QuadratureResult value;  // includes the multiplier
};

// The polynomial under the square root of the cycle integrand, unfactored.
double cycle_radicand(Family family, double param, double t);

// Magnitude of the integral of the invariant differential over the image of
// |x| = 1; throws UnsupportedRegime outside the ranges where the limits are known.
CycleIntegral cycle_integral(Family family, double param, const Tolerance& tol = {1e-12});

enum class PeriodIdentity {
  Doubled,     // 0 < a < 8: twice the P cycle integral equals the S one
  Negative,    // a < -1: the P and S integrals agree
  QuotientPair  // a >= 4: the Q integral equals the R integral at b = a + 2
};
PeriodIdentity parse_period_identity(std::string_view name);
std::string period_identity_name(PeriodIdentity id);

CheckRecord verify_period_identity(PeriodIdentity id, double param, double tol = 1e-8);

enum class VariableChange { Affine, Involution, InverseQuadratic, Reciprocal, Isogeny, Rescaling, QuarticPair };
VariableChange parse_variable_change(std::string_view name);
std::string variable_change_name(VariableChange id);
const std::vector<VariableChange>& all_variable_changes();

// Whether the substitution is used at this parameter.
bool variable_change_applies(VariableChange id, double param);

// Integral before and after the substitution, each by its own quadrature; the
// residual also covers the images of the limits.
CheckRecord change_of_variable_check(VariableChange id, double param, double tol = 1e-8);

// s = (1 - w) / (1 + a w).
double involution_map(double a, double w);
// u = v - (a^2/4 - a - 2) + (a + 1) / v.
double isogeny_map(double a, double v);
// Lower limit v0 of the reciprocal-side integral.
double isogeny_lower_limit(double a);

struct LatticeRatio {
  double cycle = 0.0;
  double period = 0.0;  // imaginary period of the family's Weierstrass model
  double ratio = 0.0;
  long numerator = 0;
  long denominator = 1;
  double distance = 0.0;  // |ratio - numerator/denominator|
};

LatticeRatio cycle_vs_lattice(Family family, double param);

}  // namespace regulab
