#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "regulab/elliptic.hpp"

namespace regulab {

// P_alpha, S_alpha, Q_alpha and R_beta; the parameter of R is beta.
enum class Family { P, S, Q, R };

Family parse_family(std::string_view name);
std::string family_name(Family f);

// E_a : Y^2 + (a - 2) XY + a Y = X^3.
RationalCurve deuring_curve(const Rational& a);
RealCurve deuring_curve(double a);
// F_a : W^2 = Z^3 + (a^2 - 24) Z^2 - 16 (a^2 - 9) Z.
RationalCurve partner_curve(const Rational& a);
RealCurve partner_curve(double a);

// Throws DegenerateInput when the birational model breaks down.
void check_family_parameter(Family f, double param);

using PlanePoint = std::array<cplx, 2>;

struct CoordinateMap {
  std::string name;
  std::function<PlanePoint(PlanePoint)> forward;
  std::function<PlanePoint(PlanePoint)> inverse;
};

struct FamilyModel {
  Family family;
  double param;
  std::string curve_name;  // "E_a" or "F_a"
  RealCurve curve;
  // Plane curve -> ... -> Weierstrass model; composing the forwards gives to_model.
  std::vector<CoordinateMap> chain;
  // For S, Q, R: cubic h with Y_i^2 = h(Z_i) on the quotient, lowest degree first.
  std::vector<double> quotient_cubic;

  ComplexPoint to_model(cplx x, cplx y) const;
};

FamilyModel family_models(Family f, double param);

// Model coordinates of the named points used in the divisor computations:
// P family {P}; S {P, U, V}; Q {P, S, T}; R {P, S, T, A}.
std::map<std::string, ComplexPoint> family_generators(Family f, double param);

using ModelFunction = std::function<cplx(cplx, cplx)>;

// Rational functions on the model whose divisors are recorded in the catalog,
// keyed by the same names.
std::map<std::string, ModelFunction> family_functions(Family f, double param);

}  // namespace regulab
