#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "regulab/errors.hpp"

namespace regulab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

enum class Precision { Double, DoubleDouble };

// Reads REGULAB_PRECISION ("double" or "dd"); unset means Double.
Precision precision_from_env();

struct Tolerance {
  double absolute = 1e-10;
  double relative = 0.0;
  std::size_t max_evaluations = 4'000'000;
  Precision accumulation = Precision::Double;

  double target(double magnitude) const;
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

// Sum with optional compensated (double-double) accumulation.
class Accumulator {
 public:
  explicit Accumulator(Precision p = Precision::Double) : mode_(p) {}
  void add(double v);
  double sum() const { return hi_ + lo_; }

 private:
  Precision mode_;
  double hi_ = 0.0;
  double lo_ = 0.0;
};

// Adaptive Gauss-Kronrod (7/15) on [a, b].
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                    double b, const Tolerance& tol);

// Integrand for endpoint-singular quadrature. Receives the abscissa and its
// distances to both ends, which stay accurate where x itself rounds to a or b.
using EndpointIntegrand = std::function<double(double x, double from_a, double to_b)>;

// Tanh-sinh quadrature on [a, b] for integrable endpoint singularities.
QuadratureResult integrate_endpoint_singular(const EndpointIntegrand& f, double a, double b,
                                             const Tolerance& tol);

// Same quadrature for integrands that only need the abscissa.
QuadratureResult integrate_endpoint_singular(const std::function<double(double)>& f, double a,
                                             double b, const Tolerance& tol);

// Roots of a z^2 + b z + c without cancellation.
std::array<cplx, 2> solve_quadratic_stable(cplx a, cplx b, cplx c);

// Roots of sum coeffs[k] z^k (lowest degree first), Newton-polished.
std::vector<cplx> polynomial_roots(std::span<const cplx> coeffs);

cplx polynomial_eval(std::span<const cplx> coeffs, cplx z);

// Carlson symmetric integral R_F(x, y, z) for complex arguments off the
// negative real axis, at most one of them zero.
cplx carlson_rf(cplx x, cplx y, cplx z);

// Arithmetic-geometric mean, taking the right choice of square root at each step.
cplx agm(cplx a, cplx b);
double agm(double a, double b);

}  // namespace regulab
