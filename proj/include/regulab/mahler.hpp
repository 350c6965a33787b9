#pragma once

#include <functional>
#include <span>
#include <vector>

#include "regulab/families.hpp"

namespace regulab {

// Polynomial sum c[i][j] x^i y^j with real coefficients.
class BivariatePoly {
 public:
  explicit BivariatePoly(std::vector<std::vector<double>> grid);
  // by_y[j] is the coefficient of y^j as a polynomial in x, lowest degree first.
  static BivariatePoly from_y_coefficients(const std::vector<std::vector<double>>& by_y);

  int x_degree() const { return static_cast<int>(grid_.size()) - 1; }
  int y_degree() const { return y_degree_; }
  double coefficient(int i, int j) const;
  cplx operator()(cplx x, cplx y) const;
  // Coefficient of y^j as a polynomial in x.
  std::vector<double> y_coefficient(int j) const;
  cplx y_coefficient_at(int j, cplx x) const;
  // P*(x), the coefficient of the top power of y.
  std::vector<double> leading_y() const { return y_coefficient(y_degree_); }
  // x^dx y^dy P(1/x, 1/y), which has the same Mahler measure.
  BivariatePoly inverted() const;

 private:
  std::vector<std::vector<double>> grid_;
  int y_degree_ = 0;
};

BivariatePoly family_poly(Family f, double param);

// m(p) = log|lead| + sum log max(1, |root|); coefficients lowest degree first.
double jensen_univariate(std::span<const double> coeffs);

// m(P) by Jensen's formula in y: (1/2pi) int log|P*| + sum_i log+|y_i| d theta,
// split at the zeros of P*, branch collisions, and where a root crosses |y| = 1.
QuadratureResult mahler_quadratic_y(const BivariatePoly& p, const Tolerance& tol = {1e-10});

// m(P) by direct quadrature of log|P| over the torus.
QuadratureResult mahler_torus2(const BivariatePoly& p, const Tolerance& tol = {1e-5});

struct ParametrizedPath {
  std::function<cplx(double)> x, y, dx, dy;
};

// Integral of eta(x, y) = log|x| d arg y - log|y| d arg x along the path,
// over the consecutive intervals of `partition`.
double eta_path_integral(const ParametrizedPath& path, std::span<const double> partition,
                         const Tolerance& tol = {1e-11});

// Integral of eta(x, y_i) over {|x| = 1, |y_i(x)| >= 1} for both roots; equals
// -2 pi (m(P) - m(P*)).
double jensen_eta_integral(const BivariatePoly& p, const Tolerance& tol = {1e-11});

// Angles in [0, pi] where the Jensen integrand is not smooth.
std::vector<double> jensen_breakpoints(const BivariatePoly& p);

}  // namespace regulab
