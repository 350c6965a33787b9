#include "regulab/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <queue>
#include <string>

namespace regulab {

Precision precision_from_env() {
  const char* v = std::getenv("REGULAB_PRECISION");
  if (v == nullptr) return Precision::Double;
  std::string s(v);
  if (s == "dd" || s == "double-double") return Precision::DoubleDouble;
  if (s == "double" || s.empty()) return Precision::Double;
  throw DomainError("REGULAB_PRECISION must be 'double' or 'dd', got '" + s + "'");
}

double Tolerance::target(double magnitude) const {
  return std::max(absolute, relative * std::abs(magnitude));
}

void Tolerance::validate() const {
  if (!(absolute > 0.0) || !(relative >= 0.0) || max_evaluations == 0)
    throw DomainError("tolerance must be positive");
}

void Accumulator::add(double v) {
  if (mode_ == Precision::Double) {
    hi_ += v;
    return;
  }
  // Knuth two-sum.
  double s = hi_ + v;
  double bp = s - hi_;
  double err = (hi_ - (s - bp)) + (v - bp);
  hi_ = s;
  lo_ += err;
}

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double fc = f(c);
  double kron = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    double dx = h * kXgk[j];
    double fsum = f(c - dx) + f(c + dx);
    kron += kWgk[j] * fsum;
    if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
  }
  return {a, b, kron * h, std::abs((kron - gauss) * h)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const Tolerance& tol) {
  tol.validate();
  if (a == b) return {};
  if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("integration limits must be finite");
  std::priority_queue<Panel> heap;
  std::size_t evals = 0;
  Panel first = gk15(f, a, b);
  evals += 15;
  heap.push(first);
  double total = first.value, err = first.error;
  while (err > tol.target(total)) {
    if (evals + 30 > tol.max_evaluations)
      throw NoConvergence("adaptive quadrature exceeded its evaluation budget", total, err);
    Panel worst = heap.top();
    double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Interval can no longer be split; accept what we have.
      break;
    }
    heap.pop();
    Panel l = gk15(f, worst.a, mid), r = gk15(f, mid, worst.b);
    evals += 30;
    heap.push(l);
    heap.push(r);
    // Recompute the totals from scratch every so often to shed drift.
    total += l.value + r.value - worst.value;
    err += l.error + r.error - worst.error;
    if (heap.size() % 64 == 0) {
      auto copy = heap;
      Accumulator v(tol.accumulation), e(tol.accumulation);
      while (!copy.empty()) {
        v.add(copy.top().value);
        e.add(copy.top().error);
        copy.pop();
      }
      total = v.sum();
      err = e.sum();
    }
  }
  Accumulator v(tol.accumulation), e(tol.accumulation);
  while (!heap.empty()) {
    v.add(heap.top().value);
    e.add(heap.top().error);
    heap.pop();
  }
  return {v.sum(), e.sum(), evals};
}

QuadratureResult integrate_endpoint_singular(const EndpointIntegrand& f, double a, double b,
                                             const Tolerance& tol) {
  tol.validate();
  if (a == b) return {};
  if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("integration limits must be finite");
  if (a > b) {
    QuadratureResult r = integrate_endpoint_singular(
        [&](double x, double da, double db) { return f(x, db, da); }, b, a, tol);
    r.value = -r.value;
    return r;
  }
  const double hw = 0.5 * (b - a);
  const double halfpi = 0.5 * kPi;
  std::size_t evals = 0;

  // Contribution of the node pair at +t and -t (or the single node at t = 0).
  auto node_sum = [&](double t, Accumulator& acc) {
    double s = halfpi * std::sinh(t);
    double ch = std::cosh(s);
    double w = hw * halfpi * std::cosh(t) / (ch * ch);
    if (!(w > 0.0) || !std::isfinite(w)) return false;
    if (t == 0.0) {
      acc.add(w * f(a + hw, hw, hw));
      ++evals;
      return true;
    }
    double near = hw * 2.0 / (std::exp(2.0 * s) + 1.0);  // distance to the nearer end
    if (!(near > 1e-300)) return false;
    double far = 2.0 * hw - near;
    double fb = f(b - near, far, near);
    double fa = f(a + near, near, far);
    evals += 2;
    if (!std::isfinite(fa) || !std::isfinite(fb))
      throw SingularPath("endpoint-singular integrand is not finite at a quadrature node");
    acc.add(w * fb);
    acc.add(w * fa);
    return true;
  };

  const double tmax = 6.5;
  double h = 0.5;
  Accumulator sum(tol.accumulation);
  node_sum(0.0, sum);
  for (double t = h; t <= tmax; t += h)
    if (!node_sum(t, sum)) break;
  double prev = h * sum.sum();
  double err = std::numeric_limits<double>::infinity();
  for (int level = 1; level <= 14; ++level) {
    h *= 0.5;
    for (double t = h; t <= tmax; t += 2 * h)
      if (!node_sum(t, sum)) break;
    double cur = h * sum.sum();
    err = std::abs(cur - prev);
    prev = cur;
    if (level >= 3 && err <= tol.target(cur)) return {cur, err, evals};
    if (evals > tol.max_evaluations) break;
  }
  throw NoConvergence("tanh-sinh quadrature did not converge", prev, err);
}

QuadratureResult integrate_endpoint_singular(const std::function<double(double)>& f, double a,
                                             double b, const Tolerance& tol) {
  return integrate_endpoint_singular([&](double x, double, double) { return f(x); }, a, b, tol);
}

std::array<cplx, 2> solve_quadratic_stable(cplx a, cplx b, cplx c) {
  if (a == 0.0) throw DegenerateInput("leading coefficient of quadratic is zero");
  cplx disc = std::sqrt(b * b - 4.0 * a * c);
  // Pick the sign that avoids cancellation in -b -/+ sqrt(disc).
  if (std::real(std::conj(b) * disc) < 0.0) disc = -disc;
  cplx q = -0.5 * (b + disc);
  if (q == 0.0) return {cplx(0.0), cplx(0.0)};
  return {q / a, c / q};
}

cplx polynomial_eval(std::span<const cplx> coeffs, cplx z) {
  cplx v = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * z + *it;
  return v;
}

std::vector<cplx> polynomial_roots(std::span<const cplx> coeffs) {
  std::size_t hi = coeffs.size();
  while (hi > 0 && coeffs[hi - 1] == 0.0) --hi;
  if (hi == 0) throw DegenerateInput("zero polynomial has no well-defined roots");
  std::size_t lo = 0;
  while (coeffs[lo] == 0.0) ++lo;
  std::vector<cplx> roots(lo, cplx(0.0));
  std::span<const cplx> p = coeffs.subspan(lo, hi - lo);
  int n = static_cast<int>(p.size()) - 1;
  if (n == 0) return roots;
  if (n == 1) {
    roots.push_back(-p[0] / p[1]);
    return roots;
  }
  if (n == 2) {
    auto r = solve_quadratic_stable(p[2], p[1], p[0]);
    roots.push_back(r[0]);
    roots.push_back(r[1]);
    return roots;
  }
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -p[i] / p[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<cplx> dp(n);
  for (int k = 1; k <= n; ++k) dp[k - 1] = p[k] * static_cast<double>(k);
  for (int i = 0; i < n; ++i) {
    cplx z = solver.eigenvalues()[i];
    for (int it = 0; it < 3; ++it) {
      cplx fz = polynomial_eval(p, z), dfz = polynomial_eval(dp, z);
      if (dfz == 0.0) break;
      cplx next = z - fz / dfz;
      if (std::abs(polynomial_eval(p, next)) >= std::abs(fz)) break;
      z = next;
    }
    roots.push_back(z);
  }
  return roots;
}

cplx carlson_rf(cplx x, cplx y, cplx z) {
  int zeros = (x == 0.0) + (y == 0.0) + (z == 0.0);
  if (zeros > 1) throw DomainError("R_F needs at most one zero argument");
  for (cplx v : {x, y, z})
    if (v.imag() == 0.0 && v.real() < 0.0) throw DomainError("R_F argument on the negative real axis");
  cplx a0 = (x + y + z) / 3.0;
  double qq = std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)}) /
              std::pow(3.0 * std::numeric_limits<double>::epsilon(), 1.0 / 6.0);
  cplx a = a0;
  double scale = 1.0;
  for (int it = 0; it < 200 && scale * qq >= std::abs(a); ++it) {
    cplx sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    cplx lam = sx * sy + sx * sz + sy * sz;
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
    a = 0.25 * (a + lam);
    scale *= 0.25;
  }
  cplx X = (a - x) / a, Y = (a - y) / a;  // equal to (a0 - x0) 4^-m / a
  cplx Z = -X - Y;
  cplx e2 = X * Y - Z * Z, e3 = X * Y * Z;
  return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / std::sqrt(a);
}

cplx agm(cplx a, cplx b) {
  for (int it = 0; it < 100; ++it) {
    if (std::abs(a - b) <= 4 * std::numeric_limits<double>::epsilon() * std::abs(a)) break;
    cplx an = 0.5 * (a + b);
    cplx bn = std::sqrt(a * b);
    if (std::abs(an - bn) > std::abs(an + bn)) bn = -bn;
    a = an;
    b = bn;
  }
  return 0.5 * (a + b);
}

double agm(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("real AGM needs positive arguments");
  for (int it = 0; it < 100; ++it) {
    if (std::abs(a - b) <= 2 * std::numeric_limits<double>::epsilon() * a) break;
    double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return 0.5 * (a + b);
}

}  // namespace regulab
