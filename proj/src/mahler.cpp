#include "regulab/mahler.hpp"

#include <algorithm>
#include <cmath>

namespace regulab {

BivariatePoly::BivariatePoly(std::vector<std::vector<double>> grid) : grid_(std::move(grid)) {
  int ydeg = -1;
  std::size_t xdeg = 0;
  for (std::size_t i = 0; i < grid_.size(); ++i)
    for (std::size_t j = 0; j < grid_[i].size(); ++j)
      if (grid_[i][j] != 0.0) {
        ydeg = std::max(ydeg, static_cast<int>(j));
        xdeg = std::max(xdeg, i);
      }
  if (ydeg < 0) throw DegenerateInput("zero polynomial has no Mahler measure");
  grid_.resize(xdeg + 1);
  for (auto& row : grid_) row.resize(ydeg + 1, 0.0);
  y_degree_ = ydeg;
}

BivariatePoly BivariatePoly::from_y_coefficients(const std::vector<std::vector<double>>& by_y) {
  std::size_t xdeg = 0;
  for (auto& c : by_y) xdeg = std::max(xdeg, c.size());
  std::vector<std::vector<double>> grid(std::max<std::size_t>(xdeg, 1), std::vector<double>(by_y.size(), 0.0));
  for (std::size_t j = 0; j < by_y.size(); ++j)
    for (std::size_t i = 0; i < by_y[j].size(); ++i) grid[i][j] = by_y[j][i];
  return BivariatePoly(std::move(grid));
}

double BivariatePoly::coefficient(int i, int j) const {
  if (i < 0 || j < 0 || i > x_degree() || j > y_degree_) return 0.0;
  return grid_[i][j];
}

cplx BivariatePoly::y_coefficient_at(int j, cplx x) const {
  cplx v = 0.0;
  for (int i = x_degree(); i >= 0; --i) v = v * x + grid_[i][j];
  return v;
}

cplx BivariatePoly::operator()(cplx x, cplx y) const {
  cplx v = 0.0;
  for (int j = y_degree_; j >= 0; --j) v = v * y + y_coefficient_at(j, x);
  return v;
}

std::vector<double> BivariatePoly::y_coefficient(int j) const {
  std::vector<double> c(x_degree() + 1);
  for (int i = 0; i <= x_degree(); ++i) c[i] = coefficient(i, j);
  return c;
}

BivariatePoly BivariatePoly::inverted() const {
  int dx = x_degree(), dy = y_degree_;
  std::vector<std::vector<double>> g(dx + 1, std::vector<double>(dy + 1));
  for (int i = 0; i <= dx; ++i)
    for (int j = 0; j <= dy; ++j) g[dx - i][dy - j] = grid_[i][j];
  return BivariatePoly(std::move(g));
}

BivariatePoly family_poly(Family f, double a) {
  switch (f) {
    case Family::P:
      return BivariatePoly::from_y_coefficients({{0, 1, 1}, {1, 2 - a, 1}, {1, 1}});
    case Family::S:
      return BivariatePoly::from_y_coefficients({{0, 0, 0, 0, 1}, {1, a, 2 * a, a, 1}, {1}});
    case Family::Q:
      return BivariatePoly::from_y_coefficients({{0, 1, 1, 1}, {0, a, a}, {1, 1, 1}});
    case Family::R:
      return BivariatePoly::from_y_coefficients({{0, 0, 1, 1, 1}, {1, a, 2 * a - 4, a, 1}, {1, 1, 1}});
  }
  throw DomainError("unknown family");
}

double jensen_univariate(std::span<const double> coeffs) {
  std::size_t hi = coeffs.size();
  while (hi > 0 && coeffs[hi - 1] == 0.0) --hi;
  if (hi == 0) throw DegenerateInput("zero polynomial has no Mahler measure");
  std::vector<cplx> c(coeffs.begin(), coeffs.begin() + hi);
  double m = std::log(std::abs(coeffs[hi - 1]));
  if (hi == 1) return m;
  for (cplx r : polynomial_roots(c)) m += std::max(0.0, std::log(std::abs(r)));
  return m;
}

namespace {

double safe_log(double v) { return std::log(std::max(v, 1e-300)); }

// log|A| + sum log+|y_i| at x, plus log|y_big| and log|y_small|.
struct JensenSample {
  double value;
  double log_big;
  double log_small;
};

JensenSample jensen_sample(const BivariatePoly& p, cplx x) {
  if (p.y_degree() == 1) {
    double lb = safe_log(std::abs(p.y_coefficient_at(1, x)));
    double lc = safe_log(std::abs(p.y_coefficient_at(0, x)));
    return {std::max(lb, lc), lc - lb, -1e300};
  }
  cplx A = p.y_coefficient_at(2, x), B = p.y_coefficient_at(1, x), C = p.y_coefficient_at(0, x);
  // q = A * (larger root); the smaller root is C / q.
  cplx disc = std::sqrt(B * B - 4.0 * A * C);
  if (std::real(std::conj(B) * disc) < 0.0) disc = -disc;
  cplx q = -0.5 * (B + disc);
  double la = safe_log(std::abs(A)), lq = safe_log(std::abs(q)), lc = safe_log(std::abs(C));
  return {std::max(la, lq) + std::max(0.0, lc - lq), lq - la, lc - lq};
}

void require_jensen_degree(const BivariatePoly& p) {
  if (p.y_degree() < 1 || p.y_degree() > 2)
    throw DomainError("Jensen reduction needs y-degree 1 or 2");
}

// Roots of a real polynomial that lie on the unit circle, as angles in [0, pi].
void unit_circle_angles(const std::vector<double>& poly, std::vector<double>& out) {
  std::vector<cplx> c(poly.begin(), poly.end());
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  if (c.size() < 2) return;
  for (cplx r : polynomial_roots(c)) {
    if (std::abs(std::abs(r) - 1.0) < 1e-4) out.push_back(std::abs(std::arg(r)));
  }
}

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Tanh-sinh on [a, b]; halves the panel when a kink the breakpoint search missed
// spoils convergence.
QuadratureResult integrate_split(const std::function<double(double)>& f, double a, double b,
                                 const Tolerance& tol, int depth) {
  try {
    return integrate_endpoint_singular(f, a, b, tol);
  } catch (const NoConvergence&) {
    if (depth >= 12) throw;
  }
  Tolerance half = tol;
  half.absolute = 0.5 * tol.absolute;
  double mid = 0.5 * (a + b);
  auto l = integrate_split(f, a, mid, half, depth + 1);
  auto r = integrate_split(f, mid, b, half, depth + 1);
  return {l.value + r.value, l.error_estimate + r.error_estimate, l.evaluations + r.evaluations};
}

int sign_state(double v) { return v > 1e-9 ? 1 : (v < -1e-9 ? -1 : 0); }

}  // namespace

std::vector<double> jensen_breakpoints(const BivariatePoly& p) {
  require_jensen_degree(p);
  std::vector<double> bp = {0.0, kPi};
  unit_circle_angles(p.leading_y(), bp);
  if (p.y_degree() == 2) {
    auto A = p.y_coefficient(2), B = p.y_coefficient(1), C = p.y_coefficient(0);
    auto d = poly_mul(B, B);
    auto ac = poly_mul(A, C);
    d.resize(std::max(d.size(), ac.size()), 0.0);
    for (std::size_t i = 0; i < ac.size(); ++i) d[i] -= 4.0 * ac[i];
    unit_circle_angles(d, bp);
  } else {
    unit_circle_angles(p.y_coefficient(0), bp);
  }
  // Crossings of |y| = 1 by either root, located by scanning and bisection.
  const int n = 2048;
  auto states = [&](double th) {
    auto s = jensen_sample(p, std::polar(1.0, th));
    return std::pair{sign_state(s.log_big), sign_state(s.log_small)};
  };
  auto prev = states(0.0);
  double tprev = 0.0;
  for (int k = 1; k <= n; ++k) {
    double th = kPi * k / n;
    auto cur = states(th);
    for (int which = 0; which < 2; ++which) {
      int s0 = which == 0 ? prev.first : prev.second;
      int s1 = which == 0 ? cur.first : cur.second;
      if (s0 == s1) continue;
      double lo = tprev, hi = th;
      for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
        double mid = 0.5 * (lo + hi);
        auto sm = states(mid);
        int s = which == 0 ? sm.first : sm.second;
        if (s == s0) lo = mid;
        else hi = mid;
      }
      bp.push_back(0.5 * (lo + hi));
    }
    prev = cur;
    tprev = th;
  }
  std::sort(bp.begin(), bp.end());
  std::vector<double> out;
  for (double t : bp) {
    t = std::clamp(t, 0.0, kPi);
    if (out.empty() || t - out.back() > 1e-13) out.push_back(t);
  }
  return out;
}

QuadratureResult mahler_quadratic_y(const BivariatePoly& p, const Tolerance& tol) {
  require_jensen_degree(p);
  bool zero_lead = true;
  for (double c : p.leading_y()) zero_lead = zero_lead && c == 0.0;
  if (zero_lead) throw DegenerateInput("leading coefficient in y vanishes identically");
  auto bp = jensen_breakpoints(p);
  Accumulator sum(tol.accumulation);
  QuadratureResult total;
  Tolerance panel = tol;
  panel.absolute = tol.absolute * kPi / static_cast<double>(bp.size() - 1);
  auto f = [&](double th) { return jensen_sample(p, std::polar(1.0, th)).value; };
  for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
    auto r = integrate_split(f, bp[k], bp[k + 1], panel, 0);
    sum.add(r.value);
    total.error_estimate += r.error_estimate / kPi;
    total.evaluations += r.evaluations;
  }
  // Real coefficients: the integrand is even in theta.
  total.value = sum.sum() / kPi;
  return total;
}

QuadratureResult mahler_torus2(const BivariatePoly& p, const Tolerance& tol) {
  // A single 15-point panel can step over a log singularity unseen, so both
  // directions start from a uniform split.
  const int pieces = 16;
  auto split = [&](const std::function<double(double)>& f, double a, double b, const Tolerance& t) {
    Tolerance each = t;
    each.absolute = t.absolute / pieces;
    Accumulator v(t.accumulation);
    QuadratureResult out;
    for (int k = 0; k < pieces; ++k) {
      auto r = integrate_adaptive(f, a + (b - a) * k / pieces, a + (b - a) * (k + 1) / pieces, each);
      v.add(r.value);
      out.error_estimate += r.error_estimate;
      out.evaluations += r.evaluations;
    }
    out.value = v.sum();
    return out;
  };
  Tolerance inner = tol;
  inner.absolute = tol.absolute * 0.1;
  std::size_t evals = 0;
  auto row = [&](double th) {
    cplx x = std::polar(1.0, th);
    auto r = split([&](double ph) { return safe_log(std::abs(p(x, std::polar(1.0, ph)))); }, 0.0, 2.0 * kPi,
                   inner);
    evals += r.evaluations;
    return r.value;
  };
  // Conjugation symmetry halves the theta range.
  Tolerance outer = tol;
  outer.absolute = tol.absolute * 2.0 * kPi * kPi;
  auto r = split(row, 0.0, kPi, outer);
  return {r.value / (2.0 * kPi * kPi), r.error_estimate / (2.0 * kPi * kPi), evals};
}

double eta_path_integral(const ParametrizedPath& path, std::span<const double> partition,
                         const Tolerance& tol) {
  if (partition.size() < 2) throw DomainError("path partition needs at least two points");
  auto integrand = [&](double t) {
    cplx x = path.x(t), y = path.y(t);
    double ax = std::abs(x), ay = std::abs(y);
    if (!(ax > 1e-300) || !(ay > 1e-300)) throw SingularPath("x or y vanishes on the path");
    return std::log(ax) * std::imag(path.dy(t) / y) - std::log(ay) * std::imag(path.dx(t) / x);
  };
  Accumulator sum(tol.accumulation);
  for (std::size_t k = 0; k + 1 < partition.size(); ++k)
    sum.add(integrate_endpoint_singular(integrand, partition[k], partition[k + 1], tol).value);
  return sum.sum();
}

double jensen_eta_integral(const BivariatePoly& p, const Tolerance& tol) {
  auto bp = jensen_breakpoints(p);
  Accumulator sum(tol.accumulation);
  // Root of P(x, .) with index 0 (larger modulus) or 1, and its theta-derivative.
  auto root = [&](double th, int which) {
    cplx x = std::polar(1.0, th);
    cplx y;
    if (p.y_degree() == 1) {
      y = -p.y_coefficient_at(0, x) / p.y_coefficient_at(1, x);
    } else {
      auto r = solve_quadratic_stable(p.y_coefficient_at(2, x), p.y_coefficient_at(1, x),
                                      p.y_coefficient_at(0, x));
      if (std::abs(r[0]) < std::abs(r[1])) std::swap(r[0], r[1]);
      y = r[which];
    }
    return y;
  };
  for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
    double mid = 0.5 * (bp[k] + bp[k + 1]);
    for (int which = 0; which < p.y_degree(); ++which) {
      if (!(std::log(std::abs(root(mid, which))) > 1e-9)) continue;
      ParametrizedPath path;
      path.x = [](double th) { return std::polar(1.0, th); };
      path.dx = [](double th) { return cplx(0, 1) * std::polar(1.0, th); };
      path.y = [&, which](double th) { return root(th, which); };
      path.dy = [&, which](double th) {
        cplx x = std::polar(1.0, th), y = root(th, which);
        cplx px = 0.0, py = 0.0;
        for (int j = 0; j <= p.y_degree(); ++j)
          for (int i = 1; i <= p.x_degree(); ++i)
            px += double(i) * p.coefficient(i, j) * std::pow(x, i - 1) * std::pow(y, j);
        for (int j = 1; j <= p.y_degree(); ++j) py += double(j) * p.y_coefficient_at(j, x) * std::pow(y, j - 1);
        return -px * cplx(0, 1) * x / py;
      };
      std::array<double, 2> part = {bp[k], bp[k + 1]};
      sum.add(eta_path_integral(path, part, tol));
    }
  }
  // The lower half of the circle mirrors the upper half.
  return 2.0 * sum.sum();
}

}  // namespace regulab
