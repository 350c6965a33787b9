#include "regulab/periods.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "regulab/errors.hpp"

namespace regulab {

void RadicalIntegrand::add_quadratic(double a, double b, double c) {
  if (a == 0.0) throw DegenerateInput("quadratic factor has zero leading coefficient");
  scale *= std::abs(a);
  double disc = b * b - 4.0 * a * c;
  if (disc >= 0.0) {
    double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    if (q == 0.0) {
      real_roots.push_back(0.0);
      real_roots.push_back(0.0);
      return;
    }
    real_roots.push_back(q / a);
    real_roots.push_back(c / q);
  } else {
    complex_roots.push_back(cplx(-b / (2.0 * a), std::sqrt(-disc) / (2.0 * std::abs(a))));
  }
}

double RadicalIntegrand::eval(double t, double lo, double from_lo, double hi, double to_hi) const {
  double prod = scale;
  for (double r : real_roots) {
    if (r == lo) prod *= from_lo;
    else if (r == hi) prod *= to_hi;
    else prod *= std::abs(t - r);
  }
  for (cplx c : complex_roots) prod *= std::norm(t - c);
  return 1.0 / std::sqrt(prod);
}

double RadicalIntegrand::operator()(double t) const {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  return eval(t, nan, 0.0, nan, 0.0);
}

QuadratureResult integrate_radical(const RadicalIntegrand& f, double lo, double hi, const Tolerance& tol) {
  if (std::isfinite(hi)) {
    return integrate_endpoint_singular(
        [&](double t, double from_a, double to_b) { return f.eval(t, lo, from_a, hi, to_b); }, lo, hi, tol);
  }
  double rho = 1.0;
  for (double r : f.real_roots) rho = std::max(rho, 1.0 + std::abs(r));
  for (cplx c : f.complex_roots) rho = std::max(rho, 1.0 + std::abs(c));
  const double inf = std::numeric_limits<double>::infinity();
  return integrate_endpoint_singular(
      [&](double, double from_a, double to_b) {
        double log_du = std::log(rho) + std::log(from_a) - std::log(to_b);
        double jac = std::log(rho) - 2.0 * std::log(to_b);
        if (log_du < 300.0) {
          double du = std::exp(log_du);
          return f.eval(lo + du, lo, du, inf, inf) * std::exp(jac);
        }
        // Far tail: every factor |u - r| is u to working precision.
        double degree = f.real_roots.size() + 2.0 * f.complex_roots.size();
        return std::exp(jac - 0.5 * (std::log(f.scale) + degree * log_du));
      },
      0.0, 1.0, tol);
}

namespace {

const double kInf = std::numeric_limits<double>::infinity();

// Smaller root of 16 t^2 - 8 (2 + a) t + a^2, (2 + a - 2 sqrt(a + 1)) / 4.
double p_upper_limit(double a) {
  double big = (2.0 + a + 2.0 * std::sqrt(a + 1.0)) / 4.0;
  return a * a / (16.0 * big);
}

// (-a - sqrt(a^2 - 8a)) / 4 for a <= -1.
double s_negative_limit(double a) {
  double big = (-a + std::sqrt(a * a - 8.0 * a)) / 4.0;  // product of roots is a / 2
  return a / (2.0 * big);
}

// (8 + a^2 - a sqrt(a^2 + 16)) / 32; the product of the two roots is 1/16.
double q_lower_limit(double a) {
  double big = (8.0 + a * a + a * std::sqrt(a * a + 16.0)) / 32.0;
  return 1.0 / (16.0 * big);
}

// (-(b + 2) + sqrt(b^2 - 4b + 20)) / 4; the product of the roots is (b - 2) / 2.
double r_lower_limit(double b) {
  double big = (-(b + 2.0) - std::sqrt(b * b - 4.0 * b + 20.0)) / 4.0;
  return (b - 2.0) / (2.0 * big);
}

// t (1 - t) ((a - 4t)^2 - 16 t).
RadicalIntegrand integrand_p(double a, double upper) {
  RadicalIntegrand f;
  f.real_roots = {0.0, 1.0};
  f.add_quadratic(16.0, -8.0 * (2.0 + a), a * a);
  // Pin the root that serves as a limit to the exact limit value.
  if (std::isfinite(upper) && upper != 1.0) {
    auto it = std::min_element(f.real_roots.begin() + 2, f.real_roots.end(),
                               [&](double x, double y) { return std::abs(x - upper) < std::abs(y - upper); });
    if (it != f.real_roots.end()) *it = upper;
  }
  return f;
}

// (1 - t)(2t + a - 2)(2t^2 + a t + a).
RadicalIntegrand integrand_s(double a, double lower) {
  RadicalIntegrand f;
  f.scale = 2.0;
  f.real_roots = {1.0, (2.0 - a) / 2.0};
  f.add_quadratic(2.0, a, a);
  for (auto& r : f.real_roots)
    if (std::abs(r - lower) < 1e-12 * (1.0 + std::abs(lower))) r = lower;
  return f;
}

// s (1 - s)(a^2 s^2 + a (4 - a) s + 4).
RadicalIntegrand integrand_c(double a) {
  RadicalIntegrand f;
  f.real_roots = {0.0, 1.0};
  f.add_quadratic(a * a, a * (4.0 - a), 4.0);
  return f;
}

// Roots s0 = (a - 4 - sqrt(a^2 - 8a)) / (2a) and w0 = (a - 4 + sqrt(a^2 - 8a)) / (2a), a < 0.
std::pair<double, double> c_roots(double a) {
  double s0 = (a - 4.0 - std::sqrt(a * a - 8.0 * a)) / (2.0 * a);
  return {s0, 4.0 / (a * a * s0)};
}

RadicalIntegrand integrand_c_pinned(double a) {
  RadicalIntegrand f = integrand_c(a);
  auto [s0, w0] = c_roots(a);
  for (auto& r : f.real_roots) {
    if (std::abs(r - s0) < 1e-12 * std::abs(s0)) r = s0;
    if (std::abs(r - w0) < 1e-12 * std::abs(w0)) r = w0;
  }
  return f;
}

double shift_c(double a) { return a * a / 4.0 - a - 2.0; }

// u (u^2 + 2c u + a^3 (a - 8) / 16).
RadicalIntegrand integrand_u(double a) {
  RadicalIntegrand f;
  f.real_roots = {0.0};
  f.add_quadratic(1.0, 2.0 * shift_c(a), a * a * a * (a - 8.0) / 16.0);
  return f;
}

// v (v^2 - c v + a + 1), with v0 pinned.
RadicalIntegrand integrand_v(double a) {
  RadicalIntegrand f;
  double v0 = isogeny_lower_limit(a);
  f.real_roots = {0.0, v0, (a + 1.0) / v0};
  return f;
}

// (1 - t)(a^2 t - (4t - 1)^2) = 16 (1 - t)(t - s-)(s+ - t).
RadicalIntegrand integrand_q(double a) {
  RadicalIntegrand f;
  double lo = q_lower_limit(a);
  f.scale = 16.0;
  f.real_roots = {1.0, lo, 1.0 / (16.0 * lo)};
  return f;
}

// (1 - t)((b - 4) + 2t)(2t^2 + (b + 2) t + (b - 2)).
RadicalIntegrand integrand_r(double b) {
  RadicalIntegrand f;
  double lo = r_lower_limit(b);
  f.scale = 4.0;
  f.real_roots = {1.0, (4.0 - b) / 2.0, lo, (b - 2.0) / (2.0 * lo)};
  return f;
}

QuadratureResult quad(const RadicalIntegrand& f, double lo, double hi, double tol) {
  Tolerance t;
  t.absolute = tol;
  return integrate_radical(f, std::min(lo, hi), std::max(lo, hi), t);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw UnsupportedRegime(what);
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

}  // namespace

double isogeny_lower_limit(double a) {
  require(a < -1.0, "the isogeny substitution needs a < -1");
  return (a * a - 4.0 * a - 8.0 - a * std::sqrt(a * a - 8.0 * a)) / 8.0;
}

double involution_map(double a, double w) {
  double den = 1.0 + a * w;
  if (den == 0.0) throw DomainError("involution undefined at w = -1/a");
  return (1.0 - w) / den;
}

double isogeny_map(double a, double v) {
  if (v == 0.0) throw DomainError("isogeny undefined at v = 0");
  return v - shift_c(a) + (a + 1.0) / v;
}

double cycle_radicand(Family family, double a, double t) {
  switch (family) {
    case Family::P:
      return t * (1.0 - t) * ((a - 4.0 * t) * (a - 4.0 * t) - 16.0 * t);
    case Family::S:
      return (1.0 - t) * (2.0 * t + a - 2.0) * (2.0 * t * t + a * t + a);
    case Family::Q:
      return (1.0 - t) * (a * a * t - (4.0 * t - 1.0) * (4.0 * t - 1.0));
    case Family::R:
      return (1.0 - t) * ((a - 4.0) + 2.0 * t) * (2.0 * t * t + (a + 2.0) * t + (a - 2.0));
  }
  return 0.0;
}

CycleIntegral cycle_integral(Family family, double a, const Tolerance& tol) {
  check_family_parameter(family, a);
  CycleIntegral c{family, a, "", "", 1.0, 0.0, 1.0, {}, {}};
  switch (family) {
    case Family::P:
      c.integrand = "2 / sqrt(t (1 - t) ((a - 4t)^2 - 16t))";
      c.multiplier = 2.0;
      if (a >= 0.0 && a <= 4.0) {
        c.regime = "0 <= a <= 4";
        c.hi = p_upper_limit(a);
      } else {
        require(a <= -1.0, "P cycle integral is defined for 0 <= a <= 4 or a <= -1");
        c.regime = "a <= -1";
      }
      c.f = integrand_p(a, c.hi);
      break;
    case Family::S:
      c.integrand = "2 / sqrt((1 - t)(2t + a - 2)(2t^2 + a t + a))";
      c.multiplier = 2.0;
      if (a >= 0.0 && a <= 4.0) {
        c.regime = "0 <= a <= 4";
        c.lo = (2.0 - a) / 2.0;
      } else {
        require(a <= -1.0, "S cycle integral is defined for 0 <= a <= 4 or a <= -1");
        c.regime = "a <= -1";
        c.lo = s_negative_limit(a);
      }
      c.f = integrand_s(a, c.lo);
      break;
    case Family::Q:
      require(a >= 4.0, "Q cycle integral is defined for a >= 4");
      c.regime = "a >= 4";
      c.integrand = "1 / sqrt((1 - t)(a^2 t - (4t - 1)^2))";
      c.lo = q_lower_limit(a);
      c.f = integrand_q(a);
      break;
    case Family::R:
      require(a >= 6.0, "R cycle integral is defined for b >= 6");
      c.regime = "b >= 6";
      c.integrand = "1 / sqrt((1 - t)((b - 4) + 2t)(2t^2 + (b + 2) t + (b - 2)))";
      c.lo = r_lower_limit(a);
      c.f = integrand_r(a);
      break;
  }
  Tolerance inner = tol;
  inner.absolute = tol.absolute / c.multiplier;
  c.value = integrate_radical(c.f, c.lo, c.hi, inner);
  c.value.value *= c.multiplier;
  c.value.error_estimate *= c.multiplier;
  return c;
}

PeriodIdentity parse_period_identity(std::string_view name) {
  if (name == "doubled") return PeriodIdentity::Doubled;
  if (name == "negative") return PeriodIdentity::Negative;
  if (name == "quotient") return PeriodIdentity::QuotientPair;
  throw DomainError("unknown period identity '" + std::string(name) + "'");
}

std::string period_identity_name(PeriodIdentity id) {
  switch (id) {
    case PeriodIdentity::Doubled: return "doubled";
    case PeriodIdentity::Negative: return "negative";
    case PeriodIdentity::QuotientPair: return "quotient";
  }
  return "";
}

CheckRecord verify_period_identity(PeriodIdentity id, double a, double tol) {
  const double qt = std::min(1e-12, tol * 1e-3);
  std::string name = period_identity_name(id) + " a=" + fmt(a);
  switch (id) {
    case PeriodIdentity::Doubled: {
      require(a > 0.0 && a < 8.0, "doubled period identity needs 0 < a < 8");
      double hi = p_upper_limit(a);
      double lhs = 2.0 * quad(integrand_p(a, hi), 0.0, hi, qt).value;
      double lo = (2.0 - a) / 2.0;
      double rhs = quad(integrand_s(a, lo), lo, 1.0, qt).value;
      return make_record(name, lhs, rhs, tol);
    }
    case PeriodIdentity::Negative: {
      require(a < -1.0, "negative-parameter period identity needs a < -1");
      double lhs = quad(integrand_p(a, 1.0), 0.0, 1.0, qt).value;
      double lo = s_negative_limit(a);
      double rhs = quad(integrand_s(a, lo), lo, 1.0, qt).value;
      return make_record(name, lhs, rhs, tol);
    }
    case PeriodIdentity::QuotientPair: {
      require(a >= 4.0, "quotient period identity needs a >= 4");
      double lhs = quad(integrand_q(a), q_lower_limit(a), 1.0, qt).value;
      double rhs = quad(integrand_r(a + 2.0), r_lower_limit(a + 2.0), 1.0, qt).value;
      return make_record(name, lhs, rhs, tol);
    }
  }
  throw DomainError("unknown period identity");
}

namespace {

struct ChangeInfo {
  VariableChange id;
  const char* name;
};

const ChangeInfo kChanges[] = {
    {VariableChange::Affine, "affine"},
    {VariableChange::Involution, "involution"},
    {VariableChange::InverseQuadratic, "inverse_quadratic"},
    {VariableChange::Reciprocal, "reciprocal"},
    {VariableChange::Isogeny, "isogeny"},
    {VariableChange::Rescaling, "rescaling"},
    {VariableChange::QuarticPair, "quartic_pair"},
};

}  // namespace

VariableChange parse_variable_change(std::string_view name) {
  for (auto& c : kChanges)
    if (name == c.name) return c.id;
  throw DomainError("unknown change of variables '" + std::string(name) + "'");
}

std::string variable_change_name(VariableChange id) {
  for (auto& c : kChanges)
    if (c.id == id) return c.name;
  return "";
}

const std::vector<VariableChange>& all_variable_changes() {
  static const std::vector<VariableChange> all = [] {
    std::vector<VariableChange> v;
    for (auto& c : kChanges) v.push_back(c.id);
    return v;
  }();
  return all;
}

bool variable_change_applies(VariableChange id, double a) {
  switch (id) {
    case VariableChange::Affine: return (a > 0.0 && a < 8.0) || a < -1.0;
    case VariableChange::QuarticPair: return a >= 4.0;
    default: return a < -1.0;
  }
}

CheckRecord change_of_variable_check(VariableChange id, double a, double tol) {
  if (!variable_change_applies(id, a))
    throw UnsupportedRegime(variable_change_name(id) + " substitution is not used at a=" + fmt(a));
  const double qt = std::min(1e-12, tol * 1e-3);
  std::string name = variable_change_name(id) + " a=" + fmt(a);
  double lhs = 0.0, rhs = 0.0, limits = 0.0;
  switch (id) {
    case VariableChange::Affine: {
      // t = (a s - a + 2) / 2 takes the S integral to s (1 - s)(a^2 s^2 + a(4 - a)s + 4).
      auto t_of = [&](double s) { return (a * s - a + 2.0) / 2.0; };
      if (a > 0.0) {
        double lo = (2.0 - a) / 2.0;
        lhs = quad(integrand_s(a, lo), lo, 1.0, qt).value;
        rhs = quad(integrand_c(a), 0.0, 1.0, qt).value;
        limits = std::max(std::abs(t_of(0.0) - lo), std::abs(t_of(1.0) - 1.0));
      } else {
        double lo = s_negative_limit(a);
        double s0 = c_roots(a).first;
        lhs = quad(integrand_s(a, lo), lo, 1.0, qt).value;
        rhs = quad(integrand_c_pinned(a), 1.0, s0, qt).value;
        limits = std::max(std::abs(t_of(s0) - lo), std::abs(t_of(1.0) - 1.0));
      }
      break;
    }
    case VariableChange::Involution: {
      auto [s0, w0] = c_roots(a);
      RadicalIntegrand f = integrand_c_pinned(a);
      lhs = quad(f, 1.0, s0, qt).value;
      rhs = quad(f, 0.0, w0, qt).value;
      limits = std::max(std::abs(involution_map(a, 0.0) - 1.0), std::abs(involution_map(a, w0) - s0) / s0);
      break;
    }
    case VariableChange::InverseQuadratic: {
      lhs = quad(integrand_p(a, 1.0), 0.0, 1.0, qt).value;
      rhs = 0.5 * quad(integrand_u(a), 0.0, kInf, qt).value;
      auto t_of = [&](double u) { return 1.0 / (1.0 + 4.0 * u / (a * a)); };
      limits = std::max(std::abs(t_of(0.0) - 1.0), std::abs(t_of(1e300)));
      break;
    }
    case VariableChange::Reciprocal: {
      double w0 = c_roots(a).second;
      double v0 = isogeny_lower_limit(a);
      lhs = quad(integrand_c_pinned(a), 0.0, w0, qt).value;
      rhs = 0.5 * quad(integrand_v(a), v0, kInf, qt).value;
      limits = std::abs(1.0 / (1.0 + v0) - w0) / w0;
      break;
    }
    case VariableChange::Isogeny: {
      double v0 = isogeny_lower_limit(a);
      lhs = quad(integrand_u(a), 0.0, kInf, qt).value;
      rhs = quad(integrand_v(a), v0, kInf, qt).value;
      limits = std::abs(isogeny_map(a, v0)) / (1.0 + std::abs(shift_c(a)));
      break;
    }
    case VariableChange::Rescaling: {
      // b = -8/a turns the P integrand at a into |b|/4 times the C integrand at b;
      // the case a < -1 then gives the doubled identity at b in (0, 8).
      double b = -8.0 / a;
      RadicalIntegrand pa = integrand_p(a, 1.0), cb = integrand_c(b);
      lhs = quad(pa, 0.0, 1.0, qt).value;
      double cb_int = quad(cb, 0.0, 1.0, qt).value;
      rhs = std::abs(b) / 4.0 * cb_int;
      double hi = p_upper_limit(b);
      double doubled = 2.0 * quad(integrand_p(b, hi), 0.0, hi, qt).value;
      limits = std::abs(doubled - cb_int);
      for (int k = 1; k < 16; ++k) {
        double t = k / 16.0;
        limits = std::max(limits, std::abs(pa(t) - std::abs(b) / 4.0 * cb(t)) / pa(t));
      }
      break;
    }
    case VariableChange::QuarticPair: {
      // t = ((a + 1)s + a - 1) / (2(2s + a - 2)) from the R side (b = a + 2) to the Q side.
      auto t_of = [&](double s) { return ((a + 1.0) * s + a - 1.0) / (2.0 * (2.0 * s + a - 2.0)); };
      double tlo = q_lower_limit(a), slo = r_lower_limit(a + 2.0);
      lhs = quad(integrand_q(a), tlo, 1.0, qt).value;
      rhs = quad(integrand_r(a + 2.0), slo, 1.0, qt).value;
      limits = std::max(std::abs(t_of(1.0) - 1.0), std::abs(t_of(slo) - tlo));
      break;
    }
  }
  double residual = std::max(std::abs(lhs - rhs), limits);
  return make_residual_record(name, lhs, rhs, residual, tol);
}

LatticeRatio cycle_vs_lattice(Family family, double param) {
  LatticeRatio r;
  r.cycle = cycle_integral(family, param).value.value;
  r.period = period_lattice(family_models(family, param).curve).imaginary_period();
  r.ratio = r.cycle / r.period;
  r.distance = kInf;
  for (long den = 1; den <= 4; ++den) {
    long num = std::lround(r.ratio * den);
    double d = std::abs(r.ratio - static_cast<double>(num) / den);
    if (d < r.distance - 1e-12) {
      r.distance = d;
      r.numerator = num;
      r.denominator = den;
    }
  }
  return r;
}

}  // namespace regulab
