#include "regulab/lfunctions.hpp"

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <fstream>
#include <sstream>

#include "regulab/errors.hpp"
#include "regulab/families.hpp"
#include "regulab/mahler.hpp"

namespace regulab {

std::string reduction_name(Reduction r) {
  switch (r) {
    case Reduction::Good: return "good";
    case Reduction::SplitMultiplicative: return "split-multiplicative";
    case Reduction::NonsplitMultiplicative: return "nonsplit-multiplicative";
    case Reduction::Additive: return "additive";
  }
  return "";
}

IntegerCurve integral_model(const RationalCurve& c) {
  IntegerCurve out;
  auto conv = [](const Rational& q) {
    if (boost::multiprecision::denominator(q) != 1) throw DomainError("model has non-integral coefficients");
    return Integer(boost::multiprecision::numerator(q));
  };
  out.a1 = conv(c.a1);
  out.a2 = conv(c.a2);
  out.a3 = conv(c.a3);
  out.a4 = conv(c.a4);
  out.a6 = conv(c.a6);
  return out;
}

RationalCurve to_rational(const IntegerCurve& c) {
  return {Rational(c.a1), Rational(c.a2), Rational(c.a3), Rational(c.a4), Rational(c.a6)};
}

namespace {

Integer pow_int(const Integer& b, int e) {
  Integer r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

bool divides(const Integer& d, const Integer& n) { return n % d == 0; }

// The model with coefficients a_i' given by x = u^2 x' + r, y = u^3 y' + s u^2 x' + t,
// if integral.
bool try_rescale(const IntegerCurve& c, long u, long r, long s, long t, IntegerCurve& out) {
  Integer U = u, R = r, S = s, T = t;
  Integer n1 = c.a1 + 2 * S;
  if (!divides(U, n1)) return false;
  Integer n2 = c.a2 - S * c.a1 + 3 * R - S * S;
  if (!divides(U * U, n2)) return false;
  Integer n3 = c.a3 + R * c.a1 + 2 * T;
  if (!divides(pow_int(U, 3), n3)) return false;
  Integer n4 = c.a4 - S * c.a3 + 2 * R * c.a2 - (T + R * S) * c.a1 + 3 * R * R - 2 * S * T;
  if (!divides(pow_int(U, 4), n4)) return false;
  Integer n6 = c.a6 + R * c.a4 + R * R * c.a2 + R * R * R - T * c.a3 - T * T - R * T * c.a1;
  if (!divides(pow_int(U, 6), n6)) return false;
  out = {n1 / U, n2 / (U * U), n3 / pow_int(U, 3), n4 / pow_int(U, 4), n6 / pow_int(U, 6)};
  return true;
}

long mod(const Integer& v, long p) {
  long r = static_cast<long>(v % p);
  return r < 0 ? r + p : r;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int valuation(long n, long p) {
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

}  // namespace

IntegerCurve minimal_rescale(const IntegerCurve& c) {
  curve_validate(to_rational(c));
  IntegerCurve cur = c;
  bool changed = true;
  while (changed) {
    changed = false;
    for (long u : {6L, 2L, 3L}) {
      Integer d = cur.discriminant();
      if (!divides(pow_int(u, 12), d)) continue;
      for (long s = 0; s < u && !changed; ++s)
        for (long r = 0; r < u * u && !changed; ++r)
          for (long t = 0; t < u * u * u && !changed; ++t) {
            IntegerCurve next;
            if (try_rescale(cur, u, r, s, t, next)) {
              cur = next;
              changed = true;
            }
          }
      if (changed) break;
    }
  }
  return cur;
}

long ap_good(const IntegerCurve& c, long p) {
  if (!is_prime(p)) throw DomainError("ap_good needs a prime, got " + std::to_string(p));
  if (divides(Integer(p), c.discriminant()))
    throw DomainError("prime " + std::to_string(p) + " divides the discriminant");
  long a1 = mod(c.a1, p), a2 = mod(c.a2, p), a3 = mod(c.a3, p), a4 = mod(c.a4, p), a6 = mod(c.a6, p);
  long count = 1;  // the point at infinity
  if (p == 2) {
    for (long x = 0; x < 2; ++x)
      for (long y = 0; y < 2; ++y)
        if ((y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6) % 2 == 0) ++count;
    return p + 1 - count;
  }
  // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6.
  std::vector<int> chi(p, -1);
  chi[0] = 0;
  for (long y = 1; y < p; ++y) chi[(y * y) % p] = 1;
  long b2 = mod(c.b2(), p), b4 = mod(c.b4(), p), b6 = mod(c.b6(), p);
  for (long x = 0; x < p; ++x) {
    long g = ((((4 * x + b2) % p) * x % p + 2 * b4) % p * x + b6) % p;
    count += 1 + chi[g];
  }
  return p + 1 - count;
}

BadReduction ap_bad(const IntegerCurve& c, long p) {
  if (!is_prime(p)) throw DomainError("ap_bad needs a prime, got " + std::to_string(p));
  if (!divides(Integer(p), c.discriminant()))
    throw DomainError("prime " + std::to_string(p) + " does not divide the discriminant");
  long a1 = mod(c.a1, p), a2 = mod(c.a2, p), a3 = mod(c.a3, p), a4 = mod(c.a4, p), a6 = mod(c.a6, p);
  auto m = [p](long v) { return ((v % p) + p) % p; };
  for (long x = 0; x < p; ++x)
    for (long y = 0; y < p; ++y) {
      long f = m(y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6);
      long fx = m(a1 * y - 3 * x * x - 2 * a2 * x - a4);
      long fy = m(2 * y + a1 * x + a3);
      if (f || fx || fy) continue;
      // Tangent cone at (x, y): Y^2 + a1 XY - (3x + a2) X^2.
      long c2 = m(3 * x + a2);
      if (p == 2) {
        if (a1 == 0) return {0, Reduction::Additive};
        return c2 == 0 ? BadReduction{1, Reduction::SplitMultiplicative}
                       : BadReduction{-1, Reduction::NonsplitMultiplicative};
      }
      long disc = m(a1 * a1 + 4 * c2);
      if (disc == 0) return {0, Reduction::Additive};
      bool square = false;
      for (long z = 1; z < p && !square; ++z) square = (z * z) % p == disc;
      return square ? BadReduction{1, Reduction::SplitMultiplicative}
                    : BadReduction{-1, Reduction::NonsplitMultiplicative};
    }
  throw InconsistentData("no singular point found mod " + std::to_string(p));
}

APTable ap_table(const IntegerCurve& c, long conductor, long bound, const std::map<long, int>& overrides) {
  if (conductor < 1) throw DomainError("conductor must be positive");
  APTable t;
  t.curve = c;
  t.conductor = conductor;
  t.bound = bound;
  Integer disc = c.discriminant();
  for (long p = 2; p <= bound; ++p) {
    if (!is_prime(p)) continue;
    auto ov = overrides.find(p);
    int e = conductor % p == 0 ? valuation(conductor, p) : 0;
    if (ov != overrides.end()) {
      t.ap[p] = ov->second;
      if (e > 0)
        t.bad[p] = e >= 2 ? Reduction::Additive
                   : ov->second == 1 ? Reduction::SplitMultiplicative
                                     : Reduction::NonsplitMultiplicative;
      continue;
    }
    bool model_bad = divides(Integer(p), disc);
    if (e == 0) {
      if (model_bad)
        throw NeedsOverride("model is not minimal at p=" + std::to_string(p) + "; supply a_p");
      long a = ap_good(c, p);
      if (static_cast<double>(a * a) > 4.0 * p) throw InconsistentData("Hasse bound violated at p=" + std::to_string(p));
      t.ap[p] = static_cast<int>(a);
      continue;
    }
    if (!model_bad) throw InconsistentData("conductor divisible by a prime of good reduction: " + std::to_string(p));
    BadReduction b = ap_bad(c, p);
    bool multiplicative = b.type != Reduction::Additive;
    if (multiplicative != (e == 1))
      throw NeedsOverride("reduction type at p=" + std::to_string(p) + " disagrees with the conductor; supply a_p");
    t.ap[p] = b.ap;
    t.bad[p] = b.type;
  }
  return t;
}

std::map<long, int> parse_ap_overrides(std::istream& in) {
  std::map<long, int> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ss(line);
    long p;
    long a;
    if (!(ss >> p)) continue;
    std::string rest;
    if (!(ss >> a) || (ss >> rest) || !is_prime(p))
      throw DomainError("bad override line " + std::to_string(lineno) + ": expected 'p a_p'");
    out[p] = static_cast<int>(a);
  }
  return out;
}

std::map<long, int> read_ap_overrides(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open override table " + path);
  return parse_ap_overrides(in);
}

std::vector<long long> an_coefficients(const APTable& apt, long M) {
  if (M < 1) throw DomainError("coefficient bound must be positive");
  std::vector<long long> a(M + 1, 0);
  a[1] = 1;
  std::vector<long> spf(M + 1, 0);
  for (long i = 2; i <= M; ++i)
    if (spf[i] == 0)
      for (long j = i; j <= M; j += i)
        if (spf[j] == 0) spf[j] = i;
  for (long n = 2; n <= M; ++n) {
    long p = spf[n], m = n, k = 0;
    while (m % p == 0) {
      m /= p;
      ++k;
    }
    if (m > 1) {
      a[n] = a[m] * a[n / m];
      continue;
    }
    auto it = apt.ap.find(p);
    if (it == apt.ap.end()) throw DomainError("a_p missing for prime " + std::to_string(p));
    long long ap = it->second;
    if (k == 1) a[n] = ap;
    else if (apt.bad.count(p)) a[n] = ap * a[n / p];
    else a[n] = ap * a[n / p] - p * a[n / (p * p)];
  }
  return a;
}

namespace {

// Gamma(a, x) for 0 <= a <= 2, x > 0.
double upper_gamma(double a, double x) {
  if (a == 0.0) return boost::math::expint(1, x);
  return boost::math::tgamma(a, x);
}

}  // namespace

LambdaHalves lambda_halves(const LSeries& L, double s, double t, double tail_tol) {
  if (L.conductor < 1) throw DomainError("conductor must be positive");
  if (!(s >= 0.0 && s <= 2.0)) throw DomainError("Lambda is evaluated for 0 <= s <= 2");
  if (!(t > 0.0)) throw DomainError("split point must be positive");
  long M = L.bound();
  double rootN = std::sqrt(static_cast<double>(L.conductor));
  double tail = std::exp(-2.0 * kPi * M * std::min(t, 1.0 / t) / rootN);
  if (!(tail < tail_tol))
    throw IncreaseM("tail bound " + std::to_string(tail) + " not met with M=" + std::to_string(M));
  LambdaHalves h;
  Accumulator first, second;
  for (long n = 1; n <= M; ++n) {
    if (L.a[n] == 0) continue;
    double base = rootN / (2.0 * kPi * n);
    double an = static_cast<double>(L.a[n]);
    double x1 = t / base, x2 = 1.0 / (t * base);
    // Terms below the underflow threshold of Gamma(a, x) ~ x^(a-1) e^-x contribute nothing.
    if (x1 < 745.0) first.add(an * std::pow(base, s) * upper_gamma(s, x1));
    if (x2 < 745.0) second.add(an * std::pow(base, 2.0 - s) * upper_gamma(2.0 - s, x2));
  }
  h.first = first.sum();
  h.second = second.sum();
  return h;
}

double lambda_completed(const LSeries& L, double s, double t) {
  auto h = lambda_halves(L, s, t);
  return h.first + L.epsilon * h.second;
}

double l_prime_zero(const LSeries& L) { return lambda_completed(L, 0.0); }

EpsilonResult epsilon_detect(const std::vector<long long>& a, long conductor) {
  LSeries L{conductor, 1, a};
  const double t = 1.2;
  auto lo = lambda_halves(L, 0.7, t), hi = lambda_halves(L, 1.3, t);
  auto residual = [&](int eps) {
    return std::abs((lo.first + eps * lo.second) - eps * (hi.first + eps * hi.second));
  };
  double rp = residual(1), rm = residual(-1);
  EpsilonResult r;
  r.epsilon = rp <= rm ? 1 : -1;
  r.residual = std::min(rp, rm);
  r.other_residual = std::max(rp, rm);
  if (!(r.residual < 1e-6))
    throw InconsistentData("no sign satisfies the functional equation (residuals " + std::to_string(rp) + ", " +
                           std::to_string(rm) + "); check the a_p data");
  return r;
}

const std::vector<Table1Row>& table1_rows() {
  static const std::vector<Table1Row> rows = {
      {-4, 2, 1, 36}, {2, 1, 2, 36}, {-8, 10, 1, 14}, {1, 1, 1, 14}, {7, 6, 1, 14}, {-2, 3, 1, 20}, {4, 2, 1, 20},
  };
  return rows;
}

Table1Result evaluate_table1_row(const Table1Row& row, long M, const std::map<long, int>& overrides) {
  Table1Result out;
  out.row = row;
  out.model = minimal_rescale(integral_model(deuring_curve(Rational(row.alpha))));
  APTable apt = ap_table(out.model, row.conductor, M, overrides);
  auto a = an_coefficients(apt, M);
  auto eps = epsilon_detect(a, row.conductor);
  out.epsilon = eps.epsilon;
  out.epsilon_residual = eps.residual;
  out.l_prime = l_prime_zero(LSeries{row.conductor, eps.epsilon, a});
  out.mahler = mahler_quadratic_y(family_poly(Family::P, row.alpha), Tolerance{1e-12}).value;
  out.ratio = out.mahler / out.l_prime;
  return out;
}

}  // namespace regulab
