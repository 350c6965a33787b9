#include <cmath>
#include <sstream>

#include "doctest.h"
#include "regulab/errors.hpp"
#include "regulab/families.hpp"
#include "regulab/lfunctions.hpp"

using namespace regulab;

namespace {

bool prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// p + 1 - #E(F_p) by testing every pair (x, y).
long brute_ap(const IntegerCurve& c, long p) {
  auto m = [p](const Integer& v) { return static_cast<long>(((v % p) + p) % p); };
  long a1 = m(c.a1), a2 = m(c.a2), a3 = m(c.a3), a4 = m(c.a4), a6 = m(c.a6);
  long count = 1;
  for (long x = 0; x < p; ++x)
    for (long y = 0; y < p; ++y)
      if ((y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6) % p == 0) ++count;
  return p + 1 - count;
}

IntegerCurve table_model(int alpha) { return minimal_rescale(integral_model(deuring_curve(Rational(alpha)))); }

LSeries series_for(const Table1Row& row, long M) {
  auto c = table_model(row.alpha);
  auto a = an_coefficients(ap_table(c, row.conductor, M), M);
  return LSeries{row.conductor, epsilon_detect(a, row.conductor).epsilon, a};
}

// L(E, 2) from sum a_n n^-2 e^(-n/X) = L(E,2) - L(E,1)/X + O(e^-X-ish); the
// 1/X term is removed by combining X and 2X.
double smoothed_l2(const std::vector<long long>& a, double X) {
  auto s = [&](double x) {
    double v = 0;
    for (std::size_t n = 1; n < a.size(); ++n) v += a[n] * std::exp(-double(n) / x) / (double(n) * n);
    return v;
  };
  return 2 * s(2 * X) - s(X);
}

}  // namespace

TEST_CASE("minimal rescaling") {
  auto c = integral_model(deuring_curve(Rational(-8)));
  auto m = minimal_rescale(c);
  CHECK(m.a1 == -5);
  CHECK(m.a2 == 0);
  CHECK(m.a3 == -1);
  CHECK(m.a4 == 0);
  CHECK(m.a6 == 0);
  CHECK(c.discriminant() == m.discriminant() * 4096);
  // Already minimal models are left alone.
  auto e1 = integral_model(deuring_curve(Rational(1)));
  CHECK(minimal_rescale(e1).discriminant() == e1.discriminant());
  CHECK_THROWS_AS(integral_model(deuring_curve(Rational(1, 2))), DomainError);
}

TEST_CASE("a_p at good primes matches brute-force counting") {
  for (auto& row : table1_rows()) {
    auto c = table_model(row.alpha);
    for (long p = 2; p < 200; ++p) {
      if (!prime(p) || row.conductor % p == 0) continue;
      long a = ap_good(c, p);
      INFO("alpha=", row.alpha, " p=", p);
      CHECK(a == brute_ap(c, p));
      CHECK(double(a * a) <= 4.0 * p);
    }
  }
  CHECK(ap_good(table_model(-4), 7) == brute_ap(table_model(-4), 7));
  CHECK(ap_good(table_model(1), 3) == brute_ap(table_model(1), 3));
  CHECK_THROWS_AS(ap_good(table_model(1), 7), DomainError);
  CHECK_THROWS_AS(ap_good(table_model(1), 9), DomainError);
}

TEST_CASE("a_p at bad primes") {
  auto e1 = table_model(1);
  auto b7 = ap_bad(e1, 7);
  CHECK(b7.type != Reduction::Additive);
  CHECK((b7.ap == 1 || b7.ap == -1));
  // The number of smooth points is p - a_p for multiplicative reduction.
  CHECK(b7.ap == brute_ap(e1, 7));
  CHECK(ap_bad(e1, 2).ap == brute_ap(e1, 2));
  // Additive reduction at 2 and 3 for conductor 36.
  CHECK(ap_bad(table_model(-4), 2).type == Reduction::Additive);
  CHECK(ap_bad(table_model(-4), 3).ap == 0);
  // y^2 = x^3 + 3 has a cusp mod 3.
  IntegerCurve cusp{0, 0, 0, 0, 3};
  CHECK(ap_bad(cusp, 3).type == Reduction::Additive);
  CHECK_THROWS_AS(ap_bad(e1, 5), DomainError);
}

TEST_CASE("a_n coefficients") {
  for (auto& row : table1_rows()) {
    auto apt = ap_table(table_model(row.alpha), row.conductor, 400);
    auto a = an_coefficients(apt, 400);
    CHECK(a[1] == 1);
    CHECK(a[6] == a[2] * a[3]);
    CHECK(a[15] == a[3] * a[5]);
    CHECK(a[35] == a[5] * a[7]);
    if (row.conductor % 3 != 0) CHECK(a[9] == a[3] * a[3] - 3);
    else CHECK(a[9] == a[3] * a[3]);
    if (row.conductor % 5 != 0) CHECK(a[125] == a[5] * a[25] - 5 * a[5]);
    else CHECK(a[125] == a[5] * a[5] * a[5]);
    for (long p : {2L, 3L, 5L, 7L})
      if (row.conductor % p == 0) CHECK(a[p * p] == a[p] * a[p]);
  }
  APTable partial;
  partial.ap = {{2, -1}, {3, 0}};
  CHECK_THROWS_WITH_AS(an_coefficients(partial, 10), "a_p missing for prime 5", DomainError);
}

TEST_CASE("non-minimal models need overrides") {
  auto raw = integral_model(deuring_curve(Rational(-8)));
  CHECK_THROWS_AS(ap_table(raw, 14, 50), NeedsOverride);
  auto minimal = ap_table(table_model(-8), 14, 50);
  auto fixed = ap_table(raw, 14, 50, {{2, minimal.ap[2]}});
  CHECK(fixed.ap == minimal.ap);
  std::istringstream in("# overrides\n2 -1\n\n7 1  # split\n");
  auto ov = parse_ap_overrides(in);
  CHECK(ov.size() == 2);
  CHECK(ov[2] == -1);
  CHECK(ov[7] == 1);
  std::istringstream bad("4 1\n");
  CHECK_THROWS_AS(parse_ap_overrides(bad), DomainError);
  CHECK_THROWS_AS(read_ap_overrides("/nonexistent/overrides.txt"), DomainError);
}

TEST_CASE("completed L-function") {
  auto rows = table1_rows();
  auto L36 = series_for(rows[0], 200);
  CHECK(std::abs(lambda_completed(L36, 0.7, 1.2) - L36.epsilon * lambda_completed(L36, 1.3, 1.2)) < 1e-9);
  auto L36b = series_for(rows[0], 400);
  CHECK(std::abs(lambda_completed(L36, 1.0) - lambda_completed(L36b, 1.0)) < 1e-12);
  // The split point is arbitrary once the sign is right.
  CHECK(std::abs(lambda_completed(L36, 1.0, 1.0) - lambda_completed(L36, 1.0, 1.3)) < 1e-10);
  LSeries tiny = L36;
  tiny.a.resize(6);
  CHECK_THROWS_AS(lambda_completed(tiny, 1.0), IncreaseM);
  CHECK_THROWS_AS(lambda_completed(L36, 2.5), DomainError);

  for (auto& row : rows) {
    auto L = series_for(row, 200);
    for (double s : {0.3, 0.7, 1.0})
      CHECK(std::abs(lambda_completed(L, s, 1.2) - L.epsilon * lambda_completed(L, 2 - s, 1.2)) < 1e-8);
    CHECK(l_prime_zero(L) > 0);
    CHECK(std::abs(l_prime_zero(L) - L.epsilon * lambda_completed(L, 2.0)) < 1e-10);
    // Lambda(2) = N L(E,2) / (4 pi^2) with L(E,2) from a smoothed Dirichlet sum.
    auto big = an_coefficients(ap_table(table_model(row.alpha), row.conductor, 5000), 5000);
    double l2 = smoothed_l2(big, 50);
    CHECK(std::abs(lambda_completed(L, 2.0) - row.conductor * l2 / (4 * kPi * kPi)) < 1e-9);
  }
}

TEST_CASE("L'(E,0) reference values") {
  // Computed independently with 30-digit arithmetic.
  const double l36 = 0.857189074929918, l14 = 0.227481223012351, l20 = 0.399567139800683;
  for (auto& row : table1_rows()) {
    double expect = row.conductor == 36 ? l36 : row.conductor == 14 ? l14 : l20;
    CHECK(std::abs(l_prime_zero(series_for(row, 200)) - expect) < 1e-8);
  }
}

TEST_CASE("sign detection") {
  auto rows = table1_rows();
  auto c = table_model(-4);
  auto a = an_coefficients(ap_table(c, 36, 200), 200);
  auto e = epsilon_detect(a, 36);
  CHECK(e.residual < 1e-9);
  CHECK(e.other_residual > 1e-3);
  auto c1 = table_model(1);
  int first = 0;
  for (long M : {100L, 200L, 400L}) {
    int eps = epsilon_detect(an_coefficients(ap_table(c1, 14, M), M), 14).epsilon;
    if (!first) first = eps;
    CHECK(eps == first);
  }
  auto apt = ap_table(c, 36, 200);
  apt.ap[5] += 2;
  CHECK_THROWS_AS(epsilon_detect(an_coefficients(apt, 200), 36), InconsistentData);
}

TEST_CASE("table rows") {
  for (auto& row : table1_rows()) {
    auto r = evaluate_table1_row(row);
    INFO("alpha=", row.alpha);
    CHECK(std::abs(r.ratio - row.r()) < 1e-4);
  }
}
