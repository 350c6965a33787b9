#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "regulab/elliptic.hpp"

namespace regulab {

using Integer = boost::multiprecision::cpp_int;
using IntegerCurve = WeierstrassCurve<Integer>;

enum class Reduction { Good, SplitMultiplicative, NonsplitMultiplicative, Additive };
std::string reduction_name(Reduction r);

// Throws DomainError unless every coefficient is an integer.
IntegerCurve integral_model(const RationalCurve& c);
RationalCurve to_rational(const IntegerCurve& c);

// Repeatedly tries u in {2, 3, 6} with integral (r, s, t) so that the model
// stays integral and the discriminant drops by u^12.
IntegerCurve minimal_rescale(const IntegerCurve& c);

// p + 1 - #E(F_p) by enumeration; throws DomainError if p divides the discriminant.
long ap_good(const IntegerCurve& c, long p);

struct BadReduction {
  int ap;
  Reduction type;
};

// Reduction type from the tangent cone at the singular point mod p.
BadReduction ap_bad(const IntegerCurve& c, long p);

struct APTable {
  IntegerCurve curve;  // the (rescaled) model the counts refer to
  long conductor = 0;
  long bound = 0;
  std::map<long, int> ap;
  std::map<long, Reduction> bad;
};

// a_p for all p <= bound. Bad primes are those dividing the conductor; a prime
// where the model disagrees with the conductor raises NeedsOverride unless
// `overrides` supplies a_p.
APTable ap_table(const IntegerCurve& c, long conductor, long bound, const std::map<long, int>& overrides = {});

// Lines "p a_p"; '#' starts a comment.
std::map<long, int> parse_ap_overrides(std::istream& in);
std::map<long, int> read_ap_overrides(const std::string& path);

// a_1 .. a_M (index 0 unused); throws DomainError naming a missing prime.
std::vector<long long> an_coefficients(const APTable& apt, long M);

struct LSeries {
  long conductor = 0;
  int epsilon = 1;
  std::vector<long long> a;  // a[n], a[0] unused
  long bound() const { return static_cast<long>(a.size()) - 1; }
};

// Sum over n <= M of a_n (sqrt N / 2 pi n)^s Gamma(s, 2 pi n t / sqrt N) (first)
// and of a_n (sqrt N / 2 pi n)^(2-s) Gamma(2 - s, 2 pi n / (t sqrt N)) (second).
// Lambda(s) = first + epsilon * second.
struct LambdaHalves {
  double first = 0.0;
  double second = 0.0;
};

// Throws IncreaseM if the truncated tail exp(-2 pi M min(t, 1/t) / sqrt N) exceeds tail_tol.
LambdaHalves lambda_halves(const LSeries& L, double s, double t = 1.0, double tail_tol = 1e-13);

// Lambda(s) = N^(s/2) (2 pi)^(-s) Gamma(s) L(E, s), for 0 <= s <= 2.
double lambda_completed(const LSeries& L, double s, double t = 1.0);

// L'(E, 0) = Lambda(0).
double l_prime_zero(const LSeries& L);

struct EpsilonResult {
  int epsilon = 1;
  double residual = 0.0;        // |Lambda(0.7) - eps Lambda(1.3)| for the winner
  double other_residual = 0.0;  // same for -eps
};

// Sign of the functional equation from the split t = 1.2, where the choice of
// sign is not automatic. Throws InconsistentData if neither sign fits to 1e-6.
EpsilonResult epsilon_detect(const std::vector<long long>& a, long conductor);

struct Table1Row {
  int alpha;
  int r_num, r_den;  // rational r_alpha
  long conductor;
  double r() const { return static_cast<double>(r_num) / r_den; }
};

const std::vector<Table1Row>& table1_rows();

struct Table1Result {
  Table1Row row;
  IntegerCurve model;
  int epsilon = 1;
  double epsilon_residual = 0.0;
  double l_prime = 0.0;
  double mahler = 0.0;
  double ratio = 0.0;
};

Table1Result evaluate_table1_row(const Table1Row& row, long M = 200, const std::map<long, int>& overrides = {});

}  // namespace regulab
