#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "regulab/families.hpp"

namespace regulab {

// Point of a finitely generated group written as an integer combination of
// named generators.
using Word = std::vector<long long>;

// Abelian group given by named generators, each free (order 0) or of finite order.
class PointGroup {
 public:
  struct Generator {
    std::string name;
    int order = 0;
  };

  explicit PointGroup(std::vector<Generator> gens);

  std::size_t rank() const { return gens_.size(); }
  const std::vector<Generator>& generators() const { return gens_; }
  int index_of(std::string_view name) const;

  Word identity() const { return Word(gens_.size(), 0); }
  Word generator_word(std::string_view name) const;
  Word reduce(Word w) const;  // finite-order coefficients into [0, order)
  Word add(const Word& a, const Word& b) const;
  Word negate(const Word& w) const;
  Word subtract(const Word& a, const Word& b) const { return add(a, negate(b)); }
  bool is_identity(const Word& w) const;
  bool self_inverse(const Word& w) const;
  // Finite-order coefficients shifted into (-order/2, order/2].
  Word symmetric(const Word& w) const;

  std::string format(const Word& w) const;  // "O", "P", "2P-V", "P+S-T"
  Word parse_point(std::string_view text) const;

  bool operator==(const PointGroup& o) const;

 private:
  std::vector<Generator> gens_;
};

using GroupPtr = std::shared_ptr<const PointGroup>;

// Element of Z[E]: finite integer combination of points.
class FormalDivisor {
 public:
  explicit FormalDivisor(GroupPtr g) : group_(std::move(g)) {}

  static FormalDivisor parse(GroupPtr g, std::string_view text);
  static FormalDivisor point(GroupPtr g, const Word& w, long long c = 1);

  const GroupPtr& group() const { return group_; }
  const std::map<Word, long long>& terms() const { return terms_; }
  long long coefficient(const Word& w) const;
  long long degree() const;
  bool empty() const { return terms_.empty(); }
  // Sum of absolute coefficients.
  long long weight() const;

  void add_term(const Word& w, long long c);
  FormalDivisor operator+(const FormalDivisor& o) const;
  FormalDivisor operator-(const FormalDivisor& o) const;
  FormalDivisor operator-() const;
  FormalDivisor scaled(long long k) const;
  bool operator==(const FormalDivisor& o) const;

  // Same divisor in another group whose generators include ours by name.
  FormalDivisor transport(GroupPtr target) const;
  std::string to_string() const;

 private:
  void require_same_group(const FormalDivisor& o) const;
  GroupPtr group_;
  std::map<Word, long long> terms_;
};

// Element of Z[E]^- = Z[E] / ((S) + (-S)) in canonical form: one representative
// per class {S, -S}; self-inverse points carry coefficients mod 2.
using MinusDivisor = FormalDivisor;

MinusDivisor canonicalize_minus(const FormalDivisor& d);
// Image in Z[E]^- tensor Q: drops the self-inverse (2-torsion) terms.
MinusDivisor project_mod_two_torsion(const MinusDivisor& d);

// (f) <> (g) = sum m_i n_j (S_i - T_j), canonicalized. Warns through `warn`
// when a divisor does not have degree 0.
MinusDivisor diamond(const FormalDivisor& f, const FormalDivisor& g,
                     std::string* warning = nullptr);

struct DivisorCatalog {
  Family family;
  GroupPtr group;
  // Divisors of rational functions on the model, keyed like family_functions.
  std::vector<std::pair<std::string, FormalDivisor>> divisors;
  // Stated diamond results.
  std::vector<std::pair<std::string, FormalDivisor>> statements;

  const FormalDivisor& divisor(std::string_view name) const;
  const FormalDivisor& statement(std::string_view name) const;
};

DivisorCatalog family_divisor_catalog(Family f);

struct PointOrderCheck {
  std::string point;
  ComplexPoint location;
  long long claimed = 0;
  double measured = 0.0;
  bool ok = false;
};

struct DivisorCheck {
  std::vector<PointOrderCheck> points;
  long long degree = 0;
  double abel_jacobi_residual = 0.0;
  bool pass = false;
};

// Checks a claimed divisor of f numerically: local orders at every support
// point, degree zero, and the Abel-Jacobi sum vanishing modulo the lattice.
DivisorCheck verify_claimed_divisor(const RealCurve& curve, const ModelFunction& f,
                                    const FormalDivisor& claimed,
                                    const std::map<std::string, ComplexPoint>& generators);

// Numeric point for a word; throws UnresolvedPoint when a generator is missing.
ComplexPoint evaluate_word(const RealCurve& curve, const PointGroup& group, const Word& w,
                           const std::map<std::string, ComplexPoint>& generators);

enum class DerivationChain { SFamily, QRFamilies };

struct DerivationStep {
  std::string name;
  std::string computed;
  std::string stated;
  bool exact_match = false;     // equal in Z[E]^- (or Z[E] for divisors)
  bool rational_match = false;  // equal in Z[E]^- tensor Q
  std::string two_torsion_residue;  // computed - stated, when only 2-torsion differs
  bool pass = false;
};

struct DerivationReport {
  std::string chain;
  std::vector<DerivationStep> steps;
  bool pass = false;
  std::string first_failure;

  std::string to_json() const;
};

DerivationReport derive_equivalence(DerivationChain chain);

}  // namespace regulab
