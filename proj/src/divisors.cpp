#include "regulab/divisors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <json.hpp>
#include <sstream>

namespace regulab {

PointGroup::PointGroup(std::vector<Generator> gens) : gens_(std::move(gens)) {
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].name.empty() || !std::isalpha(static_cast<unsigned char>(gens_[i].name[0])) ||
        gens_[i].name == "O")
      throw DomainError("invalid generator name '" + gens_[i].name + "'");
    if (gens_[i].order < 0) throw DomainError("generator order must be >= 0");
    for (std::size_t j = 0; j < i; ++j)
      if (gens_[j].name == gens_[i].name) throw DomainError("duplicate generator " + gens_[i].name);
  }
}

int PointGroup::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == name) return static_cast<int>(i);
  return -1;
}

Word PointGroup::generator_word(std::string_view name) const {
  int i = index_of(name);
  if (i < 0) throw DomainError("unknown generator '" + std::string(name) + "'");
  Word w = identity();
  w[i] = 1;
  return reduce(w);
}

Word PointGroup::reduce(Word w) const {
  if (w.size() != gens_.size()) throw DomainError("word length does not match the group rank");
  for (std::size_t i = 0; i < w.size(); ++i) {
    int n = gens_[i].order;
    if (n > 0) w[i] = ((w[i] % n) + n) % n;
  }
  return w;
}

Word PointGroup::add(const Word& a, const Word& b) const {
  Word w(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) w[i] = a[i] + b[i];
  return reduce(w);
}

Word PointGroup::negate(const Word& a) const {
  Word w(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) w[i] = -a[i];
  return reduce(w);
}

bool PointGroup::is_identity(const Word& w) const { return reduce(w) == identity(); }

bool PointGroup::self_inverse(const Word& w) const { return reduce(w) == negate(w); }

Word PointGroup::symmetric(const Word& w) const {
  Word s = reduce(w);
  for (std::size_t i = 0; i < s.size(); ++i) {
    int n = gens_[i].order;
    if (n > 0 && 2 * s[i] > n) s[i] -= n;
  }
  return s;
}

std::string PointGroup::format(const Word& w) const {
  Word s = symmetric(w);
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    long long c = s[i];
    if (c == 0) continue;
    if (c < 0) out += "-";
    else if (!out.empty()) out += "+";
    if (std::llabs(c) != 1) out += std::to_string(std::llabs(c));
    out += gens_[i].name;
  }
  return out.empty() ? "O" : out;
}

namespace {

std::string strip(std::string_view text) {
  std::string s;
  for (std::size_t i = 0; i < text.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    // U+2212 minus sign.
    if (c == 0xE2 && i + 2 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x88 &&
        static_cast<unsigned char>(text[i + 2]) == 0x92) {
      s += '-';
      i += 2;
      continue;
    }
    if (!std::isspace(c)) s += static_cast<char>(c);
  }
  return s;
}

}  // namespace

Word PointGroup::parse_point(std::string_view text) const {
  std::string s = strip(text);
  if (s.empty()) throw DomainError("empty point expression");
  if (s == "O") return identity();
  Word w = identity();
  std::size_t i = 0;
  bool first = true;
  while (i < s.size()) {
    long long sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      throw DomainError("expected '+' or '-' in point expression '" + s + "'");
    }
    long long k = 1;
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) k = std::stoll(s.substr(i, j - i));
    i = j;
    while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
    if (j == i) throw DomainError("expected a generator name in '" + s + "'");
    std::string name = s.substr(i, j - i);
    if (name != "O") {
      int idx = index_of(name);
      if (idx < 0) throw DomainError("unknown generator '" + name + "' in '" + s + "'");
      w[idx] += sign * k;
    }
    i = j;
    first = false;
  }
  return reduce(w);
}

bool PointGroup::operator==(const PointGroup& o) const {
  if (gens_.size() != o.gens_.size()) return false;
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name != o.gens_[i].name || gens_[i].order != o.gens_[i].order) return false;
  return true;
}

FormalDivisor FormalDivisor::point(GroupPtr g, const Word& w, long long c) {
  FormalDivisor d(g);
  d.add_term(w, c);
  return d;
}

FormalDivisor FormalDivisor::parse(GroupPtr g, std::string_view text) {
  std::string s = strip(text);
  FormalDivisor d(g);
  if (s.empty() || s == "0") return d;
  std::size_t i = 0;
  bool first = true;
  while (i < s.size()) {
    long long sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      throw DomainError("expected '+' or '-' in divisor '" + s + "'");
    }
    long long k = 1;
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) k = std::stoll(s.substr(i, j - i));
    i = j;
    if (i >= s.size()) throw DomainError("divisor '" + s + "' ends early");
    Word w;
    if (s[i] == 'O') {
      w = g->identity();
      ++i;
    } else if (s[i] == '(') {
      std::size_t close = s.find(')', i);
      if (close == std::string::npos) throw DomainError("unbalanced parenthesis in '" + s + "'");
      w = g->parse_point(s.substr(i + 1, close - i - 1));
      i = close + 1;
    } else {
      throw DomainError("expected '(' or 'O' in divisor '" + s + "'");
    }
    d.add_term(w, sign * k);
    first = false;
  }
  return d;
}

long long FormalDivisor::coefficient(const Word& w) const {
  auto it = terms_.find(group_->reduce(w));
  return it == terms_.end() ? 0 : it->second;
}

long long FormalDivisor::degree() const {
  long long d = 0;
  for (auto& [w, c] : terms_) d += c;
  return d;
}

long long FormalDivisor::weight() const {
  long long d = 0;
  for (auto& [w, c] : terms_) d += std::llabs(c);
  return d;
}

void FormalDivisor::add_term(const Word& w, long long c) {
  if (c == 0) return;
  Word r = group_->reduce(w);
  long long& v = terms_[r];
  v += c;
  if (v == 0) terms_.erase(r);
}

void FormalDivisor::require_same_group(const FormalDivisor& o) const {
  if (group_ != o.group_ && !(*group_ == *o.group_))
    throw DomainError("divisors live on different point groups");
}

FormalDivisor FormalDivisor::operator+(const FormalDivisor& o) const {
  require_same_group(o);
  FormalDivisor r = *this;
  for (auto& [w, c] : o.terms_) r.add_term(w, c);
  return r;
}

FormalDivisor FormalDivisor::operator-(const FormalDivisor& o) const { return *this + (-o); }

FormalDivisor FormalDivisor::operator-() const { return scaled(-1); }

FormalDivisor FormalDivisor::scaled(long long k) const {
  FormalDivisor r(group_);
  for (auto& [w, c] : terms_) r.add_term(w, k * c);
  return r;
}

bool FormalDivisor::operator==(const FormalDivisor& o) const {
  require_same_group(o);
  return terms_ == o.terms_;
}

FormalDivisor FormalDivisor::transport(GroupPtr target) const {
  std::vector<int> map(group_->rank());
  for (std::size_t i = 0; i < group_->rank(); ++i) {
    const auto& g = group_->generators()[i];
    int j = target->index_of(g.name);
    if (j < 0 || target->generators()[j].order != g.order)
      throw DomainError("generator " + g.name + " has no counterpart in the target group");
    map[i] = j;
  }
  FormalDivisor r(target);
  for (auto& [w, c] : terms_) {
    Word t = target->identity();
    for (std::size_t i = 0; i < w.size(); ++i) t[map[i]] = w[i];
    r.add_term(t, c);
  }
  return r;
}

std::string FormalDivisor::to_string() const {
  if (terms_.empty()) return "0";
  // Stable order: by symmetric coefficient vector, largest first.
  std::vector<std::pair<Word, long long>> items;
  for (auto& [w, c] : terms_) items.emplace_back(group_->symmetric(w), c);
  std::sort(items.begin(), items.end(), [](auto& a, auto& b) { return a.first > b.first; });
  std::string out;
  for (auto& [w, c] : items) {
    if (c < 0) out += "-";
    else if (!out.empty()) out += "+";
    if (std::llabs(c) != 1) out += std::to_string(std::llabs(c));
    std::string p = group_->format(w);
    out += p == "O" ? "O" : "(" + p + ")";
  }
  return out;
}

MinusDivisor canonicalize_minus(const FormalDivisor& d) {
  const PointGroup& g = *d.group();
  FormalDivisor r(d.group());
  for (auto& [w, c] : d.terms()) {
    if (g.self_inverse(w)) {
      r.add_term(w, c);
      continue;
    }
    Word neg = g.negate(w);
    if (g.symmetric(w) > g.symmetric(neg)) r.add_term(w, c);
    else r.add_term(neg, -c);
  }
  FormalDivisor out(d.group());
  for (auto& [w, c] : r.terms()) {
    if (g.self_inverse(w)) out.add_term(w, ((c % 2) + 2) % 2);
    else out.add_term(w, c);
  }
  return out;
}

MinusDivisor project_mod_two_torsion(const MinusDivisor& d) {
  FormalDivisor out(d.group());
  for (auto& [w, c] : d.terms())
    if (!d.group()->self_inverse(w)) out.add_term(w, c);
  return out;
}

MinusDivisor diamond(const FormalDivisor& f, const FormalDivisor& g, std::string* warning) {
  if (f.group() != g.group() && !(*f.group() == *g.group()))
    throw DomainError("diamond of divisors on different point groups");
  if (warning != nullptr) {
    warning->clear();
    if (f.degree() != 0 || g.degree() != 0) *warning = "diamond of divisors not of degree 0";
  }
  const PointGroup& grp = *f.group();
  FormalDivisor r(f.group());
  for (auto& [s, m] : f.terms())
    for (auto& [t, n] : g.terms()) r.add_term(grp.subtract(s, t), m * n);
  return canonicalize_minus(r);
}

const FormalDivisor& DivisorCatalog::divisor(std::string_view name) const {
  for (auto& [k, d] : divisors)
    if (k == name) return d;
  throw DomainError("catalog has no divisor named '" + std::string(name) + "'");
}

const FormalDivisor& DivisorCatalog::statement(std::string_view name) const {
  for (auto& [k, d] : statements)
    if (k == name) return d;
  throw DomainError("catalog has no statement named '" + std::string(name) + "'");
}

DivisorCatalog family_divisor_catalog(Family f) {
  using Entries = std::vector<std::pair<std::string, std::string>>;
  GroupPtr g;
  Entries divs, stated;
  switch (f) {
    case Family::P:
      g = std::make_shared<PointGroup>(std::vector<PointGroup::Generator>{{"P", 6}});
      divs = {{"X-Y", "(P)+(2P)+(3P)-3O"},
              {"X-alpha", "(P)+(5P)-2O"},
              {"Y+(alpha-1)X+alpha", "(3P)+(4P)+(5P)-3O"},
              {"x", "(2P)+(3P)-(5P)-O"},
              {"y", "-(P)+(3P)+(4P)-O"}};
      stated = {{"(x)<>(y)", "-6(P)-6(2P)"}};
      break;
    case Family::S:
      g = std::make_shared<PointGroup>(std::vector<PointGroup::Generator>{{"P", 6}, {"U", 0}, {"V", 0}});
      divs = {{"X-alpha", "(P)+(5P)-2O"},
              {"(alpha^2-alpha)Y+2XY-(alpha+3)X^2+2alphaX", "2(P)+(2P)+(V)+(2P-V)-5O"},
              {"a_numerator", "5(P)+(U)+(P-U)-7O"},
              {"a", "2(P)+(U)+(P-U)-(5P)-(2P)-(V)-(2P-V)"},
              {"b", "2(5P)-(2P)-(V)-(2P-V)+O"},
              {"X+alpha", "(V-P)+(P-V)-2O"},
              {"alphaX+2Y+alpha^2", "(5P)+(U)+(P-U)-3O"},
              {"Y", "3(2P)-3O"},
              {"steinberg_f", "(V-P)+(P-V)+O-3(2P)"},
              {"steinberg_g", "(5P)+(U)+(P-U)-3(2P)"}};
      stated = {{"-(x1)<>(y1)",
                 "5(P)+3(2P)+(U)+(P-U)+3(P+U)+3(2P-U)+(V-U)+(2P-U-V)+(U+V-P)+(U-V+P)-(V)-(2P-V)"
                 "-3(V+P)+3(V+3P)"},
                {"steinberg",
                 "(P)+3(2P)-(U)-(P-U)-3(P+U)-3(2P-U)-(V-U)-(2P-U-V)-(U+V-P)-(U-V+P)+(V)+(2P-V)"
                 "+3(V+P)-3(V+3P)"},
                {"(x1)<>(y1)", "-6(P)-6(2P)"}};
      break;
    case Family::Q:
      g = std::make_shared<PointGroup>(std::vector<PointGroup::Generator>{{"P", 2}, {"S", 0}, {"T", 0}});
      divs = {{"W-alphaZ", "(S)+(P-S)+(P)-3O"},
              {"W+alphaZ", "(-S)+(P+S)+(P)-3O"},
              {"3Z+4(alpha^2-9)", "(T)+(-T)-2O"},
              {"a", "(S)+(P-S)-(-S)-(P+S)"},
              {"b", "(T)+(-T)+O-(-S)-(P+S)-(P)"}};
      stated = {{"(a)<>(b)", "2(S-T)+2(S+T)-2(P+S+T)-2(P+S-T)+4(S)-4(P+S)"},
                {"-(x2)<>(y2)", "2(S-T)+2(S+T)-2(P+S+T)-2(P+S-T)+4(S)-4(P+S)"}};
      break;
    case Family::R:
      g = std::make_shared<PointGroup>(
          std::vector<PointGroup::Generator>{{"P", 2}, {"S", 0}, {"T", 0}, {"A", 2}});
      divs = {{"W", "(P)+(A)+(A+P)-3O"},
              {"Z-4(beta+1)", "(S)+(-S)-2O"},
              {"3Z+4(beta-5)(beta+1)", "(T)+(-T)-2O"},
              {"a_numerator", "3(S)+(P-S)+(P-2S)-5O"},
              {"a", "2(S)+(P-S)+(P-2S)-(P)-(A)-(A+P)-(-S)"},
              {"b", "(T)+(-T)+O-(P)-(A)-(A+P)"},
              {"W-3Z-4(beta-5)(beta+1)", "(S)+(P+S)+(P-2S)-3O"},
              {"steinberg_f", "(S)+(P+S)+(P-2S)-(P)-(A)-(A+P)"},
              {"steinberg_g", "(T)+(-T)+O-(P)-(A)-(A+P)"}};
      stated = {{"-(x3)<>(y3)",
                 "3(S-T)+3(S+T)+4(S)-4(P+S)-(P+S+T)-(P+S-T)+(2S)-(P+2S)-(P+2S+T)+(P-2S+T)-2(S+A)"
                 "+(2S+A)-2(S+A+P)+(2S+A+P)"},
                {"steinberg",
                 "(S-T)+(S+T)+(P+S+T)+(P+S-T)+(P-2S+T)+(P-2S-T)+(2S)-(P+2S)-2(S+A)-2(S+A+P)"
                 "+(2S+A)+(2S+A+P)"}};
      break;
  }
  DivisorCatalog cat{f, g, {}, {}};
  for (auto& [k, v] : divs) cat.divisors.emplace_back(k, FormalDivisor::parse(g, v));
  for (auto& [k, v] : stated) cat.statements.emplace_back(k, FormalDivisor::parse(g, v));
  return cat;
}

ComplexPoint evaluate_word(const RealCurve& curve, const PointGroup& group, const Word& w,
                           const std::map<std::string, ComplexPoint>& generators) {
  Word s = group.symmetric(w);
  ComplexPoint acc = ComplexPoint::at_infinity();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == 0) continue;
    auto it = generators.find(group.generators()[i].name);
    if (it == generators.end()) throw UnresolvedPoint(group.format(w));
    acc = group_op(curve, acc, multiply(curve, s[i], it->second));
  }
  return acc;
}

namespace {

// Y on the branch through (x0, y0) for X near x0.
cplx follow_y(const RealCurve& c, cplx x, cplx y0) {
  auto r = solve_quadratic_stable(1.0, c.a1 * x + c.a3, -(x * x * x + c.a2 * x * x + c.a4 * x + c.a6));
  return std::abs(r[0] - y0) <= std::abs(r[1] - y0) ? r[0] : r[1];
}

// X near x0 with (X, y) on the curve, by Newton.
cplx follow_x(const RealCurve& c, cplx y, cplx x0) {
  cplx x = x0;
  for (int it = 0; it < 50; ++it) {
    cplx F = y * y + c.a1 * x * y + c.a3 * y - (x * x * x + c.a2 * x * x + c.a4 * x + c.a6);
    cplx dF = c.a1 * y - (3.0 * x * x + 2.0 * c.a2 * x + c.a4);
    cplx step = F / dF;
    x -= step;
    if (std::abs(step) < 1e-15 * (1 + std::abs(x))) break;
  }
  return x;
}

// Point on a loop at angle theta; `state` carries the coordinate that is
// continued from the previous sample.
using LoopPoint = std::function<std::array<cplx, 2>(double theta, cplx& state)>;

// Winding number of f around 0 along a loop, theta in [0, 2 pi * turns].
// Refines the sampling until every step of arg f is small.
double winding(const ModelFunction& f, const LoopPoint& at, cplx start, double turns) {
  for (int n = 256; n <= 65536; n *= 2) {
    int steps = static_cast<int>(n * turns);
    cplx state = start;
    auto p = at(0.0, state);
    cplx prev = f(p[0], p[1]);
    bool ok = std::abs(prev) > 0 && std::isfinite(std::abs(prev));
    double total = 0.0;
    for (int k = 1; k <= steps && ok; ++k) {
      p = at(2.0 * kPi * turns * k / steps, state);
      cplx v = f(p[0], p[1]);
      double d = std::arg(v / prev);
      ok = std::abs(v) > 0 && std::isfinite(std::abs(v)) && std::abs(d) <= 0.5;
      total += d;
      prev = v;
    }
    if (ok) return total / (2.0 * kPi);
  }
  throw InconclusiveOrder("argument of f could not be tracked around the point");
}

// Order of f at q by the argument principle on a loop in a local coordinate:
// X - X(q) at ordinary points, Y - Y(q) at 2-torsion points, and X run twice
// around a large circle at O (X/Y is the uniformizer there, and t ~ X^(-1/2)).
double measure_order(const RealCurve& c, const ModelFunction& f, const ComplexPoint& q,
                     double separation, double outer_radius, const std::array<cplx, 3>& roots) {
  if (q.infinity) {
    LoopPoint at = [&](double th, cplx& y) {
      cplx X = std::polar(outer_radius, th);
      y = follow_y(c, X, y);
      return std::array<cplx, 2>{X, y};
    };
    cplx X0 = outer_radius;
    return -winding(f, at, follow_y(c, X0, std::pow(X0, 1.5)), 2.0);
  }
  double scale = 1.0 + std::abs(q.x);
  double branch = 1e300;
  for (cplx e : roots) {
    double d = std::abs(q.x - e);
    if (d > 1e-7 * scale) branch = std::min(branch, d);
  }
  if (std::abs(eta(c, q)) < 1e-7 * std::pow(scale, 1.5)) {
    double r = std::min({0.05 * (1.0 + std::abs(q.y)), 0.3 * separation, 0.3 * branch});
    LoopPoint at = [&](double th, cplx& x) {
      cplx Y = q.y + std::polar(r, th);
      x = follow_x(c, Y, x);
      return std::array<cplx, 2>{x, Y};
    };
    return winding(f, at, q.x, 1.0);
  }
  double r = std::min({0.05 * scale, 0.3 * separation, 0.3 * branch});
  LoopPoint at = [&](double th, cplx& y) {
    cplx X = q.x + std::polar(r, th);
    y = follow_y(c, X, y);
    return std::array<cplx, 2>{X, y};
  };
  return winding(f, at, q.y, 1.0);
}

}  // namespace

DivisorCheck verify_claimed_divisor(const RealCurve& curve, const ModelFunction& f,
                                    const FormalDivisor& claimed,
                                    const std::map<std::string, ComplexPoint>& generators) {
  const PointGroup& g = *claimed.group();
  DivisorCheck out;
  out.degree = claimed.degree();
  // Locate support points, merging those that coincide numerically.
  struct Site { std::string name; ComplexPoint p; long long mult; };
  std::vector<Site> sites;
  for (auto& [w, c] : claimed.terms()) {
    ComplexPoint p = evaluate_word(curve, g, w, generators);
    bool merged = false;
    for (auto& s : sites) {
      if (points_close(s.p, p, 1e-7)) {
        s.mult += c;
        s.name += "=" + g.format(w);
        merged = true;
        break;
      }
    }
    if (!merged) sites.push_back({g.format(w), p, c});
  }
  PeriodLattice L = period_lattice(curve);
  double outer = 1.0;
  for (auto& s : sites)
    if (!s.p.infinity) outer = std::max(outer, std::abs(s.p.x));
  for (cplx e : L.roots) outer = std::max(outer, std::abs(e));
  outer *= 10.0;
  cplx aj = 0.0;
  bool orders_ok = true;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    double sep = 1e300;
    for (std::size_t j = 0; j < sites.size(); ++j) {
      if (i == j || sites[i].p.infinity || sites[j].p.infinity) continue;
      double d = std::abs(sites[i].p.x - sites[j].p.x);
      if (d > 1e-9) sep = std::min(sep, d);
    }
    double k = measure_order(curve, f, sites[i].p, sep, outer, L.roots);
    if (std::abs(k - std::round(k)) > 0.1)
      throw InconclusiveOrder("non-integral local order " + std::to_string(k) + " at " + sites[i].name);
    PointOrderCheck pc{sites[i].name, sites[i].p, sites[i].mult, k,
                       std::llround(k) == sites[i].mult};
    orders_ok = orders_ok && pc.ok;
    out.points.push_back(pc);
    aj += static_cast<double>(sites[i].mult) * elliptic_log(curve, L, sites[i].p);
  }
  out.abel_jacobi_residual = L.distance_to_lattice(aj);
  out.pass = orders_ok && out.degree == 0 && out.abel_jacobi_residual < 1e-7;
  return out;
}

namespace {

DerivationStep compare_divisors(std::string name, const FormalDivisor& computed,
                                const FormalDivisor& stated) {
  DerivationStep s;
  s.name = std::move(name);
  s.computed = computed.to_string();
  s.stated = stated.to_string();
  s.exact_match = computed == stated;
  s.rational_match = s.exact_match;
  s.pass = s.exact_match;
  return s;
}

DerivationStep compare_minus(std::string name, const FormalDivisor& computed,
                             const FormalDivisor& stated) {
  MinusDivisor c = canonicalize_minus(computed), t = canonicalize_minus(stated);
  DerivationStep s;
  s.name = std::move(name);
  s.computed = c.to_string();
  s.stated = t.to_string();
  s.exact_match = c == t;
  MinusDivisor diff = canonicalize_minus(c - t);
  s.rational_match = project_mod_two_torsion(diff).empty();
  if (!s.exact_match && s.rational_match) s.two_torsion_residue = diff.to_string();
  s.pass = s.rational_match;
  return s;
}

}  // namespace

std::string DerivationReport::to_json() const {
  nlohmann::json j;
  j["chain"] = chain;
  j["pass"] = pass;
  j["first_failure"] = first_failure;
  j["steps"] = nlohmann::json::array();
  for (auto& s : steps) {
    j["steps"].push_back({{"name", s.name},
                          {"computed", s.computed},
                          {"stated", s.stated},
                          {"exact_match", s.exact_match},
                          {"rational_match", s.rational_match},
                          {"two_torsion_residue", s.two_torsion_residue},
                          {"pass", s.pass}});
  }
  return j.dump(2);
}

DerivationReport derive_equivalence(DerivationChain chain) {
  DerivationReport r;
  auto& st = r.steps;
  if (chain == DerivationChain::SFamily) {
    r.chain = "S";
    DivisorCatalog p = family_divisor_catalog(Family::P);
    DivisorCatalog s = family_divisor_catalog(Family::S);
    FormalDivisor x = p.divisor("X-Y") - p.divisor("X-alpha");
    FormalDivisor y = p.divisor("Y+(alpha-1)X+alpha") - p.divisor("X-alpha");
    st.push_back(compare_divisors("(x) from its numerator and denominator", x, p.divisor("x")));
    st.push_back(compare_divisors("(y) from its numerator and denominator", y, p.divisor("y")));
    MinusDivisor xy = diamond(x, y);
    st.push_back(compare_minus("(x)<>(y)", xy, p.statement("(x)<>(y)")));
    const FormalDivisor& den = s.divisor("(alpha^2-alpha)Y+2XY-(alpha+3)X^2+2alphaX");
    FormalDivisor a = s.divisor("a_numerator") - s.divisor("X-alpha") - den;
    FormalDivisor b = s.divisor("X-alpha").scaled(2) - den;
    st.push_back(compare_divisors("(a) from its numerator and denominator", a, s.divisor("a")));
    st.push_back(compare_divisors("(b) from its numerator and denominator", b, s.divisor("b")));
    MinusDivisor ab = diamond(a, b);
    st.push_back(compare_minus("(a)<>(b) = -(x1)<>(y1)", ab, s.statement("-(x1)<>(y1)")));
    FormalDivisor f = s.divisor("X+alpha") - s.divisor("Y");
    FormalDivisor g = s.divisor("alphaX+2Y+alpha^2") - s.divisor("Y");
    st.push_back(compare_divisors("Steinberg f divisor", f, s.divisor("steinberg_f")));
    st.push_back(compare_divisors("Steinberg g divisor", g, s.divisor("steinberg_g")));
    MinusDivisor stb = diamond(f, g);
    st.push_back(compare_minus("Steinberg diamond (f)<>(1-f)", stb, s.statement("steinberg")));
    MinusDivisor x1y1 = canonicalize_minus(-ab - stb);
    st.push_back(compare_minus("(x1)<>(y1) = -(a)<>(b) - Steinberg", x1y1, s.statement("(x1)<>(y1)")));
    st.push_back(compare_minus("(x1)<>(y1) ~ (x)<>(y)", x1y1, xy.transport(s.group)));
  } else {
    r.chain = "QR";
    DivisorCatalog q = family_divisor_catalog(Family::Q);
    DivisorCatalog rr = family_divisor_catalog(Family::R);
    FormalDivisor a2 = q.divisor("W-alphaZ") - q.divisor("W+alphaZ");
    FormalDivisor b2 = q.divisor("3Z+4(alpha^2-9)") - q.divisor("W+alphaZ");
    st.push_back(compare_divisors("(a) on F_alpha", a2, q.divisor("a")));
    st.push_back(compare_divisors("(b) on F_alpha", b2, q.divisor("b")));
    MinusDivisor ab2 = diamond(a2, b2);
    st.push_back(compare_minus("(a)<>(b) = -(x2)<>(y2)", ab2, q.statement("-(x2)<>(y2)")));
    FormalDivisor a3 = rr.divisor("a_numerator") - rr.divisor("W") - rr.divisor("Z-4(beta+1)");
    FormalDivisor b3 = rr.divisor("3Z+4(beta-5)(beta+1)") - rr.divisor("W");
    st.push_back(compare_divisors("(a) on F_(beta-2)", a3, rr.divisor("a")));
    st.push_back(compare_divisors("(b) on F_(beta-2)", b3, rr.divisor("b")));
    MinusDivisor ab3 = diamond(a3, b3);
    st.push_back(compare_minus("(a)<>(b) = -(x3)<>(y3)", ab3, rr.statement("-(x3)<>(y3)")));
    FormalDivisor f = rr.divisor("W-3Z-4(beta-5)(beta+1)") - rr.divisor("W");
    FormalDivisor g = rr.divisor("3Z+4(beta-5)(beta+1)") - rr.divisor("W");
    st.push_back(compare_divisors("Steinberg f divisor", f, rr.divisor("steinberg_f")));
    st.push_back(compare_divisors("Steinberg g divisor", g, rr.divisor("steinberg_g")));
    MinusDivisor stb = diamond(f, g);
    st.push_back(compare_minus("Steinberg diamond (f)<>(1-f)", stb, rr.statement("steinberg")));
    st.push_back(compare_minus("(x2)<>(y2) ~ (x3)<>(y3)", canonicalize_minus(ab3 - stb),
                               ab2.transport(rr.group)));
  }
  r.pass = true;
  for (auto& s : st) {
    if (!s.pass) {
      r.pass = false;
      r.first_failure = s.name;
      break;
    }
  }
  return r;
}

}  // namespace regulab
