#include "regulab/elliptic_dilog.hpp"

#include <cmath>

namespace regulab {

cplx DivisorEmbedding::log_of(const PointGroup& g, const Word& w) const {
  Word s = g.symmetric(w);
  cplx u = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == 0) continue;
    auto it = normalized_log.find(g.generators()[i].name);
    if (it == normalized_log.end()) throw UnresolvedPoint(g.format(w));
    u += static_cast<double>(s[i]) * it->second;
  }
  return u;
}

DivisorEmbedding embed_generators(const RealCurve& curve,
                                  const std::map<std::string, ComplexPoint>& generators) {
  DivisorEmbedding e{period_lattice(curve), {}};
  for (auto& [name, p] : generators)
    e.normalized_log[name] = e.lattice.normalize(elliptic_log(curve, e.lattice, p));
  return e;
}

double elliptic_dilog_divisor(const DivisorEmbedding& e, const FormalDivisor& d, const Tolerance& tol) {
  const PointGroup& g = *d.group();
  Accumulator sum(tol.accumulation);
  const double scale = std::max<long long>(1, d.weight());
  Tolerance per_term = tol;
  per_term.absolute = tol.absolute / scale;
  for (auto& [w, c] : d.terms()) {
    cplx u = e.lattice.normalize(e.log_of(g, w) * e.lattice.omega1);
    cplx z = std::exp(2.0 * kPi * cplx(0, 1) * u);
    sum.add(static_cast<double>(c) * elliptic_dilog(QPoint(e.lattice.q, z), per_term));
  }
  return sum.sum();
}

}  // namespace regulab
