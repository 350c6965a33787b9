#pragma once

#include <map>
#include <string>

#include "regulab/divisors.hpp"

namespace regulab {

// Generators of a point group placed on C / (Z + tau Z) through the
// elliptic logarithm normalized by the real period.
struct DivisorEmbedding {
  PeriodLattice lattice;
  std::map<std::string, cplx> normalized_log;  // u / omega1 per generator

  cplx log_of(const PointGroup& g, const Word& w) const;  // throws UnresolvedPoint
};

DivisorEmbedding embed_generators(const RealCurve& curve,
                                  const std::map<std::string, ComplexPoint>& generators);

// Linear extension of the elliptic dilogarithm to divisors.
double elliptic_dilog_divisor(const DivisorEmbedding& e, const FormalDivisor& d,
                              const Tolerance& tol = {});

}  // namespace regulab
