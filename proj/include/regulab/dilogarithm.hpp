#pragma once

#include "regulab/numerics.hpp"

namespace regulab {

// Principal branch of the dilogarithm; on the cut (1, inf) the value is the
// limit from below the real axis.
cplx li2(cplx z);

// Bloch-Wigner function D(z) = Im Li2(z) + arg(1 - z) log|z|.
double bloch_wigner(cplx z);

// max |D| on C, attained at exp(i pi / 3).
inline constexpr double kBlochWignerMax = 1.0149416064096536250;

// A point of C^* / q^Z with 0 < |q| < 1; z is kept in |q| < |z| <= 1.
class QPoint {
 public:
  QPoint(cplx q, cplx z);
  cplx q() const { return q_; }
  cplx z() const { return z_; }

 private:
  cplx q_;
  cplx z_;
};

// Elliptic dilogarithm sum_{n>=0} D(q^n z) - sum_{n>=1} D(q^n / z).
double elliptic_dilog(const QPoint& p, const Tolerance& tol = {});

}  // namespace regulab
