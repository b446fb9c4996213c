#pragma once

#include "coklab/numeric.hpp"

namespace coklab {

/// (a;q)_n = prod_{i=0}^{n-1} (1 - a q^i), exact.
Rational qpoch_finite(const Rational& a, const Rational& q, unsigned n);

/// (a;q)_infinity for 0 <= a < 1, 0 <= q < 1, with a certified enclosure of
/// width below `tol`.  The true value lies in [value, value + bound].
Bounded qpoch_inf(const Rational& a, const Rational& q, double tol = 1e-18);

/// (q;q)_infinity, the normalization appearing in every limit law.
inline Bounded qq_inf(const Rational& q, double tol = 1e-18) { return qpoch_inf(q, q, tol); }

}  // namespace coklab
