#include "coklab/qpochhammer.hpp"

#include <stdexcept>

namespace coklab {

Rational qpoch_finite(const Rational& a, const Rational& q, unsigned n) {
    Rational prod = 1, aq = a;
    for (unsigned i = 0; i < n; ++i) {
        prod *= (1 - aq);
        aq *= q;
    }
    return prod;
}

Bounded qpoch_inf(const Rational& a, const Rational& q, double tol) {
    if (q < 0 || q >= 1) throw std::invalid_argument("(a;q)_inf requires 0 <= q < 1");
    if (a < 0 || a >= 1) throw std::invalid_argument("(a;q)_inf requires 0 <= a < 1");
    if (a == 0) return Bounded::exact(Real(1));

    Real qr = to_real(q), ar = to_real(a);
    Real prod = 1, aq = ar;
    unsigned n = 0;
    for (;;) {
        // tail factor T = prod_{i>=n}(1 - a q^i) satisfies
        //   exp(-S/(1-aq^n)) <= T <= exp(-S),  S = a q^n / (1-q)
        Real S = aq / (1 - qr);
        Real lowT = exp(-S / (1 - aq));
        Real highT = exp(-S);
        Real lo = prod * lowT, hi = prod * highT;
        if (hi - lo < tol || n > 100000) {
            if (hi - lo >= tol) throw std::runtime_error("qpoch_inf failed to converge");
            return {lo, hi - lo};
        }
        prod *= (1 - aq);
        aq *= qr;
        ++n;
    }
}

}  // namespace coklab
