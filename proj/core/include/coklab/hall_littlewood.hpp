#pragma once

#include "coklab/numeric.hpp"
#include "coklab/partition.hpp"

#include <optional>
#include <vector>

namespace coklab::hl {

enum class Kind { P, Q };

/// Specialization of the variable alphabet: either an explicit finite list of
/// nonnegative rationals, or the geometric family t^a, t^{a+1}, ... with each
/// power repeated `multiplicity` times.
struct SpecDescriptor {
    enum class Family { Finite, Geometric };
    Family family = Family::Finite;
    std::vector<Rational> values;
    uint32_t start_exp = 0;
    uint32_t multiplicity = 1;

    static SpecDescriptor finite(std::vector<Rational> v) {
        SpecDescriptor s;
        s.family = Family::Finite;
        s.values = std::move(v);
        return s;
    }
    static SpecDescriptor geometric(uint32_t a, uint32_t mult = 1) {
        SpecDescriptor s;
        s.family = Family::Geometric;
        s.start_exp = a;
        s.multiplicity = mult;
        return s;
    }
};

/// Value of an HL evaluation: exact rational for finite alphabets, else a
/// certified enclosure [value, value+bound].
struct HLValue {
    std::optional<Rational> exact;
    Bounded approx;

    static HLValue from_exact(Rational q) {
        HLValue v;
        v.approx = Bounded::exact(q);
        v.exact = std::move(q);
        return v;
    }
    static HLValue from_bounded(Bounded b) {
        HLValue v;
        v.approx = b;
        return v;
    }
};

/// P_la or Q_la at an explicit variable list, exact.  Skew version via `mu`
/// (zero when mu is not contained in la).
Rational eval(Kind kind, const Partition& la, const Partition& mu,
              const std::vector<Rational>& vars, const Rational& t);

inline Rational eval_p(const Partition& la, const std::vector<Rational>& vars, const Rational& t) {
    return eval(Kind::P, la, Partition{}, vars, t);
}
inline Rational eval_q(const Partition& la, const std::vector<Rational>& vars, const Rational& t) {
    return eval(Kind::Q, la, Partition{}, vars, t);
}

/// Skew principal evaluation at a geometric alphabet, by adaptive truncation:
/// variables are appended until the relative increment drops below tol/10 on
/// two consecutive steps; the reported bound is the final increment times a
/// safety factor of 10 (partial sums are certified lower bounds).
Bounded principal(Kind kind, const Partition& la, const Partition& mu,
                  const SpecDescriptor& spec, const Rational& t, double tol);

/// All skew principal values Q_{la/mu} (or P_{la/mu}) for every mu contained
/// in la, from one backward pass; same truncation policy as principal().
std::vector<std::pair<Partition, Bounded>> principal_all_skew(Kind kind, const Partition& la,
                                                              const SpecDescriptor& spec,
                                                              const Rational& t, double tol);

/// Cauchy kernel Pi_t(A;B) = exp(sum_l (1-t^l)/l p_l(A) p_l(B)).
Bounded cauchy_kernel(const SpecDescriptor& a, const SpecDescriptor& b,
                      const Rational& t, double tol);

/// Probability of la under the k-step product measure:
///   Q_la(1[k],t[k],...) P_la(t,t^2,...) / Pi_t(1,t,...; t[k],t^2[k],...).
Bounded measure_prod(const Partition& la, unsigned k, const Rational& t, double tol);

/// Probability of the tuple (la^(1),...,la^(k)) under the joint measure:
///   prod_j Q_{la^(j)/la^(j-1)}(1,t,...) * P_{la^(k)}(t,t^2,...) / Pi_t^k.
Bounded measure_joint(const std::vector<Partition>& las, const Rational& t, double tol);

/// One-variable branching coefficients (valid when nu interlaces mu from
/// below); exposed for tests.
Rational psi_coefficient(const Partition& mu, const Partition& nu, const Rational& t);
Rational phi_coefficient(const Partition& mu, const Partition& nu, const Rational& t);

}  // namespace coklab::hl
