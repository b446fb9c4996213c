#pragma once

#include "coklab/grouptype.hpp"
#include "coklab/numeric.hpp"
#include "coklab/partition.hpp"
#include "coklab/qpochhammer.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace coklab {

/// P(rank(BA) = n - k0 - d) for fixed B of rank n-k0 and uniform A over F_p.
/// Exact rational; rows sum to 1 over d in [0, n-k0].
Rational rank_step(uint64_t p, uint32_t n, uint32_t prior_corank, uint32_t d);

/// Limiting probability of the corank pattern (r_1,...,r_k) for products of
/// iid matrices over F_p:
///   (q;q)_inf^k prod_i q^{r_i s_i} / ((q;q)_{r_i} (q;q)_{s_i}),  s_i = r_1+...+r_i.
Bounded corank_joint_limit(uint64_t p, const std::vector<uint32_t>& pattern, double tol = 1e-15);

/// Limiting P(cok(M_1...M_k)_P = B) = prod_p (q;q)_inf^k * n_k(B)/#Aut(B).
Bounded cok_prod_limit(const std::set<uint64_t>& primes, unsigned k, const GroupType& b,
                       double tol = 1e-15);

/// Limiting joint law of (cok(M_1...M_j))_P = B_j:
///   prod_p (q;q)_inf^k * prod_i #Sur(B_i, B_{i-1})/#Aut(B_i), B_0 = 0.
Bounded cok_joint_limit(const std::set<uint64_t>& primes, unsigned k,
                        const std::vector<GroupType>& bs, double tol = 1e-15);

enum class TableMode { CokSingle, CokJoint, Corank };

std::string table_mode_name(TableMode mode);
TableMode table_mode_from_name(const std::string& name);

/// Truncation-aware theory table.  Interior cells are exact limit values;
/// everything only observable as "a part hit the truncation level" (or, in
/// corank mode, total corank beyond the cap) pools into one overflow bucket.
struct TheoryTable {
    uint64_t p = 2;
    uint32_t level = 1;   // L; in corank mode doubles as the total-corank cap
    uint32_t k = 1;
    TableMode mode = TableMode::Corank;
    std::vector<std::pair<std::string, Bounded>> cells;
    Bounded overflow;
    double deficit_bound = 0;

    std::string to_json() const;
    static TheoryTable from_json(const std::string& text);
};

TheoryTable theory_table(uint64_t p, uint32_t level, uint32_t k, TableMode mode);

}  // namespace coklab
