#pragma once

#include "coklab/grouptype.hpp"
#include "coklab/numeric.hpp"
#include "coklab/partition.hpp"

#include <cstdint>
#include <vector>

namespace coklab::pgroup {

/// Gaussian binomial [n choose k]_p, exact.
Int gaussian_binomial(uint64_t p, uint32_t n, uint32_t k);

/// #Aut(G_la).
Int aut_count(uint64_t p, const Partition& la);

/// #Hom(G_mu, G_la) = p^{sum_i mu'_i la'_i}; symmetric in (mu, la).
Int hom_count(uint64_t p, const Partition& mu, const Partition& la);

/// Number of subgroups of G_la of type mu; 0 unless mu'_i <= la'_i for all i.
Int subgroup_type_count(uint64_t p, const Partition& mu, const Partition& la);

/// #Sur(G_la, G_mu); 0 unless mu_i <= la_i for all i.
Int sur_count(uint64_t p, const Partition& la, const Partition& mu);

/// #Inj(G_mu, G_la) = #Sur(G_la, G_mu).
inline Int inj_count(uint64_t p, const Partition& mu, const Partition& la) {
    return sur_count(p, la, mu);
}

/// Types of subgroups of G_la (mu with mu' contained in la'), graded order.
std::vector<Partition> subgroup_types(const Partition& la);

/// n_k(G_la): chains 0 = H_0 <= ... <= H_k = G_la.  n_0 is 1 only for the
/// trivial group.
Int chain_count_nk_p(uint64_t p, const Partition& la, unsigned k);

/// n_k(G) over all primes of the support (product over primes).
Int chain_count_nk(const GroupType& g, unsigned k);

/// #Sur over the full support of both types (product over primes).
Int sur_count_multi(const GroupType& from, const GroupType& onto);
Int aut_count_multi(const GroupType& g);

}  // namespace coklab::pgroup
