#pragma once

#include "coklab/concrete_group.hpp"
#include "coklab/numeric.hpp"
#include "coklab/partition.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace coklab::seq {

/// Homomorphism G_src -> G_tgt as a generator-image matrix: column j is the
/// image of the j-th standard generator, with row i reduced mod p^{tgt_i}.
struct HomMatrix {
    uint32_t rows = 0;  // len(tgt)
    uint32_t cols = 0;  // len(src)
    std::vector<uint32_t> entries;  // row-major

    uint32_t at(uint32_t i, uint32_t j) const { return entries[std::size_t{i} * cols + j]; }
    uint32_t& at(uint32_t i, uint32_t j) { return entries[std::size_t{i} * cols + j]; }
    bool operator==(const HomMatrix&) const = default;
    auto operator<=>(const HomMatrix&) const = default;
};

bool is_well_defined(uint64_t p, const Partition& src, const Partition& tgt, const HomMatrix& m);
bool is_surjective(uint64_t p, const Partition& src, const Partition& tgt, const HomMatrix& m);

/// a after b (a compose b): src(b) -> tgt(a); requires tgt(b) == src(a).
HomMatrix compose(uint64_t p, const Partition& src_b, const Partition& mid,
                  const Partition& tgt_a, const HomMatrix& a, const HomMatrix& b);

HomMatrix identity_hom(const Partition& la);

/// Evaluate the map on an element index of the source group.
uint32_t apply_hom(const HomMatrix& m, const DenseGroup& src, const DenseGroup& tgt, uint32_t x);

/// Kernel of the map as a subset of the source group.
ElementSet kernel_set(const HomMatrix& m, const DenseGroup& src, const DenseGroup& tgt);

/// All surjections G_la -> G_mu (empty when none exist).
std::vector<HomMatrix> all_surjections(uint64_t p, const Partition& la, const Partition& mu);

/// All automorphisms of G_la, cached per (p, la).
const std::vector<HomMatrix>& automorphism_list(uint64_t p, const Partition& la);

/// A small generating set of Aut(G_la): transvections between generators plus
/// unit scalings.
std::vector<HomMatrix> automorphism_generators(uint64_t p, const Partition& la);

/// A k-sequence of surjections G_k ->> ... ->> G_1.  types run from the top
/// group down: types[0] = la^(k); maps[t] : G(types[t]) -> G(types[t+1]).
struct SurjectionChain {
    uint64_t p = 2;
    std::vector<Partition> types;
    std::vector<HomMatrix> maps;

    bool operator==(const SurjectionChain&) const = default;
    auto operator<=>(const SurjectionChain&) const = default;
};

/// Every chain with the given types (big to small), enumeration order fixed.
/// Throws BoundExceeded when prod #Sur exceeds chain_bound.
std::vector<SurjectionChain> enumerate_chains(uint64_t p, const std::vector<Partition>& types,
                                              std::size_t chain_bound = 1000000);

struct SeqClass {
    // representative is the enumeration-first chain of the orbit; there is no
    // canonical choice, so it may change across versions
    SurjectionChain representative;
    Int size;
    Int aut_count;  // automorphisms of the sequence (stabilizer order)
};

std::vector<SeqClass> classify(uint64_t p, const std::vector<Partition>& types,
                               std::size_t chain_bound = 1000000);

bool chains_isomorphic(const SurjectionChain& a, const SurjectionChain& b);

/// (p^{-1};p^{-1})_inf^k / aut_count.
Bounded seq_measure(const SeqClass& cls, uint64_t p, unsigned k, double tol = 1e-15);

struct MarginalVerdict {
    Rational class_sum;     // sum over classes of 1/#Aut(sequence)
    Rational product_side;  // prod #Sur(G_{i+1},G_i) / prod #Aut(G_i)
    bool equal = false;
};

/// Exact-rational check of the marginal identity (prefactors cancel).
MarginalVerdict marginal_check(uint64_t p, const std::vector<Partition>& types,
                               std::size_t chain_bound = 1000000);

}  // namespace coklab::seq
