#pragma once

#include "coklab/grouptype.hpp"
#include "coklab/numeric.hpp"
#include "coklab/partition.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace coklab {

/// Fixed-capacity bitset over group element indices.
class ElementSet {
public:
    ElementSet() = default;
    explicit ElementSet(uint32_t n) : n_(n), words_((n + 63) / 64, 0) {}

    void set(uint32_t i) { words_[i >> 6] |= uint64_t{1} << (i & 63); }
    bool test(uint32_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    uint32_t count() const;
    uint32_t capacity() const { return n_; }

    ElementSet& operator|=(const ElementSet& o);
    bool operator==(const ElementSet&) const = default;
    bool is_subset_of(const ElementSet& o) const;

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            uint64_t bits = words_[w];
            while (bits) {
                f(static_cast<uint32_t>(w * 64 + std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
    }

    std::size_t hash() const;

private:
    uint32_t n_ = 0;
    std::vector<uint64_t> words_;
};

struct ElementSetHash {
    std::size_t operator()(const ElementSet& s) const { return s.hash(); }
};

/// A finite abelian p-group materialized as a Cayley table.  Elements are
/// indices in [0, order).  Built either from a type (mixed-radix tuples over
/// Z/p^{e_i}), as a direct product, or as a subgroup of another group.
class DenseGroup {
public:
    static DenseGroup from_type(uint64_t p, const Partition& la, std::size_t order_bound);
    static DenseGroup product(const DenseGroup& a, const DenseGroup& b, std::size_t order_bound);
    static DenseGroup subgroup(const DenseGroup& parent, const ElementSet& elems);

    uint64_t prime() const { return p_; }
    uint32_t order() const { return order_; }
    uint32_t add(uint32_t a, uint32_t b) const { return add_[std::size_t{a} * order_ + b]; }
    uint32_t mul_p(uint32_t a) const { return pmul_[a]; }
    uint32_t neg(uint32_t a) const { return neg_[a]; }

    /// Smallest e with p^e * a = 0.
    uint32_t order_exponent(uint32_t a) const;
    uint32_t scalar_mul(uint64_t c, uint32_t a) const;

    /// Isomorphism type of the subset (must be a subgroup).
    Partition type_of(const ElementSet& elems) const;
    Partition type() const;

    /// #{x : p^e x = 0}, for e = 0..max exponent, computed over all elements.
    std::vector<uint32_t> torsion_counts() const;
    std::vector<uint32_t> torsion_counts(const ElementSet& elems) const;

    /// For product groups: first/second component of an element index.
    uint32_t proj1(uint32_t x) const { return x / second_order_; }
    uint32_t proj2(uint32_t x) const { return x % second_order_; }
    uint32_t pair(uint32_t a, uint32_t b) const { return a * second_order_ + b; }

    /// Mixed-radix coordinates; only for groups built by from_type.
    const std::vector<uint32_t>& moduli() const { return moduli_; }
    std::vector<uint32_t> tuple_of(uint32_t x) const;
    uint32_t index_of(const std::vector<uint32_t>& tup) const;
    uint32_t generator(std::size_t i) const;

private:
    DenseGroup() = default;
    void build_tables();

    uint64_t p_ = 2;
    uint32_t order_ = 1;
    uint32_t second_order_ = 1;  // set for products
    std::vector<uint32_t> add_;
    std::vector<uint32_t> pmul_;
    std::vector<uint32_t> neg_;
    // element composition law, defined by the constructor
    std::vector<std::vector<uint32_t>> elem_tuples_;  // from_type: mixed-radix tuples
    std::vector<uint32_t> moduli_;
};

/// Every subgroup, via closure: seed with cyclic subgroups, close under
/// pairwise join, deduplicate by element-set hash.
std::vector<ElementSet> enumerate_subgroups(const DenseGroup& g);

struct CensusRecord {
    uint64_t p = 2;
    Partition type;
    uint32_t order = 1;
    std::vector<std::pair<ElementSet, Partition>> subgroups;
    std::map<Partition, Int> subgroup_type_counts;
    Int aut_count;                    // concrete-lattice route, always present
    std::optional<Int> aut_direct;    // generator-image enumeration when feasible
};

/// Exhaustive census of G_la.  Throws BoundExceeded past order_bound.
CensusRecord brute_census(uint64_t p, const Partition& la,
                          std::size_t order_bound = max_enum_bound());

/// #Hom(G_la, H) from H's torsion counts: generators map independently.
Int census_hom(const Partition& la, const std::vector<uint32_t>& torsion);

/// #Sur(G_la, G_mu) derived purely from concrete censuses (type counts of
/// subgroups of G_mu) and torsion counting; independent of the formula path.
Int census_sur(uint64_t p, const Partition& la, const Partition& mu,
               std::size_t order_bound = max_enum_bound());

/// #Aut and #Sur by direct enumeration of generator-image tuples with a
/// full bijectivity / surjectivity check; requires |target|^len * |G| <= work_bound.
Int direct_aut_count(uint64_t p, const Partition& la, std::size_t work_bound = std::size_t{1} << 26);
Int direct_sur_count(uint64_t p, const Partition& la, const Partition& mu,
                     std::size_t work_bound = std::size_t{1} << 26);

/// Chains 0 = H_0 <= ... <= H_k = G_la counted over the concrete lattice.
Int brute_chain_count(uint64_t p, const Partition& la, unsigned k,
                      std::size_t order_bound = max_enum_bound());

/// m_k(G_1,...,G_k) by explicit subgroup-lattice enumeration (definition
/// of the joint chain count).  Factorizes over primes; throws BoundExceeded
/// naming the offending prime when a per-prime product exceeds order_bound.
Int joint_chain_count_mk(const std::vector<GroupType>& gs,
                         std::size_t order_bound = max_enum_bound());

}  // namespace coklab
