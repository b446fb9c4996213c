#pragma once

#include "coklab/partition.hpp"

#include <cstdint>
#include <vector>

namespace coklab {

/// Square matrix over Z/p^L, entries reduced into [0, p^L).
struct MatrixModPrimePower {
    uint32_t n = 0;
    uint64_t p = 2;
    uint32_t level = 1;
    uint64_t modulus = 2;  // p^level
    std::vector<uint32_t> entries;  // row-major

    static MatrixModPrimePower zero(uint32_t n, uint64_t p, uint32_t level);
    static MatrixModPrimePower identity(uint32_t n, uint64_t p, uint32_t level);
    static MatrixModPrimePower diagonal(const std::vector<uint32_t>& diag, uint64_t p, uint32_t level);

    uint32_t at(uint32_t i, uint32_t j) const { return entries[std::size_t{i} * n + j]; }
    uint32_t& at(uint32_t i, uint32_t j) { return entries[std::size_t{i} * n + j]; }
};

MatrixModPrimePower mat_mul(const MatrixModPrimePower& a, const MatrixModPrimePower& b);

/// Cokernel type of M mod p^L: multiset of diagonal valuations of the Smith
/// form, clamped to [0, L], zeros dropped, sorted nonincreasing.
Partition snf_type(const MatrixModPrimePower& m);

/// Row-echelon rank of M reduced mod p.
uint32_t rank_fp(const MatrixModPrimePower& m);

/// Types of cok(M_1...M_j) mod p^L for j = 1..k (incremental partial products).
std::vector<Partition> cok_chain(const std::vector<MatrixModPrimePower>& ms);

/// Bit-packed matrix over F_2 for the corank fast path.
struct BitMatrixF2 {
    uint32_t n = 0;
    uint32_t words_per_row = 0;
    std::vector<uint64_t> rows;

    static BitMatrixF2 zero(uint32_t n);
    bool get(uint32_t i, uint32_t j) const {
        return (rows[std::size_t{i} * words_per_row + (j >> 6)] >> (j & 63)) & 1;
    }
    void set(uint32_t i, uint32_t j, bool v) {
        uint64_t& w = rows[std::size_t{i} * words_per_row + (j >> 6)];
        w = v ? (w | (uint64_t{1} << (j & 63))) : (w & ~(uint64_t{1} << (j & 63)));
    }
};

BitMatrixF2 bit_mul(const BitMatrixF2& a, const BitMatrixF2& b);
uint32_t bit_rank(BitMatrixF2 m);  // destructive elimination on a copy

}  // namespace coklab
