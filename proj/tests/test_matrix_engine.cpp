#include "coklab/matrix_engine.hpp"

#include "coklab/rng.hpp"

#include <doctest.h>

using namespace coklab;

namespace {

Partition P(std::vector<uint32_t> parts) { return Partition(std::move(parts)); }

MatrixModPrimePower random_matrix(SplitMix64& rng, uint32_t n, uint64_t p, uint32_t L) {
    MatrixModPrimePower m = MatrixModPrimePower::zero(n, p, L);
    for (auto& e : m.entries) e = static_cast<uint32_t>(rng.below(m.modulus));
    return m;
}

// random invertible matrix mod p^L (unit determinant mod p)
MatrixModPrimePower random_invertible(SplitMix64& rng, uint32_t n, uint64_t p, uint32_t L) {
    for (;;) {
        MatrixModPrimePower m = random_matrix(rng, n, p, L);
        if (rank_fp(m) == n) return m;
    }
}

}  // namespace

TEST_CASE("snf_type on diagonal and zero matrices") {
    CHECK(snf_type(MatrixModPrimePower::diagonal({4, 2, 1}, 2, 3)) == P({2, 1}));
    CHECK(snf_type(MatrixModPrimePower::zero(2, 2, 2)) == P({2, 2}));
    CHECK(snf_type(MatrixModPrimePower::identity(3, 5, 2)) == Partition{});
}

TEST_CASE("snf_type hand example with a unit pivot") {
    MatrixModPrimePower m = MatrixModPrimePower::zero(2, 2, 3);
    m.at(0, 0) = 2;
    m.at(0, 1) = 1;
    m.at(1, 0) = 0;
    m.at(1, 1) = 2;
    CHECK(snf_type(m) == P({2}));
}

TEST_CASE("snf invariant under invertible row/column transformations") {
    SplitMix64 rng(12345);
    for (int trial = 0; trial < 200; ++trial) {
        uint32_t n = 2 + static_cast<uint32_t>(rng.below(7));  // up to 8
        uint64_t p = (trial % 2 == 0) ? 2 : 3;
        uint32_t L = 1 + static_cast<uint32_t>(rng.below(3));
        MatrixModPrimePower m = random_matrix(rng, n, p, L);
        MatrixModPrimePower u = random_invertible(rng, n, p, L);
        MatrixModPrimePower v = random_invertible(rng, n, p, L);
        CHECK(snf_type(mat_mul(mat_mul(u, m), v)) == snf_type(m));
    }
}

TEST_CASE("rank duality: corank equals the number of parts at L=1") {
    SplitMix64 rng(777);
    for (int trial = 0; trial < 200; ++trial) {
        uint32_t n = 1 + static_cast<uint32_t>(rng.below(8));
        uint64_t p = (trial % 3 == 0) ? 3 : 2;
        uint32_t L = 1 + static_cast<uint32_t>(rng.below(3));
        MatrixModPrimePower m = random_matrix(rng, n, p, L);
        // reduce to level 1
        MatrixModPrimePower m1 = MatrixModPrimePower::zero(n, p, 1);
        for (std::size_t i = 0; i < m.entries.size(); ++i)
            m1.entries[i] = static_cast<uint32_t>(m.entries[i] % p);
        CHECK(n - rank_fp(m) == snf_type(m1).length());
        // parts of the full type that reach >= 1 count the same corank
        CHECK(snf_type(m).length() == n - rank_fp(m));
    }
}

TEST_CASE("rank_fp basics") {
    CHECK(rank_fp(MatrixModPrimePower::identity(4, 2, 1)) == 4);
    CHECK(rank_fp(MatrixModPrimePower::zero(3, 3, 1)) == 0);
    MatrixModPrimePower m = MatrixModPrimePower::zero(2, 2, 1);
    m.at(0, 0) = m.at(0, 1) = m.at(1, 0) = m.at(1, 1) = 1;
    CHECK(rank_fp(m) == 1);
}

TEST_CASE("diagonal multiplicativity clamps valuation sums") {
    MatrixModPrimePower a = MatrixModPrimePower::diagonal({2, 1}, 2, 2);
    MatrixModPrimePower b = MatrixModPrimePower::diagonal({1, 2}, 2, 2);
    auto chain = cok_chain({a, b});
    REQUIRE(chain.size() == 2);
    CHECK(chain[0] == P({1}));
    CHECK(chain[1] == P({1, 1}));

    auto chain2 = cok_chain({MatrixModPrimePower::diagonal({2, 1}, 2, 2),
                             MatrixModPrimePower::diagonal({2, 1}, 2, 2)});
    CHECK(chain2[0] == P({1}));
    CHECK(chain2[1] == P({2}));
}

TEST_CASE("cok_chain identity case and mismatch errors") {
    auto chain = cok_chain({MatrixModPrimePower::identity(2, 2, 2),
                            MatrixModPrimePower::identity(2, 2, 2)});
    CHECK(chain[0] == Partition{});
    CHECK(chain[1] == Partition{});
    CHECK_THROWS(mat_mul(MatrixModPrimePower::identity(2, 2, 2),
                         MatrixModPrimePower::identity(3, 2, 2)));
    CHECK_THROWS(mat_mul(MatrixModPrimePower::identity(2, 2, 2),
                         MatrixModPrimePower::identity(2, 2, 1)));
}

TEST_CASE("chain types are componentwise monotone") {
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 100000; ++trial) {
        uint32_t n = 1 + static_cast<uint32_t>(rng.below(5));
        uint32_t L = 1 + static_cast<uint32_t>(rng.below(3));
        std::vector<MatrixModPrimePower> ms;
        for (int j = 0; j < 3; ++j) ms.push_back(random_matrix(rng, n, 2, L));
        auto chain = cok_chain(ms);
        for (std::size_t j = 1; j < chain.size(); ++j)
            for (std::size_t i = 1; i <= chain[j - 1].length(); ++i)
                CHECK(chain[j - 1].part(i) <= chain[j].part(i));
    }
}

TEST_CASE("bit matrices agree with the generic engine over F_2") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        uint32_t n = 1 + static_cast<uint32_t>(rng.below(66));  // crosses the 64-bit word edge
        MatrixModPrimePower a = random_matrix(rng, n, 2, 1);
        MatrixModPrimePower b = random_matrix(rng, n, 2, 1);
        BitMatrixF2 ba = BitMatrixF2::zero(n), bb = BitMatrixF2::zero(n);
        for (uint32_t i = 0; i < n; ++i)
            for (uint32_t j = 0; j < n; ++j) {
                ba.set(i, j, a.at(i, j));
                bb.set(i, j, b.at(i, j));
            }
        CHECK(bit_rank(ba) == rank_fp(a));
        MatrixModPrimePower ab = mat_mul(a, b);
        BitMatrixF2 bab = bit_mul(ba, bb);
        bool same = true;
        for (uint32_t i = 0; i < n && same; ++i)
            for (uint32_t j = 0; j < n; ++j)
                if (bab.get(i, j) != (ab.at(i, j) != 0)) {
                    same = false;
                    break;
                }
        CHECK(same);
    }
}
