#include "coklab/matrix_engine.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace coklab {

namespace {

uint64_t pow_u64(uint64_t p, uint32_t e) {
    uint64_t r = 1;
    while (e--) r *= p;
    return r;
}

// inverse of a unit u mod m (m a prime power and gcd(u, m) = 1)
uint64_t inv_mod(uint64_t u, uint64_t m) {
    int64_t t = 0, new_t = 1;
    int64_t r = static_cast<int64_t>(m), new_r = static_cast<int64_t>(u % m);
    while (new_r != 0) {
        int64_t q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) throw std::invalid_argument("not a unit");
    return static_cast<uint64_t>(t < 0 ? t + static_cast<int64_t>(m) : t);
}

uint32_t valuation(uint64_t x, uint64_t p, uint32_t level) {
    if (x == 0) return level;
    if (p == 2) return std::min<uint32_t>(static_cast<uint32_t>(std::countr_zero(x)), level);
    uint32_t v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

}  // namespace

MatrixModPrimePower MatrixModPrimePower::zero(uint32_t n, uint64_t p, uint32_t level) {
    MatrixModPrimePower m;
    m.n = n;
    m.p = p;
    m.level = level;
    m.modulus = pow_u64(p, level);
    if (m.modulus > (uint64_t{1} << 31))
        throw std::invalid_argument("p^L too large for the matrix engine");
    m.entries.assign(std::size_t{n} * n, 0);
    return m;
}

MatrixModPrimePower MatrixModPrimePower::identity(uint32_t n, uint64_t p, uint32_t level) {
    MatrixModPrimePower m = zero(n, p, level);
    for (uint32_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

MatrixModPrimePower MatrixModPrimePower::diagonal(const std::vector<uint32_t>& diag, uint64_t p,
                                                  uint32_t level) {
    MatrixModPrimePower m = zero(static_cast<uint32_t>(diag.size()), p, level);
    for (uint32_t i = 0; i < m.n; ++i) m.at(i, i) = diag[i] % static_cast<uint32_t>(m.modulus);
    return m;
}

MatrixModPrimePower mat_mul(const MatrixModPrimePower& a, const MatrixModPrimePower& b) {
    if (a.n != b.n || a.p != b.p || a.level != b.level)
        throw std::invalid_argument("matrix dimension/modulus mismatch");
    MatrixModPrimePower c = MatrixModPrimePower::zero(a.n, a.p, a.level);
    const uint32_t n = a.n;
    const uint64_t mod = a.modulus;
    if (mod <= 0xFFFF) {
        // products fit comfortably: accumulate a full row, reduce once
        const bool pow2 = (mod & (mod - 1)) == 0;
        const uint64_t mask = mod - 1;
        std::vector<uint64_t> acc(n);
        for (uint32_t i = 0; i < n; ++i) {
            std::fill(acc.begin(), acc.end(), 0);
            for (uint32_t t = 0; t < n; ++t) {
                uint64_t av = a.at(i, t);
                if (!av) continue;
                const uint32_t* brow = &b.entries[std::size_t{t} * n];
                for (uint32_t j = 0; j < n; ++j) acc[j] += av * brow[j];
            }
            uint32_t* crow = &c.entries[std::size_t{i} * n];
            if (pow2)
                for (uint32_t j = 0; j < n; ++j) crow[j] = static_cast<uint32_t>(acc[j] & mask);
            else
                for (uint32_t j = 0; j < n; ++j) crow[j] = static_cast<uint32_t>(acc[j] % mod);
        }
    } else {
        for (uint32_t i = 0; i < n; ++i)
            for (uint32_t j = 0; j < n; ++j) {
                uint64_t acc = 0;
                for (uint32_t t = 0; t < n; ++t)
                    acc = (acc + uint64_t{a.at(i, t)} * b.at(t, j)) % mod;
                c.at(i, j) = static_cast<uint32_t>(acc);
            }
    }
    return c;
}

Partition snf_type(const MatrixModPrimePower& m) {
    const uint32_t n = m.n;
    const uint64_t mod = m.modulus, p = m.p;
    const uint32_t L = m.level;
    const bool pow2 = (mod & (mod - 1)) == 0;
    const uint64_t mask = mod - 1;
    std::vector<uint64_t> w(m.entries.begin(), m.entries.end());
    auto at = [&](uint32_t i, uint32_t j) -> uint64_t& { return w[std::size_t{i} * n + j]; };
    auto reduce = [&](uint64_t x) { return pow2 ? (x & mask) : (x % mod); };

    std::vector<uint32_t> parts;
    for (uint32_t r = 0; r < n; ++r) {
        // minimal-valuation pivot in the trailing submatrix
        uint32_t best_i = r, best_j = r, best_v = L;
        for (uint32_t i = r; i < n && best_v > 0; ++i)
            for (uint32_t j = r; j < n; ++j) {
                uint32_t v = valuation(at(i, j), p, L);
                if (v < best_v) {
                    best_v = v;
                    best_i = i;
                    best_j = j;
                    if (v == 0) break;
                }
            }
        if (best_v >= L) {
            // remaining block is zero mod p^L
            for (uint32_t i = r; i < n; ++i) parts.push_back(L);
            break;
        }
        if (best_i != r)
            for (uint32_t j = 0; j < n; ++j) std::swap(at(r, j), at(best_i, j));
        if (best_j != r)
            for (uint32_t i = 0; i < n; ++i) std::swap(at(i, r), at(i, best_j));

        // pivot = unit * p^v; scale the row so the pivot becomes p^v exactly
        uint64_t pv = pow_u64(p, best_v);
        uint64_t unit = reduce(at(r, r) / pv);
        uint64_t uinv = inv_mod(unit, mod);
        for (uint32_t j = r; j < n; ++j) at(r, j) = reduce(at(r, j) * uinv);

        // minimal valuation makes the pivot divide its row and column
        for (uint32_t i = r + 1; i < n; ++i) {
            uint64_t q = reduce(at(i, r) / pv);
            if (!q) continue;
            uint64_t negq = mod - q;
            for (uint32_t j = r; j < n; ++j) at(i, j) = reduce(at(i, j) + negq * at(r, j));
        }
        for (uint32_t j = r + 1; j < n; ++j) {
            uint64_t q = reduce(at(r, j) / pv);
            if (!q) continue;
            uint64_t negq = mod - q;
            for (uint32_t i = r; i < n; ++i) at(i, j) = reduce(at(i, j) + negq * at(i, r));
        }
        if (best_v > 0) parts.push_back(best_v);
    }
    std::sort(parts.begin(), parts.end(), std::greater<>());
    return Partition(std::move(parts));
}

uint32_t rank_fp(const MatrixModPrimePower& m) {
    const uint32_t n = m.n;
    const uint64_t p = m.p;
    std::vector<uint64_t> w(m.entries.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = m.entries[i] % p;
    auto at = [&](uint32_t i, uint32_t j) -> uint64_t& { return w[std::size_t{i} * n + j]; };

    uint32_t rank = 0;
    for (uint32_t col = 0; col < n && rank < n; ++col) {
        uint32_t pivot = UINT32_MAX;
        for (uint32_t i = rank; i < n; ++i)
            if (at(i, col) != 0) {
                pivot = i;
                break;
            }
        if (pivot == UINT32_MAX) continue;
        if (pivot != rank)
            for (uint32_t j = 0; j < n; ++j) std::swap(at(rank, j), at(pivot, j));
        uint64_t inv = inv_mod(at(rank, col), p);
        for (uint32_t i = rank + 1; i < n; ++i) {
            uint64_t f = (at(i, col) * inv) % p;
            if (!f) continue;
            for (uint32_t j = col; j < n; ++j)
                at(i, j) = (at(i, j) + (p - (f * at(rank, j)) % p)) % p;
        }
        ++rank;
    }
    return rank;
}

std::vector<Partition> cok_chain(const std::vector<MatrixModPrimePower>& ms) {
    if (ms.empty()) return {};
    std::vector<Partition> out;
    MatrixModPrimePower acc = ms[0];
    out.push_back(snf_type(acc));
    for (std::size_t j = 1; j < ms.size(); ++j) {
        acc = mat_mul(acc, ms[j]);
        out.push_back(snf_type(acc));
    }
    return out;
}

BitMatrixF2 BitMatrixF2::zero(uint32_t n) {
    BitMatrixF2 m;
    m.n = n;
    m.words_per_row = (n + 63) / 64;
    m.rows.assign(std::size_t{n} * m.words_per_row, 0);
    return m;
}

BitMatrixF2 bit_mul(const BitMatrixF2& a, const BitMatrixF2& b) {
    BitMatrixF2 c = BitMatrixF2::zero(a.n);
    const uint32_t w = a.words_per_row;
    for (uint32_t i = 0; i < a.n; ++i) {
        uint64_t* crow = &c.rows[std::size_t{i} * w];
        for (uint32_t wb = 0; wb < w; ++wb) {
            uint64_t bits = a.rows[std::size_t{i} * w + wb];
            while (bits) {
                uint32_t t = wb * 64 + static_cast<uint32_t>(std::countr_zero(bits));
                bits &= bits - 1;
                const uint64_t* brow = &b.rows[std::size_t{t} * w];
                for (uint32_t j = 0; j < w; ++j) crow[j] ^= brow[j];
            }
        }
    }
    return c;
}

uint32_t bit_rank(BitMatrixF2 m) {
    const uint32_t w = m.words_per_row;
    uint32_t rank = 0;
    for (uint32_t col = 0; col < m.n && rank < m.n; ++col) {
        uint32_t word = col >> 6;
        uint64_t mask = uint64_t{1} << (col & 63);
        uint32_t pivot = UINT32_MAX;
        for (uint32_t i = rank; i < m.n; ++i)
            if (m.rows[std::size_t{i} * w + word] & mask) {
                pivot = i;
                break;
            }
        if (pivot == UINT32_MAX) continue;
        for (uint32_t j = 0; j < w; ++j)
            std::swap(m.rows[std::size_t{rank} * w + j], m.rows[std::size_t{pivot} * w + j]);
        for (uint32_t i = rank + 1; i < m.n; ++i)
            if (m.rows[std::size_t{i} * w + word] & mask)
                for (uint32_t j = 0; j < w; ++j)
                    m.rows[std::size_t{i} * w + j] ^= m.rows[std::size_t{rank} * w + j];
        ++rank;
    }
    return rank;
}

}  // namespace coklab
