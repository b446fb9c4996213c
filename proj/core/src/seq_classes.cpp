#include "coklab/seq_classes.hpp"

#include "coklab/pgroup.hpp"
#include "coklab/qpochhammer.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace coklab::seq {

namespace {

uint64_t pow_u64(uint64_t p, uint32_t e) {
    uint64_t r = 1;
    while (e--) r *= p;
    return r;
}

uint32_t valuation_exp(uint64_t x, uint64_t p) {
    uint32_t v = 0;
    while (x && x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

// rank over F_p of the entries reduced mod p
uint32_t rank_mod_p(uint64_t p, const HomMatrix& m) {
    std::vector<uint64_t> w(m.entries.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = m.entries[i] % p;
    auto at = [&](uint32_t i, uint32_t j) -> uint64_t& { return w[std::size_t{i} * m.cols + j]; };
    uint32_t rank = 0;
    for (uint32_t col = 0; col < m.cols && rank < m.rows; ++col) {
        uint32_t pivot = UINT32_MAX;
        for (uint32_t i = rank; i < m.rows; ++i)
            if (at(i, col)) {
                pivot = i;
                break;
            }
        if (pivot == UINT32_MAX) continue;
        if (pivot != rank)
            for (uint32_t j = 0; j < m.cols; ++j) std::swap(at(rank, j), at(pivot, j));
        // scale pivot row to 1
        uint64_t inv = 1;
        for (uint64_t cand = 1; cand < p; ++cand)
            if ((cand * at(rank, col)) % p == 1) {
                inv = cand;
                break;
            }
        for (uint32_t j = 0; j < m.cols; ++j) at(rank, j) = (at(rank, j) * inv) % p;
        for (uint32_t i = 0; i < m.rows; ++i) {
            if (i == rank || !at(i, col)) continue;
            uint64_t f = at(i, col);
            for (uint32_t j = 0; j < m.cols; ++j)
                at(i, j) = (at(i, j) + p - (f * at(rank, j)) % p) % p;
        }
        ++rank;
    }
    return rank;
}

std::size_t aut_list_feasible_bound() { return std::size_t{1} << 22; }

}  // namespace

bool is_well_defined(uint64_t p, const Partition& src, const Partition& tgt, const HomMatrix& m) {
    if (m.rows != tgt.length() || m.cols != src.length()) return false;
    for (uint32_t i = 0; i < m.rows; ++i) {
        uint64_t mod_i = pow_u64(p, tgt.parts()[i]);
        for (uint32_t j = 0; j < m.cols; ++j) {
            uint32_t e = m.at(i, j);
            if (e >= mod_i) return false;
            uint32_t need = tgt.parts()[i] > src.parts()[j] ? tgt.parts()[i] - src.parts()[j] : 0;
            if (need > 0 && e % pow_u64(p, need) != 0) return false;
        }
    }
    return true;
}

bool is_surjective(uint64_t p, const Partition& src, const Partition& tgt, const HomMatrix& m) {
    // a map of p-groups is onto iff it is onto mod p
    if (tgt.empty()) return true;
    return rank_mod_p(p, m) == tgt.length();
}

HomMatrix compose(uint64_t p, const Partition& src_b, const Partition& mid,
                  const Partition& tgt_a, const HomMatrix& a, const HomMatrix& b) {
    if (a.cols != mid.length() || b.rows != mid.length() || b.cols != src_b.length() ||
        a.rows != tgt_a.length())
        throw std::invalid_argument("composition shape mismatch");
    HomMatrix c;
    c.rows = a.rows;
    c.cols = b.cols;
    c.entries.assign(std::size_t{c.rows} * c.cols, 0);
    for (uint32_t i = 0; i < c.rows; ++i) {
        uint64_t mod_i = pow_u64(p, tgt_a.parts()[i]);
        for (uint32_t j = 0; j < c.cols; ++j) {
            uint64_t acc = 0;
            for (uint32_t t = 0; t < a.cols; ++t)
                acc = (acc + uint64_t{a.at(i, t)} * b.at(t, j)) % mod_i;
            c.at(i, j) = static_cast<uint32_t>(acc);
        }
    }
    return c;
}

HomMatrix identity_hom(const Partition& la) {
    HomMatrix m;
    m.rows = m.cols = static_cast<uint32_t>(la.length());
    m.entries.assign(std::size_t{m.rows} * m.cols, 0);
    for (uint32_t i = 0; i < m.rows; ++i) m.at(i, i) = 1;
    return m;
}

uint32_t apply_hom(const HomMatrix& m, const DenseGroup& src, const DenseGroup& tgt, uint32_t x) {
    std::vector<uint32_t> coords = src.tuple_of(x);
    uint32_t img = 0;
    for (uint32_t j = 0; j < m.cols; ++j) {
        if (coords[j] == 0) continue;
        std::vector<uint32_t> col(m.rows);
        for (uint32_t i = 0; i < m.rows; ++i) col[i] = m.at(i, j);
        img = tgt.add(img, tgt.scalar_mul(coords[j], tgt.index_of(col)));
    }
    return img;
}

ElementSet kernel_set(const HomMatrix& m, const DenseGroup& src, const DenseGroup& tgt) {
    ElementSet ker(src.order());
    for (uint32_t x = 0; x < src.order(); ++x)
        if (apply_hom(m, src, tgt, x) == 0) ker.set(x);
    return ker;
}

std::vector<HomMatrix> all_surjections(uint64_t p, const Partition& la, const Partition& mu) {
    Int homs = pgroup::hom_count(p, la, mu);
    if (homs > Int(aut_list_feasible_bound()))
        throw BoundExceeded("surjection enumeration space too large (" + homs.str() + " maps)");
    const uint32_t rows = static_cast<uint32_t>(mu.length());
    const uint32_t cols = static_cast<uint32_t>(la.length());

    // per-column candidate images: tuples with row i divisible by
    // p^{max(0, mu_i - la_j)}
    std::vector<std::vector<std::vector<uint32_t>>> col_candidates(cols);
    for (uint32_t j = 0; j < cols; ++j) {
        std::vector<std::vector<uint32_t>> cands{{}};
        for (uint32_t i = 0; i < rows; ++i) {
            uint32_t need = mu.parts()[i] > la.parts()[j] ? mu.parts()[i] - la.parts()[j] : 0;
            uint64_t step = pow_u64(p, need);
            uint64_t mod_i = pow_u64(p, mu.parts()[i]);
            std::vector<std::vector<uint32_t>> next;
            for (const auto& prefix : cands)
                for (uint64_t v = 0; v < mod_i; v += step) {
                    auto t = prefix;
                    t.push_back(static_cast<uint32_t>(v));
                    next.push_back(std::move(t));
                }
            cands = std::move(next);
        }
        col_candidates[j] = std::move(cands);
    }

    std::vector<HomMatrix> out;
    HomMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.entries.assign(std::size_t{rows} * cols, 0);
    auto rec = [&](auto&& self, uint32_t j) -> void {
        if (j == cols) {
            if (is_surjective(p, la, mu, m)) out.push_back(m);
            return;
        }
        for (const auto& col : col_candidates[j]) {
            for (uint32_t i = 0; i < rows; ++i) m.at(i, j) = col[i];
            self(self, j + 1);
        }
    };
    if (rows == 0) {
        out.push_back(m);  // unique map onto the trivial group
        return out;
    }
    if (cols < rows) return out;  // cannot be onto mod p
    rec(rec, 0);
    return out;
}

const std::vector<HomMatrix>& automorphism_list(uint64_t p, const Partition& la) {
    static std::mutex mutex;
    static std::map<std::pair<uint64_t, std::vector<uint32_t>>, std::vector<HomMatrix>> cache;
    std::lock_guard lock(mutex);
    auto key = std::make_pair(p, la.parts());
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, all_surjections(p, la, la)).first;
    return it->second;
}

std::vector<HomMatrix> automorphism_generators(uint64_t p, const Partition& la) {
    std::vector<HomMatrix> gens;
    const uint32_t r = static_cast<uint32_t>(la.length());

    // transvections g_i -> g_i + c g_j with the minimal valid c
    for (uint32_t i = 0; i < r; ++i)
        for (uint32_t j = 0; j < r; ++j) {
            if (i == j) continue;
            uint32_t need = la.parts()[j] > la.parts()[i] ? la.parts()[j] - la.parts()[i] : 0;
            HomMatrix m = identity_hom(la);
            m.at(j, i) = static_cast<uint32_t>(pow_u64(p, need) % pow_u64(p, la.parts()[j]));
            if (m.at(j, i) == 0) continue;
            gens.push_back(std::move(m));
        }

    // unit scalings per generator
    for (uint32_t i = 0; i < r; ++i) {
        uint32_t e = la.parts()[i];
        uint64_t mod = pow_u64(p, e);
        std::vector<uint64_t> units;
        if (p == 2) {
            if (e >= 2) units.push_back(mod - 1);
            if (e >= 3) units.push_back(5);
        } else {
            // a primitive root mod p^e (the unit group is cyclic for odd p)
            uint64_t target_order = (mod / p) * (p - 1);
            for (uint64_t u = 2; u < mod; ++u) {
                if (u % p == 0) continue;
                uint64_t acc = u % mod, ord = 1;
                while (acc != 1) {
                    acc = (acc * u) % mod;
                    ++ord;
                }
                if (ord == target_order) {
                    units.push_back(u);
                    break;
                }
            }
        }
        for (uint64_t u : units) {
            HomMatrix m = identity_hom(la);
            m.at(i, i) = static_cast<uint32_t>(u);
            gens.push_back(std::move(m));
        }
    }

    for (const HomMatrix& g : gens)
        if (!is_well_defined(p, la, la, g) || !is_surjective(p, la, la, g))
            throw std::logic_error("generated automorphism is not valid");
    return gens;
}

namespace {

// an automorphism as a permutation of element indices, and its inverse matrix
HomMatrix invert_automorphism(uint64_t p, const Partition& la, const HomMatrix& m,
                              const DenseGroup& g) {
    std::vector<uint32_t> perm_inv(g.order());
    for (uint32_t x = 0; x < g.order(); ++x) perm_inv[apply_hom(m, g, g, x)] = x;
    HomMatrix inv;
    inv.rows = inv.cols = static_cast<uint32_t>(la.length());
    inv.entries.assign(std::size_t{inv.rows} * inv.cols, 0);
    for (uint32_t j = 0; j < inv.cols; ++j) {
        std::vector<uint32_t> tup = g.tuple_of(perm_inv[g.generator(j)]);
        for (uint32_t i = 0; i < inv.rows; ++i) inv.at(i, j) = tup[i];
    }
    return inv;
}

struct MoveSet {
    // per factor t: list of (sigma, sigma^{-1})
    std::vector<std::vector<std::pair<HomMatrix, HomMatrix>>> moves;
};

MoveSet build_moves(uint64_t p, const std::vector<Partition>& types) {
    MoveSet ms;
    ms.moves.resize(types.size());
    for (std::size_t t = 0; t < types.size(); ++t) {
        const Partition& la = types[t];
        Int aut = pgroup::aut_count(p, la);
        Int homs = pgroup::hom_count(p, la, la);
        std::vector<HomMatrix> sigmas;
        if (aut <= 100000 && homs <= Int(aut_list_feasible_bound()))
            sigmas = automorphism_list(p, la);
        else
            sigmas = automorphism_generators(p, la);
        DenseGroup g = DenseGroup::from_type(p, la, std::size_t{1} << 22);
        for (HomMatrix& s : sigmas) {
            HomMatrix inv = invert_automorphism(p, la, s, g);
            ms.moves[t].emplace_back(std::move(s), std::move(inv));
        }
    }
    return ms;
}

SurjectionChain apply_move(const SurjectionChain& chain, std::size_t t, const HomMatrix& sigma,
                           const HomMatrix& sigma_inv) {
    SurjectionChain out = chain;
    // sigma acts on G(types[t]): postcompose into maps[t-1], precompose the
    // inverse into maps[t]
    if (t > 0)
        out.maps[t - 1] = compose(chain.p, chain.types[t - 1], chain.types[t], chain.types[t],
                                  sigma, chain.maps[t - 1]);
    if (t + 1 < chain.types.size())
        out.maps[t] = compose(chain.p, chain.types[t], chain.types[t], chain.types[t + 1],
                              chain.maps[t], sigma_inv);
    return out;
}

}  // namespace

std::vector<SurjectionChain> enumerate_chains(uint64_t p, const std::vector<Partition>& types,
                                              std::size_t chain_bound) {
    if (types.empty()) throw std::invalid_argument("need at least one group type");
    Int total = 1;
    for (std::size_t t = 0; t + 1 < types.size(); ++t)
        total *= pgroup::sur_count(p, types[t], types[t + 1]);
    if (total > Int(chain_bound))
        throw BoundExceeded("chain enumeration would produce " + total.str() +
                            " chains, over the bound of " + std::to_string(chain_bound));

    std::vector<std::vector<HomMatrix>> per_step;
    for (std::size_t t = 0; t + 1 < types.size(); ++t)
        per_step.push_back(all_surjections(p, types[t], types[t + 1]));

    std::vector<SurjectionChain> out;
    SurjectionChain chain;
    chain.p = p;
    chain.types = types;
    chain.maps.resize(per_step.size());
    auto rec = [&](auto&& self, std::size_t t) -> void {
        if (t == per_step.size()) {
            out.push_back(chain);
            return;
        }
        for (const HomMatrix& m : per_step[t]) {
            chain.maps[t] = m;
            self(self, t + 1);
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<SeqClass> classify(uint64_t p, const std::vector<Partition>& types,
                               std::size_t chain_bound) {
    std::vector<SurjectionChain> chains = enumerate_chains(p, types, chain_bound);
    std::map<SurjectionChain, std::size_t> index;
    for (std::size_t i = 0; i < chains.size(); ++i) index.emplace(chains[i], i);

    MoveSet ms = build_moves(p, types);

    Int aut_product = 1;
    for (const Partition& la : types) aut_product *= pgroup::aut_count(p, la);

    std::vector<SeqClass> classes;
    std::vector<bool> visited(chains.size(), false);
    for (std::size_t start = 0; start < chains.size(); ++start) {
        if (visited[start]) continue;
        std::vector<std::size_t> orbit{start};
        visited[start] = true;
        for (std::size_t qi = 0; qi < orbit.size(); ++qi) {
            const SurjectionChain current = chains[orbit[qi]];
            for (std::size_t t = 0; t < types.size(); ++t)
                for (const auto& [sigma, sigma_inv] : ms.moves[t]) {
                    SurjectionChain next = apply_move(current, t, sigma, sigma_inv);
                    auto it = index.find(next);
                    if (it == index.end())
                        throw std::logic_error("orbit left the chain set; move is not valid");
                    if (!visited[it->second]) {
                        visited[it->second] = true;
                        orbit.push_back(it->second);
                    }
                }
        }
        SeqClass cls;
        cls.representative = chains[start];
        cls.size = Int(orbit.size());

        if (aut_product <= 10000) {
            // direct stabilizer count over the full product group
            std::vector<const std::vector<HomMatrix>*> lists;
            for (const Partition& la : types) lists.push_back(&automorphism_list(p, la));
            std::vector<DenseGroup> groups;
            for (const Partition& la : types)
                groups.push_back(DenseGroup::from_type(p, la, std::size_t{1} << 22));
            std::vector<std::size_t> pick(types.size(), 0);
            Int stab = 0;
            auto tuple_fixes = [&]() {
                SurjectionChain moved = chains[start];
                for (std::size_t t = 0; t < types.size(); ++t) {
                    const HomMatrix& sigma = (*lists[t])[pick[t]];
                    HomMatrix sigma_inv = invert_automorphism(p, types[t], sigma, groups[t]);
                    moved = apply_move(moved, t, sigma, sigma_inv);
                }
                return moved == chains[start];
            };
            auto rec = [&](auto&& self, std::size_t t) -> void {
                if (t == types.size()) {
                    if (tuple_fixes()) ++stab;
                    return;
                }
                for (pick[t] = 0; pick[t] < lists[t]->size(); ++pick[t]) self(self, t + 1);
            };
            rec(rec, 0);
            cls.aut_count = stab;
            if (cls.size * cls.aut_count != aut_product)
                throw std::logic_error("orbit-stabilizer identity failed; orbit computation bug");
        } else {
            if (aut_product % cls.size != 0)
                throw std::logic_error("orbit size does not divide #Aut product");
            cls.aut_count = aut_product / cls.size;
        }
        classes.push_back(std::move(cls));
    }
    return classes;
}

bool chains_isomorphic(const SurjectionChain& a, const SurjectionChain& b) {
    if (a.p != b.p || a.types != b.types) throw std::invalid_argument("chain type mismatch");
    if (a == b) return true;
    MoveSet ms = build_moves(a.p, a.types);
    std::map<SurjectionChain, bool> visited;
    visited[a] = true;
    std::vector<SurjectionChain> queue{a};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        SurjectionChain current = queue[qi];
        for (std::size_t t = 0; t < a.types.size(); ++t)
            for (const auto& [sigma, sigma_inv] : ms.moves[t]) {
                SurjectionChain next = apply_move(current, t, sigma, sigma_inv);
                if (next == b) return true;
                if (!visited.contains(next)) {
                    visited[next] = true;
                    queue.push_back(next);
                }
            }
    }
    return false;
}

Bounded seq_measure(const SeqClass& cls, uint64_t p, unsigned k, double tol) {
    Bounded qq = qq_inf(Rational(1, Int(p)), tol);
    Bounded result = Bounded::exact(Rational(1, cls.aut_count));
    for (unsigned i = 0; i < k; ++i) result = result * qq;
    return result;
}

MarginalVerdict marginal_check(uint64_t p, const std::vector<Partition>& types,
                               std::size_t chain_bound) {
    std::vector<SeqClass> classes = classify(p, types, chain_bound);
    MarginalVerdict verdict;
    verdict.class_sum = 0;
    for (const SeqClass& cls : classes) verdict.class_sum += Rational(1, cls.aut_count);

    Rational rhs = 1;
    for (std::size_t t = 0; t + 1 < types.size(); ++t)
        rhs *= Rational(pgroup::sur_count(p, types[t], types[t + 1]));
    for (const Partition& la : types) rhs /= Rational(pgroup::aut_count(p, la));
    verdict.product_side = rhs;
    verdict.equal = verdict.class_sum == verdict.product_side;
    return verdict;
}

}  // namespace coklab::seq
