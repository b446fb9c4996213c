#include "coklab/concrete_group.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace coklab {

uint32_t ElementSet::count() const {
    uint32_t c = 0;
    for (uint64_t w : words_) c += static_cast<uint32_t>(std::popcount(w));
    return c;
}

ElementSet& ElementSet::operator|=(const ElementSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
}

bool ElementSet::is_subset_of(const ElementSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~o.words_[i]) return false;
    return true;
}

std::size_t ElementSet::hash() const {
    uint64_t h = 0xcbf29ce484222325ull;
    for (uint64_t w : words_) {
        h ^= w;
        h *= 0x100000001b3ull;
        h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
}

DenseGroup DenseGroup::from_type(uint64_t p, const Partition& la, std::size_t order_bound) {
    double log_order = static_cast<double>(la.size()) * std::log2(static_cast<double>(p));
    if (log_order > 31)
        throw BoundExceeded("group order out of range at prime " + std::to_string(p));
    uint64_t order = 1;
    std::vector<uint32_t> moduli;
    for (uint32_t e : la.parts()) {
        uint64_t m = 1;
        for (uint32_t j = 0; j < e; ++j) m *= p;
        moduli.push_back(static_cast<uint32_t>(m));
        order *= m;
    }
    if (order > order_bound)
        throw BoundExceeded("group of order " + std::to_string(order) + " at prime " +
                            std::to_string(p) + " exceeds enumeration bound " +
                            std::to_string(order_bound));

    DenseGroup g;
    g.p_ = p;
    g.order_ = static_cast<uint32_t>(order);
    g.moduli_ = moduli;
    std::vector<std::vector<uint32_t>> tuples(order);
    for (uint32_t x = 0; x < order; ++x) {
        uint32_t rem = x;
        std::vector<uint32_t> tup(moduli.size());
        for (std::size_t i = moduli.size(); i-- > 0;) {
            tup[i] = rem % moduli[i];
            rem /= moduli[i];
        }
        tuples[x] = std::move(tup);
    }
    g.add_.resize(std::size_t{g.order_} * g.order_);
    for (uint32_t a = 0; a < order; ++a)
        for (uint32_t b = 0; b < order; ++b) {
            uint32_t idx = 0;
            for (std::size_t i = 0; i < moduli.size(); ++i)
                idx = idx * moduli[i] + (tuples[a][i] + tuples[b][i]) % moduli[i];
            g.add_[std::size_t{a} * order + b] = idx;
        }
    g.build_tables();
    return g;
}

DenseGroup DenseGroup::product(const DenseGroup& a, const DenseGroup& b, std::size_t order_bound) {
    if (a.p_ != b.p_) throw std::invalid_argument("product of groups at different primes");
    uint64_t order = uint64_t{a.order_} * b.order_;
    if (order > order_bound)
        throw BoundExceeded("product group of order " + std::to_string(order) + " at prime " +
                            std::to_string(a.p_) + " exceeds enumeration bound " +
                            std::to_string(order_bound));
    DenseGroup g;
    g.p_ = a.p_;
    g.order_ = static_cast<uint32_t>(order);
    g.second_order_ = b.order_;
    g.add_.resize(order * order);
    for (uint32_t x = 0; x < order; ++x)
        for (uint32_t y = 0; y < order; ++y)
            g.add_[std::size_t{x} * order + y] =
                a.add(x / b.order_, y / b.order_) * b.order_ + b.add(x % b.order_, y % b.order_);
    g.build_tables();
    return g;
}

DenseGroup DenseGroup::subgroup(const DenseGroup& parent, const ElementSet& elems) {
    std::vector<uint32_t> list;
    elems.for_each([&](uint32_t x) { list.push_back(x); });
    std::vector<uint32_t> index(parent.order(), UINT32_MAX);
    for (uint32_t i = 0; i < list.size(); ++i) index[list[i]] = i;

    DenseGroup g;
    g.p_ = parent.p_;
    g.order_ = static_cast<uint32_t>(list.size());
    g.add_.resize(std::size_t{g.order_} * g.order_);
    for (uint32_t i = 0; i < g.order_; ++i)
        for (uint32_t j = 0; j < g.order_; ++j) {
            uint32_t s = index[parent.add(list[i], list[j])];
            if (s == UINT32_MAX) throw std::invalid_argument("element set is not a subgroup");
            g.add_[std::size_t{i} * g.order_ + j] = s;
        }
    g.build_tables();
    return g;
}

void DenseGroup::build_tables() {
    pmul_.assign(order_, 0);
    neg_.assign(order_, 0);
    for (uint32_t x = 0; x < order_; ++x) {
        uint32_t s = 0;
        for (uint64_t j = 0; j < p_; ++j) s = add(s, x);
        pmul_[x] = s;
    }
    for (uint32_t x = 0; x < order_; ++x) {
        uint32_t y = 0, acc = x;
        while (acc != 0) {
            y = acc;
            acc = add(acc, x);
        }
        neg_[x] = (x == 0) ? 0 : y;
    }
}

std::vector<uint32_t> DenseGroup::tuple_of(uint32_t x) const {
    std::vector<uint32_t> tup(moduli_.size());
    for (std::size_t i = moduli_.size(); i-- > 0;) {
        tup[i] = x % moduli_[i];
        x /= moduli_[i];
    }
    return tup;
}

uint32_t DenseGroup::index_of(const std::vector<uint32_t>& tup) const {
    uint32_t idx = 0;
    for (std::size_t i = 0; i < moduli_.size(); ++i) idx = idx * moduli_[i] + tup[i] % moduli_[i];
    return idx;
}

uint32_t DenseGroup::generator(std::size_t i) const {
    std::vector<uint32_t> tup(moduli_.size(), 0);
    tup[i] = 1;
    return index_of(tup);
}

uint32_t DenseGroup::order_exponent(uint32_t a) const {
    uint32_t e = 0;
    while (a != 0) {
        a = pmul_[a];
        ++e;
    }
    return e;
}

uint32_t DenseGroup::scalar_mul(uint64_t c, uint32_t a) const {
    uint32_t acc = 0;
    while (c > 0) {
        if (c & 1) acc = add(acc, a);
        a = add(a, a);
        c >>= 1;
    }
    return acc;
}

std::vector<uint32_t> DenseGroup::torsion_counts() const {
    ElementSet all(order_);
    for (uint32_t x = 0; x < order_; ++x) all.set(x);
    return torsion_counts(all);
}

std::vector<uint32_t> DenseGroup::torsion_counts(const ElementSet& elems) const {
    uint32_t max_e = 0;
    std::vector<uint32_t> exps;
    elems.for_each([&](uint32_t x) {
        uint32_t e = order_exponent(x);
        exps.push_back(e);
        max_e = std::max(max_e, e);
    });
    std::vector<uint32_t> counts(max_e + 1, 0);
    for (uint32_t e : exps) counts[e]++;
    for (uint32_t j = 1; j <= max_e; ++j) counts[j] += counts[j - 1];
    return counts;  // counts[j] = #{x : p^j x = 0}
}

Partition DenseGroup::type_of(const ElementSet& elems) const {
    std::vector<uint32_t> counts = torsion_counts(elems);
    // counts[j] = p^{la'_1 + ... + la'_j}
    std::vector<uint32_t> conj;
    uint64_t prev = 0;
    for (std::size_t j = 1; j < counts.size(); ++j) {
        uint64_t logj = 0;
        uint64_t v = counts[j];
        while (v > 1) {
            v /= p_;
            ++logj;
        }
        conj.push_back(static_cast<uint32_t>(logj - prev));
        prev = logj;
    }
    return Partition(std::move(conj)).conjugate();
}

Partition DenseGroup::type() const {
    ElementSet all(order_);
    for (uint32_t x = 0; x < order_; ++x) all.set(x);
    return type_of(all);
}

std::vector<ElementSet> enumerate_subgroups(const DenseGroup& g) {
    const uint32_t n = g.order();
    std::unordered_set<ElementSet, ElementSetHash> seen;
    std::vector<ElementSet> out;

    ElementSet trivial(n);
    trivial.set(0);
    seen.insert(trivial);
    out.push_back(trivial);

    for (uint32_t x = 1; x < n; ++x) {
        ElementSet c(n);
        uint32_t acc = 0;
        do {
            c.set(acc);
            acc = g.add(acc, x);
        } while (acc != 0);
        if (seen.insert(c).second) out.push_back(std::move(c));
    }

    // close under join with cyclic subgroups; every subgroup is a join of
    // cyclic ones, so this reaches the whole lattice
    for (std::size_t i = 0; i < out.size(); ++i) {
        ElementSet h = out[i];  // copy: out reallocates while growing
        for (uint32_t x = 1; x < n; ++x) {
            if (h.test(x)) continue;
            ElementSet j(n);
            uint32_t shift = 0;
            do {
                h.for_each([&](uint32_t e) { j.set(g.add(e, shift)); });
                shift = g.add(shift, x);
            } while (shift != 0);
            if (seen.insert(j).second) out.push_back(std::move(j));
        }
    }
    return out;
}

Int census_hom(const Partition& la, const std::vector<uint32_t>& torsion) {
    Int total = 1;
    for (uint32_t e : la.parts()) {
        std::size_t idx = std::min<std::size_t>(e, torsion.size() - 1);
        total *= torsion[idx];
    }
    return total;
}

namespace {

// Type-count and torsion data shared across census_sur recursions.
struct LeanCensus {
    std::map<Partition, Int> type_counts;
    std::vector<uint32_t> torsion;
};

using TypeKey = std::pair<uint64_t, std::vector<uint32_t>>;

std::mutex g_census_mutex;
std::map<TypeKey, LeanCensus>& lean_cache() {
    static std::map<TypeKey, LeanCensus> cache;
    return cache;
}

const LeanCensus& lean_census(uint64_t p, const Partition& mu, std::size_t order_bound) {
    TypeKey key{p, mu.parts()};
    {
        std::lock_guard lock(g_census_mutex);
        auto it = lean_cache().find(key);
        if (it != lean_cache().end()) return it->second;
    }
    DenseGroup g = DenseGroup::from_type(p, mu, order_bound);
    LeanCensus rec;
    rec.torsion = g.torsion_counts();
    for (const ElementSet& s : enumerate_subgroups(g)) rec.type_counts[g.type_of(s)] += 1;
    std::lock_guard lock(g_census_mutex);
    return lean_cache().emplace(key, std::move(rec)).first->second;
}

std::map<TypeKey, std::map<std::vector<uint32_t>, Int>>& sur_cache() {
    static std::map<TypeKey, std::map<std::vector<uint32_t>, Int>> cache;
    return cache;
}

Int census_sur_impl(uint64_t p, const Partition& la, const Partition& mu,
                    std::size_t order_bound) {
    if (mu.empty()) return 1;
    TypeKey lkey{p, la.parts()};
    {
        std::lock_guard lock(g_census_mutex);
        auto& per_la = sur_cache()[lkey];
        auto it = per_la.find(mu.parts());
        if (it != per_la.end()) return it->second;
    }
    const LeanCensus& rec = lean_census(p, mu, order_bound);
    Int result = census_hom(la, rec.torsion);
    for (const auto& [nu, cnt] : rec.type_counts) {
        if (nu == mu) continue;
        result -= cnt * census_sur_impl(p, la, nu, order_bound);
    }
    std::lock_guard lock(g_census_mutex);
    sur_cache()[lkey].emplace(mu.parts(), result);
    return result;
}

}  // namespace

Int census_sur(uint64_t p, const Partition& la, const Partition& mu, std::size_t order_bound) {
    return census_sur_impl(p, la, mu, order_bound);
}

CensusRecord brute_census(uint64_t p, const Partition& la, std::size_t order_bound) {
    DenseGroup g = DenseGroup::from_type(p, la, order_bound);
    CensusRecord rec;
    rec.p = p;
    rec.type = la;
    rec.order = g.order();

    for (const ElementSet& s : enumerate_subgroups(g)) {
        Partition t = g.type_of(s);
        rec.subgroup_type_counts[t] += 1;
        rec.subgroups.emplace_back(s, std::move(t));
    }

    rec.aut_count = census_sur_impl(p, la, la, order_bound);

    double work = std::pow(static_cast<double>(g.order()), static_cast<double>(la.length()) + 1);
    if (work <= static_cast<double>(std::size_t{1} << 26))
        rec.aut_direct = direct_aut_count(p, la);
    return rec;
}

namespace {

template <typename F>
void for_each_hom_tuple(const DenseGroup& target, const Partition& la, F&& f) {
    std::size_t r = la.length();
    std::vector<std::vector<uint32_t>> candidates(r);
    for (std::size_t i = 0; i < r; ++i)
        for (uint32_t y = 0; y < target.order(); ++y)
            if (target.order_exponent(y) <= la.parts()[i]) candidates[i].push_back(y);

    std::vector<uint32_t> tuple(r);
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == r) {
            f(tuple);
            return;
        }
        for (uint32_t y : candidates[i]) {
            tuple[i] = y;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
}

uint32_t generated_order(const DenseGroup& target, const std::vector<uint32_t>& images) {
    ElementSet img(target.order());
    img.set(0);
    for (uint32_t y : images) {
        ElementSet next(target.order());
        uint32_t shift = 0;
        do {
            img.for_each([&](uint32_t e) { next.set(target.add(e, shift)); });
            shift = target.add(shift, y);
        } while (shift != 0);
        img = std::move(next);
    }
    return img.count();
}

}  // namespace

Int direct_sur_count(uint64_t p, const Partition& la, const Partition& mu,
                     std::size_t work_bound) {
    DenseGroup target = DenseGroup::from_type(p, mu, max_enum_bound());
    double work = std::pow(static_cast<double>(target.order()),
                           static_cast<double>(la.length()) + 1);
    if (work > static_cast<double>(work_bound))
        throw BoundExceeded("direct surjection enumeration too large");
    Int count = 0;
    for_each_hom_tuple(target, la, [&](const std::vector<uint32_t>& images) {
        if (generated_order(target, images) == target.order()) ++count;
    });
    return count;
}

Int direct_aut_count(uint64_t p, const Partition& la, std::size_t work_bound) {
    return direct_sur_count(p, la, la, work_bound);
}

Int brute_chain_count(uint64_t p, const Partition& la, unsigned k, std::size_t order_bound) {
    if (k == 0) return la.empty() ? 1 : 0;
    DenseGroup g = DenseGroup::from_type(p, la, order_bound);
    std::vector<ElementSet> subs = enumerate_subgroups(g);
    std::size_t n = subs.size();

    std::vector<std::size_t> order_idx(n);
    std::iota(order_idx.begin(), order_idx.end(), 0);
    std::sort(order_idx.begin(), order_idx.end(), [&](std::size_t a, std::size_t b) {
        return subs[a].count() < subs[b].count();
    });

    // containment adjacency, built once
    std::vector<std::vector<uint32_t>> contained_in(n);
    for (std::size_t hi = 0; hi < n; ++hi) {
        std::size_t h = order_idx[hi];
        uint32_t hsize = subs[h].count();
        for (std::size_t mi = 0; mi <= hi; ++mi) {
            std::size_t m = order_idx[mi];
            if (hsize % subs[m].count() != 0) continue;
            if (subs[m].is_subset_of(subs[h])) contained_in[h].push_back(static_cast<uint32_t>(m));
        }
    }

    std::size_t trivial_idx = 0, full_idx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (subs[i].count() == 1) trivial_idx = i;
        if (subs[i].count() == g.order()) full_idx = i;
    }

    std::vector<Int> dp(n, 0);
    dp[trivial_idx] = 1;
    for (unsigned step = 0; step < k; ++step) {
        std::vector<Int> next(n, 0);
        for (std::size_t h = 0; h < n; ++h) {
            Int acc = 0;
            for (uint32_t m : contained_in[h]) acc += dp[m];
            next[h] = std::move(acc);
        }
        dp = std::move(next);
    }
    return dp[full_idx];
}

namespace {

Int mk_per_prime(uint64_t p, const std::vector<Partition>& types, std::size_t order_bound) {
    std::size_t k = types.size();
    auto count = [&](auto&& self, std::size_t i, const DenseGroup& tail) -> Int {
        if (i == 0) return 1;
        DenseGroup gi = DenseGroup::from_type(p, types[i - 1], order_bound);
        DenseGroup prod = DenseGroup::product(gi, tail, order_bound);
        Int total = 0;
        for (const ElementSet& h : enumerate_subgroups(prod)) {
            ElementSet first(gi.order());
            h.for_each([&](uint32_t x) { first.set(prod.proj1(x)); });
            if (first.count() != gi.order()) continue;
            total += self(self, i - 1, DenseGroup::subgroup(prod, h));
        }
        return total;
    };
    DenseGroup gk = DenseGroup::from_type(p, types[k - 1], order_bound);
    return count(count, k - 1, gk);
}

}  // namespace

Int joint_chain_count_mk(const std::vector<GroupType>& gs, std::size_t order_bound) {
    if (gs.empty()) throw std::invalid_argument("m_k requires k >= 1");
    std::vector<uint64_t> primes;
    for (const auto& g : gs)
        for (const auto& [p, la] : g.components()) primes.push_back(p);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

    Int total = 1;
    for (uint64_t p : primes) {
        std::vector<Partition> types;
        for (const auto& g : gs) types.push_back(g.at(p));
        total *= mk_per_prime(p, types, order_bound);
    }
    return total;
}

}  // namespace coklab
