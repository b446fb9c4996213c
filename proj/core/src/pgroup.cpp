#include "coklab/pgroup.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>

namespace coklab::pgroup {

namespace {

Int ipow(uint64_t p, uint64_t e) { return boost::multiprecision::pow(Int(p), static_cast<unsigned>(e)); }

template <typename Key, typename Value>
class MemoTable {
public:
    bool lookup(const Key& k, Value& out) const {
        std::shared_lock lock(mutex_);
        auto it = table_.find(k);
        if (it == table_.end()) return false;
        out = it->second;
        return true;
    }
    void store(const Key& k, const Value& v) {
        std::unique_lock lock(mutex_);
        table_.emplace(k, v);
    }

private:
    mutable std::shared_mutex mutex_;
    std::map<Key, Value> table_;
};

using PartKey = std::tuple<uint64_t, std::vector<uint32_t>, std::vector<uint32_t>>;

MemoTable<PartKey, Int>& sur_memo() {
    static MemoTable<PartKey, Int> t;
    return t;
}

using ChainKey = std::tuple<uint64_t, std::vector<uint32_t>, unsigned>;

MemoTable<ChainKey, Int>& chain_memo() {
    static MemoTable<ChainKey, Int> t;
    return t;
}

}  // namespace

Int gaussian_binomial(uint64_t p, uint32_t n, uint32_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    Int num = 1, den = 1;
    for (uint32_t i = 1; i <= k; ++i) {
        num *= ipow(p, n - k + i) - 1;
        den *= ipow(p, i) - 1;
    }
    return num / den;  // exact: the Gaussian binomial is an integer
}

Int aut_count(uint64_t p, const Partition& la) {
    // #Aut(G_la) = p^{|la| + 2 n(la)} * prod_i (p^{-1};p^{-1})_{m_i(la)},
    // the closed form of 1 / (P_la(t,t^2,...) Q_la(1,t,...)) at t = 1/p.
    if (la.empty()) return 1;
    uint64_t exponent = la.size() + 2 * la.weighted_sum();
    Int factor = 1;
    for (uint32_t i = 1; i <= la.parts()[0]; ++i) {
        uint32_t m = la.multiplicity(i);
        for (uint32_t j = 1; j <= m; ++j) factor *= ipow(p, j) - 1;
        exponent -= uint64_t{m} * (m + 1) / 2;
    }
    return ipow(p, exponent) * factor;
}

Int hom_count(uint64_t p, const Partition& mu, const Partition& la) {
    Partition mc = mu.conjugate(), lc = la.conjugate();
    uint64_t e = 0;
    std::size_t n = std::min(mc.length(), lc.length());
    for (std::size_t i = 1; i <= n; ++i) e += uint64_t{mc.part(i)} * lc.part(i);
    return ipow(p, e);
}

Int subgroup_type_count(uint64_t p, const Partition& mu, const Partition& la) {
    // prod over i of p^{mu'_{i+1}(la'_i - mu'_i)} [la'_i - mu'_{i+1} choose mu'_i - mu'_{i+1}]_p
    Partition mc = mu.conjugate(), lc = la.conjugate();
    if (mc.length() > lc.length()) return 0;
    Int total = 1;
    for (std::size_t i = 1; i <= lc.length(); ++i) {
        uint32_t li = lc.part(i), mi = mc.part(i), mi1 = mc.part(i + 1);
        if (mi > li) return 0;
        total *= ipow(p, uint64_t{mi1} * (li - mi)) * gaussian_binomial(p, li - mi1, mi - mi1);
    }
    return total;
}

std::vector<Partition> subgroup_types(const Partition& la) {
    std::vector<Partition> out;
    for (const Partition& nu : subdiagrams(la.conjugate())) out.push_back(nu.conjugate());
    return out;
}

Int sur_count(uint64_t p, const Partition& la, const Partition& mu) {
    if (!la.contains(mu)) return 0;
    if (mu.empty()) return 1;
    PartKey key{p, la.parts(), mu.parts()};
    Int cached;
    if (sur_memo().lookup(key, cached)) return cached;

    // every hom factors through its image:
    //   #Hom(G_la, G_mu) = sum_nu |G_{nu,mu}| #Sur(G_la, G_nu)
    Int result = hom_count(p, la, mu);
    for (const Partition& nu : subgroup_types(mu)) {
        if (nu == mu) continue;
        Int s = sur_count(p, la, nu);
        if (s != 0) result -= subgroup_type_count(p, nu, mu) * s;
    }
    sur_memo().store(key, result);
    return result;
}

Int chain_count_nk_p(uint64_t p, const Partition& la, unsigned k) {
    if (k == 0) return la.empty() ? 1 : 0;
    if (k == 1 || la.empty()) return 1;
    ChainKey key{p, la.parts(), k};
    Int cached;
    if (chain_memo().lookup(key, cached)) return cached;

    // n_{k}(G_la) = sum over subgroups H <= G_la of n_{k-1}(H)
    Int result = 0;
    for (const Partition& mu : subgroup_types(la))
        result += subgroup_type_count(p, mu, la) * chain_count_nk_p(p, mu, k - 1);
    chain_memo().store(key, result);
    return result;
}

Int chain_count_nk(const GroupType& g, unsigned k) {
    if (k == 0) return g.is_trivial() ? 1 : 0;
    Int result = 1;
    for (const auto& [p, la] : g.components()) result *= chain_count_nk_p(p, la, k);
    return result;
}

Int sur_count_multi(const GroupType& from, const GroupType& onto) {
    Int result = 1;
    for (const auto& [p, la] : from.components()) result *= sur_count(p, la, onto.at(p));
    for (const auto& [p, mu] : onto.components())
        if (from.at(p).empty()) return 0;  // missing prime upstream: no surjection
    return result;
}

Int aut_count_multi(const GroupType& g) {
    Int result = 1;
    for (const auto& [p, la] : g.components()) result *= aut_count(p, la);
    return result;
}

}  // namespace coklab::pgroup
