#include "coklab/limit_laws.hpp"

#include "coklab/montecarlo.hpp"
#include "coklab/pgroup.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>

namespace coklab {

Rational rank_step(uint64_t p, uint32_t n, uint32_t prior_corank, uint32_t d) {
    if (prior_corank > n || d > n - prior_corank)
        throw std::invalid_argument("rank_step: need 0 <= k0 <= n and 0 <= d <= n-k0");
    const Rational q(1, Int(p));
    const uint32_t k = prior_corank;
    // (q;q)_{n-k} (q;q)_n / ((q;q)_d (q;q)_{k+d} (q;q)_{n-k-d}) * q^{d(k+d)}
    Rational num = qpoch_finite(q, q, n - k) * qpoch_finite(q, q, n);
    Rational den = qpoch_finite(q, q, d) * qpoch_finite(q, q, k + d) * qpoch_finite(q, q, n - k - d);
    Rational qq = 1;
    for (uint64_t i = 0; i < uint64_t{d} * (k + d); ++i) qq *= q;
    return num / den * qq;
}

Bounded corank_joint_limit(uint64_t p, const std::vector<uint32_t>& pattern, double tol) {
    if (pattern.empty()) throw std::invalid_argument("corank pattern must have k >= 1");
    const Rational q(1, Int(p));
    Bounded qq = qq_inf(q, tol);
    Bounded result = Bounded::exact(Real(1));
    for (std::size_t i = 0; i < pattern.size(); ++i) result = result * qq;

    Rational factor = 1;
    uint64_t s = 0;
    for (uint32_t r : pattern) {
        s += r;
        Rational qpow = 1;
        for (uint64_t i = 0; i < uint64_t{r} * s; ++i) qpow *= q;
        factor *= qpow / (qpoch_finite(q, q, r) * qpoch_finite(q, q, static_cast<unsigned>(s)));
    }
    return result * Bounded::exact(factor);
}

namespace {

void check_support(const std::set<uint64_t>& primes, const GroupType& b) {
    for (const auto& [p, la] : b.components())
        if (!primes.contains(p))
            throw std::invalid_argument("group has support at prime " + std::to_string(p) +
                                        " outside the requested prime set");
}

Bounded normalization(const std::set<uint64_t>& primes, unsigned k, double tol) {
    Bounded result = Bounded::exact(Real(1));
    for (uint64_t p : primes) {
        Bounded qq = qq_inf(Rational(1, Int(p)), tol);
        for (unsigned i = 0; i < k; ++i) result = result * qq;
    }
    return result;
}

}  // namespace

Bounded cok_prod_limit(const std::set<uint64_t>& primes, unsigned k, const GroupType& b,
                       double tol) {
    if (k < 1) throw std::invalid_argument("k >= 1 required");
    check_support(primes, b);
    Int nk = pgroup::chain_count_nk(b, k);
    Int aut = pgroup::aut_count_multi(b);
    return normalization(primes, k, tol) * Bounded::exact(Rational(nk, aut));
}

Bounded cok_joint_limit(const std::set<uint64_t>& primes, unsigned k,
                        const std::vector<GroupType>& bs, double tol) {
    if (bs.size() != k || k < 1) throw std::invalid_argument("need exactly k groups");
    for (const auto& b : bs) check_support(primes, b);
    Rational factor = 1;
    GroupType prev = GroupType::trivial();  // B_0 = 0
    for (const auto& b : bs) {
        Int sur = pgroup::sur_count_multi(b, prev);
        if (sur == 0) return Bounded::exact(Real(0));
        factor *= Rational(sur, pgroup::aut_count_multi(b));
        prev = b;
    }
    return normalization(primes, k, tol) * Bounded::exact(factor);
}

std::string table_mode_name(TableMode mode) {
    switch (mode) {
        case TableMode::CokSingle: return "cok_single";
        case TableMode::CokJoint: return "cok_joint";
        case TableMode::Corank: return "corank";
    }
    return "corank";
}

TableMode table_mode_from_name(const std::string& name) {
    if (name == "cok_single") return TableMode::CokSingle;
    if (name == "cok_joint") return TableMode::CokJoint;
    if (name == "corank") return TableMode::Corank;
    throw std::invalid_argument("unknown table mode: " + name);
}

namespace {

// tuples (r_1,...,r_k) with r_i >= 0 and sum <= cap
void corank_patterns(uint32_t k, uint32_t cap, std::vector<uint32_t>& cur,
                     std::vector<std::vector<uint32_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    uint32_t used = 0;
    for (uint32_t r : cur) used += r;
    for (uint32_t r = 0; r + used <= cap; ++r) {
        cur.push_back(r);
        corank_patterns(k, cap, cur, out);
        cur.pop_back();
    }
}

// chains la^(1) <= ... <= la^(k) over a cell list
void cok_chains(const std::vector<Partition>& cells, uint32_t k, std::vector<Partition>& cur,
                std::vector<std::vector<Partition>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (const Partition& la : cells) {
        if (!cur.empty() && !la.contains(cur.back())) continue;
        cur.push_back(la);
        cok_chains(cells, k, cur, out);
        cur.pop_back();
    }
}

}  // namespace

TheoryTable theory_table(uint64_t p, uint32_t level, uint32_t k, TableMode mode) {
    if (level < 1) throw std::invalid_argument("level must be >= 1");
    TheoryTable table;
    table.p = p;
    table.level = level;
    table.k = k;
    table.mode = mode;

    Real interior_mass = 0, interior_bound = 0;

    if (mode == TableMode::Corank) {
        std::vector<std::vector<uint32_t>> patterns;
        std::vector<uint32_t> cur;
        corank_patterns(k, level, cur, patterns);
        for (const auto& pat : patterns) {
            Bounded v = corank_joint_limit(p, pat);
            table.cells.emplace_back(mc::corank_key(pat), v);
            interior_mass += v.value;
            interior_bound += v.bound;
        }
    } else {
        // interior cells: every part <= level-1, so the truncated observation
        // pins the group exactly; grow the length cap until the added mass is
        // negligible
        std::set<uint64_t> primes{p};
        uint32_t len_cap = 1;
        Real added = 1;
        std::vector<Partition> cells;
        for (; len_cap <= 64; ++len_cap) {
            cells = partitions_bounded(static_cast<uint32_t>((level - 1) * len_cap), level - 1,
                                       len_cap);
            Real mass = 0;
            if (mode == TableMode::CokSingle) {
                for (const Partition& la : cells)
                    mass += cok_prod_limit(primes, k, GroupType::single(p, la)).value;
            } else {
                std::vector<std::vector<Partition>> chains;
                std::vector<Partition> curc;
                cok_chains(cells, k, curc, chains);
                for (const auto& ch : chains) {
                    std::vector<GroupType> gs;
                    for (const Partition& la : ch) gs.push_back(GroupType::single(p, la));
                    mass += cok_joint_limit(primes, k, gs).value;
                }
            }
            added = mass - interior_mass;
            interior_mass = mass;
            if (len_cap >= 2 && added < 1e-12) break;
        }
        if (mode == TableMode::CokSingle) {
            for (const Partition& la : cells) {
                Bounded v = cok_prod_limit(primes, k, GroupType::single(p, la));
                table.cells.emplace_back(mc::cok_key({la}), v);
                interior_bound += v.bound;
            }
        } else {
            std::vector<std::vector<Partition>> chains;
            std::vector<Partition> curc;
            cok_chains(cells, k, curc, chains);
            for (const auto& ch : chains) {
                std::vector<GroupType> gs;
                for (const Partition& la : ch) gs.push_back(GroupType::single(p, la));
                Bounded v = cok_joint_limit(primes, k, gs);
                table.cells.emplace_back(mc::cok_key(ch), v);
                interior_bound += v.bound;
            }
        }
        interior_mass = 0;
        for (const auto& [key, v] : table.cells) interior_mass += v.value;
        table.deficit_bound = static_cast<double>(added) * 10;
    }

    // probabilities total exactly 1, so the overflow bucket is the complement
    Real over = 1 - interior_mass;
    table.overflow = {over - interior_bound, interior_bound * 2};
    if (table.overflow.value < 0) table.overflow = {Real(0), over + interior_bound};
    table.deficit_bound += static_cast<double>(interior_bound);
    return table;
}

std::string TheoryTable::to_json() const {
    nlohmann::json j;
    j["p"] = p;
    j["L"] = level;
    j["k"] = k;
    j["mode"] = table_mode_name(mode);
    nlohmann::json cellsj = nlohmann::json::array();
    for (const auto& [key, v] : cells)
        cellsj.push_back({{"key", key}, {"prob", v.value_d()}, {"bound", v.bound_d()}});
    j["cells"] = cellsj;
    j["overflow"] = {{"prob", overflow.value_d()}, {"bound", overflow.bound_d()}};
    j["deficit_bound"] = deficit_bound;
    return j.dump(2);
}

TheoryTable TheoryTable::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    if (j.contains("result")) j = j.at("result");  // accept a full result document
    TheoryTable t;
    t.p = j.at("p").get<uint64_t>();
    t.level = j.at("L").get<uint32_t>();
    t.k = j.at("k").get<uint32_t>();
    t.mode = table_mode_from_name(j.at("mode").get<std::string>());
    for (const auto& c : j.at("cells"))
        t.cells.emplace_back(c.at("key").get<std::string>(),
                             Bounded{Real(c.at("prob").get<double>()),
                                     Real(c.at("bound").get<double>())});
    t.overflow = {Real(j.at("overflow").at("prob").get<double>()),
                  Real(j.at("overflow").at("bound").get<double>())};
    t.deficit_bound = j.at("deficit_bound").get<double>();
    return t;
}

}  // namespace coklab
