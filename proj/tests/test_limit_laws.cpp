#include "coklab/limit_laws.hpp"

#include "coklab/concrete_group.hpp"
#include "coklab/pgroup.hpp"

#include <doctest.h>

#include <cmath>

using namespace coklab;

namespace {
Partition P(std::vector<uint32_t> parts) { return Partition(std::move(parts)); }
}

TEST_CASE("qpoch values") {
    CHECK(qpoch_finite(Rational(1, 2), Rational(1, 2), 0) == 1);
    CHECK(qpoch_finite(Rational(1, 2), Rational(1, 2), 1) == Rational(1, 2));
    Bounded inf = qpoch_inf(Rational(1, 2), Rational(1, 2), 1e-14);
    CHECK(std::abs(inf.value_d() - 0.2887880951) < 1e-9);
    CHECK(inf.bound_d() < 1e-13);
    CHECK_THROWS(qpoch_inf(Rational(1, 2), Rational(3, 2)));
}

TEST_CASE("rank_step examples") {
    CHECK(rank_step(2, 1, 0, 1) == Rational(1, 2));
    CHECK(rank_step(2, 2, 0, 1) == Rational(9, 16));
    for (uint64_t p : {uint64_t{2}, uint64_t{3}, uint64_t{5}}) {
        for (uint32_t n = 1; n <= 8; ++n) {
            Rational q(1, Int(p));
            CHECK(rank_step(p, n, 0, 0) == qpoch_finite(q, q, n));
        }
    }
    CHECK_THROWS(rank_step(2, 2, 3, 0));
    CHECK_THROWS(rank_step(2, 2, 1, 2));
}

TEST_CASE("rank_step rows sum to one") {
    for (uint64_t p : {uint64_t{2}, uint64_t{3}, uint64_t{5}}) {
        for (uint32_t n = 1; n <= 12; ++n) {
            for (uint32_t k0 : {uint32_t{0}, uint32_t{1}, n / 2}) {
                if (k0 > n) continue;
                Rational total = 0;
                for (uint32_t d = 0; d <= n - k0; ++d) total += rank_step(p, n, k0, d);
                CHECK(total == 1);
            }
        }
    }
}

TEST_CASE("corank limits reproduce the displayed intro probabilities") {
    CHECK(std::abs(corank_joint_limit(2, {0}).value_d() - 0.288788) < 1e-6);
    CHECK(std::abs(corank_joint_limit(2, {0, 0}).value_d() - 0.083399) < 1e-6);

    for (uint64_t p : {uint64_t{2}, uint64_t{3}, uint64_t{5}, uint64_t{7}}) {
        Rational q(1, Int(p));
        Bounded qq = qq_inf(q, 1e-16);
        double qq2 = qq.value_d() * qq.value_d();

        CHECK(std::abs(corank_joint_limit(p, {0, 0}).value_d() - qq2) < 1e-12);

        double lhs = corank_joint_limit(p, {0, 1}).value_d() + corank_joint_limit(p, {1, 0}).value_d();
        double coeff = double(2 * p * p - p) / std::pow(double(p) - 1, 3);
        CHECK(std::abs(lhs - coeff * qq2) < 1e-12);
    }
}

TEST_CASE("corank limit for k=1 matches the single-matrix law") {
    for (uint64_t p : {uint64_t{2}, uint64_t{3}, uint64_t{5}}) {
        Rational q(1, Int(p));
        for (uint32_t d = 0; d <= 4; ++d) {
            Rational qd = qpoch_finite(q, q, d);
            Rational qpow = 1;
            for (uint32_t i = 0; i < d * d; ++i) qpow *= q;
            double expect = to_double(qpow / (qd * qd)) * qq_inf(q, 1e-16).value_d();
            CHECK(std::abs(corank_joint_limit(p, {d}).value_d() - expect) < 1e-12);
        }
    }
}

TEST_CASE("corank law is normalized") {
    for (uint64_t p : {uint64_t{2}, uint64_t{3}}) {
        for (uint32_t k = 1; k <= 3; ++k) {
            double total = 0;
            std::vector<uint32_t> pattern(k, 0);
            auto rec = [&](auto&& self, uint32_t pos, uint32_t used) -> void {
                if (pos == k) {
                    total += corank_joint_limit(p, pattern).value_d();
                    return;
                }
                for (uint32_t r = 0; used + r <= 20; ++r) {
                    pattern[pos] = r;
                    self(self, pos + 1, used + r);
                }
            };
            rec(rec, 0, 0);
            CHECK(total >= 1 - 1e-6);
            CHECK(total <= 1 + 1e-9);
        }
    }
}

TEST_CASE("cok_prod_limit examples") {
    GroupType z2 = GroupType::single(2, P({1}));
    double qq = qq_inf(Rational(1, 2)).value_d();

    CHECK(std::abs(cok_prod_limit({2}, 1, z2).value_d() - 0.288788) < 1e-6);
    CHECK(std::abs(cok_prod_limit({2}, 2, GroupType::trivial()).value_d() - qq * qq) < 1e-12);
    CHECK(std::abs(cok_prod_limit({2}, 2, z2).value_d() - 2 * qq * qq) < 1e-12);
    CHECK_THROWS(cok_prod_limit({3}, 1, z2));  // support violation
}

TEST_CASE("cok_joint_limit examples") {
    GroupType z2 = GroupType::single(2, P({1}));
    GroupType z4 = GroupType::single(2, P({2}));
    double qq = qq_inf(Rational(1, 2)).value_d();

    CHECK(std::abs(cok_joint_limit({2}, 2, {GroupType::trivial(), z2}).value_d() - qq * qq) < 1e-12);
    CHECK(std::abs(cok_joint_limit({2}, 2, {z2, z2}).value_d() - qq * qq) < 1e-12);
    CHECK(cok_joint_limit({2}, 2, {z4, z2}).value_d() == 0.0);
}

TEST_CASE("joint marginal over earlier groups recovers the product law") {
    std::set<uint64_t> primes{2};
    for (const Partition& la : partitions_bounded(4, 4, 4)) {
        GroupType bk = la.empty() ? GroupType::trivial() : GroupType::single(2, la);
        double total = 0;
        for (const Partition& mu : partitions_bounded(4, 4, 4)) {
            GroupType b1 = mu.empty() ? GroupType::trivial() : GroupType::single(2, mu);
            total += cok_joint_limit(primes, 2, {b1, bk}).value_d();
        }
        CHECK(std::abs(total - cok_prod_limit(primes, 2, bk).value_d()) < 1e-12);
    }
}

TEST_CASE("moment sums climb toward the chain counts") {
    // sum_la P(la) #Sur(la, mu) converges upward to n_k(G_mu)
    for (uint64_t p : {uint64_t{2}, uint64_t{3}}) {
        std::set<uint64_t> primes{p};
        for (unsigned k = 1; k <= 2; ++k)
            for (const Partition& mu : partitions_bounded(2, 2, 2)) {
                auto truncated = [&](uint32_t B) {
                    double sum = 0;
                    for (const Partition& la : partitions_bounded(B, B, B)) {
                        Int sur = pgroup::sur_count(p, la, mu);
                        if (sur == 0) continue;
                        GroupType g = la.empty() ? GroupType::trivial() : GroupType::single(p, la);
                        sum += cok_prod_limit(primes, k, g).value_d() * static_cast<double>(sur);
                    }
                    return sum;
                };
                double target = static_cast<double>(pgroup::chain_count_nk_p(p, mu, k));
                double e10 = target - truncated(10);
                double e14 = target - truncated(14);
                double e18 = target - truncated(18);
                CHECK(e10 > -1e-9);
                CHECK(e14 <= e10 + 1e-12);
                CHECK(e18 <= e14 + 1e-12);
                CHECK(std::abs(e18) < 2e-3 * (target + 1));
            }
    }
}

TEST_CASE("joint moment sums climb toward m_k") {
    uint64_t p = 2;
    std::set<uint64_t> primes{p};
    GroupType z2 = GroupType::single(2, P({1}));
    std::vector<std::vector<GroupType>> target_tuples = {
        {GroupType::trivial(), z2}, {z2, z2}, {z2, GroupType::single(2, P({2}))}};
    for (const auto& targets : target_tuples) {
        double sum = 0;
        for (const Partition& la2 : partitions_bounded(12, 12, 12)) {
            Int s2 = pgroup::sur_count(p, la2, targets[1].at(p));
            if (s2 == 0) continue;
            for (const Partition& la1 : subdiagrams(la2)) {
                Int s1 = pgroup::sur_count(p, la1, targets[0].at(p));
                if (s1 == 0) continue;
                GroupType b1 = la1.empty() ? GroupType::trivial() : GroupType::single(p, la1);
                GroupType b2 = GroupType::single(p, la2);
                sum += cok_joint_limit(primes, 2, {b1, b2}).value_d() *
                       static_cast<double>(s1 * s2);
            }
        }
        double target = static_cast<double>(joint_chain_count_mk({targets[0], targets[1]}));
        CHECK(sum <= target + 1e-9);
        CHECK(target - sum < 2e-2 * target);
    }
}

TEST_CASE("iterated joint-moment identity over concrete subgroup sums") {
    // E_{K ~ CL}[#Inj(L,K) #Sur(K,M) #Hom(K,N)] equals the sum of #Hom(L,H)
    // over subgroups H <= M + N with full first projection
    struct Instance {
        uint64_t p;
        uint32_t trunc;
        std::vector<Partition> types;
    };
    std::vector<Instance> instances = {
        {2, 28, partitions_bounded(3, 3, 3)},
        {3, 16, partitions_bounded(2, 2, 2)},  // orders <= p^2 keep M+N censusable
    };
    for (const auto& inst : instances) {
        Rational q(1, Int(inst.p));
        double qq = qq_inf(q, 1e-16).value_d();
        auto cells = partitions_bounded(inst.trunc, inst.trunc, inst.trunc);
        for (const Partition& l_type : inst.types)
            for (const Partition& m_type : inst.types)
                for (const Partition& n_type : inst.types) {
                    double lhs = 0;
                    for (const Partition& ka : cells) {
                        Int inj = pgroup::inj_count(inst.p, l_type, ka);
                        if (inj == 0) continue;
                        Int sur = pgroup::sur_count(inst.p, ka, m_type);
                        if (sur == 0) continue;
                        Int hom = pgroup::hom_count(inst.p, ka, n_type);
                        lhs += to_double(Rational(inj * sur * hom,
                                                  pgroup::aut_count(inst.p, ka)));
                    }
                    lhs *= qq;

                    DenseGroup gm = DenseGroup::from_type(inst.p, m_type, 1 << 10);
                    DenseGroup gn = DenseGroup::from_type(inst.p, n_type, 1 << 10);
                    DenseGroup prod = DenseGroup::product(gm, gn, 1 << 10);
                    double rhs = 0;
                    for (const ElementSet& h : enumerate_subgroups(prod)) {
                        ElementSet first(gm.order());
                        h.for_each([&](uint32_t x) { first.set(prod.proj1(x)); });
                        if (first.count() != gm.order()) continue;
                        rhs += static_cast<double>(
                            census_hom(l_type, prod.torsion_counts(h)));
                    }
                    CHECK(std::abs(lhs - rhs) < 1e-6 * (rhs + 1));
                }
    }
}

TEST_CASE("theory tables: corank mode") {
    TheoryTable table = theory_table(2, 4, 2, TableMode::Corank);
    CHECK(table.cells.size() == 15);  // patterns with r1+r2 <= 4
    double mass = 0;
    for (const auto& [key, v] : table.cells) mass += static_cast<double>(v.value);
    mass += static_cast<double>(table.overflow.value);
    CHECK(std::abs(mass - 1) < 1e-9);
    CHECK(table.overflow.value >= 0);

    TheoryTable back = TheoryTable::from_json(table.to_json());
    CHECK(back.cells.size() == table.cells.size());
    CHECK(back.mode == TableMode::Corank);
}

TEST_CASE("theory tables: single cokernel mode") {
    TheoryTable table = theory_table(2, 2, 1, TableMode::CokSingle);
    double qq = qq_inf(Rational(1, 2)).value_d();
    bool found_empty = false, found_z2 = false;
    for (const auto& [key, v] : table.cells) {
        if (key == "[]") {
            found_empty = true;
            CHECK(std::abs(static_cast<double>(v.value) - qq) < 1e-9);
        }
        if (key == "1") {
            found_z2 = true;
            CHECK(std::abs(static_cast<double>(v.value) - qq) < 1e-9);  // #Aut(Z/2) = 1
        }
    }
    CHECK(found_empty);
    CHECK(found_z2);
    double mass = static_cast<double>(table.overflow.value);
    for (const auto& [key, v] : table.cells) mass += static_cast<double>(v.value);
    CHECK(std::abs(mass - 1) < 1e-9);
}
