#pragma once

#include "coklab/grouptype.hpp"
#include "coklab/limit_laws.hpp"
#include "coklab/numeric.hpp"
#include "coklab/partition.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace coklab::mc {

/// IID entry law: weights on residues mod a base modulus m dividing the run
/// modulus a, lifted to Z/a with uniform fibers.
struct EntryDistributionSpec {
    uint64_t modulus_a = 2;
    uint64_t base_modulus = 2;
    std::vector<std::pair<uint64_t, Rational>> weights;  // residue mod base -> probability

    static EntryDistributionSpec uniform(uint64_t a);
    static EntryDistributionSpec bernoulli01(uint64_t a, const Rational& q);  // P(1)=q
    static EntryDistributionSpec signed_law(uint64_t a, const Rational& p_minus,
                                            const Rational& p_zero, const Rational& p_plus);

    std::string to_json() const;
    static EntryDistributionSpec from_json(const std::string& text);

    /// Exact induced law on Z/p^L (requires p^L | a).
    std::vector<Rational> law_mod(uint64_t p, uint32_t level) const;
};

/// alpha_p = 1 - max_r P(xi = r mod p), per prime p | a.  Throws
/// DegenerateDistribution when some alpha_p is zero.
std::map<uint64_t, Rational> validate_alpha(const EntryDistributionSpec& spec);

enum class Mode { CokJoint, Corank };

struct SimConfig {
    uint32_t n = 1;
    uint32_t k = 1;
    std::map<uint64_t, uint32_t> levels;  // prime -> L_p
    uint64_t samples = 1;
    uint64_t seed = 0;
    uint64_t chunk_size = 1024;
    Mode mode = Mode::Corank;
    EntryDistributionSpec entry;

    uint64_t modulus() const;
    std::string to_json() const;
    static SimConfig from_json(const std::string& text);
    std::string config_hash() const;
};

struct EmpiricalJointDistribution {
    Mode mode = Mode::Corank;
    std::map<std::string, uint64_t> counts;
    uint64_t total = 0;
    std::string config_hash;
    uint64_t seed = 0;

    void merge(const EmpiricalJointDistribution& other);
    std::string to_json() const;
    static EmpiricalJointDistribution from_json(const std::string& text);
};

/// Canonical keys shared by simulation, oracle and theory tables.
std::string corank_key(const std::vector<uint32_t>& pattern);
std::string cok_key(const std::vector<Partition>& types);          // single prime
std::string cok_key_multi(const std::map<uint64_t, std::vector<Partition>>& per_prime);

EmpiricalJointDistribution simulate_joint(const SimConfig& config, unsigned workers = 1);

/// Exact joint distribution by full enumeration of matrix tuples over
/// Z/p^L, weighted by the entry law.  Work is (p^L)^{k n^2} tuples.
std::map<std::string, Rational> exhaustive_joint(uint32_t n, uint64_t p, uint32_t level,
                                                 uint32_t k, const EntryDistributionSpec& spec,
                                                 Mode mode,
                                                 std::size_t work_bound = std::size_t{1} << 24);

/// Exact E[prod_j #Sur(cok(M_1..M_j), targets_j)] under full enumeration.
Rational exhaustive_moment(uint32_t n, uint64_t p, uint32_t level, uint32_t k,
                           const EntryDistributionSpec& spec,
                           const std::vector<GroupType>& targets,
                           std::size_t work_bound = std::size_t{1} << 24);

struct MomentEstimate {
    double mean = 0;
    double stderr_ = 0;
    uint64_t samples = 0;
};

/// Streaming estimate of E[prod_j #Sur(cok(M_1...M_j), targets_j)].
MomentEstimate estimate_moments(const SimConfig& config, const std::vector<GroupType>& targets,
                                unsigned workers = 1);

/// Several moment functionals evaluated on one sample stream.
std::vector<MomentEstimate> estimate_moments_batch(
    const SimConfig& config, const std::vector<std::vector<GroupType>>& target_sets,
    unsigned workers = 1);

struct CellComparison {
    std::string key;
    double theory = 0;
    double theory_bound = 0;
    double freq = 0;
    double stderr_ = 0;
    double z = 0;
};

struct CompareThresholds {
    double tv_max = 0.01;
    double z_max = 5.0;
};

struct CompareReport {
    std::vector<CellComparison> cells;
    double tv = 0;
    double overflow_theory = 0;
    double overflow_freq = 0;
    bool pass = false;
    CompareThresholds thresholds;

    std::string to_json() const;
    std::string to_csv() const;
};

CompareReport compare(const EmpiricalJointDistribution& emp, const TheoryTable& table,
                      const CompareThresholds& thresholds = {});

/// TV distance between two empirical runs, bucketed by the table's interior
/// cells (everything else pools into overflow).
double empirical_tv(const EmpiricalJointDistribution& a, const EmpiricalJointDistribution& b,
                    const TheoryTable& table);

}  // namespace coklab::mc
