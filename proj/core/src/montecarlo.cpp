#include "coklab/montecarlo.hpp"

#include "coklab/matrix_engine.hpp"
#include "coklab/pgroup.hpp"
#include "coklab/rng.hpp"
#include "coklab/version.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace coklab::mc {

namespace {

uint64_t pow_u64(uint64_t p, uint32_t e) {
    uint64_t r = 1;
    while (e--) r *= p;
    return r;
}

std::vector<uint64_t> prime_factors(uint64_t a) {
    std::vector<uint64_t> out;
    for (uint64_t d = 2; d * d <= a; ++d)
        if (a % d == 0) {
            out.push_back(d);
            while (a % d == 0) a /= d;
        }
    if (a > 1) out.push_back(a);
    return out;
}

}  // namespace

EntryDistributionSpec EntryDistributionSpec::uniform(uint64_t a) {
    // base modulus 1: a single fiber lifted uniformly over Z/a
    EntryDistributionSpec s;
    s.modulus_a = a;
    s.base_modulus = 1;
    s.weights = {{0, Rational(1)}};
    return s;
}

EntryDistributionSpec EntryDistributionSpec::bernoulli01(uint64_t a, const Rational& q) {
    EntryDistributionSpec s;
    s.modulus_a = a;
    s.base_modulus = a;
    s.weights = {{0, 1 - q}, {1, q}};
    return s;
}

EntryDistributionSpec EntryDistributionSpec::signed_law(uint64_t a, const Rational& p_minus,
                                                        const Rational& p_zero,
                                                        const Rational& p_plus) {
    EntryDistributionSpec s;
    s.modulus_a = a;
    s.base_modulus = a;
    s.weights = {{0, p_zero}, {1, p_plus}, {a - 1, p_minus}};
    return s;
}

std::string EntryDistributionSpec::to_json() const {
    nlohmann::json j;
    j["modulus"] = modulus_a;
    j["base_modulus"] = base_modulus;
    nlohmann::json w = nlohmann::json::object();
    for (const auto& [r, prob] : weights) w[std::to_string(r)] = rational_to_string(prob);
    j["weights"] = w;
    return j.dump();
}

EntryDistributionSpec EntryDistributionSpec::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    EntryDistributionSpec s;
    s.modulus_a = j.at("modulus").get<uint64_t>();
    s.base_modulus = j.at("base_modulus").get<uint64_t>();
    for (auto it = j.at("weights").begin(); it != j.at("weights").end(); ++it)
        s.weights.emplace_back(std::stoull(it.key()), parse_rational(it.value().get<std::string>()));
    std::sort(s.weights.begin(), s.weights.end());
    return s;
}

std::vector<Rational> EntryDistributionSpec::law_mod(uint64_t p, uint32_t level) const {
    uint64_t m = pow_u64(p, level);
    if (modulus_a % m != 0) throw std::invalid_argument("p^L does not divide the run modulus");
    uint64_t lift = modulus_a / base_modulus;
    if (lift > (uint64_t{1} << 22)) throw BoundExceeded("entry law fiber too large to expand");
    std::vector<Rational> law(m, Rational(0));
    Rational fiber(1, Int(lift));
    for (const auto& [r, w] : weights)
        for (uint64_t j = 0; j < lift; ++j) law[(r + j * base_modulus) % m] += w * fiber;
    return law;
}

std::map<uint64_t, Rational> validate_alpha(const EntryDistributionSpec& spec) {
    if (spec.base_modulus == 0 || spec.modulus_a % spec.base_modulus != 0)
        throw std::invalid_argument("base modulus must divide the run modulus");
    Rational total = 0;
    for (const auto& [r, w] : spec.weights) {
        if (w < 0) throw std::invalid_argument("entry weights must be nonnegative");
        if (r >= spec.base_modulus) throw std::invalid_argument("residue outside base modulus");
        total += w;
    }
    if (total != 1) throw std::invalid_argument("entry weights must sum to 1");

    std::map<uint64_t, Rational> alphas;
    for (uint64_t p : prime_factors(spec.modulus_a)) {
        Rational max_mass;
        if (spec.base_modulus % p == 0) {
            std::vector<Rational> mass(p, Rational(0));
            for (const auto& [r, w] : spec.weights) mass[r % p] += w;
            max_mass = *std::max_element(mass.begin(), mass.end());
        } else {
            // the uniform lift is uniform mod p when p does not divide the base
            max_mass = Rational(1, Int(p));
        }
        Rational alpha = 1 - max_mass;
        if (alpha == 0) {
            uint64_t bad_r = 0;
            if (spec.base_modulus % p == 0)
                for (const auto& [r, w] : spec.weights)
                    if (w > 0) bad_r = r % p;
            throw DegenerateDistribution("entry law is constant mod " + std::to_string(p) +
                                         " (residue " + std::to_string(bad_r) +
                                         " has probability 1)");
        }
        alphas[p] = alpha;
    }
    return alphas;
}

uint64_t SimConfig::modulus() const {
    uint64_t a = 1;
    for (const auto& [p, l] : levels) a *= pow_u64(p, l);
    return a;
}

std::string SimConfig::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["k"] = k;
    nlohmann::json lv = nlohmann::json::object();
    for (const auto& [p, l] : levels) lv[std::to_string(p)] = l;
    j["levels"] = lv;
    j["samples"] = samples;
    j["seed"] = seed;
    j["chunk_size"] = chunk_size;
    j["mode"] = mode == Mode::Corank ? "corank" : "cok_joint";
    j["entry"] = nlohmann::json::parse(entry.to_json());
    return j.dump();
}

SimConfig SimConfig::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    SimConfig c;
    c.n = j.at("n").get<uint32_t>();
    c.k = j.at("k").get<uint32_t>();
    for (auto it = j.at("levels").begin(); it != j.at("levels").end(); ++it)
        c.levels[std::stoull(it.key())] = it.value().get<uint32_t>();
    c.samples = j.at("samples").get<uint64_t>();
    c.seed = j.at("seed").get<uint64_t>();
    c.chunk_size = j.value("chunk_size", uint64_t{1024});
    std::string mode = j.at("mode").get<std::string>();
    if (mode == "corank")
        c.mode = Mode::Corank;
    else if (mode == "cok_joint")
        c.mode = Mode::CokJoint;
    else
        throw std::invalid_argument("unknown mode: " + mode);
    if (j.contains("entry"))
        c.entry = EntryDistributionSpec::from_json(j.at("entry").dump());
    else
        c.entry = EntryDistributionSpec::uniform(c.modulus());
    return c;
}

std::string SimConfig::config_hash() const {
    // identifies the distributional setup; seed and sample count are run
    // parameters carried separately in the provenance block
    auto j = nlohmann::json::parse(to_json());
    j.erase("seed");
    j.erase("samples");
    std::string s = j.dump();
    uint64_t h = fnv1a(s.data(), s.size());
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

std::string corank_key(const std::vector<uint32_t>& pattern) {
    std::string out;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(pattern[i]);
    }
    return out;
}

std::string cok_key(const std::vector<Partition>& types) {
    std::string out;
    for (std::size_t i = 0; i < types.size(); ++i) {
        if (i) out += ';';
        out += types[i].to_string();
    }
    return out;
}

std::string cok_key_multi(const std::map<uint64_t, std::vector<Partition>>& per_prime) {
    if (per_prime.size() == 1) return cok_key(per_prime.begin()->second);
    std::string out;
    for (const auto& [p, types] : per_prime) {
        if (!out.empty()) out += '#';
        out += std::to_string(p) + ":" + cok_key(types);
    }
    return out;
}

void EmpiricalJointDistribution::merge(const EmpiricalJointDistribution& other) {
    if (config_hash != other.config_hash)
        throw std::invalid_argument("cannot merge results from different configs");
    if (mode != other.mode) throw std::invalid_argument("mode mismatch in merge");
    for (const auto& [key, cnt] : other.counts) counts[key] += cnt;
    total += other.total;
}

std::string EmpiricalJointDistribution::to_json() const {
    nlohmann::json j;
    j["mode"] = mode == Mode::Corank ? "corank" : "cok_joint";
    j["total"] = total;
    nlohmann::json c = nlohmann::json::object();
    for (const auto& [key, cnt] : counts) c[key] = cnt;
    j["counts"] = c;
    j["provenance"] = {{"config_hash", config_hash}, {"seed", seed}, {"code_version", kVersion}};
    return j.dump(2);
}

EmpiricalJointDistribution EmpiricalJointDistribution::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    if (j.contains("result")) j = j.at("result");  // accept a full result document
    EmpiricalJointDistribution d;
    d.mode = j.at("mode").get<std::string>() == "corank" ? Mode::Corank : Mode::CokJoint;
    d.total = j.at("total").get<uint64_t>();
    for (auto it = j.at("counts").begin(); it != j.at("counts").end(); ++it)
        d.counts[it.key()] = it.value().get<uint64_t>();
    d.config_hash = j.at("provenance").at("config_hash").get<std::string>();
    d.seed = j.at("provenance").at("seed").get<uint64_t>();
    return d;
}

namespace {

// Prepared inverse-CDF sampler over the weight table, drawing with exact
// 64-bit fixed denominators and rejection.
struct Sampler {
    uint64_t denom = 1;
    std::vector<uint64_t> cumulative;  // cumulative numerators
    std::vector<uint64_t> residues;
    uint64_t base = 1;
    uint64_t lift = 1;  // a / base

    explicit Sampler(const EntryDistributionSpec& spec) {
        base = spec.base_modulus;
        lift = spec.modulus_a / spec.base_modulus;
        Int d = 1;
        for (const auto& [r, w] : spec.weights)
            d = boost::multiprecision::lcm(d, boost::multiprecision::denominator(w));
        if (d > Int(std::numeric_limits<uint64_t>::max()))
            throw std::invalid_argument("entry weights need a denominator beyond 64 bits");
        denom = d.convert_to<uint64_t>();
        uint64_t acc = 0;
        for (const auto& [r, w] : spec.weights) {
            if (w == 0) continue;
            Int num = boost::multiprecision::numerator(w) *
                      (d / boost::multiprecision::denominator(w));
            acc += num.convert_to<uint64_t>();
            cumulative.push_back(acc);
            residues.push_back(r);
        }
    }

    uint64_t draw(SplitMix64& rng) const {
        uint64_t r;
        if (residues.size() == 1) {
            r = residues[0];
        } else {
            uint64_t x = rng.below(denom);
            std::size_t i = 0;
            while (x >= cumulative[i]) ++i;
            r = residues[i];
        }
        if (lift > 1) r += base * rng.below(lift);
        return r;
    }
};

struct PrimeContext {
    uint64_t p;
    uint32_t level;
    uint64_t modulus;
    bool use_bits;  // p == 2, level == 1
};

// Per-worker sampling engine: draws one k-tuple of matrices and reports
// either the corank pattern or the per-prime chain of truncated types.
class SampleEngine {
public:
    explicit SampleEngine(const SimConfig& cfg) : cfg_(cfg), sampler_(cfg.entry) {
        if (cfg.entry.modulus_a != cfg.modulus())
            throw std::invalid_argument("entry law modulus does not match the level map");
        for (const auto& [p, l] : cfg.levels)
            contexts_.push_back({p, l, pow_u64(p, l), p == 2 && l == 1});
        if (cfg.mode == Mode::Corank && contexts_.size() != 1)
            throw std::invalid_argument("corank mode requires a single prime");
        for (const auto& ctx : contexts_) {
            if (ctx.use_bits) {
                bit_mats_.assign(cfg.k, BitMatrixF2::zero(cfg.n));
            } else {
                mats_.emplace_back();
                mats_.back().assign(cfg.k, MatrixModPrimePower::zero(cfg.n, ctx.p, ctx.level));
            }
        }
    }

    // corank pattern for single-prime corank mode
    void sample_corank(SplitMix64& rng, std::vector<uint32_t>& pattern) {
        draw_matrices(rng);
        const PrimeContext& ctx = contexts_[0];
        pattern.clear();
        uint32_t prev_rank = cfg_.n;
        if (ctx.use_bits) {
            BitMatrixF2 acc = bit_mats_[0];
            for (uint32_t j = 0; j < cfg_.k; ++j) {
                if (j > 0) acc = bit_mul(acc, bit_mats_[j]);
                uint32_t r = bit_rank(acc);
                pattern.push_back(prev_rank - r);
                prev_rank = r;
            }
        } else {
            MatrixModPrimePower acc = mats_[0][0];
            for (uint32_t j = 0; j < cfg_.k; ++j) {
                if (j > 0) acc = mat_mul(acc, mats_[0][j]);
                uint32_t r = rank_fp(acc);
                pattern.push_back(prev_rank - r);
                prev_rank = r;
            }
        }
    }

    // per-prime chains of truncated cokernel types
    void sample_types(SplitMix64& rng, std::map<uint64_t, std::vector<Partition>>& out) {
        draw_matrices(rng);
        out.clear();
        std::size_t dense_idx = 0;
        for (const auto& ctx : contexts_) {
            std::vector<Partition> chain;
            if (ctx.use_bits) {
                BitMatrixF2 acc = bit_mats_[0];
                for (uint32_t j = 0; j < cfg_.k; ++j) {
                    if (j > 0) acc = bit_mul(acc, bit_mats_[j]);
                    uint32_t corank = cfg_.n - bit_rank(acc);
                    std::vector<uint32_t> parts(corank, 1);
                    chain.emplace_back(std::move(parts));
                }
            } else {
                auto& mats = mats_[dense_idx++];
                MatrixModPrimePower acc = mats[0];
                for (uint32_t j = 0; j < cfg_.k; ++j) {
                    if (j > 0) acc = mat_mul(acc, mats[j]);
                    chain.push_back(snf_type(acc));
                }
            }
            out.emplace(ctx.p, std::move(chain));
        }
    }

    const SimConfig& config() const { return cfg_; }

private:
    void draw_matrices(SplitMix64& rng) {
        const uint64_t nn = uint64_t{cfg_.n} * cfg_.n;
        for (uint32_t j = 0; j < cfg_.k; ++j) {
            for (uint64_t e = 0; e < nn; ++e) {
                uint64_t v = sampler_.draw(rng);
                std::size_t dense_idx = 0;
                for (const auto& ctx : contexts_) {
                    if (ctx.use_bits) {
                        uint32_t i = static_cast<uint32_t>(e / cfg_.n);
                        uint32_t c = static_cast<uint32_t>(e % cfg_.n);
                        bit_mats_[j].set(i, c, v & 1);
                    } else {
                        mats_[dense_idx++][j].entries[e] = static_cast<uint32_t>(v % ctx.modulus);
                    }
                }
            }
        }
    }

    SimConfig cfg_;
    Sampler sampler_;
    std::vector<PrimeContext> contexts_;
    std::vector<BitMatrixF2> bit_mats_;
    std::vector<std::vector<MatrixModPrimePower>> mats_;  // one k-vector per dense context
};

template <typename PerChunk>
void run_chunks(const SimConfig& cfg, unsigned workers, PerChunk&& per_chunk) {
    const uint64_t nchunks = (cfg.samples + cfg.chunk_size - 1) / cfg.chunk_size;
    std::atomic<uint64_t> next{0};
    auto body = [&]() {
        SampleEngine engine(cfg);
        for (;;) {
            uint64_t c = next.fetch_add(1);
            if (c >= nchunks) break;
            uint64_t begin = c * cfg.chunk_size;
            uint64_t end = std::min(begin + cfg.chunk_size, cfg.samples);
            SplitMix64 rng = chunk_stream(cfg.seed, c);
            per_chunk(engine, c, begin, end, rng);
        }
    };
    if (workers <= 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
        for (auto& t : pool) t.join();
    }
}

}  // namespace

EmpiricalJointDistribution simulate_joint(const SimConfig& config, unsigned workers) {
    validate_alpha(config.entry);
    if (config.samples < 1 || config.n < 1 || config.k < 1)
        throw std::invalid_argument("n, k, samples must all be >= 1");

    const uint64_t nchunks = (config.samples + config.chunk_size - 1) / config.chunk_size;
    std::vector<std::map<std::string, uint64_t>> per_chunk_counts(nchunks);

    run_chunks(config, workers,
               [&](SampleEngine& engine, uint64_t c, uint64_t begin, uint64_t end, SplitMix64& rng) {
                   auto& local = per_chunk_counts[c];
                   std::vector<uint32_t> pattern;
                   std::map<uint64_t, std::vector<Partition>> types;
                   for (uint64_t s = begin; s < end; ++s) {
                       if (config.mode == Mode::Corank) {
                           engine.sample_corank(rng, pattern);
                           ++local[corank_key(pattern)];
                       } else {
                           engine.sample_types(rng, types);
                           ++local[cok_key_multi(types)];
                       }
                   }
               });

    EmpiricalJointDistribution result;
    result.mode = config.mode;
    result.config_hash = config.config_hash();
    result.seed = config.seed;
    result.total = config.samples;
    for (const auto& local : per_chunk_counts)
        for (const auto& [key, cnt] : local) result.counts[key] += cnt;
    return result;
}

namespace {

// odometer over all matrix tuples, weighted by the entry law mod p^L
template <typename Leaf>
void enumerate_tuples(uint32_t n, uint64_t p, uint32_t level, uint32_t k,
                      const EntryDistributionSpec& spec, std::size_t work_bound, Leaf&& leaf) {
    const uint64_t m = pow_u64(p, level);
    const uint64_t digits = uint64_t{k} * n * n;
    double log_work = static_cast<double>(digits) * std::log2(static_cast<double>(m));
    if (log_work > std::log2(static_cast<double>(work_bound)))
        throw BoundExceeded("exhaustive enumeration of " + std::to_string(digits) +
                            " entries mod " + std::to_string(m) + " exceeds the work bound");

    std::vector<Rational> law = spec.law_mod(p, level);
    std::vector<MatrixModPrimePower> mats(k, MatrixModPrimePower::zero(n, p, level));
    auto rec = [&](auto&& self, uint64_t digit, const Rational& prob) -> void {
        if (prob == 0) return;
        if (digit == digits) {
            leaf(mats, prob);
            return;
        }
        uint32_t j = static_cast<uint32_t>(digit / (uint64_t{n} * n));
        uint64_t e = digit % (uint64_t{n} * n);
        for (uint64_t v = 0; v < m; ++v) {
            if (law[v] == 0) continue;
            mats[j].entries[e] = static_cast<uint32_t>(v);
            self(self, digit + 1, prob * law[v]);
        }
    };
    rec(rec, 0, Rational(1));
}

}  // namespace

std::map<std::string, Rational> exhaustive_joint(uint32_t n, uint64_t p, uint32_t level,
                                                 uint32_t k, const EntryDistributionSpec& spec,
                                                 Mode mode, std::size_t work_bound) {
    std::map<std::string, Rational> out;
    enumerate_tuples(n, p, level, k, spec, work_bound,
                     [&](const std::vector<MatrixModPrimePower>& mats, const Rational& prob) {
                         if (mode == Mode::Corank) {
                             std::vector<uint32_t> pattern;
                             uint32_t prev = n;
                             MatrixModPrimePower acc = mats[0];
                             for (uint32_t j = 0; j < k; ++j) {
                                 if (j > 0) acc = mat_mul(acc, mats[j]);
                                 uint32_t r = rank_fp(acc);
                                 pattern.push_back(prev - r);
                                 prev = r;
                             }
                             out[corank_key(pattern)] += prob;
                         } else {
                             out[cok_key(cok_chain(mats))] += prob;
                         }
                     });
    return out;
}

Rational exhaustive_moment(uint32_t n, uint64_t p, uint32_t level, uint32_t k,
                           const EntryDistributionSpec& spec,
                           const std::vector<GroupType>& targets, std::size_t work_bound) {
    if (targets.size() != k) throw std::invalid_argument("need one target per step");
    Rational total = 0;
    enumerate_tuples(n, p, level, k, spec, work_bound,
                     [&](const std::vector<MatrixModPrimePower>& mats, const Rational& prob) {
                         std::vector<Partition> chain = cok_chain(mats);
                         Int w = 1;
                         for (uint32_t j = 0; j < k && w != 0; ++j)
                             w *= pgroup::sur_count(p, chain[j], targets[j].at(p));
                         if (w != 0) total += prob * Rational(w);
                     });
    return total;
}

std::vector<MomentEstimate> estimate_moments_batch(
    const SimConfig& config, const std::vector<std::vector<GroupType>>& target_sets,
    unsigned workers) {
    validate_alpha(config.entry);
    for (const auto& targets : target_sets) {
        if (targets.size() != config.k)
            throw std::invalid_argument("need one target group per step (k targets)");
        for (const auto& target : targets)
            for (const auto& [p, la] : target.components()) {
                auto it = config.levels.find(p);
                uint32_t needed = la.parts().empty() ? 0 : la.parts()[0];
                if (it == config.levels.end() || it->second < needed)
                    throw std::invalid_argument(
                        "truncation level too small: need L_" + std::to_string(p) + " >= " +
                        std::to_string(needed) + " to preserve surjection counts onto the target");
            }
    }
    if (config.mode != Mode::CokJoint)
        throw std::invalid_argument("estimate_moments requires cok_joint mode");

    const std::size_t nt = target_sets.size();
    const uint64_t nchunks = (config.samples + config.chunk_size - 1) / config.chunk_size;
    std::vector<std::vector<double>> sums(nchunks, std::vector<double>(nt, 0));
    std::vector<std::vector<double>> sumsqs(nchunks, std::vector<double>(nt, 0));

    std::vector<uint64_t> primes;
    for (const auto& [p, l] : config.levels) primes.push_back(p);

    run_chunks(config, workers,
               [&](SampleEngine& engine, uint64_t c, uint64_t begin, uint64_t end, SplitMix64& rng) {
                   std::vector<double> sum(nt, 0), sumsq(nt, 0);
                   std::map<uint64_t, std::vector<Partition>> types;
                   // per-worker cache: (target set, step, prime, observed type) -> #Sur
                   std::map<std::tuple<std::size_t, uint32_t, uint64_t, std::vector<uint32_t>>,
                            double>
                       cache;
                   for (uint64_t s = begin; s < end; ++s) {
                       engine.sample_types(rng, types);
                       for (std::size_t ts = 0; ts < nt; ++ts) {
                           double w = 1;
                           for (uint32_t j = 0; j < config.k && w != 0; ++j)
                               for (uint64_t p : primes) {
                                   auto key = std::make_tuple(ts, j, p, types[p][j].parts());
                                   auto it = cache.find(key);
                                   double f;
                                   if (it != cache.end()) {
                                       f = it->second;
                                   } else {
                                       f = static_cast<double>(pgroup::sur_count(
                                           p, types[p][j], target_sets[ts][j].at(p)));
                                       cache.emplace(key, f);
                                   }
                                   w *= f;
                                   if (w == 0) break;
                               }
                           sum[ts] += w;
                           sumsq[ts] += w * w;
                       }
                   }
                   sums[c] = std::move(sum);
                   sumsqs[c] = std::move(sumsq);
               });

    std::vector<MomentEstimate> out(nt);
    double n = static_cast<double>(config.samples);
    for (std::size_t ts = 0; ts < nt; ++ts) {
        double sum = 0, sumsq = 0;
        for (uint64_t c = 0; c < nchunks; ++c) {
            sum += sums[c][ts];
            sumsq += sumsqs[c][ts];
        }
        out[ts].samples = config.samples;
        out[ts].mean = sum / n;
        double var = n > 1 ? std::max(0.0, (sumsq - n * out[ts].mean * out[ts].mean) / (n - 1)) : 0.0;
        out[ts].stderr_ = std::sqrt(var / n);
    }
    return out;
}

MomentEstimate estimate_moments(const SimConfig& config, const std::vector<GroupType>& targets,
                                unsigned workers) {
    return estimate_moments_batch(config, {targets}, workers)[0];
}

namespace {

double overflow_and_freqs(const EmpiricalJointDistribution& emp, const TheoryTable& table,
                          std::map<std::string, double>& freqs) {
    std::set<std::string> interior;
    for (const auto& [key, v] : table.cells) interior.insert(key);
    double overflow = 0;
    double n = static_cast<double>(emp.total);
    for (const auto& [key, cnt] : emp.counts) {
        if (interior.contains(key))
            freqs[key] = static_cast<double>(cnt) / n;
        else
            overflow += static_cast<double>(cnt) / n;
    }
    return overflow;
}

}  // namespace

CompareReport compare(const EmpiricalJointDistribution& emp, const TheoryTable& table,
                      const CompareThresholds& thresholds) {
    bool mode_match = (emp.mode == Mode::Corank) == (table.mode == TableMode::Corank);
    if (!mode_match) throw std::invalid_argument("mode mismatch between run and table");

    CompareReport report;
    report.thresholds = thresholds;
    std::map<std::string, double> freqs;
    report.overflow_freq = overflow_and_freqs(emp, table, freqs);
    report.overflow_theory = static_cast<double>(table.overflow.value);

    double n = static_cast<double>(emp.total);
    double tv = 0;
    bool z_ok = true;
    for (const auto& [key, v] : table.cells) {
        CellComparison cell;
        cell.key = key;
        cell.theory = static_cast<double>(v.value);
        cell.theory_bound = static_cast<double>(v.bound);
        cell.freq = freqs.contains(key) ? freqs[key] : 0.0;
        cell.stderr_ = std::sqrt(std::max(cell.freq * (1 - cell.freq), 1.0 / n) / n);
        cell.z = (cell.freq - cell.theory) / std::max(cell.stderr_, cell.theory_bound);
        tv += std::abs(cell.freq - cell.theory);
        if (std::abs(cell.z) > thresholds.z_max) z_ok = false;
        report.cells.push_back(cell);
    }
    tv += std::abs(report.overflow_freq - report.overflow_theory);
    report.tv = tv / 2;
    report.pass = report.tv <= thresholds.tv_max && z_ok;
    return report;
}

double empirical_tv(const EmpiricalJointDistribution& a, const EmpiricalJointDistribution& b,
                    const TheoryTable& table) {
    std::map<std::string, double> fa, fb;
    double oa = overflow_and_freqs(a, table, fa);
    double ob = overflow_and_freqs(b, table, fb);
    double tv = std::abs(oa - ob);
    for (const auto& [key, v] : table.cells) {
        double x = fa.contains(key) ? fa[key] : 0.0;
        double y = fb.contains(key) ? fb[key] : 0.0;
        tv += std::abs(x - y);
    }
    return tv / 2;
}

std::string CompareReport::to_json() const {
    nlohmann::json j;
    nlohmann::json cellsj = nlohmann::json::array();
    for (const auto& c : cells)
        cellsj.push_back({{"key", c.key},
                          {"theory", c.theory},
                          {"theory_bound", c.theory_bound},
                          {"freq", c.freq},
                          {"stderr", c.stderr_},
                          {"z", c.z}});
    j["cells"] = cellsj;
    j["tv"] = tv;
    j["overflow"] = {{"theory", overflow_theory}, {"freq", overflow_freq}};
    j["thresholds"] = {{"tv_max", thresholds.tv_max}, {"z_max", thresholds.z_max}};
    j["pass"] = pass;
    return j.dump(2);
}

std::string CompareReport::to_csv() const {
    std::ostringstream out;
    out << "key,theory,theory_bound,freq,stderr,z\n";
    for (const auto& c : cells)
        out << '"' << c.key << "\"," << c.theory << ',' << c.theory_bound << ',' << c.freq << ','
            << c.stderr_ << ',' << c.z << '\n';
    out << "\"(overflow)\"," << overflow_theory << ",0," << overflow_freq << ",,\n";
    return out.str();
}

}  // namespace coklab::mc
