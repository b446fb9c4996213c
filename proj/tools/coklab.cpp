// coklab: exact limit laws, Hall-Littlewood evaluation, and Monte-Carlo
// harness for cokernels and coranks of random integer matrix products.

#include "coklab/concrete_group.hpp"
#include "coklab/hall_littlewood.hpp"
#include "coklab/limit_laws.hpp"
#include "coklab/matrix_engine.hpp"
#include "coklab/montecarlo.hpp"
#include "coklab/pgroup.hpp"
#include "coklab/seq_classes.hpp"
#include "coklab/version.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

using namespace coklab;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitBound = 2;

json bounded_json(const Bounded& b) {
    return json{{"value", b.value_d()}, {"error_bound", b.bound_d()}};
}

json hlvalue_json(const hl::HLValue& v) {
    if (v.exact) return json{{"value", rational_to_string(*v.exact)}, {"exact", true}};
    return bounded_json(v.approx);
}

void emit(const std::string& command, json result, const std::string& out_path,
          json provenance = json::object()) {
    json doc;
    doc["tool"] = "coklab";
    doc["version"] = kVersion;
    doc["command"] = command;
    if (!provenance.empty()) doc["provenance"] = provenance;
    doc["result"] = std::move(result);
    std::string text = doc.dump(2);
    if (out_path.empty() || out_path == "-") {
        std::cout << text << "\n";
    } else {
        std::ofstream f(out_path);
        if (!f) throw std::invalid_argument("cannot open output path: " + out_path);
        f << text << "\n";
    }
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot read file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<uint32_t> parse_pattern(const std::string& s) {
    std::vector<uint32_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(static_cast<uint32_t>(std::stoul(tok)));
    return out;
}

std::set<uint64_t> parse_primes(const std::string& s) {
    std::set<uint64_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.insert(std::stoull(tok));
    return out;
}

std::vector<Partition> parse_type_list(const std::string& s) {
    std::vector<Partition> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ';')) out.push_back(Partition::parse(tok));
    if (out.empty()) throw std::invalid_argument("empty type list");
    return out;
}

std::vector<GroupType> parse_group_list(const std::string& s) {
    auto arr = json::parse(s);
    if (!arr.is_array()) throw std::invalid_argument("expected a JSON array of group types");
    std::vector<GroupType> out;
    for (const auto& g : arr) out.push_back(GroupType::parse_json(g.dump()));
    return out;
}

std::vector<Rational> parse_rational_list(const std::string& s) {
    std::vector<Rational> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_rational(tok));
    return out;
}

// "1,t" or "t,t2" style geometric family prefixes: the first token fixes the
// starting exponent
hl::SpecDescriptor parse_family(const std::string& s, uint32_t mult) {
    std::string first = s.substr(0, s.find(','));
    uint32_t a;
    if (first == "1") {
        a = 0;
    } else if (first == "t") {
        a = 1;
    } else if (first.size() > 1 && first[0] == 't') {
        std::string exp = first.substr(1);
        if (!exp.empty() && exp[0] == '^') exp = exp.substr(1);
        a = static_cast<uint32_t>(std::stoul(exp));
    } else {
        throw std::invalid_argument("cannot parse family start: " + first);
    }
    return hl::SpecDescriptor::geometric(a, mult);
}

MatrixModPrimePower matrix_from_json(const std::string& text, uint64_t p, uint32_t level) {
    auto rows = json::parse(text);
    if (!rows.is_array() || rows.empty()) throw std::invalid_argument("expected a JSON matrix");
    uint32_t n = static_cast<uint32_t>(rows.size());
    MatrixModPrimePower m = MatrixModPrimePower::zero(n, p, level);
    for (uint32_t i = 0; i < n; ++i) {
        if (!rows[i].is_array() || rows[i].size() != n)
            throw std::invalid_argument("matrix must be square");
        for (uint32_t j = 0; j < n; ++j) {
            int64_t v = rows[i][j].get<int64_t>();
            int64_t mod = static_cast<int64_t>(m.modulus);
            m.at(i, j) = static_cast<uint32_t>(((v % mod) + mod) % mod);
        }
    }
    return m;
}

mc::EntryDistributionSpec entry_from_flags(uint64_t modulus, const std::string& preset,
                                           const std::string& entry_json) {
    if (!entry_json.empty()) return mc::EntryDistributionSpec::from_json(entry_json);
    if (preset == "uniform" || preset.empty()) return mc::EntryDistributionSpec::uniform(modulus);
    if (preset.rfind("bernoulli:", 0) == 0)
        return mc::EntryDistributionSpec::bernoulli01(modulus,
                                                      parse_rational(preset.substr(10)));
    if (preset.rfind("signed:", 0) == 0) {
        auto probs = parse_rational_list(preset.substr(7));
        if (probs.size() != 3)
            throw std::invalid_argument("signed preset needs P(-1),P(0),P(1)");
        return mc::EntryDistributionSpec::signed_law(modulus, probs[0], probs[1], probs[2]);
    }
    throw std::invalid_argument("unknown entry preset: " + preset);
}

// Structural validation of a result document; every command's output must
// re-parse through this.
void validate_document(const json& doc) {
    for (const char* field : {"tool", "version", "command", "result"})
        if (!doc.contains(field))
            throw std::invalid_argument(std::string("missing field: ") + field);
    if (doc.at("tool") != "coklab") throw std::invalid_argument("not a coklab document");
    std::function<void(const json&)> walk = [&](const json& node) {
        if (node.is_object()) {
            if (node.contains("value") && node.at("value").is_number() &&
                !node.contains("error_bound") && !node.contains("exact"))
                throw std::invalid_argument("approximate value without error_bound");
            for (const auto& [key, child] : node.items()) walk(child);
        } else if (node.is_array()) {
            for (const auto& child : node) walk(child);
        } else if (node.is_number_float()) {
            double v = node.get<double>();
            if (!std::isfinite(v)) throw std::invalid_argument("non-finite number in document");
        }
    };
    walk(doc.at("result"));
}

int run(int argc, char** argv);

int run(int argc, char** argv) {
    CLI::App app{"cokernel limit laws for random integer matrix products"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string out_path;
    app.add_option("--out", out_path, "write the result document to this path (default stdout)");

    // ---- theory ----------------------------------------------------------
    auto* theory = app.add_subcommand("theory", "closed-form limit distributions");
    theory->require_subcommand(1);
    theory->fallthrough();

    auto* t_corank = theory->add_subcommand("corank", "limiting corank-pattern probability");
    uint64_t tc_p = 2;
    uint32_t tc_k = 1;
    std::string tc_pattern;
    t_corank->add_option("--p", tc_p, "prime")->required();
    t_corank->add_option("--k", tc_k, "number of factors");
    t_corank->add_option("--pattern", tc_pattern, "corank pattern r1,...,rk")->required();

    auto* t_rank = theory->add_subcommand("rank-step", "one-step rank transition, exact");
    uint64_t tr_p = 2;
    uint32_t tr_n = 1, tr_prior = 0, tr_d = 0;
    t_rank->add_option("--p", tr_p)->required();
    t_rank->add_option("--n", tr_n)->required();
    t_rank->add_option("--prior", tr_prior, "corank of the fixed factor");
    t_rank->add_option("--d", tr_d, "additional corank")->required();

    auto* t_prod = theory->add_subcommand("cok-prod", "limit law of cok(M_1...M_k)");
    std::string tp_primes, tp_group;
    uint32_t tp_k = 1;
    t_prod->add_option("--primes", tp_primes)->required();
    t_prod->add_option("--k", tp_k)->required();
    t_prod->add_option("--group", tp_group, "target group JSON, e.g. {\"2\":\"2,1\"}")->required();

    auto* t_joint = theory->add_subcommand("cok-joint", "joint limit law of the partial products");
    std::string tj_primes, tj_groups;
    uint32_t tj_k = 1;
    t_joint->add_option("--primes", tj_primes)->required();
    t_joint->add_option("--k", tj_k)->required();
    t_joint->add_option("--groups", tj_groups, "JSON array of group types")->required();

    auto* t_table = theory->add_subcommand("table", "truncation-aware theory table");
    uint64_t tt_p = 2;
    uint32_t tt_L = 1, tt_k = 1;
    std::string tt_mode = "corank";
    t_table->add_option("--p", tt_p)->required();
    t_table->add_option("--L", tt_L, "truncation level (corank mode: total-corank cap)")->required();
    t_table->add_option("--k", tt_k)->required();
    t_table->add_option("--mode", tt_mode, "corank | cok_single | cok_joint");

    // ---- oracle ----------------------------------------------------------
    auto* oracle = app.add_subcommand("oracle", "exhaustive small-instance oracles");
    oracle->require_subcommand(1);
    oracle->fallthrough();

    auto* o_ex = oracle->add_subcommand("exhaustive", "enumerate every matrix tuple");
    uint32_t oe_n = 1, oe_k = 1, oe_L = 1;
    uint64_t oe_p = 2;
    std::string oe_mode = "corank", oe_preset, oe_entry;
    o_ex->add_option("--n", oe_n)->required();
    o_ex->add_option("--p", oe_p)->required();
    o_ex->add_option("--k", oe_k)->required();
    o_ex->add_option("--L", oe_L, "level (entries mod p^L)");
    o_ex->add_option("--mode", oe_mode, "corank | cok_joint");
    o_ex->add_option("--preset", oe_preset, "uniform | bernoulli:<q>");
    o_ex->add_option("--entry-json", oe_entry, "explicit entry law JSON");

    auto* o_census = oracle->add_subcommand("census", "subgroup census of one p-group");
    uint64_t oc_p = 2;
    std::string oc_type;
    bool oc_verbose = false;
    o_census->add_option("--p", oc_p)->required();
    o_census->add_option("--type", oc_type, "partition, e.g. 2,1")->required();
    o_census->add_flag("--verbose", oc_verbose, "include the subgroup list");

    auto* o_snf = oracle->add_subcommand("snf", "Smith-form cokernel type of one matrix");
    uint64_t os_p = 2;
    uint32_t os_L = 1;
    std::string os_matrix;
    o_snf->add_option("--p", os_p)->required();
    o_snf->add_option("--L", os_L)->required();
    o_snf->add_option("--matrix", os_matrix, "row-major JSON array, e.g. [[2,1],[0,2]]")->required();

    auto* o_chain = oracle->add_subcommand("cok-chain", "cokernel types of the partial products");
    uint64_t och_p = 2;
    uint32_t och_L = 1;
    std::string och_matrices;
    o_chain->add_option("--p", och_p)->required();
    o_chain->add_option("--L", och_L)->required();
    o_chain->add_option("--matrices", och_matrices, "JSON array of row-major matrices")->required();

    auto* o_nk = oracle->add_subcommand("nk", "subgroup chain count n_k");
    std::string on_group;
    uint32_t on_k = 1;
    o_nk->add_option("--group", on_group)->required();
    o_nk->add_option("--k", on_k)->required();

    auto* o_mk = oracle->add_subcommand("mk", "joint chain count m_k");
    std::string om_groups;
    o_mk->add_option("--groups", om_groups, "JSON array of group types")->required();

    // ---- simulate / moments / compare -------------------------------------
    auto* simulate = app.add_subcommand("simulate", "seeded Monte-Carlo simulation");
    std::string sim_config;
    int64_t sim_seed = -1;
    unsigned sim_workers = 1;
    simulate->add_option("--config", sim_config, "SimConfig JSON file")->required();
    simulate->add_option("--seed", sim_seed, "master seed (required here or in the config)");
    simulate->add_option("--workers", sim_workers, "worker threads");

    auto* moments = app.add_subcommand("moments", "streaming surjection-moment estimates");
    std::string mo_config, mo_targets;
    int64_t mo_seed = -1;
    unsigned mo_workers = 1;
    moments->add_option("--config", mo_config)->required();
    moments->add_option("--targets", mo_targets, "JSON array of k group types")->required();
    moments->add_option("--seed", mo_seed);
    moments->add_option("--workers", mo_workers);

    auto* cmp = app.add_subcommand("compare", "empirical vs theory comparison");
    std::string cp_emp, cp_theory, cp_emp_b, cp_csv;
    double cp_tv = 0.01, cp_z = 5.0;
    cmp->add_option("--emp", cp_emp, "empirical result JSON file")->required();
    cmp->add_option("--theory", cp_theory, "theory table JSON file");
    cmp->add_option("--emp-b", cp_emp_b, "second empirical file (TV between runs)");
    cmp->add_option("--tv-max", cp_tv);
    cmp->add_option("--z-max", cp_z);
    cmp->add_option("--csv", cp_csv, "also write per-cell rows as CSV");

    // ---- hl ----------------------------------------------------------------
    auto* hlcmd = app.add_subcommand("hl", "Hall-Littlewood evaluation");
    hlcmd->require_subcommand(1);
    hlcmd->fallthrough();

    auto* h_eval = hlcmd->add_subcommand("eval", "exact evaluation at explicit variables");
    std::string he_kind = "P", he_lambda, he_mu, he_vars, he_t;
    h_eval->add_option("--kind", he_kind, "P | Q");
    h_eval->add_option("--lambda", he_lambda)->required();
    h_eval->add_option("--mu", he_mu, "skew base (optional)");
    h_eval->add_option("--vars", he_vars, "comma list of rationals")->required();
    h_eval->add_option("--t", he_t)->required();

    auto* h_prin = hlcmd->add_subcommand("principal", "geometric specialization");
    std::string hp_kind = "P", hp_lambda, hp_mu, hp_family = "1,t", hp_t;
    uint32_t hp_mult = 1;
    double hp_tol = 1e-12;
    h_prin->add_option("--kind", hp_kind);
    h_prin->add_option("--lambda", hp_lambda)->required();
    h_prin->add_option("--mu", hp_mu);
    h_prin->add_option("--family", hp_family, "family prefix: 1,t or t,t2");
    h_prin->add_option("--mult", hp_mult, "repeat each power this many times");
    h_prin->add_option("--t", hp_t)->required();
    h_prin->add_option("--tol", hp_tol);

    auto* h_cauchy = hlcmd->add_subcommand("cauchy", "Cauchy kernel");
    std::string hc_fa = "1,t", hc_fb = "t,t2", hc_t;
    uint32_t hc_ma = 1, hc_mb = 1;
    double hc_tol = 1e-12;
    h_cauchy->add_option("--family-a", hc_fa);
    h_cauchy->add_option("--family-b", hc_fb);
    h_cauchy->add_option("--mult-a", hc_ma);
    h_cauchy->add_option("--mult-b", hc_mb);
    h_cauchy->add_option("--t", hc_t)->required();
    h_cauchy->add_option("--tol", hc_tol);

    auto* h_mp = hlcmd->add_subcommand("measure-prod", "k-step product measure of one type");
    std::string hm_lambda, hm_t;
    uint32_t hm_k = 1;
    double hm_tol = 1e-10;
    h_mp->add_option("--lambda", hm_lambda)->required();
    h_mp->add_option("--k", hm_k)->required();
    h_mp->add_option("--t", hm_t)->required();
    h_mp->add_option("--tol", hm_tol);

    auto* h_mj = hlcmd->add_subcommand("measure-joint", "joint measure of a type tuple");
    std::string hj_lambdas, hj_t;
    double hj_tol = 1e-10;
    h_mj->add_option("--lambdas", hj_lambdas, "types in step order la1;...;lak")->required();
    h_mj->add_option("--t", hj_t)->required();
    h_mj->add_option("--tol", hj_tol);

    // ---- seq ---------------------------------------------------------------
    auto* seqcmd = app.add_subcommand("seq", "sequences of surjections and their classes");
    seqcmd->require_subcommand(1);
    seqcmd->fallthrough();

    auto* s_classify = seqcmd->add_subcommand("classify", "isomorphism classes of k-sequences");
    uint64_t sc_p = 2;
    std::string sc_types;
    s_classify->add_option("--p", sc_p)->required();
    s_classify->add_option("--types", sc_types, "types top-down, e.g. \"2,1;1\"")->required();

    auto* s_marginal = seqcmd->add_subcommand("marginal", "exact marginal identity check");
    uint64_t sm_p = 2;
    std::string sm_types;
    s_marginal->add_option("--p", sm_p)->required();
    s_marginal->add_option("--types", sm_types)->required();

    // ---- validate ----------------------------------------------------------
    auto* validate = app.add_subcommand("validate", "validate a result document");
    std::string v_file;
    validate->add_option("--file", v_file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    }

    if (t_corank->parsed()) {
        Bounded v = corank_joint_limit(tc_p, parse_pattern(tc_pattern));
        emit("theory corank", json{{"prob", v.value_d()}, {"bound", v.bound_d()}}, out_path);
    } else if (t_rank->parsed()) {
        Rational v = rank_step(tr_p, tr_n, tr_prior, tr_d);
        emit("theory rank-step", json{{"prob", rational_to_string(v)}}, out_path);
    } else if (t_prod->parsed()) {
        Bounded v = cok_prod_limit(parse_primes(tp_primes), tp_k, GroupType::parse_json(tp_group));
        emit("theory cok-prod", json{{"prob", v.value_d()}, {"bound", v.bound_d()}}, out_path);
    } else if (t_joint->parsed()) {
        Bounded v = cok_joint_limit(parse_primes(tj_primes), tj_k, parse_group_list(tj_groups));
        emit("theory cok-joint", json{{"prob", v.value_d()}, {"bound", v.bound_d()}}, out_path);
    } else if (t_table->parsed()) {
        TheoryTable table = theory_table(tt_p, tt_L, tt_k, table_mode_from_name(tt_mode));
        emit("theory table", json::parse(table.to_json()), out_path);
    } else if (o_ex->parsed()) {
        uint64_t modulus = 1;
        for (uint32_t i = 0; i < oe_L; ++i) modulus *= oe_p;
        auto entry = entry_from_flags(modulus, oe_preset, oe_entry);
        auto mode = oe_mode == "corank" ? mc::Mode::Corank : mc::Mode::CokJoint;
        auto cells = mc::exhaustive_joint(oe_n, oe_p, oe_L, oe_k, entry, mode,
                                          max_enum_bound(std::size_t{1} << 24));
        json out = json::object();
        for (const auto& [key, prob] : cells) out[key] = rational_to_string(prob);
        emit("oracle exhaustive", json{{"cells", out}, {"mode", oe_mode}}, out_path);
    } else if (o_census->parsed()) {
        CensusRecord rec = brute_census(oc_p, Partition::parse(oc_type));
        json out;
        out["order"] = rec.order;
        out["subgroup_count"] = rec.subgroups.size();
        out["aut_count"] = rec.aut_count.str();
        json counts = json::object();
        for (const auto& [mu, cnt] : rec.subgroup_type_counts) counts[mu.to_string()] = cnt.str();
        out["subgroup_type_counts"] = counts;
        if (oc_verbose) {
            json subs = json::array();
            for (const auto& [elems, type] : rec.subgroups) {
                json elements = json::array();
                elems.for_each([&](uint32_t x) { elements.push_back(x); });
                subs.push_back(json{{"type", type.to_string()}, {"elements", elements}});
            }
            out["subgroups"] = subs;
        }
        emit("oracle census", out, out_path);
    } else if (o_snf->parsed()) {
        MatrixModPrimePower m = matrix_from_json(os_matrix, os_p, os_L);
        emit("oracle snf",
             json{{"type", snf_type(m).to_string()}, {"rank_mod_p", rank_fp(m)}}, out_path);
    } else if (o_chain->parsed()) {
        auto arr = json::parse(och_matrices);
        if (!arr.is_array() || arr.empty())
            throw std::invalid_argument("expected a nonempty JSON array of matrices");
        std::vector<MatrixModPrimePower> ms;
        for (const auto& mj : arr) ms.push_back(matrix_from_json(mj.dump(), och_p, och_L));
        json types = json::array();
        for (const Partition& la : cok_chain(ms)) types.push_back(la.to_string());
        emit("oracle cok-chain", json{{"types", types}}, out_path);
    } else if (o_nk->parsed()) {
        Int v = pgroup::chain_count_nk(GroupType::parse_json(on_group), on_k);
        emit("oracle nk", json{{"count", v.str()}}, out_path);
    } else if (o_mk->parsed()) {
        Int v = joint_chain_count_mk(parse_group_list(om_groups));
        emit("oracle mk", json{{"count", v.str()}}, out_path);
    } else if (simulate->parsed()) {
        mc::SimConfig cfg = mc::SimConfig::from_json(read_file(sim_config));
        json raw = json::parse(read_file(sim_config));
        if (sim_seed >= 0)
            cfg.seed = static_cast<uint64_t>(sim_seed);
        else if (!raw.contains("seed"))
            throw std::invalid_argument("simulate requires an explicit --seed (no wall-clock default)");
        auto result = mc::simulate_joint(cfg, sim_workers);
        emit("simulate", json::parse(result.to_json()), out_path,
             json{{"config_hash", result.config_hash}, {"seed", result.seed}});
    } else if (moments->parsed()) {
        mc::SimConfig cfg = mc::SimConfig::from_json(read_file(mo_config));
        json raw = json::parse(read_file(mo_config));
        if (mo_seed >= 0)
            cfg.seed = static_cast<uint64_t>(mo_seed);
        else if (!raw.contains("seed"))
            throw std::invalid_argument("moments requires an explicit --seed");
        auto est = mc::estimate_moments(cfg, parse_group_list(mo_targets), mo_workers);
        emit("moments",
             json{{"mean", est.mean}, {"stderr", est.stderr_}, {"samples", est.samples}},
             out_path, json{{"config_hash", cfg.config_hash()}, {"seed", cfg.seed}});
    } else if (cmp->parsed()) {
        auto emp = mc::EmpiricalJointDistribution::from_json(read_file(cp_emp));
        if (!cp_emp_b.empty()) {
            if (cp_theory.empty())
                throw std::invalid_argument("--emp-b comparison still needs --theory for bucketing");
            auto empb = mc::EmpiricalJointDistribution::from_json(read_file(cp_emp_b));
            TheoryTable table = TheoryTable::from_json(read_file(cp_theory));
            double tv = mc::empirical_tv(emp, empb, table);
            emit("compare", json{{"tv_empirical", tv}}, out_path);
        } else {
            if (cp_theory.empty()) throw std::invalid_argument("--theory required");
            TheoryTable table = TheoryTable::from_json(read_file(cp_theory));
            auto report = mc::compare(emp, table, {cp_tv, cp_z});
            if (!cp_csv.empty()) {
                std::ofstream f(cp_csv);
                f << report.to_csv();
            }
            emit("compare", json::parse(report.to_json()), out_path);
        }
    } else if (h_eval->parsed()) {
        hl::Kind kind = he_kind == "Q" ? hl::Kind::Q : hl::Kind::P;
        Rational v = hl::eval(kind, Partition::parse(he_lambda), Partition::parse(he_mu),
                              parse_rational_list(he_vars), parse_rational(he_t));
        emit("hl eval", json{{"value", rational_to_string(v)}, {"exact", true}}, out_path);
    } else if (h_prin->parsed()) {
        hl::Kind kind = hp_kind == "Q" ? hl::Kind::Q : hl::Kind::P;
        Bounded v = hl::principal(kind, Partition::parse(hp_lambda), Partition::parse(hp_mu),
                                  parse_family(hp_family, hp_mult), parse_rational(hp_t), hp_tol);
        emit("hl principal", bounded_json(v), out_path);
    } else if (h_cauchy->parsed()) {
        Bounded v = hl::cauchy_kernel(parse_family(hc_fa, hc_ma), parse_family(hc_fb, hc_mb),
                                      parse_rational(hc_t), hc_tol);
        emit("hl cauchy", bounded_json(v), out_path);
    } else if (h_mp->parsed()) {
        Bounded v = hl::measure_prod(Partition::parse(hm_lambda), hm_k, parse_rational(hm_t), hm_tol);
        emit("hl measure-prod", bounded_json(v), out_path);
    } else if (h_mj->parsed()) {
        Bounded v = hl::measure_joint(parse_type_list(hj_lambdas), parse_rational(hj_t), hj_tol);
        emit("hl measure-joint", bounded_json(v), out_path);
    } else if (s_classify->parsed()) {
        auto classes = seq::classify(sc_p, parse_type_list(sc_types), max_enum_bound(1000000));
        unsigned k = static_cast<unsigned>(parse_type_list(sc_types).size());
        json arr = json::array();
        for (const auto& cls : classes) {
            Bounded measure = seq::seq_measure(cls, sc_p, k);
            json rep = json::array();
            for (const auto& m : cls.representative.maps) {
                json mat = json::array();
                for (uint32_t i = 0; i < m.rows; ++i) {
                    json row = json::array();
                    for (uint32_t j = 0; j < m.cols; ++j) row.push_back(m.at(i, j));
                    mat.push_back(row);
                }
                rep.push_back(mat);
            }
            arr.push_back(json{{"size", cls.size.str()},
                               {"aut_count", cls.aut_count.str()},
                               {"measure", bounded_json(measure)},
                               {"representative", rep}});
        }
        emit("seq classify", json{{"classes", arr}}, out_path);
    } else if (s_marginal->parsed()) {
        auto verdict = seq::marginal_check(sm_p, parse_type_list(sm_types), max_enum_bound(1000000));
        emit("seq marginal",
             json{{"class_sum", rational_to_string(verdict.class_sum)},
                  {"product_side", rational_to_string(verdict.product_side)},
                  {"equal", verdict.equal}},
             out_path);
    } else if (validate->parsed()) {
        validate_document(json::parse(read_file(v_file)));
        emit("validate", json{{"valid", true}}, out_path);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::cerr << json{{"error", {{"code", "usage"}, {"message", e.what()}}}}.dump() << "\n";
        return kExitValidation;
    } catch (const BoundExceeded& e) {
        std::cerr << json{{"error", {{"code", "bound_exceeded"}, {"message", e.what()}}}}.dump()
                  << "\n";
        return kExitBound;
    } catch (const DegenerateDistribution& e) {
        std::cerr << json{{"error", {{"code", "degenerate_distribution"}, {"message", e.what()}}}}
                         .dump()
                  << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", {{"code", "invalid_argument"}, {"message", e.what()}}}}.dump()
                  << "\n";
        return kExitValidation;
    }
}
