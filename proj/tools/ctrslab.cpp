// ctrslab: conditional term rewriting toolkit command line.
//
// Subcommands: check, transform, rewrite, oracle, corpus.
// Exit codes: 0 verified/true, 1 refuted/false, 2 unverified-caps, 3 input error.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "ctrslab/classify.hpp"
#include "ctrslab/engine.hpp"
#include "ctrslab/format.hpp"
#include "ctrslab/oracle.hpp"
#include "ctrslab/report.hpp"
#include "ctrslab/transform.hpp"

namespace {

using namespace ctrslab;

constexpr int kExitVerified = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitUnverified = 2;
constexpr int kExitInputError = 3;

int exit_code(Verdict v) {
    switch (v) {
        case Verdict::Verified: return kExitVerified;
        case Verdict::Refuted: return kExitRefuted;
        case Verdict::UnverifiedCaps: return kExitUnverified;
    }
    return kExitInputError;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RewriteSystem load_system(const std::string& path) { return parse_system(read_file(path)); }

/// "steps=40,nodes=20000,level=8,size=400" (any subset, any order)
void apply_caps_spec(EngineCaps& caps, const std::string& spec) {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("bad caps entry '" + item + "'");
        std::string key = item.substr(0, eq);
        std::size_t value = std::stoull(item.substr(eq + 1));
        if (key == "steps") caps.max_steps = value;
        else if (key == "nodes") caps.max_nodes = value;
        else if (key == "level") caps.max_level = value;
        else if (key == "size") caps.max_term_size = value;
        else throw std::runtime_error("unknown caps key '" + key + "'");
    }
}

EngineCaps default_caps() {
    EngineCaps caps;
    if (const char* env = std::getenv("CTRSLAB_DEFAULT_CAPS")) apply_caps_spec(caps, env);
    return caps;
}

int run_check(const std::string& file, const std::string& prop) {
    RewriteSystem sys = load_system(file);
    SystemReport rep = classify_system(sys);
    if (prop.empty()) {
        auto flag = [](bool b) { return b ? "true" : "false"; };
        std::cout << "rules: " << sys.rules.size() << "\n"
                  << "kind: " << (sys.kind == SystemKind::Trs ? "trs" : "ctrs") << "\n"
                  << "ll: " << flag(rep.ll) << "\n"
                  << "rl: " << flag(rep.rl) << "\n"
                  << "ne: " << flag(rep.ne) << "\n"
                  << "ground-conditional: " << flag(rep.ground_conditional) << "\n"
                  << "wll: " << flag(rep.wll) << "\n"
                  << "uwll: " << flag(rep.ultra_wll) << "\n"
                  << "deterministic: " << flag(rep.deterministic) << "\n"
                  << "syntactically-deterministic: " << flag(rep.syntactically_deterministic)
                  << "\n"
                  << "normal: " << flag(rep.normal) << "\n"
                  << "constructor-system: " << flag(rep.constructor_system) << "\n"
                  << "max-type: " << rep.max_type << "\n"
                  << "3-dctrs: " << flag(rep.dctrs3) << "\n"
                  << "note: " << rep.note << "\n";
        return kExitVerified;
    }
    bool value;
    if (prop == "wll") value = rep.wll;
    else if (prop == "uwll") value = rep.ultra_wll;
    else if (prop == "ll") value = rep.ll;
    else if (prop == "rl") value = rep.rl;
    else if (prop == "ne") value = rep.ne;
    else if (prop == "det") value = rep.deterministic;
    else if (prop == "normal") value = rep.normal;
    else if (prop == "consys") value = rep.constructor_system;
    else if (prop == "type") {
        std::cout << rep.max_type << "\n";
        return rep.max_type <= 3 ? kExitVerified : kExitRefuted;
    } else
        throw std::runtime_error("unknown property '" + prop + "'");
    std::cout << (value ? "true" : "false") << "\n";
    return value ? kExitVerified : kExitRefuted;
}

int run_transform(const std::string& file, const std::string& method, const std::string& out) {
    RewriteSystem sys = load_system(file);
    TransformContext ctx;
    if (method == "u") ctx = unravel(sys);
    else if (method == "t") ctx = linearize(sys);
    else if (method == "sr") ctx = sr_transform(sys);
    else throw std::runtime_error("unknown method '" + method + "'");
    std::string text = render_system(ctx.target);
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream os(out);
        if (!os) throw std::runtime_error("cannot write " + out);
        os << text;
    }
    return kExitVerified;
}

int run_rewrite(const std::string& file, const std::string& term_text, bool conditional,
                const EngineCaps& caps) {
    RewriteSystem sys = load_system(file);
    Term seed = parse_term(term_text, sys);
    if (!conditional && sys.kind != SystemKind::Trs)
        throw std::runtime_error("system is conditional; pass --conditional");
    DerivationGraph g = conditional ? ctrs_reachable(sys, seed, caps)
                                    : trs_reachable(sys, seed, caps);
    std::cout << "reachable: " << g.nodes.size() << " terms, "
              << (g.truncated ? "truncated" : "complete-within-caps") << "\n";
    std::vector<Term> sorted = g.nodes;
    std::sort(sorted.begin(), sorted.end(), TermLess{});
    for (const Term& t : sorted) std::cout << to_string(t) << "\n";
    return g.truncated ? kExitUnverified : kExitVerified;
}

std::vector<Term> load_seed_terms(const std::string& path, const RewriteSystem& sys) {
    std::vector<Term> seeds;
    std::istringstream in(read_file(path));
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        seeds.push_back(parse_term(line, sys));
    }
    return seeds;
}

int run_oracle(const std::string& file, const std::string& check, const std::string& method,
               const std::string& seeds_file, std::size_t random_count, std::uint64_t rng_seed,
               const EngineCaps& caps) {
    RewriteSystem sys = load_system(file);

    if (check == "iff") {
        bool ok = check_iff_theorem(sys);
        std::cout << "iff-theorem: " << (ok ? "true" : "false") << "\n";
        return ok ? kExitVerified : kExitRefuted;
    }

    std::vector<Term> seeds;
    if (!seeds_file.empty()) {
        seeds = load_seed_terms(seeds_file, sys);
    } else {
        std::vector<Term> pool = enumerate_ground_terms(sys, std::max<std::size_t>(
                                                                 random_count * 8, 32));
        std::mt19937_64 rng(rng_seed);
        std::shuffle(pool.begin(), pool.end(), rng);
        std::size_t keep = std::min(pool.size(), random_count ? random_count : 4);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(keep), pool.end());
        seeds = std::move(pool);
    }
    if (seeds.empty()) throw std::runtime_error("no seed terms");

    CheckReport report;
    std::string method_name = method;
    if (check == "t-equiv") {
        report = check_t_equivalence(sys, std::span<const Term>(seeds), caps);
        method_name = "t";
    } else {
        SimulationPair pair = method == "u" ? make_pair_u(sys)
                              : method == "sr" ? make_pair_sr(sys)
                              : method == "sr-t" ? make_pair_sr_t(sys)
                                                 : throw std::runtime_error(
                                                       "unknown method '" + method + "'");
        if (check == "soundness")
            report = check_soundness(pair, std::span<const Term>(seeds), caps);
        else if (check == "completeness")
            report = check_completeness(pair, std::span<const Term>(seeds), caps);
        else
            throw std::runtime_error("unknown check '" + check + "'");
    }
    for (const ProbeReport& p : report.probes) {
        std::cout << p.name << ": " << verdict_name(p.verdict);
        if (!p.note.empty()) std::cout << " (" << p.note << ")";
        std::cout << "\n";
    }
    Verdict v = report.aggregate();
    std::cout << "aggregate: " << verdict_name(v) << "\n";
    std::cout << report_json(file, method_name, report).dump() << "\n";
    return exit_code(v);
}

int run_corpus(const std::string& dir, const std::string& report_path,
               const CorpusConfig& config) {
    std::vector<CorpusEntry> entries;
    std::vector<std::pair<std::string, std::string>> parse_errors;
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".ctrs")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& path : files) {
        try {
            entries.push_back({path.filename().string(), load_system(path.string())});
        } catch (const std::exception& e) {
            parse_errors.emplace_back(path.filename().string(), e.what());
        }
    }
    CorpusReport report = run_corpus(std::span<const CorpusEntry>(entries), config);
    for (const SystemProbes& sp : report.systems) {
        Verdict v = Verdict::Verified;
        for (const ProbeReport& p : sp.probes)
            if (p.note.find("out-of-class") == std::string::npos) v = worst(v, p.verdict);
        std::cout << sp.system << ": " << (sp.iff_theorem ? "" : "iff-FAILED ")
                  << verdict_name(v) << " (" << sp.probes.size() << " probes, "
                  << sp.skipped.size() << " skipped)\n";
    }
    for (const auto& [file, error] : parse_errors)
        std::cout << file << ": parse error: " << error << "\n";

    if (!report_path.empty()) {
        nlohmann::json j = to_json(report);
        if (!parse_errors.empty()) {
            nlohmann::json errs = nlohmann::json::array();
            for (const auto& [file, error] : parse_errors)
                errs.push_back({{"system", file}, {"error", error}});
            j["parse_errors"] = errs;
        }
        std::ofstream os(report_path);
        if (!os) throw std::runtime_error("cannot write " + report_path);
        os << j.dump(2) << "\n";
    }
    return exit_code(report.aggregate());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"conditional term rewriting toolkit"};
    app.require_subcommand(1);

    EngineCaps caps = default_caps();
    std::string caps_spec;

    // check
    auto* check = app.add_subcommand("check", "classify a system");
    std::string check_file, check_prop;
    check->add_option("file", check_file)->required();
    check->add_option("--prop", check_prop)
        ->check(CLI::IsMember({"wll", "uwll", "ll", "rl", "ne", "det", "type", "normal",
                               "consys"}));

    // transform
    auto* transform = app.add_subcommand("transform", "apply U, T or SR");
    std::string tf_file, tf_method, tf_out;
    transform->add_option("file", tf_file)->required();
    transform->add_option("--method", tf_method)
        ->required()
        ->check(CLI::IsMember({"u", "t", "sr"}));
    transform->add_option("--out", tf_out);

    // rewrite
    auto* rewrite = app.add_subcommand("rewrite", "bounded reachability from a term");
    std::string rw_file, rw_term;
    bool rw_conditional = false;
    rewrite->add_option("file", rw_file)->required();
    rewrite->add_option("--term", rw_term)->required();
    rewrite->add_flag("--conditional", rw_conditional);
    rewrite->add_option("--max-steps", caps.max_steps);
    rewrite->add_option("--max-level", caps.max_level);
    rewrite->add_option("--max-nodes", caps.max_nodes);
    rewrite->add_option("--max-term-size", caps.max_term_size);

    // oracle
    auto* oracle = app.add_subcommand("oracle", "check soundness/completeness theorems");
    std::string or_file, or_check, or_method = "u", or_seeds;
    std::size_t or_random = 0;
    std::uint64_t or_seed = 1;
    oracle->add_option("file", or_file)->required();
    oracle->add_option("--check", or_check)
        ->required()
        ->check(CLI::IsMember({"soundness", "completeness", "t-equiv", "iff"}));
    oracle->add_option("--method", or_method)->check(CLI::IsMember({"u", "sr", "sr-t"}));
    oracle->add_option("--seeds", or_seeds);
    oracle->add_option("--random", or_random);
    oracle->add_option("--seed", or_seed);
    oracle->add_option("--caps", caps_spec);

    // corpus
    auto* corpus = app.add_subcommand("corpus", "run all probes over a directory");
    std::string cp_dir, cp_report;
    CorpusConfig cp_config;
    corpus->add_option("dir", cp_dir)->required();
    corpus->add_option("--report", cp_report);
    corpus->add_option("--seeds-per-system", cp_config.seed_count);
    corpus->add_option("--caps", caps_spec);

    CLI11_PARSE(app, argc, argv);

    try {
        if (!caps_spec.empty()) apply_caps_spec(caps, caps_spec);
        if (check->parsed()) return run_check(check_file, check_prop);
        if (transform->parsed()) return run_transform(tf_file, tf_method, tf_out);
        if (rewrite->parsed()) return run_rewrite(rw_file, rw_term, rw_conditional, caps);
        if (oracle->parsed())
            return run_oracle(or_file, or_check, or_method, or_seeds, or_random, or_seed, caps);
        if (corpus->parsed()) {
            cp_config.caps = caps;
            return run_corpus(cp_dir, cp_report, cp_config);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
