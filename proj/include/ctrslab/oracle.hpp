#ifndef CTRSLAB_ORACLE_HPP
#define CTRSLAB_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ctrslab/classify.hpp"
#include "ctrslab/engine.hpp"
#include "ctrslab/phi.hpp"
#include "ctrslab/transform.hpp"

namespace ctrslab {

/// Bounded search can prove reachability but never non-reachability, so cap
/// exhaustion is reported as UnverifiedCaps rather than escalated to Refuted.
enum class Verdict { Verified, UnverifiedCaps, Refuted };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Verified: return "verified";
        case Verdict::UnverifiedCaps: return "unverified-caps";
        case Verdict::Refuted: return "refuted";
    }
    return "?";
}

inline Verdict worst(Verdict a, Verdict b) {
    auto rank = [](Verdict v) {
        return v == Verdict::Verified ? 0 : v == Verdict::UnverifiedCaps ? 1 : 2;
    };
    return rank(a) >= rank(b) ? a : b;
}

enum class PhiInitKind { Identity, GuardBar };
enum class PsiBackKind { PartialIdentity, Hat };

inline bool over_signature(const Term& t, const RewriteSystem& sys) {
    if (t.is_var()) return true;
    const Symbol* sym = sys.signature.find(t.name());
    if (!sym || sym->arity != t.arity()) return false;
    for (const Term& a : t.args())
        if (!over_signature(a, sys)) return false;
    return true;
}

/// A transformed system paired with the initialization phi and backtranslation
/// psi of its soundness/completeness statement.
struct SimulationPair {
    std::string name;
    RewriteSystem source;  // the system whose reduction is simulated
    TransformContext ctx;
    PhiInitKind phi_init = PhiInitKind::Identity;
    PsiBackKind psi_back = PsiBackKind::PartialIdentity;

    Term initialize(const Term& t) const {
        return phi_init == PhiInitKind::Identity ? t : guard_bar(t, ctx);
    }

    /// psi; absent where undefined. The partial identity is defined exactly on
    /// source-signature terms; hat images are additionally required to land in
    /// the original signature (relevant for composed SR(T(R)) pairs).
    std::optional<Term> backtranslate(const Term& t) const {
        if (psi_back == PsiBackKind::PartialIdentity) {
            if (over_signature(t, source)) return t;
            return std::nullopt;
        }
        std::optional<Term> h = hat(t, ctx);
        if (h && over_signature(*h, source)) return h;
        return std::nullopt;
    }
};

inline SimulationPair make_pair_u(const RewriteSystem& sys) {
    SimulationPair pair;
    pair.name = "U";
    pair.source = sys;
    pair.ctx = unravel(sys);
    pair.phi_init = PhiInitKind::Identity;
    pair.psi_back = PsiBackKind::PartialIdentity;
    return pair;
}

inline SimulationPair make_pair_sr(const RewriteSystem& sys) {
    SimulationPair pair;
    pair.name = "SR";
    pair.source = sys;
    pair.ctx = sr_transform(sys);
    pair.phi_init = PhiInitKind::GuardBar;
    pair.psi_back = PsiBackKind::Hat;
    return pair;
}

/// Composed transformation SR o T: sound and complete for WLL DCTRSs.
inline SimulationPair make_pair_sr_t(const RewriteSystem& sys) {
    SimulationPair pair;
    pair.name = "SR.T";
    pair.source = sys;
    pair.ctx = sr_transform(linearize(sys).target);
    pair.phi_init = PhiInitKind::GuardBar;
    pair.psi_back = PsiBackKind::Hat;
    return pair;
}

struct DerivationRecord {
    Term from;
    Position pos;
    std::string rule;
    Term to;
};

struct Witness {
    Term seed;
    Term target;
    std::optional<Term> back;
    std::vector<DerivationRecord> derivation;
    std::string note;
};

struct ProbeReport {
    std::string name;
    Verdict verdict = Verdict::Verified;
    std::vector<Witness> witnesses;
    EngineCaps caps;
    std::string note;
};

struct CheckReport {
    std::vector<ProbeReport> probes;

    Verdict aggregate() const {
        Verdict v = Verdict::Verified;
        for (const ProbeReport& p : probes) v = worst(v, p.verdict);
        return v;
    }
};

namespace detail {

inline std::vector<DerivationRecord> record_path(const DerivationGraph& g,
                                                 const std::vector<GraphEdge>& path) {
    std::vector<DerivationRecord> out;
    for (const GraphEdge& e : path)
        out.push_back({g.nodes[e.from], e.pos, e.rule, g.nodes[e.to]});
    return out;
}

inline std::vector<DerivationRecord> record_path(const std::vector<GraphEdge>& path,
                                                 const std::vector<Term>& nodes) {
    std::vector<DerivationRecord> out;
    for (const GraphEdge& e : path) out.push_back({nodes[e.from], e.pos, e.rule, nodes[e.to]});
    return out;
}

}  // namespace detail

/// Soundness probe: every target-side reachable of phi(seed) whose psi image
/// is defined must be source-reachable from the seed. A Refuted verdict
/// requires the source-side search to have completed within caps.
inline CheckReport check_soundness(const SimulationPair& pair, std::span<const Term> seeds,
                                   const EngineCaps& caps) {
    CheckReport report;
    for (const Term& seed : seeds) {
        ProbeReport probe;
        probe.name = pair.name + "-soundness[" + to_string(seed) + "]";
        probe.caps = caps;

        Term init = pair.initialize(seed);
        DerivationGraph target_graph = trs_reachable(pair.ctx.target, init, caps);
        DerivationGraph source_graph = ctrs_reachable(pair.source, seed, caps);

        std::size_t checked = 0;
        bool sample_recorded = false;
        for (const Term& t : target_graph.nodes) {
            std::optional<Term> back = pair.backtranslate(t);
            if (!back) continue;
            ++checked;
            if (source_graph.contains(*back)) {
                if (!sample_recorded && !(*back == seed)) {
                    Witness w{seed, t, back, detail::record_path(target_graph,
                                                                 target_graph.path_to(t)),
                              "verified sample"};
                    probe.witnesses.push_back(std::move(w));
                    sample_recorded = true;
                }
                continue;
            }
            Witness w{seed, t, back,
                      detail::record_path(target_graph, target_graph.path_to(t)), ""};
            if (source_graph.truncated) {
                w.note = "psi image not found; source search truncated";
                probe.verdict = worst(probe.verdict, Verdict::UnverifiedCaps);
            } else {
                w.note = "psi image unreachable in completed source search";
                probe.verdict = worst(probe.verdict, Verdict::Refuted);
            }
            probe.witnesses.push_back(std::move(w));
        }
        probe.note = "checked " + std::to_string(checked) + " psi-defined targets of " +
                     std::to_string(target_graph.nodes.size()) + " reachable";
        if (target_graph.truncated) probe.note += " (target enumeration truncated)";
        report.probes.push_back(std::move(probe));
    }
    return report;
}

namespace detail {

/// Simulates one source step u ->_{p,rule} v of a GuardBar pair as an explicit
/// target derivation sq(bar(u)) ->* sq(bar(v)), following the completeness
/// construction: fire the image rules of the applied rule in order, replay the
/// source derivation of each condition inside the evaluation slot (recursing
/// into the steps of that derivation), then hoist the produced guard along the
/// context spine with the auxiliary rules. Every emitted step is validated by
/// re-applying the named rule at its position, so a returned derivation is a
/// genuine target rewrite sequence.
class GuardBarStepSimulator {
public:
    GuardBarStepSimulator(const SimulationPair& pair, const EngineCaps& caps)
        : pair_(pair), caps_(caps) {}

    std::optional<std::vector<DerivationRecord>> simulate(const Term& u, const Term& v,
                                                          const GraphEdge& e, bool& truncated) {
        std::vector<DerivationRecord> out;
        Term current = pair_.initialize(u);  // sq(bar(u))
        truncated_ = false;
        depth_left_ = 4 * caps_.max_level + 8;  // condition nesting budget
        if (!guarded_step(Position{}, e.pos, e.rule, subterm_at(v, e.pos), current, out) ||
            !(current == pair_.initialize(v))) {
            truncated = truncated_;
            return std::nullopt;
        }
        truncated = false;
        return out;
    }

private:
    const RewriteSystem& source() const { return pair_.ctx.source; }

    /// base addresses a guard node sq(bar(a)); performs a ->_{q,label} b below
    /// it and restores the shape sq(bar(b)) by hoisting.
    bool guarded_step(const Position& base, const Position& q, const std::string& label,
                      const Term& expected_to, Term& current, std::vector<DerivationRecord>& out) {
        Position redex_pos = base;
        redex_pos.push_back(0);
        for (int i : q) redex_pos.push_back(i);
        if (!redex(redex_pos, label, expected_to, current, out)) return false;

        Position spine = q;
        while (!spine.empty()) {
            int child = spine.back();
            spine.pop_back();
            Position host = base;
            host.push_back(0);
            for (int i : spine) host.push_back(i);
            const Term& host_term = subterm_at(current, host);
            if (!apply_validated("aux." + host_term.name() + "." + std::to_string(child + 1),
                                 host, current, out))
                return false;
        }
        return apply_validated("aux.guard", base, current, out);
    }

    /// current|pos = bar(a) for a source redex a; rewrites it in place to
    /// sq(bar(expected_to)) via the image rules of `label`.
    bool redex(const Position& pos, const std::string& label, const Term& expected_to,
               Term& current, std::vector<DerivationRecord>& out) {
        if (depth_left_ == 0) {  // self-referential conditions: give up, caller falls back
            truncated_ = true;
            return false;
        }
        struct DepthGuard {
            std::size_t& depth;
            explicit DepthGuard(std::size_t& d) : depth(d) { --depth; }
            ~DepthGuard() { ++depth; }
        } guard(depth_left_);

        const ConditionalRule* rule = nullptr;
        for (const auto& r : source().rules)
            if (r.label == label) rule = &r;
        if (!rule) return false;

        if (rule->unconditional())
            return apply_validated(label + ".1", pos, current, out);

        std::optional<Term> source_redex = hat(subterm_at(current, pos), pair_.ctx);
        if (!source_redex) return false;
        Substitution sigma;
        if (!pick_matcher(*rule, *source_redex, expected_to, sigma)) return false;

        auto [n, m] = pair_.ctx.defined_info.at(rule->lhs.name());
        (void)m;
        int slot = ctx_slot(*rule);
        if (slot == 0) return false;
        Position payload = pos;
        payload.push_back(n + slot - 1);
        payload.push_back(0);

        if (!apply_validated(label + ".1", pos, current, out)) return false;
        for (std::size_t j = 0; j < rule->conditions.size(); ++j) {
            Term from = apply_subst(rule->conditions[j].first, sigma);
            Term to = apply_subst(rule->conditions[j].second, sigma);
            if (!(from == to)) {
                SearchOutcome path = ctrs_search(source(), from, to, caps_);
                truncated_ |= path.truncated;
                if (!path.found) return false;
                for (std::size_t k = 0; k < path.path.size(); ++k) {
                    const GraphEdge& edge = path.path[k];
                    const Term& next = path.path_terms[k + 1];
                    if (!guarded_step(payload, edge.pos, edge.rule, subterm_at(next, edge.pos),
                                      current, out))
                        return false;
                }
            }
            if (!apply_validated(label + "." + std::to_string(j + 2), pos, current, out))
                return false;
        }
        return true;
    }

    bool pick_matcher(const ConditionalRule& rule, const Term& redex_term, const Term& expected_to,
                      Substitution& out_sigma) {
        bool truncated = false;
        std::vector<Substitution> sigmas = ctrs_rule_matchers(
            source(), redex_term, rule.label, caps_.max_level, caps_, truncated);
        truncated_ |= truncated;
        for (Substitution& sigma : sigmas)
            if (apply_subst(rule.rhs, sigma) == expected_to) {
                out_sigma = std::move(sigma);
                return true;
            }
        return false;
    }

    int ctx_slot(const ConditionalRule& rule) const {
        for (const auto& [name, info] : pair_.ctx.eval_info)
            if (source().rules[info.rule_index].label == rule.label && info.cond_index == 1)
                return info.slot;
        return 0;
    }

    bool apply_validated(const std::string& label, const Position& pos, Term& current,
                         std::vector<DerivationRecord>& out) {
        std::optional<Term> next = apply_rule_at(pair_.ctx.target, current, label, pos);
        if (!next) return false;
        out.push_back({current, pos, label, *next});
        current = *next;
        return true;
    }

    const SimulationPair& pair_;
    EngineCaps caps_;
    bool truncated_ = false;
    std::size_t depth_left_ = 0;
};

}  // namespace detail

/// Completeness probe, step-granular: every single source step u -> v must be
/// simulated by phi(u) ->* phi(v) in the target system. GuardBar pairs use a
/// redex-local simulation with guard hoisting; the identity pairs search the
/// target directly.
inline CheckReport check_completeness(const SimulationPair& pair, std::span<const Term> seeds,
                                      const EngineCaps& caps) {
    CheckReport report;
    detail::GuardBarStepSimulator simulator(pair, caps);
    for (const Term& seed : seeds) {
        ProbeReport probe;
        probe.name = pair.name + "-completeness[" + to_string(seed) + "]";
        probe.caps = caps;

        DerivationGraph source_graph = ctrs_reachable(pair.source, seed, caps);
        if (source_graph.truncated)
            probe.note = "source enumeration truncated; simulating explored steps";

        std::size_t simulated = 0;
        bool sample_recorded = false;
        for (const GraphEdge& e : source_graph.edges) {
            const Term& u = source_graph.nodes[e.from];
            const Term& v = source_graph.nodes[e.to];
            bool truncated = false;
            std::optional<std::vector<DerivationRecord>> derivation;
            if (pair.phi_init == PhiInitKind::GuardBar)
                derivation = simulator.simulate(u, v, e, truncated);
            if (!derivation) {
                SearchOutcome out = trs_search(pair.ctx.target, pair.initialize(u),
                                               pair.initialize(v), caps);
                truncated |= out.truncated;
                if (out.found) {
                    derivation.emplace();
                    Term cur = pair.initialize(u);
                    for (const GraphEdge& pe : out.path) {
                        auto next = apply_rule_at(pair.ctx.target, cur, pe.rule, pe.pos);
                        if (!next) break;
                        derivation->push_back({cur, pe.pos, pe.rule, *next});
                        cur = *next;
                    }
                }
            }
            if (derivation) {
                ++simulated;
                if (!sample_recorded) {
                    Witness w{u, pair.initialize(v), pair.initialize(v), *derivation,
                              "step via " + e.rule + " simulated in " +
                                  std::to_string(derivation->size()) + " target steps"};
                    probe.witnesses.push_back(std::move(w));
                    sample_recorded = true;
                }
                continue;
            }
            Witness w{u, v, std::nullopt, {},
                      "step via " + e.rule + (truncated
                          ? " not simulated within caps"
                          : " has no simulation (target search completed)")};
            probe.witnesses.push_back(std::move(w));
            probe.verdict = worst(probe.verdict,
                                  truncated ? Verdict::UnverifiedCaps : Verdict::Refuted);
        }
        probe.note += (probe.note.empty() ? "" : "; ") + std::string("simulated ") +
                      std::to_string(simulated) + "/" +
                      std::to_string(source_graph.edges.size()) + " steps";
        report.probes.push_back(std::move(probe));
    }
    return report;
}

/// Equivalence of R and T(R) on source-signature terms: bounded reachable
/// sets from each seed, both restricted to the source signature, must agree.
inline CheckReport check_t_equivalence(const RewriteSystem& sys, std::span<const Term> seeds,
                                       const EngineCaps& caps) {
    TransformContext t_ctx = linearize(sys);
    CheckReport report;
    for (const Term& seed : seeds) {
        ProbeReport probe;
        probe.name = "t-equiv[" + to_string(seed) + "]";
        probe.caps = caps;

        DerivationGraph orig = ctrs_reachable(sys, seed, caps);
        DerivationGraph lin = ctrs_reachable(t_ctx.target, seed, caps);

        std::set<Term, TermLess> orig_set, lin_set;
        for (const Term& t : orig.nodes)
            if (over_signature(t, sys)) orig_set.insert(t);
        for (const Term& t : lin.nodes)
            if (over_signature(t, sys)) lin_set.insert(t);

        if (orig_set == lin_set) {
            probe.note = "both reach " + std::to_string(orig_set.size()) + " terms";
            report.probes.push_back(std::move(probe));
            continue;
        }
        bool truncated = orig.truncated || lin.truncated;
        probe.verdict = truncated ? Verdict::UnverifiedCaps : Verdict::Refuted;
        for (const Term& t : orig_set)
            if (!lin_set.count(t)) {
                probe.witnesses.push_back({seed, t, std::nullopt, {},
                                           "reached by R but not T(R)"});
                break;
            }
        for (const Term& t : lin_set)
            if (!orig_set.count(t)) {
                probe.witnesses.push_back({seed, t, std::nullopt, {},
                                           "reached by T(R) but not R"});
                break;
            }
        report.probes.push_back(std::move(probe));
    }
    return report;
}

/// R is ultra-WLL iff SR(R) is WLL; the construction is run without the
/// admission gate so both sides are computable for any DCTRS.
inline bool check_iff_theorem(const RewriteSystem& sys) {
    return is_ultra_wll(sys) == is_wll_system(sr_construct(sys).target);
}

/// Deterministic enumeration of ground terms over a signature, smallest first.
inline std::vector<Term> enumerate_ground_terms(const RewriteSystem& sys, std::size_t count,
                                                std::size_t max_size = 6) {
    std::vector<std::vector<Term>> by_size(max_size + 1);
    std::vector<Term> out;
    for (std::size_t size = 1; size <= max_size && out.size() < count; ++size) {
        for (const Symbol& sym : sys.signature.symbols()) {
            if (sym.arity == 0 && size == 1) {
                by_size[1].push_back(Term::constant(sym.name));
                continue;
            }
            if (sym.arity == 0 || static_cast<std::size_t>(sym.arity) >= size) continue;
            std::vector<std::vector<Term>> tuples{{}};
            std::size_t remaining = size - 1;
            for (int i = 0; i < sym.arity; ++i) {
                std::vector<std::vector<Term>> next;
                int left = sym.arity - i - 1;
                for (const auto& prefix : tuples) {
                    std::size_t used = 0;
                    for (const Term& p : prefix) used += p.size();
                    for (std::size_t s = 1; s + used + left <= remaining; ++s) {
                        for (const Term& cand : by_size[s]) {
                            if (i == sym.arity - 1 && used + cand.size() != remaining) continue;
                            auto tuple = prefix;
                            tuple.push_back(cand);
                            next.push_back(std::move(tuple));
                        }
                    }
                }
                tuples = std::move(next);
            }
            for (auto& tuple : tuples)
                by_size[size].push_back(Term::app(sym.name, std::move(tuple)));
        }
        std::sort(by_size[size].begin(), by_size[size].end(), TermLess{});
        for (const Term& t : by_size[size]) {
            if (out.size() >= count) break;
            out.push_back(t);
        }
    }
    return out;
}

/// Small random WLL 3-DCTRS: linear constructor lhs, fresh linear condition
/// targets, conditions whose lhs only uses bound variables. Occasionally makes
/// a condition target non-linear in a throwaway variable, which keeps WLL but
/// breaks ultra-WLL.
inline RewriteSystem random_wll_dctrs(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

    std::vector<Symbol> constructors{{"n0", 0, SymbolRole::Constructor},
                                     {"n1", 0, SymbolRole::Constructor},
                                     {"k1", 1, SymbolRole::Constructor},
                                     {"k2", 2, SymbolRole::Constructor}};
    constructors.resize(2 + pick(3));
    std::vector<Symbol> defined{{"g1", 1, SymbolRole::Defined},
                                {"g2", 1, SymbolRole::Defined},
                                {"g3", 2, SymbolRole::Defined}};
    defined.resize(1 + pick(3));

    int var_counter = 0;
    auto fresh_var = [&] { return Term::var("v" + std::to_string(++var_counter)); };

    auto constructor_pattern = [&](auto&& self, int depth) -> Term {
        if (depth == 0 || pick(2) == 0) return fresh_var();
        const Symbol& c = constructors[pick(constructors.size())];
        std::vector<Term> args;
        for (int i = 0; i < c.arity; ++i) args.push_back(self(self, depth - 1));
        return Term::app(c.name, std::move(args));
    };
    auto ground_constructor = [&](auto&& self, int depth) -> Term {
        const Symbol& c = depth > 0 ? constructors[pick(constructors.size())]
                                    : constructors[pick(2)];
        std::vector<Term> args;
        for (int i = 0; i < c.arity; ++i) args.push_back(self(self, depth - 1));
        return Term::app(c.name, std::move(args));
    };
    auto term_over = [&](auto&& self, const std::vector<Term>& vars, int depth) -> Term {
        std::size_t roll = pick(4);
        if (depth == 0 || roll == 0)
            return vars.empty() ? ground_constructor(ground_constructor, 1)
                                : vars[pick(vars.size())];
        if (roll == 1) {
            const Symbol& g = defined[pick(defined.size())];
            std::vector<Term> args;
            for (int i = 0; i < g.arity; ++i) args.push_back(self(self, vars, depth - 1));
            return Term::app(g.name, std::move(args));
        }
        const Symbol& c = constructors[pick(constructors.size())];
        std::vector<Term> args;
        for (int i = 0; i < c.arity; ++i) args.push_back(self(self, vars, depth - 1));
        return Term::app(c.name, std::move(args));
    };

    std::vector<ConditionalRule> rules;
    std::size_t rule_count = 2 + pick(5);  // <= 6
    for (std::size_t r = 0; r < rule_count; ++r) {
        const Symbol& f = defined[pick(defined.size())];
        std::vector<Term> lhs_args;
        for (int i = 0; i < f.arity; ++i)
            lhs_args.push_back(constructor_pattern(constructor_pattern, 2));
        Term lhs = Term::app(f.name, std::move(lhs_args));

        std::vector<Term> available;  // each occurs exactly once across (l, t1..tk)
        for (const std::string& v : vars_in_order(lhs)) available.push_back(Term::var(v));

        const Symbol* binary = nullptr;
        for (const Symbol& c : constructors)
            if (c.arity == 2) binary = &c;

        std::vector<std::pair<Term, Term>> conditions;
        std::size_t k = pick(3);  // <= 2
        bool break_uwll = binary && k == 2 && pick(3) == 0;
        for (std::size_t j = 0; j < k; ++j) {
            Term s = term_over(term_over, available, 2);
            Term t = constructor_pattern(constructor_pattern, 2);
            if (break_uwll && j == 0) {
                Term dup = fresh_var();  // repeated, never used in r or any s_i
                t = Term::app(binary->name, {dup, dup});
            }
            for (const std::string& v : vars_in_order(t)) {
                Term var = Term::var(v);
                if (count_var_occurrences(t, v) == 1) available.push_back(var);
            }
            conditions.emplace_back(s, t);
        }
        Term rhs = term_over(term_over, available, 2);
        rules.push_back(ConditionalRule{"r" + std::to_string(r + 1), lhs, rhs,
                                        std::move(conditions)});
    }

    Signature sig;
    for (const Symbol& s : constructors) sig.add(s);
    for (const Symbol& s : defined) sig.add(s);
    return make_system(std::move(sig), std::move(rules));
}

struct CorpusEntry {
    std::string name;
    RewriteSystem system;
};

struct CorpusConfig {
    EngineCaps caps;
    std::size_t seed_count = 4;  // seeds enumerated deterministically per system
};

struct SystemProbes {
    std::string system;
    bool iff_theorem = true;
    std::vector<ProbeReport> probes;
    std::vector<std::string> skipped;  // probe name + reason
};

struct CorpusReport {
    std::vector<SystemProbes> systems;

    Verdict aggregate() const {
        Verdict v = Verdict::Verified;
        for (const SystemProbes& s : systems) {
            if (!s.iff_theorem) v = Verdict::Refuted;
            for (const ProbeReport& p : s.probes) {
                if (p.note.find("out-of-class") != std::string::npos) continue;
                v = worst(v, p.verdict);
            }
        }
        return v;
    }
};

/// Batch driver: runs every probe whose preconditions the system meets and
/// records skips for the rest. Deterministic given the config.
inline CorpusReport run_corpus(std::span<const CorpusEntry> entries,
                               const CorpusConfig& config) {
    CorpusReport report;
    for (const CorpusEntry& entry : entries) {
        SystemProbes sp;
        sp.system = entry.name;
        SystemReport cls = classify_system(entry.system);

        auto append = [&](CheckReport&& r, bool out_of_class) {
            for (ProbeReport& p : r.probes) {
                if (out_of_class && p.verdict == Verdict::Refuted)
                    p.note += "; out-of-class observation";
                sp.probes.push_back(std::move(p));
            }
        };

        if (!cls.dctrs3) {
            sp.skipped.push_back("all probes: not a deterministic 3-CTRS");
            report.systems.push_back(std::move(sp));
            continue;
        }
        sp.iff_theorem = check_iff_theorem(entry.system);

        std::vector<Term> seeds = enumerate_ground_terms(entry.system, config.seed_count);

        append(check_completeness(make_pair_u(entry.system), seeds, config.caps), false);
        if (cls.wll) {
            append(check_soundness(make_pair_u(entry.system), seeds, config.caps), false);
            append(check_t_equivalence(entry.system, seeds, config.caps), false);
        } else {
            sp.skipped.push_back("u-soundness, t-equiv: system is not WLL");
        }
        if (cls.ultra_wll) {
            SimulationPair sr = make_pair_sr(entry.system);
            append(check_completeness(sr, seeds, config.caps), false);
            append(check_soundness(sr, seeds, config.caps), !cls.wll);
        } else if (cls.wll) {
            SimulationPair srt = make_pair_sr_t(entry.system);
            append(check_completeness(srt, seeds, config.caps), false);
            append(check_soundness(srt, seeds, config.caps), false);
        } else {
            sp.skipped.push_back("sr probes: system is neither ultra-WLL nor WLL");
        }
        report.systems.push_back(std::move(sp));
    }
    return report;
}

}  // namespace ctrslab

#endif  // CTRSLAB_ORACLE_HPP
