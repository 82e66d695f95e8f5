#ifndef CTRSLAB_ENGINE_HPP
#define CTRSLAB_ENGINE_HPP

#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "ctrslab/system.hpp"

namespace ctrslab {

/// Bounds for the semidecidable reachability searches. Exceeding any cap
/// yields a truncated result, never a wrong answer.
struct EngineCaps {
    std::size_t max_steps = 64;       // BFS depth (number of rewrite steps)
    std::size_t max_nodes = 20000;    // work budget shared with condition searches
    std::size_t max_level = 8;        // conditional rewriting level
    std::size_t max_term_size = 512;  // successors above this size are dropped
};

struct Successor {
    Position pos;
    std::string rule;
    Term to;
};

struct GraphEdge {
    std::size_t from;
    std::size_t to;
    Position pos;
    std::string rule;
};

/// Bounded rewrite-reachability graph. Every edge is a valid single step;
/// when truncated == false the node set is closed under successors.
struct DerivationGraph {
    explicit DerivationGraph(Term root_term) : root(std::move(root_term)) {}

    Term root;
    std::vector<Term> nodes;
    std::vector<GraphEdge> edges;
    std::vector<std::size_t> parent_edge;  // discovering edge per node; npos for root
    bool truncated = false;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::optional<std::size_t> node_id(const Term& t) const {
        auto it = index_.find(t);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    bool contains(const Term& t) const { return index_.count(t) > 0; }

    std::size_t add_node(const Term& t) {
        auto [it, inserted] = index_.emplace(t, nodes.size());
        if (inserted) {
            nodes.push_back(t);
            parent_edge.push_back(npos);
        }
        return it->second;
    }

    /// Discovery path of edges from the root to t (empty for the root itself).
    std::vector<GraphEdge> path_to(const Term& t) const {
        std::vector<GraphEdge> path;
        auto id = node_id(t);
        if (!id) return path;
        std::size_t cur = *id;
        while (parent_edge[cur] != npos) {
            const GraphEdge& e = edges[parent_edge[cur]];
            path.push_back(e);
            cur = e.from;
        }
        std::reverse(path.begin(), path.end());
        return path;
    }

private:
    std::unordered_map<Term, std::size_t, TermHash> index_;
};

namespace detail {

/// Rules indexed by left-hand side root symbol.
class RuleIndex {
public:
    explicit RuleIndex(const RewriteSystem& sys) {
        for (const auto& rule : sys.rules) by_root_[rule.lhs.name()].push_back(&rule);
    }
    std::span<const ConditionalRule* const> candidates(const Term& t) const {
        if (t.is_var()) return {};
        auto it = by_root_.find(t.name());
        if (it == by_root_.end()) return {};
        return it->second;
    }

private:
    std::map<std::string, std::vector<const ConditionalRule*>> by_root_;
};

struct Budget {
    std::size_t left;
    bool hit = false;
    bool spend() {
        if (left == 0) { hit = true; return false; }
        --left;
        return true;
    }
};

}  // namespace detail

/// All one-step redex contractions of t at all positions with all rules.
inline std::vector<Successor> trs_successors(const RewriteSystem& sys, const Term& t) {
    detail::RuleIndex index(sys);
    std::vector<Successor> out;
    for (const Position& p : positions_of(t)) {
        const Term& sub = subterm_at(t, p);
        for (const ConditionalRule* rule : index.candidates(sub)) {
            Substitution sigma;
            if (!match_into(rule->lhs, sub, sigma)) continue;
            out.push_back({p, rule->label, replace_at(t, p, apply_subst(rule->rhs, sigma))});
        }
    }
    return out;
}

namespace detail {

template <typename Expand>
DerivationGraph bfs_closure(const Term& root, const EngineCaps& caps, Expand&& expand,
                            const Term* stop_at, bool* found) {
    DerivationGraph g(root);
    g.add_node(root);
    if (found) *found = (stop_at && root == *stop_at);
    if (found && *found) return g;

    std::size_t level_begin = 0, level_end = 1;
    for (std::size_t depth = 0; depth < caps.max_steps && level_begin < level_end; ++depth) {
        for (std::size_t i = level_begin; i < level_end; ++i) {
            bool trunc = false;
            for (const Successor& s : expand(g.nodes[i], trunc)) {
                if (s.to.size() > caps.max_term_size) { g.truncated = true; continue; }
                auto existing = g.node_id(s.to);
                if (!existing && g.nodes.size() >= caps.max_nodes) {
                    g.truncated = true;
                    continue;
                }
                std::size_t to_id = g.add_node(s.to);
                g.edges.push_back({i, to_id, s.pos, s.rule});
                if (!existing) {
                    g.parent_edge[to_id] = g.edges.size() - 1;
                    if (stop_at && s.to == *stop_at) {
                        if (found) *found = true;
                        return g;
                    }
                }
            }
            if (trunc) g.truncated = true;
        }
        level_begin = level_end;
        level_end = g.nodes.size();
    }

    // Depth cap reached with an unexpanded frontier: the graph is complete
    // only if no frontier node has a successor outside the recorded set.
    for (std::size_t i = level_begin; i < level_end && !g.truncated; ++i) {
        bool trunc = false;
        for (const Successor& s : expand(g.nodes[i], trunc))
            if (!g.contains(s.to)) { g.truncated = true; break; }
        if (trunc) g.truncated = true;
    }
    return g;
}

}  // namespace detail

/// BFS closure of trs_successors from t, bounded by caps.
inline DerivationGraph trs_reachable(const RewriteSystem& sys, const Term& t,
                                     const EngineCaps& caps) {
    detail::RuleIndex index(sys);
    auto expand = [&](const Term& u, bool&) {
        std::vector<Successor> out;
        for (const Position& p : positions_of(u)) {
            const Term& sub = subterm_at(u, p);
            for (const ConditionalRule* rule : index.candidates(sub)) {
                Substitution sigma;
                if (!match_into(rule->lhs, sub, sigma)) continue;
                out.push_back({p, rule->label, replace_at(u, p, apply_subst(rule->rhs, sigma))});
            }
        }
        return out;
    };
    return detail::bfs_closure(t, caps, expand, nullptr, nullptr);
}

struct SearchOutcome {
    bool found = false;
    bool truncated = false;
    std::vector<GraphEdge> path;   // derivation from seed to target when found
    std::vector<Term> path_terms;  // terms along the path, seed first
    std::size_t nodes_explored = 0;
};

/// Target-directed bounded search: stops as soon as target is discovered.
inline SearchOutcome trs_search(const RewriteSystem& sys, const Term& from, const Term& target,
                                const EngineCaps& caps) {
    detail::RuleIndex index(sys);
    auto expand = [&](const Term& u, bool&) {
        std::vector<Successor> out;
        for (const Position& p : positions_of(u)) {
            const Term& sub = subterm_at(u, p);
            for (const ConditionalRule* rule : index.candidates(sub)) {
                Substitution sigma;
                if (!match_into(rule->lhs, sub, sigma)) continue;
                out.push_back({p, rule->label, replace_at(u, p, apply_subst(rule->rhs, sigma))});
            }
        }
        return out;
    };
    bool found = false;
    DerivationGraph g = detail::bfs_closure(from, caps, expand, &target, &found);
    SearchOutcome o;
    o.found = found;
    o.truncated = g.truncated;
    o.nodes_explored = g.nodes.size();
    if (found) {
        o.path = g.path_to(target);
        o.path_terms.push_back(from);
        for (const GraphEdge& e : o.path) o.path_terms.push_back(g.nodes[e.to]);
    }
    return o;
}

struct CtrsStepResult {
    std::vector<Successor> steps;
    bool truncated = false;

    std::set<Term, TermLess> terms() const {
        std::set<Term, TermLess> out;
        for (const Successor& s : steps) out.insert(s.to);
        return out;
    }
};

namespace detail {

struct ReachResult {
    std::vector<Term> terms;  // discovery order
    bool truncated = false;
};

class CtrsEngine {
public:
    CtrsEngine(const RewriteSystem& sys, const EngineCaps& caps)
        : sys_(sys), caps_(caps), index_(sys), budget_{caps.max_nodes} {}

    /// Matchers of a rule against a redex at the given level: the lhs matcher
    /// extended condition by condition, evaluating each condition's lhs by
    /// bounded reachability at level-1 and matching the target against every
    /// reachable term.
    std::vector<Substitution> rule_matchers(const ConditionalRule& rule, const Term& sub,
                                            std::size_t level, bool& truncated) {
        std::vector<Substitution> sigmas;
        if (level == 0) return sigmas;
        Substitution base;
        if (!match_into(rule.lhs, sub, base)) return sigmas;
        sigmas.push_back(std::move(base));
        for (const auto& [s, target] : rule.conditions) {
            std::vector<Substitution> next;
            for (const Substitution& sigma : sigmas) {
                ReachResult reach = reachable_terms(apply_subst(s, sigma), level - 1);
                truncated |= reach.truncated;
                for (const Term& u : reach.terms) {
                    Substitution extended = sigma;
                    if (!match_into(target, u, extended)) continue;
                    if (std::find(next.begin(), next.end(), extended) == next.end())
                        next.push_back(extended);
                }
            }
            sigmas = std::move(next);
            if (sigmas.empty()) break;
        }
        return sigmas;
    }

    /// One conditional step at the given level: a sound under-approximation of
    /// { u | t ->_(level) u }. Conditions of a level-n step are evaluated by
    /// bounded reachability at level n-1; level 0 admits no step.
    CtrsStepResult step(const Term& t, std::size_t level) {
        CtrsStepResult res;
        if (level == 0) return res;
        for (const Position& p : positions_of(t)) {
            const Term& sub = subterm_at(t, p);
            for (const ConditionalRule* rule : index_.candidates(sub)) {
                for (const Substitution& sigma : rule_matchers(*rule, sub, level, res.truncated)) {
                    Term to = replace_at(t, p, apply_subst(rule->rhs, sigma));
                    bool dup = false;
                    for (const Successor& s : res.steps)
                        if (s.pos == p && s.rule == rule->label && s.to == to) { dup = true; break; }
                    if (!dup) res.steps.push_back({p, rule->label, to});
                }
            }
        }
        return res;
    }

    /// Bounded closure of `step` at a fixed level (used for conditions).
    ReachResult reachable_terms(const Term& t, std::size_t level) {
        auto key = std::make_pair(t, level);
        auto cached = cache_.find(key);
        if (cached != cache_.end()) return cached->second;

        ReachResult out;
        out.terms.push_back(t);
        std::unordered_map<Term, bool, TermHash> seen;
        seen.emplace(t, true);
        std::size_t level_begin = 0, level_end = 1;
        for (std::size_t depth = 0; depth < caps_.max_steps && level_begin < level_end; ++depth) {
            for (std::size_t i = level_begin; i < level_end; ++i) {
                CtrsStepResult sr = step(out.terms[i], level);
                out.truncated |= sr.truncated;
                for (const Successor& s : sr.steps) {
                    if (s.to.size() > caps_.max_term_size) { out.truncated = true; continue; }
                    if (seen.count(s.to)) continue;
                    if (!budget_.spend()) { out.truncated = true; continue; }
                    seen.emplace(s.to, true);
                    out.terms.push_back(s.to);
                }
            }
            level_begin = level_end;
            level_end = out.terms.size();
        }
        if (level_begin < level_end) {
            // unexpanded frontier: complete only if it produces nothing new
            for (std::size_t i = level_begin; i < level_end && !out.truncated; ++i) {
                CtrsStepResult sr = step(out.terms[i], level);
                out.truncated |= sr.truncated;
                for (const Successor& s : sr.steps)
                    if (!seen.count(s.to)) { out.truncated = true; break; }
            }
        }
        cache_.emplace(std::move(key), out);
        return out;
    }

    bool budget_hit() const { return budget_.hit; }

private:
    struct KeyHash {
        std::size_t operator()(const std::pair<Term, std::size_t>& k) const {
            return k.first.hash() * 31 + k.second;
        }
    };

    const RewriteSystem& sys_;
    EngineCaps caps_;
    RuleIndex index_;
    Budget budget_;
    std::unordered_map<std::pair<Term, std::size_t>, ReachResult, KeyHash> cache_;
};

}  // namespace detail

/// Matchers of a named rule against a redex, conditions included.
inline std::vector<Substitution> ctrs_rule_matchers(const RewriteSystem& sys, const Term& redex,
                                                    const std::string& rule_label,
                                                    std::size_t level, const EngineCaps& caps,
                                                    bool& truncated) {
    detail::CtrsEngine engine(sys, caps);
    for (const auto& rule : sys.rules)
        if (rule.label == rule_label) {
            auto sigmas = engine.rule_matchers(rule, redex, level, truncated);
            truncated |= engine.budget_hit();
            return sigmas;
        }
    return {};
}

/// Single conditional step relation at the given level, bounded by caps.
inline CtrsStepResult ctrs_step(const RewriteSystem& sys, const Term& t, std::size_t level,
                                const EngineCaps& caps) {
    detail::CtrsEngine engine(sys, caps);
    CtrsStepResult res = engine.step(t, level);
    res.truncated |= engine.budget_hit();
    return res;
}

/// Bounded under-approximation of { u | t ->*_R u }; every recorded edge is a
/// genuine step at level caps.max_level.
inline DerivationGraph ctrs_reachable(const RewriteSystem& sys, const Term& t,
                                      const EngineCaps& caps) {
    detail::CtrsEngine engine(sys, caps);
    auto expand = [&](const Term& u, bool& trunc) {
        CtrsStepResult sr = engine.step(u, caps.max_level);
        trunc = sr.truncated;
        return sr.steps;
    };
    DerivationGraph g = detail::bfs_closure(t, caps, expand, nullptr, nullptr);
    g.truncated |= engine.budget_hit();
    return g;
}

inline SearchOutcome ctrs_search(const RewriteSystem& sys, const Term& from, const Term& target,
                                 const EngineCaps& caps) {
    detail::CtrsEngine engine(sys, caps);
    auto expand = [&](const Term& u, bool& trunc) {
        CtrsStepResult sr = engine.step(u, caps.max_level);
        trunc = sr.truncated;
        return sr.steps;
    };
    bool found = false;
    DerivationGraph g = detail::bfs_closure(from, caps, expand, &target, &found);
    SearchOutcome o;
    o.found = found;
    o.truncated = g.truncated || engine.budget_hit();
    o.nodes_explored = g.nodes.size();
    if (found) {
        o.path = g.path_to(target);
        o.path_terms.push_back(from);
        for (const GraphEdge& e : o.path) o.path_terms.push_back(g.nodes[e.to]);
    }
    return o;
}

/// Applies the labelled rule at the given position, if it matches there.
inline std::optional<Term> apply_rule_at(const RewriteSystem& sys, const Term& t,
                                         const std::string& label, const Position& pos) {
    for (const auto& rule : sys.rules) {
        if (rule.label != label || !rule.unconditional()) continue;
        if (!valid_position(t, pos)) return std::nullopt;
        Substitution sigma;
        if (!match_into(rule.lhs, subterm_at(t, pos), sigma)) return std::nullopt;
        return replace_at(t, pos, apply_subst(rule.rhs, sigma));
    }
    return std::nullopt;
}

/// Terms in the graph with no outgoing edge (normal forms within the search).
inline std::vector<Term> graph_normal_forms(const DerivationGraph& g) {
    std::vector<bool> has_succ(g.nodes.size(), false);
    for (const GraphEdge& e : g.edges) has_succ[e.from] = true;
    std::vector<Term> out;
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
        if (!has_succ[i]) out.push_back(g.nodes[i]);
    return out;
}

}  // namespace ctrslab

#endif  // CTRSLAB_ENGINE_HPP
