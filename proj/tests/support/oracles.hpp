#ifndef CTRSLAB_TESTS_ORACLES_HPP
#define CTRSLAB_TESTS_ORACLES_HPP

#include <optional>
#include <set>
#include <vector>

#include "ctrslab/system.hpp"

// Independent brute-force reference implementations used to freeze expected
// values. Deliberately naive: no caps, no caches, no sharing with the engine.

namespace ctrslab::tests {

inline void all_subterms(const Term& t, std::vector<Term>& out) {
    out.push_back(t);
    for (const Term& a : t.args()) all_subterms(a, out);
}

/// Matching by exhaustive enumeration of candidate bindings: every pattern
/// variable ranges over all subterms of the subject; a candidate substitution
/// counts iff applying it to the pattern reproduces the subject exactly.
inline std::optional<Substitution> brute_force_match(const Term& pattern, const Term& subject) {
    std::vector<std::string> vars = vars_in_order(pattern);
    std::vector<Term> candidates;
    all_subterms(subject, candidates);

    std::vector<std::size_t> choice(vars.size(), 0);
    for (;;) {
        Substitution sigma;
        for (std::size_t i = 0; i < vars.size(); ++i) sigma.bind(vars[i], candidates[choice[i]]);
        if (apply_subst(pattern, sigma) == subject) return sigma;
        std::size_t i = 0;
        while (i < vars.size()) {
            if (++choice[i] < candidates.size()) break;
            choice[i] = 0;
            ++i;
        }
        if (i == vars.size()) return std::nullopt;
    }
}

/// One-step successors of an unconditional system by brute-force matching at
/// every position.
inline std::set<Term, TermLess> brute_force_trs_step(const RewriteSystem& sys, const Term& t) {
    std::set<Term, TermLess> out;
    for (const Position& p : positions_of(t)) {
        const Term& sub = subterm_at(t, p);
        for (const auto& rule : sys.rules) {
            auto sigma = brute_force_match(rule.lhs, sub);
            if (sigma) out.insert(replace_at(t, p, apply_subst(rule.rhs, *sigma)));
        }
    }
    return out;
}

inline std::set<Term, TermLess> brute_force_level_step(const RewriteSystem& sys, const Term& t,
                                                       std::size_t level, std::size_t depth);

/// ->*_(level) restricted to `depth` steps, computed by naive iteration.
inline std::set<Term, TermLess> brute_force_level_reach(const RewriteSystem& sys, const Term& t,
                                                        std::size_t level, std::size_t depth) {
    std::set<Term, TermLess> reach{t};
    for (std::size_t d = 0; d < depth; ++d) {
        std::set<Term, TermLess> grown = reach;
        for (const Term& u : reach)
            for (const Term& v : brute_force_level_step(sys, u, level, depth))
                grown.insert(v);
        if (grown.size() == reach.size()) break;
        reach = std::move(grown);
    }
    return reach;
}

/// ->_(level) by the inductive definition: a level-n step instantiates a rule
/// whose conditions hold under ->*_(n-1).
inline std::set<Term, TermLess> brute_force_level_step(const RewriteSystem& sys, const Term& t,
                                                       std::size_t level, std::size_t depth) {
    std::set<Term, TermLess> out;
    if (level == 0) return out;
    for (const Position& p : positions_of(t)) {
        const Term& sub = subterm_at(t, p);
        for (const auto& rule : sys.rules) {
            Substitution base;
            if (!match_into(rule.lhs, sub, base)) continue;
            std::vector<Substitution> sigmas{base};
            for (const auto& [s, target] : rule.conditions) {
                std::vector<Substitution> next;
                for (const Substitution& sigma : sigmas) {
                    for (const Term& u :
                         brute_force_level_reach(sys, apply_subst(s, sigma), level - 1, depth)) {
                        Substitution ext = sigma;
                        if (match_into(target, u, ext)) next.push_back(ext);
                    }
                }
                sigmas = std::move(next);
                if (sigmas.empty()) break;
            }
            for (const Substitution& sigma : sigmas)
                out.insert(replace_at(t, p, apply_subst(rule.rhs, sigma)));
        }
    }
    return out;
}

}  // namespace ctrslab::tests

#endif  // CTRSLAB_TESTS_ORACLES_HPP
