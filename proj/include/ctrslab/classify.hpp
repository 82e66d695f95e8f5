#ifndef CTRSLAB_CLASSIFY_HPP
#define CTRSLAB_CLASSIFY_HPP

#include <set>
#include <string>
#include <vector>

#include "ctrslab/system.hpp"

namespace ctrslab {

/// Per-rule syntactic classification flags.
struct RuleReport {
    bool ll = false;  // lhs linear
    bool rl = false;  // rhs linear
    bool ne = false;  // non-erasing: Var(l) subseteq Var(r)
    bool ground_conditional = false;
    bool wll = false;
    bool deterministic = false;
    // every condition target is a constructor term or a ground normal form of R_u;
    // the strong variant (strong irreducibility) is undecidable and not reported.
    bool syntactically_deterministic_rhs = false;
    int rule_type = 4;  // least applicable of Types 1..4
};

struct SystemReport {
    std::vector<RuleReport> rules;
    bool ll = true, rl = true, ne = true, ground_conditional = true;
    bool wll = true;
    bool deterministic = true;                 // DCTRS
    bool syntactically_deterministic = true;   // SDCTRS (syntactic variant only)
    bool normal = true;                        // all condition targets ground R_u-normal
    bool constructor_system = true;
    int max_type = 1;
    bool type3 = true;       // all rules of Type <= 3
    bool dctrs3 = true;      // deterministic 3-CTRS
    bool ultra_wll = false;  // filled by classify_system via the syntactic characterization
    std::set<std::string> defined;
    std::set<std::string> constructors;
    std::string note = "strong determinism is not decided; only the syntactic variant is reported";
};

namespace detail {

inline bool is_constructor_term(const Term& t, const std::set<std::string>& defined) {
    if (t.is_var()) return true;
    if (defined.count(t.name())) return false;
    for (const Term& a : t.args())
        if (!is_constructor_term(a, defined)) return false;
    return true;
}

/// Irreducibility w.r.t. R_u decided by pattern matching against all lhs's.
inline bool matches_some_lhs(const Term& t, const RewriteSystem& sys) {
    for (const auto& rule : sys.rules) {
        for (const Position& p : positions_of(t)) {
            Substitution sigma;
            if (match_into(rule.lhs, subterm_at(t, p), sigma)) return true;
        }
    }
    return false;
}

inline bool ground_normal_form_of_underlying(const Term& t, const RewriteSystem& sys) {
    return is_ground(t) && !matches_some_lhs(t, sys);
}

}  // namespace detail

inline bool is_wll_rule(const ConditionalRule& rule) {
    std::vector<Term> seq = rule.lhs_and_targets();
    std::vector<Term> users{rule.rhs};
    for (const auto& [s, t] : rule.conditions) users.push_back(s);
    for (const std::string& x : var_set(std::span<const Term>(users)))
        if (count_var_occurrences(std::span<const Term>(seq), x) != 1) return false;
    return true;
}

inline bool is_wll_system(const RewriteSystem& sys) {
    for (const auto& rule : sys.rules)
        if (!is_wll_rule(rule)) return false;
    return true;
}

inline RuleReport classify_rule(const ConditionalRule& rule, const RewriteSystem& sys) {
    RuleReport rep;
    rep.ll = is_linear(rule.lhs);
    rep.rl = is_linear(rule.rhs);

    std::set<std::string> lv = var_set(rule.lhs);
    std::set<std::string> rv = var_set(rule.rhs);
    rep.ne = std::includes(rv.begin(), rv.end(), lv.begin(), lv.end());

    rep.ground_conditional = true;
    for (const auto& [s, t] : rule.conditions)
        if (!is_ground(s) || !is_ground(t)) { rep.ground_conditional = false; break; }

    rep.wll = is_wll_rule(rule);

    rep.deterministic = true;
    std::set<std::string> bound = lv;
    for (const auto& [s, t] : rule.conditions) {
        for (const std::string& v : var_set(s))
            if (!bound.count(v)) { rep.deterministic = false; break; }
        if (!rep.deterministic) break;
        for (const std::string& v : var_set(t)) bound.insert(v);
    }

    std::set<std::string> defined = sys.defined_symbols();
    rep.syntactically_deterministic_rhs = true;
    for (const auto& [s, t] : rule.conditions) {
        if (!detail::is_constructor_term(t, defined) &&
            !detail::ground_normal_form_of_underlying(t, sys)) {
            rep.syntactically_deterministic_rhs = false;
            break;
        }
    }

    // Type 1 if Var(r, s1, t1, ..., sk, tk) subseteq Var(l);
    // Type 2 if Var(r) subseteq Var(l);
    // Type 3 if Var(r) subseteq Var(l, s1, t1, ..., sk, tk); Type 4 otherwise.
    std::set<std::string> all_cond_vars;
    for (const auto& [s, t] : rule.conditions) {
        for (const std::string& v : var_set(s)) all_cond_vars.insert(v);
        for (const std::string& v : var_set(t)) all_cond_vars.insert(v);
    }
    auto subset = [](const std::set<std::string>& a, const std::set<std::string>& b) {
        return std::includes(b.begin(), b.end(), a.begin(), a.end());
    };
    std::set<std::string> rv_and_conds = rv;
    rv_and_conds.insert(all_cond_vars.begin(), all_cond_vars.end());
    std::set<std::string> lv_and_conds = lv;
    lv_and_conds.insert(all_cond_vars.begin(), all_cond_vars.end());
    if (subset(rv_and_conds, lv))
        rep.rule_type = 1;
    else if (subset(rv, lv))
        rep.rule_type = 2;
    else if (subset(rv, lv_and_conds))
        rep.rule_type = 3;
    else
        rep.rule_type = 4;

    return rep;
}

/// Syntactic characterization of the ultra-WLL property: all unconditional
/// rules are WLL, and every conditional rule satisfies
///   (a) the sequence l, t1, ..., t(k-1) is linear, and
///   (b) Numv(l, t1, ..., tk, x) <= 1 for every x in Var(r).
inline bool is_ultra_wll_rule(const ConditionalRule& rule) {
    if (rule.unconditional()) return is_wll_rule(rule);
    std::vector<Term> prefix{rule.lhs};
    for (std::size_t i = 0; i + 1 < rule.conditions.size(); ++i)
        prefix.push_back(rule.conditions[i].second);
    if (!is_linear(std::span<const Term>(prefix))) return false;
    std::vector<Term> seq = rule.lhs_and_targets();
    for (const std::string& x : var_set(rule.rhs))
        if (count_var_occurrences(std::span<const Term>(seq), x) > 1) return false;
    return true;
}

inline bool is_ultra_wll(const RewriteSystem& sys) {
    for (const auto& rule : sys.rules)
        if (!is_ultra_wll_rule(rule)) return false;
    return true;
}

inline SystemReport classify_system(const RewriteSystem& sys) {
    SystemReport rep;
    rep.defined = sys.defined_symbols();
    rep.constructors = sys.constructor_symbols();
    for (const auto& rule : sys.rules) {
        RuleReport r = classify_rule(rule, sys);
        rep.ll &= r.ll;
        rep.rl &= r.rl;
        rep.ne &= r.ne;
        rep.ground_conditional &= r.ground_conditional;
        rep.wll &= r.wll;
        rep.deterministic &= r.deterministic;
        rep.syntactically_deterministic &= r.syntactically_deterministic_rhs;
        rep.max_type = std::max(rep.max_type, r.rule_type);

        for (const auto& [s, t] : rule.conditions)
            if (!detail::ground_normal_form_of_underlying(t, sys)) rep.normal = false;
        for (const Term& a : rule.lhs.args())
            if (!detail::is_constructor_term(a, rep.defined)) rep.constructor_system = false;

        rep.rules.push_back(r);
    }
    rep.type3 = rep.max_type <= 3;
    rep.dctrs3 = rep.deterministic && rep.type3;
    rep.ultra_wll = is_ultra_wll(sys);
    return rep;
}

}  // namespace ctrslab

#endif  // CTRSLAB_CLASSIFY_HPP
