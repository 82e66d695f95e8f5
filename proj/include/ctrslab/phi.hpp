#ifndef CTRSLAB_PHI_HPP
#define CTRSLAB_PHI_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ctrslab/transform.hpp"

namespace ctrslab {

/// Finite set of unraveled-signature terms represented by an extended term.
struct PhiResult {
    std::vector<Term> terms;  // deduplicated, deterministic order
    bool truncated = false;
    std::size_t cardinality = 0;  // == terms.size() when not truncated

    bool contains(const Term& t) const {
        for (const Term& u : terms)
            if (u == t) return true;
        return false;
    }
};

enum class EvalState { NoEvaluation, HasEvaluation, Stuck };

namespace detail {

/// sigma with sigma(ext(w_1..w_n)) = host and sigma(V_j) = carried slot args.
/// The ext patterns are linear for ultra-WLL sources, so the match is
/// unambiguous; absent when the evaluation is stuck.
inline std::optional<Substitution> psi_slot_matcher(const TransformContext& ctx,
                                                    const ConditionalRule& rule,
                                                    const CondMeta& meta,
                                                    const std::vector<Term>& host,
                                                    const Term& slot) {
    std::set<std::string> avoid = var_set(rule.lhs);
    for (const auto& [s, t] : rule.conditions) {
        for (const std::string& v : var_set(s)) avoid.insert(v);
        for (const std::string& v : var_set(t)) avoid.insert(v);
    }
    FreshNameGen gen(std::move(avoid));
    Substitution sigma;
    for (std::size_t i = 0; i < rule.lhs.args().size(); ++i) {
        Term pattern = ext(rule.lhs.args()[i], ctx, gen);
        if (!match_into(pattern, host[i], sigma)) return std::nullopt;
    }
    for (std::size_t i = 0; i < meta.vvars.size(); ++i)
        if (!sigma.bind(meta.vvars[i], slot.args()[i + 1])) return std::nullopt;
    return sigma;
}

class PhiComputer {
public:
    PhiComputer(const TransformContext& ctx, std::size_t cap) : ctx_(ctx), cap_(cap) {}

    std::vector<Term> run(const Term& t) {
        auto cached = memo_.find(t);
        if (cached != memo_.end()) return cached->second;
        std::vector<Term> out;
        switch (ext_kind(t, ctx_)) {
            case ExtKind::Variable:
                out.push_back(t);
                break;
            case ExtKind::Guard:
                if (t.arity() == 1) out = run(t.args()[0]);
                break;
            case ExtKind::Constructor: {
                for (std::vector<Term>& tuple : product(t.args()))
                    push(out, Term::app(t.name(), std::move(tuple)));
                break;
            }
            case ExtKind::Barred: {
                auto [src, nm] = barred_source(t, ctx_);
                auto [n, m] = nm;
                if (t.arity() != n + m) break;
                std::vector<Term> host(t.args().begin(), t.args().begin() + n);
                for (std::vector<Term>& tuple : product(host))
                    push(out, Term::app(src, std::move(tuple)));
                for (int q = 1; q <= m; ++q) {
                    const Term& slot = t.args()[static_cast<std::size_t>(n + q - 1)];
                    if (slot.root_is(ctx_.bottom_symbol)) continue;
                    for (Term& u : psi_slot(src, host, slot, q)) push(out, std::move(u));
                }
                break;
            }
            default:
                break;  // bot, eval outside a slot, foreign: empty set
        }
        memo_.emplace(t, out);
        return out;
    }

    bool truncated() const { return truncated_; }

private:
    void push(std::vector<Term>& out, Term t) {
        for (const Term& u : out)
            if (u == t) return;
        if (out.size() >= cap_) {
            truncated_ = true;
            return;
        }
        out.push_back(std::move(t));
    }

    /// Cartesian product of per-argument Phi sets, cap-limited.
    std::vector<std::vector<Term>> product(std::span<const Term> args) {
        std::vector<std::vector<Term>> acc{{}};
        for (const Term& a : args) {
            std::vector<Term> choices = run(a);
            std::vector<std::vector<Term>> next;
            for (const auto& prefix : acc) {
                for (const Term& c : choices) {
                    if (next.size() >= cap_) { truncated_ = true; break; }
                    std::vector<Term> tuple = prefix;
                    tuple.push_back(c);
                    next.push_back(std::move(tuple));
                }
                if (truncated_ && next.size() >= cap_) break;
            }
            acc = std::move(next);
            if (acc.empty()) return acc;
        }
        return acc;
    }

    /// Psi clause for an evaluation slot: the represented U-terms
    /// U^rho_j(u', u'_1..u'_|Xj|).
    std::vector<Term> psi_slot(const std::string& src, const std::vector<Term>& host,
                               const Term& slot, int q) {
        std::vector<Term> out;
        auto info_it = ctx_.eval_info.find(slot.is_app() ? slot.name() : std::string());
        if (info_it == ctx_.eval_info.end()) return out;
        const EvalInfo& info = info_it->second;
        if (info.source_defined != src || info.slot != q) return out;

        const ConditionalRule& rule = ctx_.source.rules[info.rule_index];
        const CondMeta& meta = ctx_.cond_meta.at(info.rule_index)[static_cast<std::size_t>(
            info.cond_index - 1)];
        if (slot.arity() != static_cast<int>(1 + meta.vvars.size())) return out;
        const Term& first = slot.args()[0];
        if (ext_kind(first, ctx_) != ExtKind::Guard || first.arity() != 1) return out;
        Term payload = first.args()[0];

        std::optional<Substitution> sigma = psi_slot_matcher(ctx_, rule, meta, host, slot);
        if (!sigma) return out;

        std::vector<Term> components{payload};
        for (const std::string& x : meta.xvars) {
            const Term* bound = sigma->lookup(x);
            if (!bound) return out;
            components.push_back(*bound);
        }
        for (std::vector<Term>& tuple : product(components))
            out.push_back(Term::app(meta.u_symbol, std::move(tuple)));
        return out;
    }

private:
    const TransformContext& ctx_;
    std::size_t cap_;
    bool truncated_ = false;
    std::map<Term, std::vector<Term>, TermLess> memo_;
};

}  // namespace detail

/// The exact finite set Phi(t) unless its cardinality would exceed cap.
/// Rejects ill-placed input.
inline PhiResult phi(const Term& t, const TransformContext& ctx, std::size_t cap = 4096) {
    if (!is_well_placed(t, ctx))
        throw TransformError("phi applied to ill-placed term " + to_string(t));
    detail::PhiComputer computer(ctx, cap);
    PhiResult res;
    res.terms = computer.run(t);
    res.truncated = computer.truncated();
    res.cardinality = res.terms.size();
    return res;
}

/// Membership in Phi(t) decided structurally, without materializing the set.
inline bool phi_contains(const Term& t, const Term& candidate, const TransformContext& ctx) {
    switch (detail::ext_kind(t, ctx)) {
        case detail::ExtKind::Variable:
            return candidate == t;
        case detail::ExtKind::Guard:
            return t.arity() == 1 && phi_contains(t.args()[0], candidate, ctx);
        case detail::ExtKind::Constructor: {
            if (!candidate.is_app() || candidate.name() != t.name() ||
                candidate.arity() != t.arity())
                return false;
            for (int i = 0; i < t.arity(); ++i)
                if (!phi_contains(t.args()[i], candidate.args()[i], ctx)) return false;
            return true;
        }
        case detail::ExtKind::Barred: {
            auto [src, nm] = detail::barred_source(t, ctx);
            auto [n, m] = nm;
            if (t.arity() != n + m) return false;
            std::vector<Term> host(t.args().begin(), t.args().begin() + n);
            if (candidate.is_app() && candidate.name() == src &&
                candidate.arity() == n) {
                bool all = true;
                for (int i = 0; i < n; ++i)
                    if (!phi_contains(host[static_cast<std::size_t>(i)], candidate.args()[i],
                                      ctx)) { all = false; break; }
                if (all) return true;
            }
            for (int q = 1; q <= m; ++q) {
                const Term& slot = t.args()[static_cast<std::size_t>(n + q - 1)];
                if (!slot.is_app()) continue;
                auto info_it = ctx.eval_info.find(slot.name());
                if (info_it == ctx.eval_info.end()) continue;
                const EvalInfo& info = info_it->second;
                if (info.source_defined != src || info.slot != q) continue;
                const CondMeta& meta = ctx.cond_meta.at(info.rule_index)[
                    static_cast<std::size_t>(info.cond_index - 1)];
                if (!candidate.is_app() || candidate.name() != meta.u_symbol ||
                    candidate.arity() != static_cast<int>(1 + meta.xvars.size()))
                    continue;
                if (slot.arity() != static_cast<int>(1 + meta.vvars.size())) continue;
                const Term& first = slot.args()[0];
                if (detail::ext_kind(first, ctx) != detail::ExtKind::Guard ||
                    first.arity() != 1)
                    continue;
                auto sigma = detail::psi_slot_matcher(ctx, ctx.source.rules[info.rule_index],
                                                      meta, host, slot);
                if (!sigma) continue;
                if (!phi_contains(first.args()[0], candidate.args()[0], ctx)) continue;
                bool all = true;
                for (std::size_t i = 0; i < meta.xvars.size(); ++i) {
                    const Term* bound = sigma->lookup(meta.xvars[i]);
                    if (!bound || !phi_contains(*bound, candidate.args()[static_cast<int>(i) + 1],
                                                ctx)) { all = false; break; }
                }
                if (all) return true;
            }
            return false;
        }
        default:
            return false;
    }
}

/// Presence and viability of condition evaluations:
///  - NoEvaluation: no subterm carries an evaluation slot.
///  - Stuck: evaluations exist but no defined-rooted subterm matches any
///    conditional rule's ext(l), so none can make progress.
///  - HasEvaluation otherwise.
/// |Phi(t)| = 1 whenever the state is NoEvaluation or Stuck.
inline EvalState evaluation_state(const Term& t, const TransformContext& ctx) {
    bool any_eval = false;
    auto scan_eval = [&](auto&& self, const Term& u) -> void {
        if (u.is_app() && ctx.eval_info.count(u.name())) any_eval = true;
        for (const Term& a : u.args()) self(self, a);
    };
    scan_eval(scan_eval, t);
    if (!any_eval) return EvalState::NoEvaluation;

    std::map<std::string, std::vector<std::size_t>> cond_rules;
    for (std::size_t i = 0; i < ctx.source.rules.size(); ++i)
        if (!ctx.source.rules[i].unconditional())
            cond_rules[ctx.source.rules[i].lhs.name()].push_back(i);

    bool can_continue = false;
    auto scan_barred = [&](auto&& self, const Term& u) -> void {
        if (can_continue) return;
        if (u.is_app() && detail::ext_kind(u, ctx) == detail::ExtKind::Barred) {
            std::string src = detail::barred_source(u, ctx).first;
            auto it = cond_rules.find(src);
            if (it != cond_rules.end()) {
                for (std::size_t idx : it->second) {
                    const ConditionalRule& rule = ctx.source.rules[idx];
                    FreshNameGen gen(var_set(rule.lhs));
                    Substitution sigma;
                    if (match_into(ext(rule.lhs, ctx, gen), u, sigma)) {
                        can_continue = true;
                        return;
                    }
                }
            }
        }
        for (const Term& a : u.args()) self(self, a);
    };
    scan_barred(scan_barred, t);
    return can_continue ? EvalState::HasEvaluation : EvalState::Stuck;
}

/// Phi extended to substitutions: the product of Phi over the domain.
inline std::vector<Substitution> phi_subst(const Substitution& sigma,
                                           const TransformContext& ctx,
                                           std::size_t cap = 4096) {
    std::vector<Substitution> acc{Substitution{}};
    for (const auto& [v, t] : sigma.bindings()) {
        PhiResult choices = phi(t, ctx, cap);
        std::vector<Substitution> next;
        for (const Substitution& prefix : acc) {
            for (const Term& c : choices.terms) {
                if (next.size() >= cap) break;
                Substitution extended = prefix;
                extended.bind(v, c);
                next.push_back(std::move(extended));
            }
        }
        acc = std::move(next);
    }
    return acc;
}

/// Cardinality of Phi on an eval-rooted term per the tuple clause
/// Phi([t1..tn]^rho_j) = Phi(t1) x ... x Phi(tn); only the size is exposed.
inline std::size_t phi_tuple_cardinality(const Term& t, const TransformContext& ctx,
                                         std::size_t cap = 4096) {
    if (!t.is_app() || !ctx.eval_info.count(t.name()))
        throw TransformError("phi_tuple_cardinality expects an eval-rooted term");
    std::size_t card = 1;
    for (const Term& a : t.args()) {
        card *= phi(a, ctx, cap).cardinality;
        if (card > cap) return cap;
    }
    return card;
}

}  // namespace ctrslab

#endif  // CTRSLAB_PHI_HPP
