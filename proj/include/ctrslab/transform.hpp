#ifndef CTRSLAB_TRANSFORM_HPP
#define CTRSLAB_TRANSFORM_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ctrslab/classify.hpp"
#include "ctrslab/system.hpp"

namespace ctrslab {

class TransformError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Method { U, T, SR };

/// Per-condition bookkeeping shared by all consumers of a transformation:
/// X_j = Var(l, t1..t(j-1)) and V_j = Var(t1..t(j-1)), both in first-occurrence
/// order, plus the symbols introduced for condition j.
struct CondMeta {
    std::vector<std::string> xvars;
    std::vector<std::string> vvars;
    std::string u_symbol;     // U^rho_j
    std::string eval_symbol;  // [ ]^rho_j (SR contexts only)
};

struct EvalInfo {
    std::string source_defined;  // f
    std::size_t rule_index;      // rho, as index into source.rules
    int slot;                    // i: rank of rho among f's conditional rules (1-based)
    int cond_index;              // j (1-based)
};

struct TransformContext {
    RewriteSystem source;
    RewriteSystem target;
    Method method = Method::U;

    std::string guard_symbol;   // sq
    std::string bottom_symbol;  // bot

    /// source defined symbol -> target symbol (f -> f^, or f itself when f has
    /// no conditional rules); identity for U and T.
    std::map<std::string, std::string> symbol_map;
    /// source defined symbol -> (original arity n, conditional rule count m).
    std::map<std::string, std::pair<int, int>> defined_info;
    /// target eval symbol name -> owning rule/slot/condition.
    std::map<std::string, EvalInfo> eval_info;
    /// source rule index -> per-condition metadata.
    std::map<std::size_t, std::vector<CondMeta>> cond_meta;
    /// (rule index in unraveled target, rule index in SR target) pairs; a
    /// bijection between U rules and non-auxiliary SR rules.
    std::vector<std::pair<std::size_t, std::size_t>> rule_correspondence;
    /// Embedded unraveling of the same source (SR contexts).
    std::shared_ptr<const TransformContext> unraveled;

    const std::string& mapped(const std::string& source_symbol) const {
        auto it = symbol_map.find(source_symbol);
        return it == symbol_map.end() ? source_symbol : it->second;
    }
};

namespace detail {

inline std::set<std::string> all_rule_vars(const RewriteSystem& sys) {
    std::set<std::string> out;
    for (const auto& rule : sys.rules) {
        std::vector<Term> all{rule.lhs, rule.rhs};
        for (const auto& [s, t] : rule.conditions) {
            all.push_back(s);
            all.push_back(t);
        }
        for (const std::string& v : var_set(std::span<const Term>(all))) out.insert(v);
    }
    return out;
}

/// Picks introduced symbol names (u<N>, sq<N>, tuple<j>, f^, sq, bot) that do
/// not collide with existing symbols or rule variables.
class SymbolNamer {
public:
    explicit SymbolNamer(const RewriteSystem& sys) {
        for (const Symbol& s : sys.signature.symbols()) taken_.insert(s.name);
        for (const std::string& v : all_rule_vars(sys)) taken_.insert(v);
    }

    std::string numbered(const std::string& base) {
        for (std::size_t& n = counters_[base];;) {
            ++n;
            std::string candidate = base + std::to_string(n);
            if (taken_.insert(candidate).second) return candidate;
        }
    }

    std::string exact_or_primed(std::string candidate) {
        while (!taken_.insert(candidate).second) candidate += '\'';
        return candidate;
    }

    std::string barred(const std::string& name) {
        std::string candidate = name + "^";
        while (!taken_.insert(candidate).second) candidate += '^';
        return candidate;
    }

private:
    std::set<std::string> taken_;
    std::map<std::string, std::size_t> counters_;
};

inline std::vector<std::string> vars_of_prefix(const ConditionalRule& rule, std::size_t upto,
                                               bool include_lhs) {
    std::vector<Term> seq;
    if (include_lhs) seq.push_back(rule.lhs);
    for (std::size_t i = 0; i < upto; ++i) seq.push_back(rule.conditions[i].second);
    return vars_in_order(std::span<const Term>(seq));
}

}  // namespace detail

/// Simultaneous unraveling: each conditional rule becomes a chain of k+1
/// unconditional rules threading X_j = Var(l, t1..t(j-1)) through fresh
/// U symbols. Rejects rules that would not yield a TRS.
inline TransformContext unravel(const RewriteSystem& sys) {
    TransformContext ctx;
    ctx.source = sys;
    ctx.method = Method::U;

    detail::SymbolNamer namer(sys);
    Signature sig = sys.signature;
    std::vector<ConditionalRule> out;

    for (std::size_t idx = 0; idx < sys.rules.size(); ++idx) {
        const ConditionalRule& rule = sys.rules[idx];
        if (rule.unconditional()) {
            std::set<std::string> lv = var_set(rule.lhs);
            for (const std::string& v : var_set(rule.rhs))
                if (!lv.count(v))
                    throw TransformError("rule " + rule.label +
                                         ": right-hand side variable '" + v +
                                         "' does not occur in the left-hand side");
            out.push_back(rule);
            continue;
        }

        std::set<std::string> bound = var_set(rule.lhs);
        for (std::size_t i = 0; i < rule.conditions.size(); ++i) {
            for (const std::string& v : var_set(rule.conditions[i].first))
                if (!bound.count(v))
                    throw TransformError("rule " + rule.label + ": condition " +
                                         std::to_string(i + 1) + " is not deterministic ('" +
                                         v + "' unbound)");
            for (const std::string& v : var_set(rule.conditions[i].second)) bound.insert(v);
        }
        for (const std::string& v : var_set(rule.rhs))
            if (!bound.count(v))
                throw TransformError("rule " + rule.label + ": right-hand side variable '" + v +
                                     "' is not bound (rule is of Type 4)");

        std::size_t k = rule.conditions.size();
        std::vector<CondMeta>& metas = ctx.cond_meta[idx];
        for (std::size_t j = 0; j < k; ++j) {
            CondMeta meta;
            meta.xvars = detail::vars_of_prefix(rule, j, true);
            meta.vvars = detail::vars_of_prefix(rule, j, false);
            meta.u_symbol = namer.numbered("u");
            sig.add(Symbol{meta.u_symbol, static_cast<int>(1 + meta.xvars.size()),
                           SymbolRole::USymbol});
            metas.push_back(std::move(meta));
        }

        auto u_term = [&](std::size_t j, const Term& first) {
            std::vector<Term> args{first};
            for (const std::string& x : metas[j].xvars) args.push_back(Term::var(x));
            return Term::app(metas[j].u_symbol, std::move(args));
        };

        for (std::size_t j = 0; j <= k; ++j) {
            Term lhs = j == 0 ? rule.lhs : u_term(j - 1, rule.conditions[j - 1].second);
            Term rhs = j == k ? rule.rhs : u_term(j, rule.conditions[j].first);
            out.push_back(ConditionalRule{rule.label + "." + std::to_string(j + 1),
                                          lhs, rhs, {}});
        }
    }

    ctx.target = make_system(std::move(sig), std::move(out));
    if (ctx.target.kind != SystemKind::Trs)
        throw TransformError("internal: unraveled system is not a TRS");
    return ctx;
}

/// Checks a named rule-wise property of the unraveled system ("ultra-P").
inline bool ultra_check(const RewriteSystem& sys, const std::string& property) {
    RewriteSystem target = unravel(sys).target;
    for (const auto& rule : target.rules) {
        bool ok;
        if (property == "ll") ok = is_linear(rule.lhs);
        else if (property == "rl") ok = is_linear(rule.rhs);
        else if (property == "wll") ok = is_wll_rule(rule);
        else if (property == "ne") {
            std::set<std::string> rv = var_set(rule.rhs);
            ok = true;
            for (const std::string& v : var_set(rule.lhs))
                if (!rv.count(v)) { ok = false; break; }
        } else
            throw TransformError("unknown ultra property '" + property + "'");
        if (!ok) return false;
    }
    return true;
}

/// Linearization: renames every occurrence of each variable that repeats
/// across (l, t1..tk) to a distinct fresh variable and appends one tuple
/// condition mapping the fresh variables back to the originals. The result of
/// a WLL rule is WLL and ultra-WLL.
inline TransformContext linearize(const RewriteSystem& sys) {
    TransformContext ctx;
    ctx.source = sys;
    ctx.method = Method::T;

    for (const auto& rule : sys.rules) {
        if (!is_wll_rule(rule)) {
            std::string bad;
            std::vector<Term> seq = rule.lhs_and_targets();
            std::vector<Term> users{rule.rhs};
            for (const auto& [s, t] : rule.conditions) users.push_back(s);
            for (const std::string& x : var_set(std::span<const Term>(users)))
                if (count_var_occurrences(std::span<const Term>(seq), x) != 1) { bad = x; break; }
            throw TransformError("rule " + rule.label + " is not WLL (variable '" + bad + "')");
        }
        std::set<std::string> bound = var_set(rule.lhs);
        for (const auto& [s, t] : rule.conditions) {
            for (const std::string& v : var_set(s))
                if (!bound.count(v))
                    throw TransformError("rule " + rule.label +
                                         " is not deterministic ('" + v + "' unbound)");
            for (const std::string& v : var_set(t)) bound.insert(v);
        }
    }

    detail::SymbolNamer namer(sys);
    Signature sig = sys.signature;
    std::map<std::size_t, std::string> tuple_names;  // arity j -> symbol
    std::set<std::string> used_vars = detail::all_rule_vars(sys);
    std::vector<ConditionalRule> out;

    for (const ConditionalRule& rule : sys.rules) {
        std::vector<Term> seq = rule.lhs_and_targets();
        std::set<std::string> offending;
        for (const std::string& x : var_set(std::span<const Term>(seq)))
            if (count_var_occurrences(std::span<const Term>(seq), x) > 1) offending.insert(x);
        if (rule.unconditional() || offending.empty()) {
            out.push_back(rule);
            continue;
        }

        FreshNameGen gen(used_vars);
        std::vector<std::pair<std::string, std::string>> introduced;  // fresh -> original
        auto relabel = [&](auto&& self, const Term& t) -> Term {
            if (t.is_var()) {
                if (!offending.count(t.name())) return t;
                std::string fresh = gen.fresh(t.name());
                used_vars.insert(fresh);
                introduced.emplace_back(fresh, t.name());
                return Term::var(fresh);
            }
            if (t.arity() == 0) return t;
            std::vector<Term> args;
            args.reserve(t.args().size());
            for (const Term& a : t.args()) args.push_back(self(self, a));
            return Term::app(t.name(), std::move(args));
        };

        ConditionalRule converted = rule;
        converted.lhs = relabel(relabel, rule.lhs);
        for (auto& [s, t] : converted.conditions) t = relabel(relabel, t);

        std::size_t j = introduced.size();
        auto it = tuple_names.find(j);
        if (it == tuple_names.end()) {
            std::string name = namer.exact_or_primed("tuple" + std::to_string(j));
            it = tuple_names.emplace(j, name).first;
            sig.add(Symbol{name, static_cast<int>(j), SymbolRole::TupleLin});
        }
        std::vector<Term> fresh_args, orig_args;
        for (const auto& [fresh, orig] : introduced) {
            fresh_args.push_back(Term::var(fresh));
            orig_args.push_back(Term::var(orig));
        }
        converted.conditions.emplace_back(Term::app(it->second, std::move(fresh_args)),
                                          Term::app(it->second, std::move(orig_args)));
        out.push_back(std::move(converted));
    }

    ctx.target = make_system(std::move(sig), std::move(out));
    if (!is_wll_system(ctx.target) || !is_ultra_wll(ctx.target))
        throw TransformError("internal: linearized system is not WLL and ultra-WLL");
    return ctx;
}

/// ext: extends the arguments of defined symbols with fresh variables for the
/// evaluation slots. Input is over the source signature of an SR context.
inline Term ext(const Term& t, const TransformContext& ctx, FreshNameGen& gen) {
    if (t.is_var()) return t;
    auto it = ctx.defined_info.find(t.name());
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args()) args.push_back(ext(a, ctx, gen));
    if (it == ctx.defined_info.end()) return Term::app(t.name(), std::move(args));
    for (int q = 0; q < it->second.second; ++q) args.push_back(Term::var(gen.fresh("z")));
    return Term::app(ctx.mapped(t.name()), std::move(args));
}

inline Term ext(const Term& t, const TransformContext& ctx) {
    FreshNameGen gen(var_set(t));
    return ext(t, ctx, gen);
}

/// bar: ext with every extended argument already reset to bot.
inline Term bar(const Term& t, const TransformContext& ctx) {
    if (t.is_var()) return t;
    auto it = ctx.defined_info.find(t.name());
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args()) args.push_back(bar(a, ctx));
    if (it == ctx.defined_info.end()) return Term::app(t.name(), std::move(args));
    for (int q = 0; q < it->second.second; ++q) args.push_back(Term::constant(ctx.bottom_symbol));
    return Term::app(ctx.mapped(t.name()), std::move(args));
}

inline Term guarded(const Term& t, const TransformContext& ctx) {
    return Term::app(ctx.guard_symbol, {t});
}

/// phi of Definition SR: the initialization mapping sq(bar(.)).
inline Term guard_bar(const Term& t, const TransformContext& ctx) {
    return guarded(bar(t, ctx), ctx);
}

namespace detail {

enum class ExtKind { Variable, Constructor, Barred, Guard, Bottom, Eval, Foreign };

inline ExtKind ext_kind(const Term& t, const TransformContext& ctx) {
    if (t.is_var()) return ExtKind::Variable;
    const Symbol* sym = ctx.target.signature.find(t.name());
    if (!sym) return ExtKind::Foreign;
    switch (sym->role) {
        case SymbolRole::Guard: return ExtKind::Guard;
        case SymbolRole::Bottom: return ExtKind::Bottom;
        case SymbolRole::TupleEval: return ExtKind::Eval;
        case SymbolRole::BarredDefined: return ExtKind::Barred;
        case SymbolRole::Constructor:
        case SymbolRole::TupleLin: return ExtKind::Constructor;
        default: return ExtKind::Foreign;
    }
}

/// Source symbol and original arity of a barred target symbol.
inline std::pair<std::string, std::pair<int, int>> barred_source(const Term& t,
                                                                 const TransformContext& ctx) {
    for (const auto& [src, tgt] : ctx.symbol_map)
        if (tgt == t.name()) return {src, ctx.defined_info.at(src)};
    throw TransformError("no source symbol for '" + t.name() + "'");
}

}  // namespace detail

/// Well-placement: bot and eval symbols occur only at the root or in extended
/// argument slots, and each eval symbol sits in the slot ranked for its rule.
inline bool is_well_placed(const Term& t, const TransformContext& ctx) {
    auto go = [&](auto&& self, const Term& u, bool special_ok,
                  const std::string& host, int slot) -> bool {
        switch (detail::ext_kind(u, ctx)) {
            case detail::ExtKind::Variable:
                return true;
            case detail::ExtKind::Bottom:
                return special_ok;
            case detail::ExtKind::Eval: {
                if (!special_ok) return false;
                const EvalInfo& info = ctx.eval_info.at(u.name());
                if (!host.empty() && (info.source_defined != host || info.slot != slot))
                    return false;
                for (const Term& a : u.args())
                    if (!self(self, a, false, "", 0)) return false;
                return true;
            }
            case detail::ExtKind::Guard:
            case detail::ExtKind::Constructor: {
                if (u.arity() != ctx.target.signature.at(u.name()).arity) return false;
                for (const Term& a : u.args())
                    if (!self(self, a, false, "", 0)) return false;
                return true;
            }
            case detail::ExtKind::Barred: {
                auto [src, nm] = detail::barred_source(u, ctx);
                auto [n, m] = nm;
                if (u.arity() != n + m) return false;
                for (int i = 0; i < n; ++i)
                    if (!self(self, u.args()[i], false, "", 0)) return false;
                for (int q = 1; q <= m; ++q)
                    if (!self(self, u.args()[n + q - 1], true, src, q)) return false;
                return true;
            }
            case detail::ExtKind::Foreign:
                return false;
        }
        return false;
    };
    return go(go, t, true, "", 0);
}

/// hat: partial inverse of bar; strips guards and extended arguments. Absent
/// when bot or an eval symbol occurs outside an (ignored) extended slot.
inline std::optional<Term> hat(const Term& t, const TransformContext& ctx) {
    switch (detail::ext_kind(t, ctx)) {
        case detail::ExtKind::Variable:
            return t;
        case detail::ExtKind::Guard:
            if (t.arity() != 1) return std::nullopt;
            return hat(t.args()[0], ctx);
        case detail::ExtKind::Constructor: {
            std::vector<Term> args;
            args.reserve(t.args().size());
            for (const Term& a : t.args()) {
                auto h = hat(a, ctx);
                if (!h) return std::nullopt;
                args.push_back(*h);
            }
            return Term::app(t.name(), std::move(args));
        }
        case detail::ExtKind::Barred: {
            auto [src, nm] = detail::barred_source(t, ctx);
            if (t.arity() != nm.first + nm.second) return std::nullopt;
            std::vector<Term> args;
            args.reserve(static_cast<std::size_t>(nm.first));
            for (int i = 0; i < nm.first; ++i) {
                auto h = hat(t.args()[i], ctx);
                if (!h) return std::nullopt;
                args.push_back(*h);
            }
            return Term::app(src, std::move(args));
        }
        default:
            return std::nullopt;  // bot, eval, or foreign at a visible position
    }
}

/// reset: puts bot into every extended argument. Rejects ill-placed input.
inline Term reset(const Term& t, const TransformContext& ctx) {
    if (!is_well_placed(t, ctx))
        throw TransformError("reset applied to ill-placed term " + to_string(t));
    auto go = [&](auto&& self, const Term& u) -> Term {
        switch (detail::ext_kind(u, ctx)) {
            case detail::ExtKind::Variable:
                return u;
            case detail::ExtKind::Bottom:
            case detail::ExtKind::Eval:
                return Term::constant(ctx.bottom_symbol);
            case detail::ExtKind::Guard:
                return guarded(self(self, u.args()[0]), ctx);
            case detail::ExtKind::Constructor: {
                if (u.arity() == 0) return u;
                std::vector<Term> args;
                for (const Term& a : u.args()) args.push_back(self(self, a));
                return Term::app(u.name(), std::move(args));
            }
            case detail::ExtKind::Barred: {
                auto [src, nm] = detail::barred_source(u, ctx);
                std::vector<Term> args;
                for (int i = 0; i < nm.first; ++i) args.push_back(self(self, u.args()[i]));
                for (int q = 0; q < nm.second; ++q)
                    args.push_back(Term::constant(ctx.bottom_symbol));
                return Term::app(u.name(), std::move(args));
            }
            default:
                throw TransformError("reset: foreign symbol " + u.name());
        }
    };
    return go(go, t);
}

/// SR construction without the ultra-WLL admission gate (the gate-free variant
/// exists so the iff theorem can be tested on arbitrary DCTRSs).
inline TransformContext sr_construct(const RewriteSystem& sys) {
    TransformContext ctx;
    ctx.source = sys;
    ctx.method = Method::SR;
    ctx.unraveled = std::make_shared<TransformContext>(unravel(sys));

    detail::SymbolNamer namer(sys);
    Signature sig;

    std::set<std::string> defined = sys.defined_symbols();
    auto cond_ranks = sys.conditional_rule_ranks();

    // constructors keep their names; defined symbols with conditional rules
    // get a barred name and m extra argument slots
    for (const Symbol& sym : sys.signature.symbols()) {
        if (!defined.count(sym.name)) {
            sig.add(sym);
            continue;
        }
        int m = cond_ranks.count(sym.name)
                    ? static_cast<int>(cond_ranks.at(sym.name).size())
                    : 0;
        std::string target_name = m > 0 ? namer.barred(sym.name) : sym.name;
        sig.add(Symbol{target_name, sym.arity + m, SymbolRole::BarredDefined});
        ctx.symbol_map[sym.name] = target_name;
        ctx.defined_info[sym.name] = {sym.arity, m};
    }

    ctx.guard_symbol = namer.exact_or_primed("sq");
    ctx.bottom_symbol = namer.exact_or_primed("bot");
    sig.add(Symbol{ctx.guard_symbol, 1, SymbolRole::Guard});
    sig.add(Symbol{ctx.bottom_symbol, 0, SymbolRole::Bottom});

    for (std::size_t idx = 0; idx < sys.rules.size(); ++idx) {
        const ConditionalRule& rule = sys.rules[idx];
        if (rule.unconditional()) continue;
        const std::vector<CondMeta>& u_metas = ctx.unraveled->cond_meta.at(idx);
        const std::string& f = rule.lhs.name();
        const auto& ranks = cond_ranks.at(f);
        int slot = static_cast<int>(std::find(ranks.begin(), ranks.end(), idx) -
                                    ranks.begin()) + 1;
        std::vector<CondMeta>& metas = ctx.cond_meta[idx];
        for (std::size_t j = 0; j < rule.conditions.size(); ++j) {
            CondMeta meta = u_metas[j];
            meta.eval_symbol = namer.numbered("sq");
            sig.add(Symbol{meta.eval_symbol, static_cast<int>(1 + meta.vvars.size()),
                           SymbolRole::TupleEval});
            ctx.eval_info[meta.eval_symbol] =
                EvalInfo{f, idx, slot, static_cast<int>(j + 1)};
            metas.push_back(std::move(meta));
        }
    }

    TransformContext emit_ctx = ctx;  // signature-only context for ext/bar during emission
    emit_ctx.target.signature = sig;

    std::vector<ConditionalRule> out;
    std::size_t u_rule_cursor = 0;

    for (std::size_t idx = 0; idx < sys.rules.size(); ++idx) {
        const ConditionalRule& rule = sys.rules[idx];
        std::set<std::string> rule_vars = detail::all_rule_vars(
            RewriteSystem{Signature{}, {rule}, SystemKind::Ctrs});

        if (rule.unconditional()) {
            FreshNameGen gen(rule_vars);
            Term lhs = ext(rule.lhs, emit_ctx, gen);
            Term rhs = guarded(bar(rule.rhs, emit_ctx), emit_ctx);
            ctx.rule_correspondence.emplace_back(u_rule_cursor, out.size());
            ++u_rule_cursor;
            out.push_back(ConditionalRule{rule.label + ".1", lhs, rhs, {}});
            continue;
        }

        const std::string& f = rule.lhs.name();
        auto [n, m] = ctx.defined_info.at(f);
        int slot = ctx.eval_info.at(ctx.cond_meta.at(idx)[0].eval_symbol).slot;
        std::size_t k = rule.conditions.size();

        FreshNameGen gen(rule_vars);
        std::vector<Term> host_args;  // ext(w1)..ext(wn), shared by the k+1 rules
        for (const Term& w : rule.lhs.args()) host_args.push_back(ext(w, emit_ctx, gen));
        std::vector<Term> slot_vars;  // z_q for every slot except `slot`
        for (int q = 1; q <= m; ++q)
            slot_vars.push_back(Term::var(gen.fresh("z")));

        auto host = [&](const Term& eval_slot) {
            std::vector<Term> args = host_args;
            for (int q = 1; q <= m; ++q)
                args.push_back(q == slot ? eval_slot : slot_vars[static_cast<std::size_t>(q - 1)]);
            return Term::app(ctx.symbol_map.at(f), std::move(args));
        };
        auto eval_term = [&](std::size_t j, const Term& payload) {
            const CondMeta& meta = ctx.cond_meta.at(idx)[j];
            std::vector<Term> args{guarded(payload, emit_ctx)};
            for (const std::string& v : meta.vvars) args.push_back(Term::var(v));
            return Term::app(meta.eval_symbol, std::move(args));
        };

        for (std::size_t j = 0; j <= k; ++j) {
            Term lhs = j == 0
                           ? host(Term::constant(ctx.bottom_symbol))
                           : host(eval_term(j - 1, ext(rule.conditions[j - 1].second,
                                                       emit_ctx, gen)));
            Term rhs = j == k
                           ? guarded(bar(rule.rhs, emit_ctx), emit_ctx)
                           : host(eval_term(j, bar(rule.conditions[j].first, emit_ctx)));
            ctx.rule_correspondence.emplace_back(u_rule_cursor, out.size());
            ++u_rule_cursor;
            out.push_back(ConditionalRule{rule.label + "." + std::to_string(j + 1),
                                          lhs, rhs, {}});
        }
    }

    // auxiliary rules: guard collapse, then guard hoisting per argument
    {
        Term x = Term::var("x");
        out.push_back(ConditionalRule{"aux.guard",
                                      guarded(guarded(x, emit_ctx), emit_ctx),
                                      guarded(x, emit_ctx), {}});
    }
    for (const Symbol& sym : sig.symbols()) {
        bool constructor = sym.role == SymbolRole::Constructor ||
                           sym.role == SymbolRole::TupleLin;
        bool barred_def = sym.role == SymbolRole::BarredDefined;
        if (!constructor && !barred_def) continue;
        int n = sym.arity;
        int m = 0;
        if (barred_def) {
            for (const auto& [src, info] : ctx.defined_info)
                if (ctx.symbol_map.at(src) == sym.name) {
                    n = info.first;
                    m = info.second;
                }
        }
        for (int i = 0; i < n; ++i) {
            std::vector<Term> lhs_args, rhs_args;
            for (int q = 0; q < n; ++q) {
                Term xq = Term::var("x" + std::to_string(q + 1));
                lhs_args.push_back(q == i ? guarded(xq, emit_ctx) : xq);
                rhs_args.push_back(xq);
            }
            for (int q = 0; q < m; ++q) {
                lhs_args.push_back(Term::var("z" + std::to_string(q + 1)));
                rhs_args.push_back(Term::constant(ctx.bottom_symbol));
            }
            out.push_back(ConditionalRule{
                "aux." + sym.name + "." + std::to_string(i + 1),
                Term::app(sym.name, std::move(lhs_args)),
                guarded(Term::app(sym.name, std::move(rhs_args)), emit_ctx), {}});
        }
    }

    ctx.target = make_system(std::move(sig), std::move(out), /*assign_roles=*/false);
    if (ctx.target.kind != SystemKind::Trs)
        throw TransformError("internal: SR system is not a TRS");
    return ctx;
}

/// The SR transformation, admissible for ultra-WLL DCTRSs.
inline TransformContext sr_transform(const RewriteSystem& sys) {
    for (const auto& rule : sys.rules) {
        if (rule.unconditional()) {
            if (!is_wll_rule(rule))
                throw TransformError("rule " + rule.label +
                                     " violates ultra-WLL: unconditional rule is not WLL");
            continue;
        }
        std::vector<Term> prefix{rule.lhs};
        for (std::size_t i = 0; i + 1 < rule.conditions.size(); ++i)
            prefix.push_back(rule.conditions[i].second);
        if (!is_linear(std::span<const Term>(prefix)))
            throw TransformError("rule " + rule.label +
                                 " violates ultra-WLL clause (a): l,t1..t(k-1) is not linear");
        if (!is_ultra_wll_rule(rule))
            throw TransformError("rule " + rule.label +
                                 " violates ultra-WLL clause (b): a right-hand side variable "
                                 "repeats across l,t1..tk");
    }
    return sr_construct(sys);
}

}  // namespace ctrslab

#endif  // CTRSLAB_TRANSFORM_HPP
