#ifndef CTRSLAB_SYSTEM_HPP
#define CTRSLAB_SYSTEM_HPP

#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctrslab/term.hpp"

namespace ctrslab {

class SystemError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Oriented conditional rewrite rule l -> r <= s1 ->> t1, ..., sk ->> tk.
struct ConditionalRule {
    std::string label;
    Term lhs;
    Term rhs;
    std::vector<std::pair<Term, Term>> conditions;  // (s_i, t_i), oriented

    bool unconditional() const { return conditions.empty(); }

    /// Variables of the sequence l, t1, ..., tk (the WLL reference sequence).
    std::vector<Term> lhs_and_targets() const {
        std::vector<Term> seq{lhs};
        for (const auto& [s, t] : conditions) seq.push_back(t);
        return seq;
    }
};

/// Insertion-ordered signature with name-keyed lookup.
class Signature {
public:
    void add(Symbol sym) {
        auto it = index_.find(sym.name);
        if (it != index_.end()) {
            const Symbol& existing = symbols_[it->second];
            if (existing.arity != sym.arity)
                throw SystemError("arity conflict for symbol '" + sym.name + "': " +
                                  std::to_string(existing.arity) + " vs " +
                                  std::to_string(sym.arity));
            return;
        }
        index_.emplace(sym.name, symbols_.size());
        symbols_.push_back(std::move(sym));
    }

    const Symbol* find(const std::string& name) const {
        auto it = index_.find(name);
        return it == index_.end() ? nullptr : &symbols_[it->second];
    }

    const Symbol& at(const std::string& name) const {
        const Symbol* s = find(name);
        if (!s) throw SystemError("unknown symbol '" + name + "'");
        return *s;
    }

    bool contains(const std::string& name) const { return index_.count(name) > 0; }

    void set_role(const std::string& name, SymbolRole role) {
        auto it = index_.find(name);
        if (it != index_.end()) symbols_[it->second].role = role;
    }

    const std::vector<Symbol>& symbols() const { return symbols_; }
    std::size_t size() const { return symbols_.size(); }

private:
    std::vector<Symbol> symbols_;
    std::map<std::string, std::size_t> index_;
};

enum class SystemKind { Ctrs, Trs };

/// A CTRS or TRS: signature plus ordered rule list. Conditional rules of each
/// defined symbol are ranked by order of appearance.
struct RewriteSystem {
    Signature signature;
    std::vector<ConditionalRule> rules;
    SystemKind kind = SystemKind::Ctrs;

    std::set<std::string> defined_symbols() const {
        std::set<std::string> out;
        for (const auto& rule : rules) out.insert(rule.lhs.name());
        return out;
    }

    std::set<std::string> constructor_symbols() const {
        std::set<std::string> defined = defined_symbols();
        std::set<std::string> out;
        for (const Symbol& s : signature.symbols())
            if (!defined.count(s.name)) out.insert(s.name);
        return out;
    }

    bool is_constructor_term(const Term& t) const {
        if (t.is_var()) return true;
        if (defined_symbols().count(t.name())) return false;
        for (const Term& a : t.args())
            if (!is_constructor_term(a)) return false;
        return true;
    }

    /// The underlying unconditional system R_u (conditions dropped).
    std::vector<ConditionalRule> underlying_rules() const {
        std::vector<ConditionalRule> out;
        out.reserve(rules.size());
        for (const auto& rule : rules)
            out.push_back(ConditionalRule{rule.label, rule.lhs, rule.rhs, {}});
        return out;
    }

    /// Conditional rules of each defined symbol, in rank order (appearance).
    std::map<std::string, std::vector<std::size_t>> conditional_rule_ranks() const {
        std::map<std::string, std::vector<std::size_t>> out;
        for (std::size_t i = 0; i < rules.size(); ++i)
            if (!rules[i].unconditional()) out[rules[i].lhs.name()].push_back(i);
        return out;
    }
};

/// Checks structural invariants and detects whether the system qualifies as a
/// TRS. With assign_roles (the parser path), constructor/defined roles are
/// derived from left-hand side roots; transformations pass false because their
/// signatures carry provenance roles that must not change (an original
/// constructor stays role `constructor` even when auxiliary rules make it a
/// root of some left-hand side).
inline RewriteSystem make_system(Signature signature, std::vector<ConditionalRule> rules,
                                 bool assign_roles = true) {
    RewriteSystem sys{std::move(signature), std::move(rules), SystemKind::Ctrs};

    auto check_term = [&](auto&& self, const Term& t) -> void {
        if (t.is_var()) {
            if (sys.signature.contains(t.name()))
                throw SystemError("name '" + t.name() + "' used both as variable and symbol");
            return;
        }
        const Symbol& sym = sys.signature.at(t.name());
        if (sym.arity != t.arity())
            throw SystemError("arity mismatch for '" + t.name() + "' in term");
        for (const Term& a : t.args()) self(self, a);
    };
    for (const auto& rule : sys.rules) {
        if (rule.lhs.is_var())
            throw SystemError("rule " + rule.label + ": left-hand side is a variable");
        check_term(check_term, rule.lhs);
        check_term(check_term, rule.rhs);
        for (const auto& [s, t] : rule.conditions) {
            check_term(check_term, s);
            check_term(check_term, t);
        }
    }

    if (assign_roles) {
        std::set<std::string> defined = sys.defined_symbols();
        for (const Symbol& sym : sys.signature.symbols()) {
            if (sym.role == SymbolRole::Constructor || sym.role == SymbolRole::Defined)
                sys.signature.set_role(sym.name,
                                       defined.count(sym.name) ? SymbolRole::Defined
                                                               : SymbolRole::Constructor);
        }
    }

    bool trs = true;
    for (const auto& rule : sys.rules) {
        if (!rule.unconditional()) { trs = false; break; }
        std::set<std::string> lv = var_set(rule.lhs);
        for (const std::string& v : var_set(rule.rhs))
            if (!lv.count(v)) { trs = false; break; }
        if (!trs) break;
    }
    sys.kind = trs ? SystemKind::Trs : SystemKind::Ctrs;
    return sys;
}

/// Builds a signature by scanning rule terms (first-appearance order),
/// then validates. Convenience for tests and generators.
inline RewriteSystem system_from_rules(std::vector<ConditionalRule> rules,
                                       const std::set<std::string>& variables) {
    Signature sig;
    auto scan = [&](auto&& self, const Term& t) -> void {
        if (t.is_var()) return;
        if (variables.count(t.name()))
            throw SystemError("variable '" + t.name() + "' used as function symbol");
        sig.add(Symbol{t.name(), t.arity(), SymbolRole::Constructor});
        for (const Term& a : t.args()) self(self, a);
    };
    for (const auto& rule : rules) {
        scan(scan, rule.lhs);
        scan(scan, rule.rhs);
        for (const auto& [s, t] : rule.conditions) {
            scan(scan, s);
            scan(scan, t);
        }
    }
    return make_system(std::move(sig), std::move(rules));
}

inline std::string to_string(const ConditionalRule& rule) {
    std::string out = to_string(rule.lhs) + " -> " + to_string(rule.rhs);
    for (std::size_t i = 0; i < rule.conditions.size(); ++i) {
        out += i == 0 ? " | " : ", ";
        out += to_string(rule.conditions[i].first) + " == " + to_string(rule.conditions[i].second);
    }
    return out;
}

}  // namespace ctrslab

#endif  // CTRSLAB_SYSTEM_HPP
