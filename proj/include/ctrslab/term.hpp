#ifndef CTRSLAB_TERM_HPP
#define CTRSLAB_TERM_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ctrslab {

/// Provenance tag of a function symbol within a system's signature.
enum class SymbolRole {
    Constructor,
    Defined,
    USymbol,        // U^rho_i introduced by unraveling
    BarredDefined,  // f^ with extended arity, introduced by the SR transformation
    Guard,          // unary sq(.)
    Bottom,         // constant bot
    TupleEval,      // [ ]^rho_j evaluation wrappers, one per (rule, condition)
    TupleLin,       // tuple_j constructors introduced by linearization
};

struct Symbol {
    std::string name;
    int arity = 0;
    SymbolRole role = SymbolRole::Constructor;
};

inline const char* role_name(SymbolRole r) {
    switch (r) {
        case SymbolRole::Constructor: return "constructor";
        case SymbolRole::Defined: return "defined";
        case SymbolRole::USymbol: return "u-symbol";
        case SymbolRole::BarredDefined: return "barred-defined";
        case SymbolRole::Guard: return "guard";
        case SymbolRole::Bottom: return "bottom";
        case SymbolRole::TupleEval: return "tuple-eval";
        case SymbolRole::TupleLin: return "tuple-lin";
    }
    return "?";
}

/// Path of 0-indexed child positions; the root is the empty path.
using Position = std::vector<int>;

class TermError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Immutable first-order term: a variable or a symbol application.
/// Copies are cheap (shared nodes); equality is structural with a cached hash.
class Term {
    struct Node {
        bool is_var;
        std::string name;
        std::vector<Term> args;
        std::size_t hash;
        std::size_t size;
    };

public:
    static Term var(std::string name) {
        return Term(make_node(true, std::move(name), {}));
    }

    static Term app(std::string name, std::vector<Term> args = {}) {
        return Term(make_node(false, std::move(name), std::move(args)));
    }

    static Term app(const Symbol& sym, std::vector<Term> args) {
        if (static_cast<int>(args.size()) != sym.arity)
            throw TermError("arity mismatch for symbol '" + sym.name + "': expected " +
                            std::to_string(sym.arity) + ", got " + std::to_string(args.size()));
        return app(sym.name, std::move(args));
    }

    static Term constant(std::string name) { return app(std::move(name)); }

    bool is_var() const { return node_->is_var; }
    bool is_app() const { return !node_->is_var; }
    const std::string& name() const { return node_->name; }
    const std::vector<Term>& args() const { return node_->args; }
    int arity() const { return static_cast<int>(node_->args.size()); }
    std::size_t hash() const { return node_->hash; }
    std::size_t size() const { return node_->size; }

    bool root_is(std::string_view sym) const { return is_app() && node_->name == sym; }

    friend bool operator==(const Term& a, const Term& b) {
        if (a.node_ == b.node_) return true;
        if (a.node_->hash != b.node_->hash) return false;
        return equal_nodes(a, b);
    }
    friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

private:
    explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static std::shared_ptr<const Node> make_node(bool is_var, std::string name,
                                                 std::vector<Term> args) {
        std::size_t h = is_var ? 0x9e3779b97f4a7c15ull : 0xc2b2ae3d27d4eb4full;
        for (char c : name) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ull;
        std::size_t sz = 1;
        for (const Term& a : args) {
            h ^= a.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            sz += a.size();
        }
        auto n = std::make_shared<Node>();
        n->is_var = is_var;
        n->name = std::move(name);
        n->args = std::move(args);
        n->hash = h;
        n->size = sz;
        return n;
    }

    static bool equal_nodes(const Term& a, const Term& b) {
        if (a.node_->is_var != b.node_->is_var || a.node_->name != b.node_->name ||
            a.node_->args.size() != b.node_->args.size())
            return false;
        for (std::size_t i = 0; i < a.node_->args.size(); ++i)
            if (!(a.node_->args[i] == b.node_->args[i])) return false;
        return true;
    }

    std::shared_ptr<const Node> node_;
};

struct TermHash {
    std::size_t operator()(const Term& t) const { return t.hash(); }
};

/// Total order on terms; used for deterministic tie-breaking in searches.
inline int compare(const Term& a, const Term& b) {
    if (a.is_var() != b.is_var()) return a.is_var() ? -1 : 1;
    if (int c = a.name().compare(b.name()); c != 0) return c < 0 ? -1 : 1;
    if (a.arity() != b.arity()) return a.arity() < b.arity() ? -1 : 1;
    for (int i = 0; i < a.arity(); ++i)
        if (int c = compare(a.args()[i], b.args()[i]); c != 0) return c;
    return 0;
}

struct TermLess {
    bool operator()(const Term& a, const Term& b) const { return compare(a, b) < 0; }
};

inline std::string to_string(const Term& t) {
    std::string out = t.name();
    if (t.is_app() && t.arity() > 0) {
        out += '(';
        for (int i = 0; i < t.arity(); ++i) {
            if (i > 0) out += ',';
            out += to_string(t.args()[i]);
        }
        out += ')';
    }
    return out;
}

/// Finite mapping from variable names to terms.
class Substitution {
public:
    Substitution() = default;
    Substitution(std::initializer_list<std::pair<const std::string, Term>> init)
        : bindings_(init) {}

    /// Adds var |-> t; returns false iff var is already bound to a different term.
    bool bind(const std::string& var, const Term& t) {
        auto [it, inserted] = bindings_.emplace(var, t);
        return inserted || it->second == t;
    }

    const Term* lookup(const std::string& var) const {
        auto it = bindings_.find(var);
        return it == bindings_.end() ? nullptr : &it->second;
    }

    bool contains(const std::string& var) const { return bindings_.count(var) > 0; }
    std::size_t size() const { return bindings_.size(); }
    bool empty() const { return bindings_.empty(); }

    const std::map<std::string, Term>& bindings() const { return bindings_; }
    std::map<std::string, Term>& bindings() { return bindings_; }

    Substitution restricted_to(const std::set<std::string>& vars) const {
        Substitution out;
        for (const auto& [v, t] : bindings_)
            if (vars.count(v)) out.bind(v, t);
        return out;
    }

    friend bool operator==(const Substitution& a, const Substitution& b) {
        return a.bindings_ == b.bindings_;
    }

private:
    std::map<std::string, Term> bindings_;
};

inline Term apply_subst(const Term& t, const Substitution& sigma) {
    if (t.is_var()) {
        const Term* bound = sigma.lookup(t.name());
        return bound ? *bound : t;
    }
    if (t.arity() == 0) return t;
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args()) args.push_back(apply_subst(a, sigma));
    return Term::app(t.name(), std::move(args));
}

inline void collect_vars(const Term& t, std::vector<std::string>& order,
                         std::set<std::string>& seen) {
    if (t.is_var()) {
        if (seen.insert(t.name()).second) order.push_back(t.name());
        return;
    }
    for (const Term& a : t.args()) collect_vars(a, order, seen);
}

/// Variables of a term sequence in order of first occurrence.
inline std::vector<std::string> vars_in_order(std::span<const Term> terms) {
    std::vector<std::string> order;
    std::set<std::string> seen;
    for (const Term& t : terms) collect_vars(t, order, seen);
    return order;
}

inline std::vector<std::string> vars_in_order(const Term& t) {
    return vars_in_order(std::span<const Term>(&t, 1));
}

inline std::set<std::string> var_set(std::span<const Term> terms) {
    std::vector<std::string> order;
    std::set<std::string> seen;
    for (const Term& t : terms) collect_vars(t, order, seen);
    return seen;
}

inline std::set<std::string> var_set(const Term& t) {
    return var_set(std::span<const Term>(&t, 1));
}

inline bool is_ground(const Term& t) {
    if (t.is_var()) return false;
    for (const Term& a : t.args())
        if (!is_ground(a)) return false;
    return true;
}

inline std::size_t count_var_occurrences(const Term& t, std::string_view v) {
    if (t.is_var()) return t.name() == v ? 1 : 0;
    std::size_t n = 0;
    for (const Term& a : t.args()) n += count_var_occurrences(a, v);
    return n;
}

/// Total occurrences of v across the sequence.
inline std::size_t count_var_occurrences(std::span<const Term> terms, std::string_view v) {
    std::size_t n = 0;
    for (const Term& t : terms) n += count_var_occurrences(t, v);
    return n;
}

/// True iff every variable occurs at most once across the whole sequence.
inline bool is_linear(std::span<const Term> terms) {
    std::set<std::string> seen;
    std::vector<const Term*> stack;
    for (const Term& t : terms) stack.push_back(&t);
    while (!stack.empty()) {
        const Term* t = stack.back();
        stack.pop_back();
        if (t->is_var()) {
            if (!seen.insert(t->name()).second) return false;
        } else {
            for (const Term& a : t->args()) stack.push_back(&a);
        }
    }
    return true;
}

inline bool is_linear(const Term& t) { return is_linear(std::span<const Term>(&t, 1)); }

/// Syntactic matching: extends sigma so that pattern*sigma = subject.
/// Subject variables are treated as constants; non-linear patterns require
/// identical subterms at repeated variables. Returns false without rolling
/// back partial bindings, so callers keep a copy when they need one.
inline bool match_into(const Term& pattern, const Term& subject, Substitution& sigma) {
    if (pattern.is_var()) return sigma.bind(pattern.name(), subject);
    if (!subject.is_app() || pattern.name() != subject.name() ||
        pattern.arity() != subject.arity())
        return false;
    for (int i = 0; i < pattern.arity(); ++i)
        if (!match_into(pattern.args()[i], subject.args()[i], sigma)) return false;
    return true;
}

inline std::optional<Substitution> match(const Term& pattern, const Term& subject) {
    Substitution sigma;
    if (match_into(pattern, subject, sigma)) return sigma;
    return std::nullopt;
}

inline const Term& subterm_at(const Term& t, const Position& p) {
    const Term* cur = &t;
    for (int i : p) {
        if (cur->is_var() || i < 0 || i >= cur->arity())
            throw TermError("invalid position in " + to_string(t));
        cur = &cur->args()[i];
    }
    return *cur;
}

inline bool valid_position(const Term& t, const Position& p) {
    const Term* cur = &t;
    for (int i : p) {
        if (cur->is_var() || i < 0 || i >= cur->arity()) return false;
        cur = &cur->args()[i];
    }
    return true;
}

inline Term replace_at(const Term& t, const Position& p, const Term& u, std::size_t depth = 0) {
    if (depth == p.size()) return u;
    int i = p[depth];
    if (t.is_var() || i < 0 || i >= t.arity())
        throw TermError("invalid position in " + to_string(t));
    std::vector<Term> args = t.args();
    args[static_cast<std::size_t>(i)] = replace_at(args[static_cast<std::size_t>(i)], p, u, depth + 1);
    return Term::app(t.name(), std::move(args));
}

/// All positions of t in preorder (root first).
inline std::vector<Position> positions_of(const Term& t) {
    std::vector<Position> out;
    Position cur;
    auto walk = [&](auto&& self, const Term& s) -> void {
        out.push_back(cur);
        for (int i = 0; i < s.arity(); ++i) {
            cur.push_back(i);
            self(self, s.args()[i]);
            cur.pop_back();
        }
    };
    walk(walk, t);
    return out;
}

inline std::string to_string(const Position& p) {
    std::string out = "[";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i > 0) out += '.';
        out += std::to_string(p[i]);
    }
    return out + "]";
}

/// Generates base1, base2, ... skipping an avoid set. Freshness is relative
/// to the supplied set; generated names are added to it.
class FreshNameGen {
public:
    FreshNameGen() = default;
    explicit FreshNameGen(std::set<std::string> avoid) : avoid_(std::move(avoid)) {}

    std::string fresh(const std::string& base) {
        for (std::size_t& n = counters_[base];;) {
            ++n;
            std::string candidate = base + std::to_string(n);
            if (avoid_.insert(candidate).second) return candidate;
        }
    }

    void also_avoid(const std::string& name) { avoid_.insert(name); }

private:
    std::set<std::string> avoid_;
    std::map<std::string, std::size_t> counters_;
};

}  // namespace ctrslab

#endif  // CTRSLAB_TERM_HPP
