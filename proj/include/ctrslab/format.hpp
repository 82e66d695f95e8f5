#ifndef CTRSLAB_FORMAT_HPP
#define CTRSLAB_FORMAT_HPP

#include <cctype>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ctrslab/system.hpp"

namespace ctrslab {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line, int col)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
          line(line),
          col(col) {}
    int line;
    int col;
};

/// Parsed source file: the system plus declaration info and per-rule line spans.
struct SourceDocument {
    RewriteSystem system;
    std::set<std::string> declared_vars;
    std::vector<int> rule_lines;
    bool had_conditiontype = false;
};

namespace detail {

struct Token {
    enum Kind { LParen, RParen, Comma, Pipe, Arrow, CondEq, Ident, End } kind;
    std::string text;
    int line, col;
};

inline bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '^';
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_ws();
        int line = line_, col = col_;
        if (pos_ >= src_.size()) return {Token::End, "", line, col};
        char c = src_[pos_];
        if (c == '(') { advance(); return {Token::LParen, "(", line, col}; }
        if (c == ')') { advance(); return {Token::RParen, ")", line, col}; }
        if (c == ',') { advance(); return {Token::Comma, ",", line, col}; }
        if (c == '|') { advance(); return {Token::Pipe, "|", line, col}; }
        if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
            advance(); advance();
            return {Token::Arrow, "->", line, col};
        }
        if (c == '=' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') {
            advance(); advance();
            return {Token::CondEq, "==", line, col};
        }
        if (ident_char(c)) {
            std::string text;
            while (pos_ < src_.size() && ident_char(src_[pos_])) {
                text += src_[pos_];
                advance();
            }
            return {Token::Ident, text, line, col};
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }

    /// Raw scan to the paren closing the current block (for COMMENT bodies).
    void skip_balanced() {
        int depth = 0;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            advance();
            if (c == '(') ++depth;
            if (c == ')') {
                if (depth == 0) return;
                --depth;
            }
        }
        throw ParseError("unterminated block", line_, col_);
    }

private:
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
    }
    void advance() {
        if (src_[pos_] == '\n') { ++line_; col_ = 1; }
        else ++col_;
        ++pos_;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) { shift(); }

    SourceDocument parse() {
        SourceDocument doc;
        bool saw_rules = false;
        while (cur_.kind != Token::End) {
            expect(Token::LParen, "'('");
            Token head = expect(Token::Ident, "block keyword");
            if (head.text == "COMMENT") {
                lex_.skip_balanced();
                shift();
            } else if (head.text == "CONDITIONTYPE") {
                Token kind = expect(Token::Ident, "condition type");
                if (kind.text != "ORIENTED")
                    throw ParseError("unsupported condition type '" + kind.text +
                                     "' (only ORIENTED is accepted)", kind.line, kind.col);
                doc.had_conditiontype = true;
                expect(Token::RParen, "')'");
            } else if (head.text == "VAR") {
                while (cur_.kind == Token::Ident) {
                    doc.declared_vars.insert(cur_.text);
                    shift();
                }
                expect(Token::RParen, "')'");
            } else if (head.text == "RULES") {
                if (saw_rules)
                    throw ParseError("duplicate RULES block", head.line, head.col);
                saw_rules = true;
                parse_rules(doc);
            } else {
                throw ParseError("unknown block '" + head.text + "'", head.line, head.col);
            }
        }
        if (!saw_rules) throw ParseError("missing RULES block", cur_.line, cur_.col);
        finish(doc);
        return doc;
    }

private:
    void parse_rules(SourceDocument& doc) {
        while (cur_.kind != Token::RParen) {
            int line = cur_.line;
            Term lhs = parse_term(doc);
            Token arrow = expect(Token::Arrow, "'->'");
            if (lhs.is_var())
                throw ParseError("left-hand side of a rule must not be a variable",
                                 arrow.line, arrow.col);
            Term rhs = parse_term(doc);
            std::vector<std::pair<Term, Term>> conds;
            if (cur_.kind == Token::Pipe) {
                shift();
                for (;;) {
                    Term s = parse_term(doc);
                    expect(Token::CondEq, "'=='");
                    Term t = parse_term(doc);
                    conds.emplace_back(s, t);
                    if (cur_.kind != Token::Comma) break;
                    shift();
                }
            }
            rules_.push_back(ConditionalRule{"r" + std::to_string(rules_.size() + 1),
                                             lhs, rhs, std::move(conds)});
            doc.rule_lines.push_back(line);
        }
        shift();  // consume ')'
    }

    Term parse_term(SourceDocument& doc) {
        Token id = expect(Token::Ident, "identifier");
        if (cur_.kind != Token::LParen) {
            if (doc.declared_vars.count(id.text)) return Term::var(id.text);
            register_symbol(id.text, 0, id);
            return Term::constant(id.text);
        }
        if (doc.declared_vars.count(id.text))
            throw ParseError("variable '" + id.text + "' used as function symbol",
                             id.line, id.col);
        shift();  // '('
        std::vector<Term> args;
        for (;;) {
            args.push_back(parse_term(doc));
            if (cur_.kind == Token::Comma) { shift(); continue; }
            break;
        }
        expect(Token::RParen, "')'");
        register_symbol(id.text, static_cast<int>(args.size()), id);
        return Term::app(id.text, std::move(args));
    }

    void register_symbol(const std::string& name, int arity, const Token& at) {
        auto [it, inserted] = arities_.emplace(name, arity);
        if (!inserted && it->second != arity)
            throw ParseError("arity conflict for '" + name + "': used with " +
                             std::to_string(it->second) + " and " + std::to_string(arity) +
                             " arguments", at.line, at.col);
        if (inserted) order_.push_back(name);
    }

    void finish(SourceDocument& doc) {
        Signature sig;
        for (const std::string& name : order_)
            sig.add(Symbol{name, arities_[name], SymbolRole::Constructor});
        doc.system = make_system(std::move(sig), std::move(rules_));
    }

    Token expect(Token::Kind kind, const std::string& what) {
        if (cur_.kind != kind)
            throw ParseError("expected " + what + ", found '" +
                             (cur_.kind == Token::End ? "end of input" : cur_.text) + "'",
                             cur_.line, cur_.col);
        Token t = cur_;
        shift();
        return t;
    }

    void shift() { cur_ = lex_.next(); }

    Lexer lex_;
    Token cur_{Token::End, "", 0, 0};
    std::vector<ConditionalRule> rules_;
    std::map<std::string, int> arities_;
    std::vector<std::string> order_;
};

}  // namespace detail

inline SourceDocument parse_document(std::string_view text) {
    return detail::Parser(text).parse();
}

inline RewriteSystem parse_system(std::string_view text) {
    return parse_document(text).system;
}

/// Parses a bare term against a known system: identifiers in the signature are
/// symbols (arity-checked); anything else is a variable.
inline Term parse_term(std::string_view text, const RewriteSystem& sys) {
    struct Mini {
        detail::Lexer lex;
        detail::Token cur;
        const RewriteSystem& sys;
        Mini(std::string_view s, const RewriteSystem& r) : lex(s), cur(lex.next()), sys(r) {}
        detail::Token expect(detail::Token::Kind k, const std::string& what) {
            if (cur.kind != k)
                throw ParseError("expected " + what, cur.line, cur.col);
            detail::Token t = cur;
            cur = lex.next();
            return t;
        }
        Term term() {
            detail::Token id = expect(detail::Token::Ident, "identifier");
            std::vector<Term> args;
            if (cur.kind == detail::Token::LParen) {
                cur = lex.next();
                for (;;) {
                    args.push_back(term());
                    if (cur.kind == detail::Token::Comma) { cur = lex.next(); continue; }
                    break;
                }
                expect(detail::Token::RParen, "')'");
            }
            const Symbol* sym = sys.signature.find(id.text);
            if (!sym) {
                if (!args.empty())
                    throw ParseError("unknown symbol '" + id.text + "'", id.line, id.col);
                return Term::var(id.text);
            }
            if (sym->arity != static_cast<int>(args.size()))
                throw ParseError("arity mismatch for '" + id.text + "'", id.line, id.col);
            return Term::app(id.text, std::move(args));
        }
    };
    Mini m(text, sys);
    Term t = m.term();
    if (m.cur.kind != detail::Token::End)
        throw ParseError("trailing input after term", m.cur.line, m.cur.col);
    return t;
}

/// Canonical text form. Rules in rank order; parse(render(R)) is structurally
/// equal to R, and render is a fixed point after one parse/render pass.
inline std::string render_system(const RewriteSystem& sys) {
    std::ostringstream out;
    bool conditional = false;
    for (const auto& rule : sys.rules)
        if (!rule.unconditional()) conditional = true;
    if (conditional || sys.kind == SystemKind::Ctrs) out << "(CONDITIONTYPE ORIENTED)\n";

    std::set<std::string> vars;
    for (const auto& rule : sys.rules) {
        std::vector<Term> all{rule.lhs, rule.rhs};
        for (const auto& [s, t] : rule.conditions) {
            all.push_back(s);
            all.push_back(t);
        }
        for (const std::string& v : var_set(std::span<const Term>(all))) vars.insert(v);
    }
    if (!vars.empty()) {
        out << "(VAR";
        for (const std::string& v : vars) out << ' ' << v;
        out << ")\n";
    }
    out << "(RULES\n";
    for (const auto& rule : sys.rules) out << "  " << to_string(rule) << "\n";
    out << ")\n";
    return out.str();
}

namespace detail {

inline bool numbered_family(const std::string& name, const std::string& base) {
    if (name.size() <= base.size() || name.compare(0, base.size(), base) != 0) return false;
    for (std::size_t i = base.size(); i < name.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
    return true;
}

}  // namespace detail

/// Canonical key of a system modulo renaming of introduced symbols (u<N> and
/// sq<N> families, renumbered by first occurrence) and per-rule variables.
/// Rule order is irrelevant.
inline std::string canonical_key(const RewriteSystem& sys) {
    std::map<std::string, std::string> symbol_rename;
    std::size_t next_u = 0, next_sq = 0;
    auto canon_symbol = [&](const std::string& name) -> const std::string& {
        auto it = symbol_rename.find(name);
        if (it != symbol_rename.end()) return it->second;
        std::string fresh = name;
        if (detail::numbered_family(name, "u"))
            fresh = "u#" + std::to_string(++next_u);
        else if (detail::numbered_family(name, "sq"))
            fresh = "sq#" + std::to_string(++next_sq);
        return symbol_rename.emplace(name, std::move(fresh)).first->second;
    };

    std::vector<std::string> rule_keys;
    for (const auto& rule : sys.rules) {
        std::map<std::string, std::string> var_rename;
        auto canon_term = [&](auto&& self, const Term& t) -> std::string {
            if (t.is_var()) {
                auto [it, inserted] = var_rename.emplace(
                    t.name(), "$" + std::to_string(var_rename.size() + 1));
                (void)inserted;
                return it->second;
            }
            std::string out = canon_symbol(t.name());
            if (t.arity() > 0) {
                out += '(';
                for (int i = 0; i < t.arity(); ++i) {
                    if (i > 0) out += ',';
                    out += self(self, t.args()[i]);
                }
                out += ')';
            }
            return out;
        };
        std::string key = canon_term(canon_term, rule.lhs) + " -> " +
                          canon_term(canon_term, rule.rhs);
        for (const auto& [s, t] : rule.conditions)
            key += " | " + canon_term(canon_term, s) + " == " + canon_term(canon_term, t);
        rule_keys.push_back(std::move(key));
    }
    std::sort(rule_keys.begin(), rule_keys.end());
    std::string out;
    for (const std::string& k : rule_keys) {
        out += k;
        out += '\n';
    }
    return out;
}

inline bool equivalent_modulo_renaming(const RewriteSystem& a, const RewriteSystem& b) {
    return canonical_key(a) == canonical_key(b);
}

}  // namespace ctrslab

#endif  // CTRSLAB_FORMAT_HPP
