#ifndef CTRSLAB_TESTS_GENERATORS_HPP
#define CTRSLAB_TESTS_GENERATORS_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "ctrslab/system.hpp"

namespace ctrslab::tests {

/// Random terms over a tiny fixed signature; deterministic per seed.
class TermGen {
public:
    explicit TermGen(std::uint64_t seed) : rng_(seed) {}

    Term term(int max_depth, bool allow_vars = true) {
        if (max_depth == 0 || roll(3) == 0) return leaf(allow_vars);
        switch (roll(3)) {
            case 0: return Term::app("f", {term(max_depth - 1, allow_vars),
                                           term(max_depth - 1, allow_vars)});
            case 1: return Term::app("g", {term(max_depth - 1, allow_vars)});
            default: return leaf(allow_vars);
        }
    }

    Term ground_term(int max_depth) { return term(max_depth, false); }

    Term ground_term_over(const RewriteSystem& sys, int max_depth) {
        std::vector<const Symbol*> constants, others;
        for (const Symbol& s : sys.signature.symbols())
            (s.arity == 0 ? constants : others).push_back(&s);
        auto build = [&](auto&& self, int depth) -> Term {
            if (depth == 0 || others.empty() || roll(2) == 0)
                return Term::constant(constants[roll(constants.size())]->name);
            const Symbol* sym = others[roll(others.size())];
            std::vector<Term> args;
            for (int i = 0; i < sym->arity; ++i) args.push_back(self(self, depth - 1));
            return Term::app(sym->name, std::move(args));
        };
        return build(build, max_depth);
    }

    Substitution ground_subst(const std::vector<std::string>& vars, int max_depth) {
        Substitution sigma;
        for (const std::string& v : vars) sigma.bind(v, ground_term(max_depth));
        return sigma;
    }

    std::size_t roll(std::size_t n) { return n == 0 ? 0 : rng_() % n; }

private:
    Term leaf(bool allow_vars) {
        if (allow_vars && roll(2) == 0) {
            static const char* vars[] = {"x", "y", "z"};
            return Term::var(vars[roll(3)]);
        }
        return roll(2) == 0 ? Term::constant("c") : Term::constant("d");
    }

    std::mt19937_64 rng_;
};

}  // namespace ctrslab::tests

#endif  // CTRSLAB_TESTS_GENERATORS_HPP
