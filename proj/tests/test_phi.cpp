#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ctrslab/engine.hpp"
#include "ctrslab/phi.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace ctrslab;
using namespace ctrslab::tests;

namespace {

Term eval1(const TransformContext& ctx, std::size_t rule_index, const Term& payload,
           std::vector<Term> carried = {}) {
    const CondMeta& meta = ctx.cond_meta.at(rule_index)[0];
    std::vector<Term> args{A("sq", {payload})};
    for (Term& c : carried) args.push_back(std::move(c));
    return Term::app(meta.eval_symbol, std::move(args));
}

}  // namespace

TEST_CASE("well-placement") {
    TransformContext ctx = sr_transform(fixture_r4());
    Term good = A("f^", {A("a"), eval1(ctx, 0, A("c")), A("bot")});
    CHECK(is_well_placed(good, ctx));
    CHECK_FALSE(is_well_placed(A("h", {A("bot"), A("c")}), ctx));
    // an eval wrapper in the slot of the other conditional rule is misplaced
    Term wrong_slot = A("f^", {A("a"), A("bot"), eval1(ctx, 0, A("c"))});
    CHECK_FALSE(is_well_placed(wrong_slot, ctx));

    TermGen gen(5);
    for (int i = 0; i < 200; ++i)
        CHECK(is_well_placed(bar(gen.ground_term_over(fixture_r4(), 4), ctx), ctx));
}

TEST_CASE("phi point check: one evaluation represents two unraveled terms") {
    TransformContext ctx = sr_transform(fixture_r4());
    Term t = A("f^", {A("a"), eval1(ctx, 0, A("c")), A("bot")});
    PhiResult res = phi(t, ctx);
    CHECK_FALSE(res.truncated);
    const std::string u1 = ctx.cond_meta.at(0)[0].u_symbol;
    std::set<Term, TermLess> expected{A("f", {A("a")}), A(u1, {A("c"), A("a")})};
    CHECK(std::set<Term, TermLess>(res.terms.begin(), res.terms.end()) == expected);
    CHECK(res.cardinality == 2);
}

TEST_CASE("phi of a guarded bar image is the singleton source term") {
    for (const RewriteSystem& sys : {fixture_r1(), fixture_r4()}) {
        TransformContext ctx = sr_transform(sys);
        TermGen gen(13);
        for (int i = 0; i < 1000; ++i) {
            Term s = gen.ground_term_over(sys, 4);
            PhiResult res = phi(guard_bar(s, ctx), ctx);
            REQUIRE(res.terms.size() == 1);
            CHECK(res.terms[0] == s);
            CHECK_FALSE(res.truncated);
        }
    }
}

TEST_CASE("phi products multiply independent evaluations") {
    TransformContext ctx = sr_transform(fixture_r4());
    Term f_eval = A("f^", {A("a"), eval1(ctx, 0, A("c")), A("bot")});
    Term t = A("sq", {A("h", {f_eval, f_eval})});
    PhiResult res = phi(t, ctx);
    const std::string u1 = ctx.cond_meta.at(0)[0].u_symbol;
    Term fa = A("f", {A("a")});
    Term ua = A(u1, {A("c"), A("a")});
    std::set<Term, TermLess> expected{A("h", {fa, fa}), A("h", {fa, ua}),
                                      A("h", {ua, fa}), A("h", {ua, ua})};
    CHECK(std::set<Term, TermLess>(res.terms.begin(), res.terms.end()) == expected);
    CHECK(res.cardinality == 4);
}

TEST_CASE("phi respects the cardinality cap") {
    TransformContext ctx = sr_transform(fixture_r4());
    Term f_eval = A("f^", {A("a"), eval1(ctx, 0, A("c")), A("bot")});
    Term t = f_eval;
    for (int i = 0; i < 4; ++i) t = A("h", {f_eval, t});  // |Phi| = 2^5
    PhiResult capped = phi(t, ctx, 8);
    CHECK(capped.truncated);
    CHECK(capped.terms.size() <= 8);
    PhiResult full = phi(t, ctx, 4096);
    CHECK_FALSE(full.truncated);
    CHECK(full.cardinality == 32);
}

TEST_CASE("phi rejects ill-placed terms") {
    TransformContext ctx = sr_transform(fixture_r4());
    CHECK_THROWS_AS(phi(A("h", {A("bot"), A("c")}), ctx), TransformError);
}

TEST_CASE("phi of stuck evaluations collapses to the reset reading") {
    TransformContext ctx = sr_transform(fixture_r1());
    // split^(0, nil, [sq(...)]_1, bot): no conditional split rule matches nil
    std::size_t cond_rule = 1;
    Term stuck = A("split^", {A("0"), A("nil"),
                              eval1(ctx, cond_rule, bar(A("split", {A("0"), A("nil")}), ctx)),
                              A("bot")});
    CHECK(evaluation_state(stuck, ctx) == EvalState::Stuck);
    PhiResult res = phi(stuck, ctx);
    REQUIRE(res.cardinality == 1);
    CHECK(res.terms[0] == A("split", {A("0"), A("nil")}));
}

TEST_CASE("evaluation states") {
    TransformContext ctx = sr_transform(fixture_r4());
    CHECK(evaluation_state(bar(A("h", {A("f", {A("a")}), A("f", {A("f", {A("b")})})}), ctx),
                           ctx) == EvalState::NoEvaluation);
    CHECK(evaluation_state(A("f^", {A("a"), eval1(ctx, 0, A("c")), A("bot")}), ctx) ==
          EvalState::HasEvaluation);
    CHECK(evaluation_state(A("g", {A("c")}), ctx) == EvalState::NoEvaluation);
}

TEST_CASE("singleton phi exactly when no evaluation can proceed") {
    TransformContext ctx = sr_transform(fixture_r4());
    EngineCaps caps;
    caps.max_steps = 8;
    caps.max_nodes = 4000;
    Term seed = guard_bar(A("g", {A("f", {A("a")})}), ctx);
    DerivationGraph g = trs_reachable(ctx.target, seed, caps);
    for (const Term& t : g.nodes) {
        EvalState state = evaluation_state(t, ctx);
        if (state == EvalState::NoEvaluation || state == EvalState::Stuck) {
            PhiResult res = phi(t, ctx);
            CHECK(res.cardinality == 1);
        }
        // the guard clause of the definition
        PhiResult direct = phi(t, ctx);
        PhiResult under_guard = phi(A("sq", {t}), ctx);
        CHECK(std::set<Term, TermLess>(direct.terms.begin(), direct.terms.end()) ==
              std::set<Term, TermLess>(under_guard.terms.begin(), under_guard.terms.end()));
    }
}

TEST_CASE("hat image is always represented: nodes of SR derivations") {
    struct Probe {
        RewriteSystem sys;
        Term seed;
    };
    std::vector<Probe> probes;
    probes.push_back({fixture_r4(), A("h", {A("f", {A("a")}), A("f", {A("f", {A("b")})})})});
    probes.push_back({fixture_r4(), A("g", {A("f", {A("a")})})});
    probes.push_back({fixture_r1(), A("qsort", {A("cons", {A("0"), A("nil")})})});
    for (const Probe& probe : probes) {
        TransformContext ctx = sr_transform(probe.sys);
        EngineCaps caps;
        caps.max_steps = 10;
        caps.max_nodes = 3000;
        DerivationGraph g = trs_reachable(ctx.target, guard_bar(probe.seed, ctx), caps);
        REQUIRE(g.nodes.size() > 10);
        for (const Term& t : g.nodes) {
            auto h = hat(t, ctx);
            REQUIRE(h.has_value());
            CHECK(phi_contains(t, *h, ctx));
        }
    }
}

TEST_CASE("phi_contains agrees with materialized membership") {
    TransformContext ctx = sr_transform(fixture_r4());
    Term f_eval = A("f^", {A("a"), eval1(ctx, 0, A("c")), A("bot")});
    Term t = A("sq", {A("h", {f_eval, f_eval})});
    PhiResult res = phi(t, ctx);
    for (const Term& u : res.terms) CHECK(phi_contains(t, u, ctx));
    CHECK_FALSE(phi_contains(t, A("d"), ctx));
    const std::string u1 = ctx.cond_meta.at(0)[0].u_symbol;
    CHECK_FALSE(phi_contains(t, A("h", {A("f", {A("c")}), A(u1, {A("c"), A("a")})}), ctx));
}

TEST_CASE("substitution images stay inside phi of the instance") {
    TransformContext ctx = sr_transform(fixture_r4());
    Term f_eval = A("f^", {A("a"), eval1(ctx, 0, A("c")), A("bot")});
    struct Sample {
        Term pattern;
        Substitution sigma;
    };
    std::vector<Sample> samples;
    samples.push_back({A("h", {V("x"), V("y")}), Substitution{{"x", f_eval}, {"y", A("c")}}});
    samples.push_back({A("sq", {A("g", {V("x")})}), Substitution{{"x", f_eval}}});
    samples.push_back({A("f^", {V("x"), A("bot"), A("bot")}), Substitution{{"x", f_eval}}});
    for (const Sample& sample : samples) {
        Term instance = apply_subst(sample.pattern, sample.sigma);
        PhiResult lhs_parts = phi(sample.pattern, ctx);
        for (const Substitution& image : phi_subst(sample.sigma, ctx))
            for (const Term& t : lhs_parts.terms)
                CHECK(phi_contains(instance, apply_subst(t, image), ctx));
    }
}

TEST_CASE("tuple clause cardinality") {
    TransformContext ctx = sr_transform(fixture_r4());
    Term f_eval = A("f^", {A("a"), eval1(ctx, 0, A("c")), A("bot")});
    CHECK(phi_tuple_cardinality(eval1(ctx, 0, A("c")), ctx) == 1);
    CHECK(phi_tuple_cardinality(eval1(ctx, 0, f_eval), ctx) == 2);
    CHECK_THROWS_AS(phi_tuple_cardinality(A("c"), ctx), TransformError);
}
