#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ctrslab/engine.hpp"
#include "ctrslab/format.hpp"
#include "ctrslab/oracle.hpp"
#include "ctrslab/transform.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace ctrslab;
using namespace ctrslab::tests;

TEST_CASE("unraveling the quicksort system reproduces the expected listing") {
    TransformContext ctx = unravel(fixture_r1());
    CHECK(ctx.target.kind == SystemKind::Trs);
    CHECK(ctx.target.rules.size() == 15);
    CHECK(equivalent_modulo_renaming(ctx.target, load_fixture("expected_u_r1.ctrs")));

    // X_i sequences follow first occurrence in (l, t1..t(i-1))
    const std::vector<CondMeta>& meta = ctx.cond_meta.at(1);
    CHECK(meta[0].xvars == std::vector<std::string>{"x", "y", "ys"});
    CHECK(meta[1].xvars == std::vector<std::string>{"x", "y", "ys", "xs", "zs"});
}

TEST_CASE("unraveling a single conditional rule") {
    RewriteSystem sys = parse_system("(VAR x)(RULES f(x) -> c | x == c)");
    RewriteSystem expected = parse_system("(VAR x)(RULES f(x) -> u1(x,x) u1(c,x) -> c)");
    CHECK(equivalent_modulo_renaming(unravel(sys).target, expected));
}

TEST_CASE("unconditional rules unravel to themselves") {
    RewriteSystem sys = parse_system("(VAR y)(RULES leq(0,y) -> true)");
    TransformContext ctx = unravel(sys);
    REQUIRE(ctx.target.rules.size() == 1);
    CHECK(to_string(ctx.target.rules[0]) == to_string(sys.rules[0]));
}

TEST_CASE("unraveling rejects non-deterministic rules with the condition index") {
    RewriteSystem sys = parse_system("(VAR x y)(RULES f(x) -> x | g(y) == c)");
    CHECK_THROWS_WITH_AS(unravel(sys).target.rules.size(),
                         doctest::Contains("condition 1"), TransformError);
}

TEST_CASE("unraveled systems are TRSs for the whole corpus") {
    for (const RewriteSystem& sys : {fixture_r1(), fixture_r4(), fixture_wll_not_uwll(),
                                     fixture_uwll_not_wll(), fixture_ll_not_wll()}) {
        TransformContext ctx = unravel(sys);
        CHECK(ctx.target.kind == SystemKind::Trs);
        for (const auto& rule : ctx.target.rules) {
            std::set<std::string> lv = var_set(rule.lhs);
            for (const std::string& v : var_set(rule.rhs)) CHECK(lv.count(v) == 1);
        }
    }
}

TEST_CASE("linearization of the section 3.2 example") {
    TransformContext ctx = linearize(fixture_wll_not_uwll());
    RewriteSystem expected = parse_system(
        "(VAR x y y1 y2)"
        "(RULES f(x) -> x | a == y1, b == y2, x == c, tuple2(y1,y2) == tuple2(y,y))");
    CHECK(equivalent_modulo_renaming(ctx.target, expected));
    CHECK(is_wll_system(ctx.target));
    CHECK(is_ultra_wll(ctx.target));
}

TEST_CASE("linearization leaves conforming systems unchanged") {
    RewriteSystem r1 = fixture_r1();
    TransformContext ctx = linearize(r1);
    REQUIRE(ctx.target.rules.size() == r1.rules.size());
    for (std::size_t i = 0; i < r1.rules.size(); ++i)
        CHECK(to_string(ctx.target.rules[i]) == to_string(r1.rules[i]));
}

TEST_CASE("linearization rejects non-WLL input naming the variable") {
    CHECK_THROWS_WITH_AS(linearize(fixture_ll_not_wll()).target.rules.size(),
                         doctest::Contains("'x'"), TransformError);
    CHECK_THROWS_WITH_AS(linearize(fixture_uwll_not_wll()).target.rules.size(),
                         doctest::Contains("not WLL"), TransformError);
}

TEST_CASE("linearization rejects non-deterministic rules") {
    RewriteSystem sys = parse_system("(VAR x y)(RULES f(x) -> x | g(y) == c, a == y)");
    CHECK(is_wll_system(sys));
    CHECK_THROWS_WITH_AS(linearize(sys).target.rules.size(),
                         doctest::Contains("not deterministic"), TransformError);
}

TEST_CASE("SR transformation of the quicksort system reproduces the expected listing") {
    TransformContext ctx = sr_transform(fixture_r1());
    CHECK(ctx.target.kind == SystemKind::Trs);
    CHECK(equivalent_modulo_renaming(ctx.target, load_fixture("expected_sr_r1.ctrs")));

    // eval wrappers for the first split rule have arities 1 and 1+|{xs,zs}|
    const std::vector<CondMeta>& meta = ctx.cond_meta.at(1);
    CHECK(ctx.target.signature.at(meta[0].eval_symbol).arity == 1);
    CHECK(ctx.target.signature.at(meta[1].eval_symbol).arity == 3);
    CHECK(meta[1].vvars == std::vector<std::string>{"xs", "zs"});
}

TEST_CASE("SR transformation of the f-g-h system") {
    TransformContext ctx = sr_transform(fixture_r4());
    RewriteSystem expected = parse_system(
        "(VAR x z1 z2 x1 x2)"
        "(RULES"
        "  f^(x,bot,z2) -> f^(x,sq1(sq(x)),z2)"
        "  f^(x,sq1(sq(c)),z2) -> sq(c)"
        "  a -> sq(c)"
        "  b -> sq(c)"
        "  f^(x,z1,bot) -> f^(x,z1,sq2(sq(x)))"
        "  f^(x,z1,sq2(sq(d))) -> sq(d)"
        "  a -> sq(d)"
        "  b -> sq(d)"
        "  g(x) -> sq(h(x,x))"
        "  h(c,d) -> sq(c)"
        "  h(x,f^(x,z1,z2)) -> sq(d)"
        "  sq(sq(x)) -> sq(x)"
        "  f^(sq(x1),z1,z2) -> sq(f^(x1,bot,bot))"
        "  g(sq(x1)) -> sq(g(x1))"
        "  h(sq(x1),x2) -> sq(h(x1,x2))"
        "  h(x1,sq(x2)) -> sq(h(x1,x2))"
        ")");
    CHECK(equivalent_modulo_renaming(ctx.target, expected));
}

TEST_CASE("SR rejects systems that are not ultra-WLL, naming the clause") {
    CHECK_THROWS_WITH_AS(sr_transform(fixture_wll_not_uwll()).target.rules.size(),
                         doctest::Contains("clause (a)"), TransformError);
}

TEST_CASE("rule correspondence is a bijection between U rules and non-aux SR rules") {
    TransformContext ctx = sr_transform(fixture_r1());
    std::size_t aux = 0;
    for (const auto& rule : ctx.target.rules)
        if (rule.label.rfind("aux.", 0) == 0) ++aux;
    CHECK(ctx.rule_correspondence.size() == ctx.target.rules.size() - aux);
    CHECK(ctx.rule_correspondence.size() == ctx.unraveled->target.rules.size());
    std::set<std::size_t> u_side, sr_side;
    for (const auto& [u, sr] : ctx.rule_correspondence) {
        u_side.insert(u);
        sr_side.insert(sr);
    }
    CHECK(u_side.size() == ctx.rule_correspondence.size());
    CHECK(sr_side.size() == ctx.rule_correspondence.size());
}

TEST_CASE("ext extends defined symbols with fresh slot variables") {
    TransformContext ctx = sr_transform(fixture_r4());
    Term e = ext(A("f", {V("x")}), ctx);
    REQUIRE(e.root_is("f^"));
    REQUIRE(e.arity() == 3);
    CHECK(e.args()[0] == V("x"));
    CHECK(e.args()[1].is_var());
    CHECK(e.args()[2].is_var());
    CHECK(e.args()[1] != e.args()[2]);

    CHECK(ext(A("c"), ctx) == A("c"));
    CHECK(ext(V("x"), ctx) == V("x"));
}

TEST_CASE("bar resets all extended arguments") {
    TransformContext ctx = sr_transform(fixture_r4());
    Term expected =
        A("h", {A("f^", {A("a"), A("bot"), A("bot")}),
                A("f^", {A("f^", {A("b"), A("bot"), A("bot")}), A("bot"), A("bot")})});
    CHECK(bar(A("h", {A("f", {A("a")}), A("f", {A("f", {A("b")})})}), ctx) == expected);
}

TEST_CASE("reset clears evaluations and keeps guards") {
    TransformContext ctx = sr_transform(fixture_r4());
    Term evald = A("f^", {A("a"), A("sq1", {A("sq", {A("c")})}), A("bot")});
    CHECK(reset(evald, ctx) == A("f^", {A("a"), A("bot"), A("bot")}));
    Term guarded_d = A("sq", {A("d")});
    CHECK(reset(guarded_d, ctx) == guarded_d);
    CHECK(reset(V("x"), ctx) == V("x"));
    CHECK_THROWS_AS(reset(A("h", {A("bot"), A("c")}), ctx), TransformError);
}

TEST_CASE("hat strips the encoding") {
    TransformContext ctx = sr_transform(fixture_r4());
    CHECK(hat(A("sq", {A("sq", {A("d")})}), ctx) == A("d"));
    CHECK_FALSE(hat(A("bot"), ctx).has_value());
    Term evald = A("f^", {A("a"), A("sq1", {A("sq", {A("c")})}), A("bot")});
    CHECK(hat(evald, ctx) == A("f", {A("a")}));
}

TEST_CASE("hat inverts bar on generated source terms") {
    for (const RewriteSystem& sys : {fixture_r1(), fixture_r4()}) {
        TransformContext ctx = sr_transform(sys);
        TermGen gen(97);
        for (int i = 0; i < 1000; ++i) {
            Term s = gen.ground_term_over(sys, 4);
            Term barred = bar(s, ctx);
            CHECK(is_well_placed(barred, ctx));
            auto back = hat(barred, ctx);
            REQUIRE(back.has_value());
            CHECK(*back == s);
        }
    }
}

TEST_CASE("ultra property checks") {
    CHECK(ultra_check(fixture_r1(), "ll"));
    CHECK_FALSE(ultra_check(fixture_wll_not_uwll(), "wll"));
    CHECK(ultra_check(parse_system("(RULES)"), "wll"));
    CHECK(ultra_check(parse_system("(RULES)"), "rl"));
}

TEST_CASE("iff theorem holds rule-wise across the corpus") {
    for (const RewriteSystem& sys :
         {fixture_r1(), fixture_r4(), fixture_wll_not_uwll(), fixture_wll_not_uwll_ext(),
          fixture_uwll_not_wll(), linearize(fixture_wll_not_uwll()).target}) {
        INFO(render_system(sys));
        CHECK(is_ultra_wll(sys) == is_wll_system(sr_construct(sys).target));
    }
}

TEST_CASE("T-reduction preserves the source signature") {
    RewriteSystem sys = fixture_wll_not_uwll_ext();
    TransformContext ctx = linearize(sys);
    EngineCaps caps;
    caps.max_steps = 5;
    caps.max_level = 4;
    for (const Term& seed : enumerate_ground_terms(sys, 8)) {
        DerivationGraph g = ctrs_reachable(ctx.target, seed, caps);
        for (const Term& t : g.nodes) CHECK(over_signature(t, sys));
    }
}

TEST_CASE("the nine-step nested derivation replays rule by rule") {
    // h(f(a),f(f(b))) evaluated to d: both f-arguments are driven to the same
    // term so the non-linear h rule fires at the end
    RewriteSystem r4 = fixture_r4();
    TransformContext ctx = sr_transform(r4);
    Term seed = A("h", {A("f", {A("a")}), A("f", {A("f", {A("b")})})});
    Term current = guard_bar(seed, ctx);
    const std::pair<const char*, Position> script[] = {
        {"r1.1", {0, 0}},              // start evaluating x ->> c on the first f
        {"r2.1", {0, 0, 1, 0, 0}},     // a -> sq(c) inside the slot
        {"aux.guard", {0, 0, 1, 0}},   // collapse the nested guard
        {"r5.1", {0, 0, 0}},           // the first f's argument itself goes to d
        {"r1.1", {0, 1, 0}},           // inner f of the second argument starts its slot
        {"r6.1", {0, 1, 0, 0}},        // its argument b goes to d
        {"r3.1", {0, 1, 0, 1, 0, 0}},  // b -> sq(c) inside the inner slot
        {"aux.guard", {0, 1, 0, 1, 0}},
        {"r9.1", {0}},                 // h(x,f^(x,z1,z2)) -> sq(d), both copies equal
    };
    for (const auto& [label, pos] : script) {
        INFO(label << " at " << to_string(pos) << " on " << to_string(current));
        auto next = apply_rule_at(ctx.target, current, label, pos);
        REQUIRE(next.has_value());
        current = *next;
    }
    CHECK(current == A("sq", {A("sq", {A("d")})}));
    CHECK(hat(current, ctx) == A("d"));
}

TEST_CASE("SR completeness on single steps") {
    // every bounded R-step s -> t is simulated: sq(bar(s)) ->* sq(bar(t))
    RewriteSystem r4 = fixture_r4();
    TransformContext ctx = sr_transform(r4);
    EngineCaps caps;
    caps.max_steps = 30;
    caps.max_nodes = 50000;
    caps.max_level = 4;
    Term seed = A("g", {A("f", {A("a")})});
    DerivationGraph g = ctrs_reachable(r4, seed, caps);
    REQUIRE(g.edges.size() > 0);
    for (const GraphEdge& e : g.edges) {
        SearchOutcome out = trs_search(ctx.target, guard_bar(g.nodes[e.from], ctx),
                                       guard_bar(g.nodes[e.to], ctx), caps);
        CHECK(out.found);
    }
}
