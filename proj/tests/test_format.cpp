#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ctrslab/classify.hpp"
#include "ctrslab/format.hpp"
#include "ctrslab/transform.hpp"
#include "support/fixtures.hpp"

using namespace ctrslab;
using namespace ctrslab::tests;

TEST_CASE("r1 fixture parses to the ten-rule quicksort system") {
    RewriteSystem sys = load_fixture("r1.ctrs");
    CHECK(sys.rules.size() == 10);
    CHECK(sys.kind == SystemKind::Ctrs);
    CHECK(sys.signature.at("split").arity == 2);
    CHECK(sys.signature.at("cons").role == SymbolRole::Constructor);
    CHECK(sys.signature.at("qsort").role == SymbolRole::Defined);

    SystemReport rep = classify_system(sys);
    CHECK(rep.deterministic);
    CHECK(rep.type3);
    CHECK(rep.wll);
    CHECK(rep.constructor_system);
    CHECK_FALSE(rep.normal);  // pair(xs,zs) is a non-ground condition target

    // structurally identical to the programmatic fixture
    CHECK(equivalent_modulo_renaming(sys, fixture_r1()));
}

TEST_CASE("single conditional rule from text") {
    RewriteSystem sys = parse_system("(VAR x)(RULES f(x) -> x | g(x) == x)");
    REQUIRE(sys.rules.size() == 1);
    CHECK(sys.rules[0].conditions.size() == 1);
    CHECK_FALSE(is_wll_rule(sys.rules[0]));
    CHECK(is_linear(sys.rules[0].lhs));
}

TEST_CASE("empty RULES block yields the empty system") {
    RewriteSystem sys = parse_system("(RULES)");
    CHECK(sys.rules.empty());
    CHECK(sys.signature.size() == 0);
}

TEST_CASE("parse of render is structurally identical") {
    for (const char* name : {"r1.ctrs", "r4.ctrs", "wll_not_uwll.ctrs", "uwll_not_wll.ctrs",
                             "ll_not_wll.ctrs", "expected_u_r1.ctrs", "expected_sr_r1.ctrs"}) {
        RewriteSystem sys = load_fixture(name);
        RewriteSystem reparsed = parse_system(render_system(sys));
        REQUIRE(reparsed.rules.size() == sys.rules.size());
        for (std::size_t i = 0; i < sys.rules.size(); ++i)
            CHECK(to_string(reparsed.rules[i]) == to_string(sys.rules[i]));
    }
}

TEST_CASE("rendered transformation output re-parses to the expected listing") {
    RewriteSystem unraveled = unravel(fixture_r1()).target;
    RewriteSystem reparsed = parse_system(render_system(unraveled));
    CHECK(equivalent_modulo_renaming(reparsed, load_fixture("expected_u_r1.ctrs")));

    RewriteSystem empty_rendered = parse_system(render_system(parse_system("(RULES)")));
    CHECK(empty_rendered.rules.empty());
}

TEST_CASE("render is a fixed point after one normalization pass") {
    for (const char* name : {"r1.ctrs", "r4.ctrs", "expected_sr_r1.ctrs"}) {
        std::string once = render_system(parse_system(read_file(fixture_path(name))));
        std::string twice = render_system(parse_system(once));
        CHECK(once == twice);
    }
}

TEST_CASE("terms parse against a system signature") {
    RewriteSystem sys = load_fixture("r1.ctrs");
    Term t = parse_term("qsort(cons(s(0),cons(0,nil)))", sys);
    CHECK(t.size() == 7);
    CHECK(parse_term("ws", sys).is_var());
    CHECK_THROWS_AS(parse_term("qsort(0,0)", sys), ParseError);
    CHECK_THROWS_AS(parse_term("unknown(0)", sys), ParseError);
}

TEST_CASE("all twenty malformed inputs are rejected with positions") {
    const std::pair<const char*, const char*> cases[] = {
        {"unbalanced.ctrs", "expected"},
        {"no_arrow.ctrs", "'->'"},
        {"bad_cond_eq.ctrs", "unexpected character"},
        {"arity_conflict.ctrs", "arity conflict"},
        {"var_as_symbol.ctrs", "used as function symbol"},
        {"lhs_variable.ctrs", "must not be a variable"},
        {"bad_char.ctrs", "unexpected character"},
        {"missing_term_paren.ctrs", "expected"},
        {"conditiontype_join.ctrs", "ORIENTED"},
        {"empty_file.ctrs", "missing RULES"},
        {"pipe_no_cond.ctrs", "identifier"},
        {"comma_no_cond.ctrs", "identifier"},
        {"trailing_comma_term.ctrs", "identifier"},
        {"stray_token.ctrs", "'('"},
        {"nested_var_block.ctrs", "')'"},
        {"unknown_block.ctrs", "unknown block"},
        {"duplicate_rules_block.ctrs", "duplicate RULES"},
        {"unclosed_comment.ctrs", "unterminated"},
        {"double_arrow.ctrs", "identifier"},
        {"cond_missing_rhs.ctrs", "identifier"},
    };
    for (const auto& [file, fragment] : cases) {
        INFO(file);
        std::string text = read_file(fixture_path(std::string("malformed/") + file));
        bool threw = false;
        try {
            parse_system(text);
        } catch (const ParseError& e) {
            threw = true;
            CHECK(std::string(e.what()).find(fragment) != std::string::npos);
            CHECK(e.line >= 1);
            CHECK(e.col >= 1);
        }
        CHECK(threw);
    }
}

TEST_CASE("canonical comparison is insensitive to introduced-symbol numbering") {
    RewriteSystem a = parse_system(
        "(VAR x)(RULES f(x) -> u1(x,x) u1(c,x) -> c)");
    RewriteSystem b = parse_system(
        "(VAR y)(RULES f(y) -> u6(y,y) u6(c,y) -> c)");
    CHECK(equivalent_modulo_renaming(a, b));

    RewriteSystem c = parse_system(
        "(VAR y)(RULES f(y) -> u6(y,y) u6(d,y) -> c)");
    CHECK_FALSE(equivalent_modulo_renaming(a, c));
}

TEST_CASE("parser keeps rule provenance") {
    SourceDocument doc = parse_document(read_file(fixture_path("r1.ctrs")));
    REQUIRE(doc.rule_lines.size() == 10);
    CHECK(doc.rule_lines[0] == 5);
    CHECK(doc.had_conditiontype);
    CHECK(doc.declared_vars.count("ys") == 1);
}
