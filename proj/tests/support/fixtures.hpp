#ifndef CTRSLAB_TESTS_FIXTURES_HPP
#define CTRSLAB_TESTS_FIXTURES_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ctrslab/format.hpp"
#include "ctrslab/system.hpp"

namespace ctrslab::tests {

inline Term V(const std::string& name) { return Term::var(name); }
inline Term A(const std::string& name, std::vector<Term> args = {}) {
    return Term::app(name, std::move(args));
}

/// Quicksort via split, with the numeric and list helpers it needs.
inline RewriteSystem fixture_r1() {
    Term x = V("x"), y = V("y"), ys = V("ys"), xs = V("xs"), zs = V("zs");
    std::vector<ConditionalRule> rules{
        {"r1", A("split", {x, A("nil")}), A("pair", {A("nil"), A("nil")}), {}},
        {"r2",
         A("split", {x, A("cons", {y, ys})}),
         A("pair", {xs, A("cons", {y, zs})}),
         {{A("split", {x, ys}), A("pair", {xs, zs})}, {A("leq", {x, y}), A("true")}}},
        {"r3",
         A("split", {x, A("cons", {y, ys})}),
         A("pair", {A("cons", {y, xs}), zs}),
         {{A("split", {x, ys}), A("pair", {xs, zs})}, {A("leq", {x, y}), A("false")}}},
        {"r4", A("qsort", {A("nil")}), A("nil"), {}},
        {"r5",
         A("qsort", {A("cons", {x, xs})}),
         A("append", {A("qsort", {ys}), A("cons", {x, A("qsort", {zs})})}),
         {{A("split", {x, xs}), A("pair", {ys, zs})}}},
        {"r6", A("leq", {A("0"), y}), A("true"), {}},
        {"r7", A("leq", {A("s", {x}), A("0")}), A("false"), {}},
        {"r8", A("leq", {A("s", {x}), A("s", {y})}), A("leq", {x, y}), {}},
        {"r9", A("append", {A("nil"), ys}), ys, {}},
        {"r10", A("append", {A("cons", {x, xs}), ys}), A("cons", {x, A("append", {xs, ys})}),
         {}},
    };
    return system_from_rules(std::move(rules), {"x", "y", "ys", "xs", "zs"});
}

/// Normal WLL and ultra-WLL DCTRS R4 with the non-linear h rule.
inline RewriteSystem fixture_r4() {
    Term x = V("x");
    std::vector<ConditionalRule> rules{
        {"r1", A("f", {x}), A("c"), {{x, A("c")}}},
        {"r2", A("a"), A("c"), {}},
        {"r3", A("b"), A("c"), {}},
        {"r4", A("f", {x}), A("d"), {{x, A("d")}}},
        {"r5", A("a"), A("d"), {}},
        {"r6", A("b"), A("d"), {}},
        {"r7", A("g", {x}), A("h", {x, x}), {}},
        {"r8", A("h", {A("c"), A("d")}), A("c"), {}},
        {"r9", A("h", {x, A("f", {x})}), A("d"), {}},
    };
    return system_from_rules(std::move(rules), {"x"});
}

/// f(x) -> x <= a ->> y, b ->> y, x ->> c : WLL but not ultra-WLL.
inline RewriteSystem fixture_wll_not_uwll() {
    Term x = V("x"), y = V("y");
    std::vector<ConditionalRule> rules{
        {"r1", A("f", {x}), x, {{A("a"), y}, {A("b"), y}, {x, A("c")}}},
    };
    return system_from_rules(std::move(rules), {"x", "y"});
}

/// The same rule extended with a -> c and b -> c so its conditions are satisfiable.
inline RewriteSystem fixture_wll_not_uwll_ext() {
    Term x = V("x"), y = V("y");
    std::vector<ConditionalRule> rules{
        {"r1", A("f", {x}), x, {{A("a"), y}, {A("b"), y}, {x, A("c")}}},
        {"r2", A("a"), A("c"), {}},
        {"r3", A("b"), A("c"), {}},
    };
    return system_from_rules(std::move(rules), {"x", "y"});
}

/// f(x) -> x <= a ->> y, y ->> b, c ->> y : ultra-WLL but not WLL.
inline RewriteSystem fixture_uwll_not_wll() {
    Term x = V("x"), y = V("y");
    std::vector<ConditionalRule> rules{
        {"r1", A("f", {x}), x, {{A("a"), y}, {y, A("b")}, {A("c"), y}}},
    };
    return system_from_rules(std::move(rules), {"x", "y"});
}

/// f(x) -> x <= g(x) ->> x : LL but not WLL.
inline RewriteSystem fixture_ll_not_wll() {
    Term x = V("x");
    std::vector<ConditionalRule> rules{
        {"r1", A("f", {x}), x, {{A("g", {x}), x}}},
    };
    return system_from_rules(std::move(rules), {"x"});
}

inline std::string fixture_path(const std::string& filename) {
    return std::string(CTRSLAB_FIXTURE_DIR) + "/" + filename;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline RewriteSystem load_fixture(const std::string& filename) {
    return parse_system(read_file(fixture_path(filename)));
}

}  // namespace ctrslab::tests

#endif  // CTRSLAB_TESTS_FIXTURES_HPP
