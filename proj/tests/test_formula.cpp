#include <doctest.h>

#include "support/generators.hpp"
#include "teamcheck/formula.hpp"

#include <random>

using namespace teamcheck;

TEST_CASE("atoms parse") {
    Formula p = parse_formula("p");
    CHECK(p.kind() == FormulaKind::Prop);
    CHECK(p.prop_name() == "p");

    Formula np = parse_formula("~p1");
    CHECK(np.kind() == FormulaKind::NegProp);
    CHECK(np.prop_name() == "p1");

    Formula d0 = parse_formula("dep(q)");
    CHECK(d0.kind() == FormulaKind::Dep);
    CHECK(d0.dep_antecedents().empty());
    CHECK(d0.dep_consequent() == "q");

    Formula d2 = parse_formula("dep(p1, p2, q)");
    CHECK(d2.dep_antecedents() == std::vector<std::string>{"p1", "p2"});
    CHECK(d2.dep_consequent() == "q");

    // bare identifiers naming nullary registered functions are constants
    CHECK(parse_formula("top").kind() == FormulaKind::Apply);
    CHECK(parse_formula("bot").function().name() == "bot");
    CHECK(parse_formula("dep(top, q)").dep_antecedents() ==
          std::vector<std::string>{"top"}); // inside dep, idents are props
}

TEST_CASE("modalities and prefix negation") {
    Formula f = parse_formula("dia box boxdot p");
    REQUIRE(f.kind() == FormulaKind::Diamond);
    REQUIRE(f.child().kind() == FormulaKind::Box);
    REQUIRE(f.child().child().kind() == FormulaKind::BoxDot);
    CHECK(f.child().child().child().prop_name() == "p");

    Formula g = parse_formula("!p");
    CHECK(g.kind() == FormulaKind::Apply);
    CHECK(g.function().name() == "not");
    CHECK(g.args()[0].kind() == FormulaKind::Prop);
    CHECK(parse_formula("!(p)") == g);
    CHECK(parse_formula("not(p)") == g);
}

TEST_CASE("infix precedence and associativity") {
    // & binds tighter than ^, which binds tighter than |
    Formula f = parse_formula("a | b ^ c & d");
    REQUIRE(f.function().name() == "or");
    REQUIRE(f.args()[1].function().name() == "xor");
    CHECK(f.args()[1].args()[1].function().name() == "and");

    Formula left = parse_formula("a ^ b ^ c");
    REQUIRE(left.function().name() == "xor");
    CHECK(left.args()[0].function().name() == "xor");
    CHECK(left.args()[1].prop_name() == "c");

    CHECK(parse_formula("(a | b) & c").function().name() == "and");
    CHECK(parse_formula("a & b | c").function().name() == "or");
    CHECK(parse_formula("!a & b") == parse_formula("(!a) & b"));
    CHECK(parse_formula("box a & b") == parse_formula("(box a) & b"));
    CHECK(parse_formula("and(a, or(b, c))") == parse_formula("a & (b | c)"));
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse_formula(""), ParseError);
    CHECK_THROWS_AS(parse_formula("dep("), ParseError);
    CHECK_THROWS_AS(parse_formula("dep()"), ParseError);
    CHECK_THROWS_AS(parse_formula("(p"), ParseError);
    CHECK_THROWS_AS(parse_formula("p &"), ParseError);
    CHECK_THROWS_AS(parse_formula("p q"), ParseError);
    CHECK_THROWS_AS(parse_formula("mystery(p)"), ParseError);
    CHECK_THROWS_AS(parse_formula("and(p)"), ParseError); // arity mismatch
    CHECK_THROWS_AS(parse_formula("~(p)"), ParseError);   // ~ takes a name
    try {
        parse_formula("p & ");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position == 4);
    }
}

TEST_CASE("factories validate") {
    CHECK_THROWS_AS(Formula::apply(BooleanFunction::builtin_and(), {Formula::prop("p")}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Formula::prop(""), std::invalid_argument);
}

TEST_CASE("structure queries") {
    Formula f = parse_formula("dia (dep(p, q) & ~r)"); // atoms count as depth 1
    CHECK(f.depth() == 3);
    CHECK(f.node_count() == 4);
    CHECK(f.propositions() == std::vector<std::string>{"p", "q", "r"});
}

TEST_CASE("render round-trips text") {
    for (const char* text : {"p", "~p", "dep(q)", "dep(p,q)", "dia box p", "!p & (q | r)",
                             "boxdot (p ^ q)", "top", "bot | p"}) {
        Formula f = parse_formula(text);
        CHECK(parse_formula(render_formula(f)) == f);
    }
    CHECK(render_formula(parse_formula("a & b | c")) == "a & b | c");
    CHECK(render_formula(parse_formula("(a | b) & c")) == "(a | b) & c");
    CHECK(render_formula(parse_formula("dia (p & q)")) == "dia (p & q)");
}

TEST_CASE("render round-trips random formulas") {
    std::mt19937_64 rng(2024);
    FunctionRegistry reg = FunctionRegistry::builtins();
    reg.add(testgen::maj3());
    for (int i = 0; i < 200; ++i) {
        Formula f = testgen::random_formula(rng, 4, {"p", "q", "r"},
                                            testgen::FormulaFlavor::Full);
        Formula back = parse_formula(render_formula(f), reg);
        CHECK(back == f);
    }
}

TEST_CASE("fragment signatures") {
    FragmentSignature s1 = fragment_signature(parse_formula("dia dep(p, q)"));
    CHECK(s1.clone == CloneLabel::ID);
    CHECK(s1.uses_diamond);
    CHECK_FALSE(s1.uses_box);
    CHECK(s1.uses_dep);
    CHECK(fragment_complexity(s1) == "NP-complete");

    FragmentSignature s2 = fragment_signature(parse_formula("box dep(p, q) ^ p"));
    CHECK(s2.clone == CloneLabel::L);
    CHECK(s2.uses_box);
    CHECK_FALSE(s2.uses_diamond);
    CHECK(fragment_complexity(s2) == "NL-complete");

    FragmentSignature s3 = fragment_signature(parse_formula("!dia dep(q)"));
    CHECK(s3.clone == CloneLabel::N);
    CHECK(fragment_complexity(s3) == "P^NP[1]-complete");

    FragmentSignature s4 = fragment_signature(parse_formula("dia (p & dep(q))"));
    CHECK(s4.clone == CloneLabel::E);
    CHECK(fragment_complexity(s4) == "NP-complete");

    FragmentSignature s5 = fragment_signature(parse_formula("dia (p ^ dep(q))"));
    CHECK(fragment_complexity(s5) == "PSPACE-complete");

    FragmentSignature s6 = fragment_signature(parse_formula("dia (p | q)"));
    CHECK_FALSE(s6.uses_dep);
    CHECK(fragment_complexity(s6) == "not classified (upper bound: same as with dep)");

    // boxdot is sugar for classical negation around dia, so it brings N and
    // counts as both modalities
    FragmentSignature s7 = fragment_signature(parse_formula("boxdot dep(q)"));
    CHECK(s7.clone == CloneLabel::N);
    CHECK(s7.uses_box);
    CHECK(s7.uses_diamond);
    CHECK(fragment_complexity(s7) == "P^NP[1]-complete");

    FragmentSignature s8 = fragment_signature(parse_formula("box (p & dep(q))"));
    CHECK(s8.clone == CloneLabel::E);
    CHECK(fragment_complexity(s8) == "NL-complete");
}

TEST_CASE("syntactic downward closure") {
    CHECK(is_downward_closed_syntactic(parse_formula("p & (q | dep(r))")));
    CHECK(is_downward_closed_syntactic(parse_formula("dia box (p & ~q)")));
    CHECK(is_downward_closed_syntactic(parse_formula("top")));
    CHECK_FALSE(is_downward_closed_syntactic(parse_formula("!p")));
    CHECK_FALSE(is_downward_closed_syntactic(parse_formula("p ^ q")));
    CHECK_FALSE(is_downward_closed_syntactic(parse_formula("boxdot p")));
    CHECK_FALSE(is_downward_closed_syntactic(parse_formula("dia (p & !q)")));
    CHECK(is_downward_closed_syntactic(
        Formula::apply(testgen::maj3(),
                       {Formula::prop("p"), Formula::prop("q"), Formula::prop("r")})));
}

TEST_CASE("n-clone normal form") {
    // the normal form floats classical negation to the root through the
    // exact dualities and leaves a plain modal chain below it
    Formula f = normalize_n_clone(parse_formula("!dia !p"), false);
    CHECK(f == parse_formula("boxdot p"));
    CHECK(normalize_n_clone(parse_formula("!dia !p"), true) == parse_formula("box p"));

    CHECK(normalize_n_clone(parse_formula("!boxdot !p"), false) == parse_formula("dia p"));
    CHECK(normalize_n_clone(parse_formula("box !p"), false) == parse_formula("!box p"));
    CHECK(normalize_n_clone(parse_formula("!!p"), false) == parse_formula("p"));
    CHECK(normalize_n_clone(parse_formula("dia !box !dep(p, q)"), false) ==
          parse_formula("dia box dep(p,q)"));

    // boxdot over a downward-closed suffix becomes box only when asked
    Formula g = parse_formula("boxdot boxdot dep(q)");
    CHECK(normalize_n_clone(g, false) == g);
    CHECK(normalize_n_clone(g, true) == parse_formula("box box dep(q)"));

    // constant-valued unary connectives swallow their operand
    FunctionRegistry reg = FunctionRegistry::builtins();
    reg.merge_json(R"({"yes": {"arity": 1, "table": [1, 1]}})");
    CHECK(normalize_n_clone(parse_formula("yes(dia p)", reg), false) == parse_formula("top"));

    CHECK_THROWS_AS(normalize_n_clone(parse_formula("p & q"), true), std::invalid_argument);
}
