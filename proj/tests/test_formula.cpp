#include <doctest.h>

#include "teamdim/error.hpp"
#include "teamdim/formula.hpp"
#include "teamdim/parser.hpp"
#include "teamdim/structure.hpp"

using namespace teamdim;
using namespace teamdim::logic;

TEST_CASE("atoms parse and print") {
    CHECK(to_string(parse_formula("dep(x y ; z)")) == "dep(x y ; z)");
    CHECK(to_string(parse_formula("dep(;x)")) == "dep(; x)");
    CHECK(to_string(parse_formula("ind(x ; ; y)")) == "ind(x ; ; y)");
    CHECK(to_string(parse_formula("ind(x ; z ; y)")) == "ind(x ; z ; y)");
    CHECK(to_string(parse_formula("x != y")) == "!x = y");
    CHECK(to_string(parse_formula("!R(x, y)")) == "!R(x y)");
    CHECK(parse_formula("NE")->kind == Kind::NE);
    CHECK(parse_formula("even(x y)")->kind == Kind::Even);
}

TEST_CASE("precedence and binders") {
    // and binds tighter than tand, tand than or, or than ior
    auto f = parse_formula("x = y ior y = z or NE and const(x)");
    CHECK(f->kind == Kind::Ior);
    CHECK(f->right->kind == Kind::Or);
    CHECK(f->right->right->kind == Kind::And);
    auto g = parse_formula("x = y -> y = z -> NE");
    CHECK(g->kind == Kind::Imp);
    CHECK(g->right->kind == Kind::Imp);
    auto q = parse_formula("E y . dep(x ; y) and x = y");
    CHECK(q->kind == Kind::Exists);
    CHECK(q->free == std::vector<std::string>{"x"});
    auto l = parse_formula("Q majority y z . x = y");
    CHECK(l->kind == Kind::Q);
    CHECK(l->name == "majority");
    CHECK(l->xs == std::vector<std::string>{"y", "z"});
}

TEST_CASE("derived fields") {
    auto f = parse_formula("x = y and dep(x ; z)");
    CHECK(f->free == std::vector<std::string>{"x", "y", "z"});
    CHECK_FALSE(f->flat);
    CHECK(f->dc);
    CHECK(parse_formula("x = y or !x = z")->flat);
    CHECK(parse_formula("inc(x ; y)")->uc);
    CHECK_FALSE(parse_formula("inc(x ; y)")->dc);
    CHECK(uses_relations(*parse_formula("E x . R(x)")));
    CHECK_FALSE(uses_relations(*parse_formula("E x . x = x")));
}

TEST_CASE("printing round trips") {
    for (const char* s : {"(x = y and dep(x ; y))", "(E x . (A y . inc(x ; y)))", "(Q ge2 y . !x = y)",
                          "(E1 x . (NE tand even(x)))", "(x = x -> (d1 x . half(x)))", "ano(x y ; z)",
                          "exc(x y ; z w)", "(R(x y) ior !S(y))"}) {
        auto f = parse_formula(s);
        CHECK(to_string(f) == s);
        CHECK(to_string(parse_formula(to_string(f))) == to_string(f));
    }
}

TEST_CASE("malformed input") {
    CHECK_THROWS_AS(parse_formula("dep(x y ;)"), Error);
    CHECK_THROWS_AS(parse_formula("dep(x ; y z)"), Error);
    CHECK_THROWS_AS(parse_formula("exc(x ; y z)"), Error);
    CHECK_THROWS_AS(parse_formula("ind(x ; y)"), Error);
    CHECK_THROWS_AS(parse_formula("const()"), Error);
    CHECK_THROWS_AS(parse_formula("x = "), ParseError);
    CHECK_THROWS_AS(parse_formula("E . x = x"), ParseError);
    CHECK_THROWS_AS(parse_formula("x = y and"), ParseError);
    CHECK_THROWS_AS(parse_formula("x = y )"), ParseError);
    CHECK_THROWS_AS(parse_formula("and = x"), ParseError);
    CHECK_THROWS_AS(parse_formula("!dep(x ; y)"), ParseError);
    try {
        parse_formula("x = y\n  and # z");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("tuple codes") {
    CHECK(encode({1, 0, 2}, 3) == 1 + 2 * 9);
    CHECK(decode(19, 3, 3) == Tuple{1, 0, 2});
    CHECK(power(3, 4) == 81);
    CHECK_THROWS_AS(power(10, 40), Error);
}

TEST_CASE("structures and teams in text") {
    auto m = parse_structure("universe 3\nrel R 2\n0 1\n2 2\nend\nrel P 1\n1\nend\n");
    CHECK(m.size() == 3);
    CHECK(m.holds("R", {0, 1}));
    CHECK_FALSE(m.holds("R", {1, 0}));
    CHECK(m.holds("P", {1}));
    CHECK(m.find("S") == nullptr);
    CHECK(parse_structure(format_structure(m)).relations().size() == 2);
    CHECK(format_structure(parse_structure(format_structure(m))) == format_structure(m));
    CHECK_THROWS_AS(parse_structure("universe 2\nrel R 2\n0 2\nend\n"), ParseError);
    CHECK_THROWS_AS(parse_structure("universe 2\nrel R 2\n0\nend\n"), ParseError);

    auto t = parse_team("vars x y\n0 1\n1 1\n0 1\n", 2);
    CHECK(t.vars == Vars{"x", "y"});
    CHECK(t.rows == std::vector<std::uint64_t>{2, 3});
    CHECK(parse_team(format_team(t, 2), 2) == t);
    auto s = team_to_subset(t, 2);
    CHECK(s.width() == 4);
    CHECK(subset_to_team(t.vars, s, 2) == t);
    auto e = parse_team("vars\n()\n", 2);
    CHECK(e.rows.size() == 1);
    CHECK_THROWS_AS(parse_team("vars x x\n", 2), ParseError);
    CHECK_THROWS_AS(parse_team("vars x\n3\n", 2), ParseError);
    CHECK_THROWS_AS(parse_team("0 1\n", 2), ParseError);
}
