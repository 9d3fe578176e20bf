#include <doctest.h>

#include "helpers.hpp"
#include "teamdim/error.hpp"
#include "teamdim/evaluator.hpp"
#include "teamdim/lindstrom.hpp"
#include "teamdim/parser.hpp"
#include "teamdim/setfam.hpp"
#include "teamdim/teamlogic.hpp"

using namespace teamdim;
using namespace teamdim::logic;

namespace {

bool sat(const std::string& f, const Vars& vars, const std::vector<Tuple>& rows, std::size_t n = 2) {
    Structure m(n);
    return satisfies(m, make_team(vars, rows, n), parse_formula(f));
}

}  // namespace

TEST_CASE("dependence and inclusion on small teams") {
    CHECK(sat("dep(x ; y)", {"x", "y"}, {{0, 0}, {1, 1}}));
    CHECK_FALSE(sat("dep(x ; y)", {"x", "y"}, {{0, 0}, {0, 1}}));
    CHECK(sat("inc(x ; y)", {"x", "y"}, {{0, 1}, {1, 0}}));
    CHECK(sat("inc(x ; y)", {"x", "y"}, {{0, 1}, {0, 0}}));
    CHECK_FALSE(sat("inc(x ; y)", {"x", "y"}, {{0, 1}, {1, 1}}));
    CHECK(sat("exc(x ; y)", {"x", "y"}, {{0, 1}, {0, 1}}));
    CHECK(sat("ano(x ; y)", {"x", "y"}, {{0, 1}, {0, 0}}));
    CHECK_FALSE(sat("ano(x ; y)", {"x", "y"}, {{0, 1}, {1, 1}, {1, 0}}));
    CHECK(sat("ind(x ; ; y)", {"x", "y"}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
    CHECK_FALSE(sat("ind(x ; ; y)", {"x", "y"}, {{0, 0}, {1, 1}}));
    CHECK(sat("ind(x ; z ; y)", {"x", "y", "z"}, {{0, 0, 0}, {1, 1, 1}}));
    CHECK(sat("even(x)", {"x"}, {{0}, {1}}, 3));
    CHECK_FALSE(sat("even(x)", {"x"}, {{0}}, 3));
    CHECK(sat("half(x)", {"x"}, {{0}}, 3));
    CHECK_FALSE(sat("half(x)", {"x"}, {{0}, {2}}, 3));
}

TEST_CASE("the empty team") {
    Structure m(2);
    Team empty = make_team({"x", "y"}, {}, 2);
    CHECK_FALSE(satisfies(m, empty, parse_formula("NE")));
    CHECK(satisfies(m, make_team({"x"}, {{1}}, 2), parse_formula("NE")));
    for (const char* f : {"dep(x ; y)", "inc(x ; y)", "x = y and !x = y", "E z . ind(x ; ; z)",
                          "A z . (z = y or exc(x z ; x y))", "even(x y)"}) {
        CHECK(satisfies(m, empty, parse_formula(f)));
        CHECK(has_empty_team_property(*parse_formula(f)));
    }
    CHECK_FALSE(has_empty_team_property(*parse_formula("x = y ior NE")));
}

TEST_CASE("connectives and quantifiers") {
    CHECK(sat("x = y or !x = y", {"x", "y"}, {{0, 0}, {0, 1}}));
    CHECK_FALSE(sat("x = y ior !x = y", {"x", "y"}, {{0, 0}, {0, 1}}));
    CHECK(sat("const(x) -> const(y)", {"x", "y"}, {{0, 0}, {1, 1}}));
    CHECK_FALSE(sat("const(x) -> const(y)", {"x", "y"}, {{0, 0}, {0, 1}}));
    CHECK(sat("E y . x = y", {"x"}, {{0}, {1}}));
    CHECK_FALSE(sat("A y . x = y", {"x"}, {{0}}));
    CHECK(sat("E y . inc(x ; y) and !x = y", {"x"}, {{0}, {1}}));
    CHECK_FALSE(sat("E1 y . inc(x ; y) and !x = y", {"x"}, {{0}, {1}}));
    CHECK(sat("d1 x . const(y)", {"x", "y"}, {{0, 0}, {1, 1}}));
    CHECK(sat("Q ge2 y . !x = y", {"x"}, {{0}, {1}}, 3));
    CHECK_FALSE(sat("Q ge2 y . !x = y", {"x"}, {{0}}, 2));
    // ⍋ sees the whole team
    CHECK(sat("NE tand NE", {"x"}, {{0}}));
}

TEST_CASE("relations in the model") {
    auto m = parse_structure("universe 2\nrel R 2\n0 1\n1 0\nend\n");
    auto t = make_team({"x", "y"}, {{0, 1}, {1, 0}}, 2);
    CHECK(satisfies(m, t, parse_formula("R(x, y)")));
    CHECK_FALSE(satisfies(m, t, parse_formula("!R(x, y)")));
    CHECK(satisfies(m, t, parse_formula("E z . R(x, z) and dep(x ; z)")));
    CHECK_THROWS_AS(check_formula(m, *parse_formula("S(x)"), {"x"}), Error);
    CHECK_THROWS_AS(check_formula(m, *parse_formula("R(x)"), {"x"}), Error);
    CHECK_THROWS_AS(check_formula(m, *parse_formula("dep(x ; z)"), {"x"}), Error);
    CHECK_THROWS_AS(check_formula(m, *parse_formula("Q nosuch y . x = y"), {"x"}), Error);
}

TEST_CASE("budget exhaustion raises") {
    Structure m(3);
    std::vector<Tuple> rows;
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b) rows.push_back({a, b});
    SearchBudget tiny;
    tiny.max_nodes = 5;
    auto f = parse_formula("(inc(x ; y) tand NE) or (ano(x ; y) tand inc(y ; x))");
    CHECK_THROWS_AS(satisfies(m, make_team({"x", "y"}, rows, 3), f, tiny), Error);
}

TEST_CASE("engine agrees with the reference evaluator on random formulas") {
    std::mt19937_64 rng(51);
    Structure m(2);
    const Vars ctx{"x", "y"};
    int compared = 0;
    for (int it = 0; it < 120; ++it) {
        auto f = random_formula(rng, ctx, 3, 3);
        Evaluator ev(m);
        for (int j = 0; j < 6; ++j) {
            std::vector<Tuple> rows;
            for (std::size_t c = 0; c < 4; ++c)
                if (rng() & 1u) rows.push_back(decode(c, 2, 2));
            auto t = make_team(ctx, rows, 2);
            CHECK_MESSAGE(ev.satisfies(t, f) == reference_satisfies(m, t, f), to_string(f));
            ++compared;
        }
    }
    CHECK(compared == 720);
}

TEST_CASE("shuffles") {
    CHECK(shuffle<std::string>({"a"}, {"b"}, {0}) == std::vector<std::string>{"b", "a"});
    CHECK(shuffle<std::string>({"a"}, {"b"}, {1}) == std::vector<std::string>{"a", "b"});
    CHECK(shuffle<std::string>({"a", "c"}, {}, {}) == std::vector<std::string>{"a", "c"});
    auto [xs, ys] = unshuffle<int>({1, 2, 3}, {2, 0});
    CHECK(xs == std::vector<int>{2});
    CHECK(ys == std::vector<int>{3, 1});
    CHECK_THROWS_AS(shuffle<int>({1}, {2}, {2}), Error);
    CHECK_THROWS_AS(shuffle<int>({1}, {2, 3}, {0, 0}), Error);
}

TEST_CASE("proper projections") {
    // rows (x,y) coded x + 2y; S = {(0,0), (0,1), (1,1)}
    auto s = Subset::from_mask(4, 0b1101);
    auto e = proper_projection(s, find_class("exists"), {1}, 2, 2);
    REQUIRE(e.has_value());
    CHECK(*e == Subset::full(2));
    // fibre of 1 is {1}, not all of M, yet nonempty
    CHECK_FALSE(proper_projection(s, find_class("forall"), {1}, 2, 2).has_value());
    auto empty = proper_projection(Subset(4), find_class("forall"), {1}, 2, 2);
    REQUIRE(empty.has_value());
    CHECK(empty->none());
}

TEST_CASE("the projection operator matches quantified formulas") {
    Structure m(2);
    auto eq = team_family(m, parse_formula("x = y"), {"x", "y"});
    CHECK(lindstrom_apply(find_class("exists"), {1}, eq, 2, 2) ==
          team_family(m, parse_formula("E y . x = y"), {"x"}));
    CHECK(lindstrom_apply(find_class("exists"), {1}, eq, 2, 2) == setfam::powerset(2));
    CHECK(lindstrom_apply(find_class("forall"), {1}, eq, 2, 2) ==
          team_family(m, parse_formula("A y . x = y"), {"x"}));
    CHECK(lindstrom_apply(find_class("exists"), {1}, Family(4), 2, 2).empty());
    for (std::string cls : {"exists", "forall", "ge2", "majority", "even"}) {
        for (const char* body : {"x = y", "dep(x ; y)", "inc(x ; y)", "!x = y or NE"}) {
            auto inner = team_family(m, parse_formula(body), {"x", "y"});
            auto outer = team_family(m, parse_formula("Q " + cls + " y . " + body), {"x"});
            CHECK_MESSAGE(lindstrom_apply(find_class(cls), {1}, inner, 2, 2) == outer, cls << " " << body);
        }
    }
    CHECK_THROWS_AS(find_class("nosuch"), Error);
}
