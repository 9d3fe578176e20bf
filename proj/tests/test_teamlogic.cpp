#include <doctest.h>

#include "helpers.hpp"
#include "teamdim/atomcat.hpp"
#include "teamdim/dims.hpp"
#include "teamdim/error.hpp"
#include "teamdim/parser.hpp"
#include "teamdim/setfam.hpp"
#include "teamdim/teamlogic.hpp"

#include <set>

using namespace teamdim;
using namespace teamdim::logic;

namespace {

Family tf(const std::string& f, const Vars& ctx, std::size_t n = 2) {
    return team_family(Structure(n), parse_formula(f), ctx);
}

std::size_t dd(const Family& f) { return dims::upper_dimension(f).value; }
std::size_t ddd(const Family& f) { return dims::dual_upper_dimension(f).value; }
std::size_t cd(const Family& f) { return dims::cylindrical_dimension(f).value; }

// largest satisfying team
std::size_t max_team(const Family& f) {
    std::size_t r = 0;
    for (const auto& s : f) r = std::max(r, s.count());
    return r;
}

}  // namespace

TEST_CASE("team families of single atoms") {
    auto eq = tf("x = y", {"x", "y"});
    // rows (0,0) and (1,1) are codes 0 and 3
    CHECK(eq == setfam::interval(Subset(4), Subset::from_mask(4, 0b1001)));
    CHECK(dd(eq) == 1);
    CHECK(ddd(eq) == 1);
    CHECK(cd(eq) == 1);

    auto dep = tf("dep(x ; y)", {"x", "y"});
    CHECK(dep.size() == 9);
    CHECK(dd(dep) == 4);
    CHECK(setfam::classify(dep).downward_closed);

    auto ne = tf("NE", {"x"});
    CHECK(ne.size() == 3);
    CHECK(dd(ne) == 1);
    CHECK(ddd(ne) == 2);
    CHECK(cd(ne) == 2);

    auto inc = tf("inc(x ; y)", {"x", "y"});
    CHECK(setfam::classify(inc).union_closed);
    CHECK(setfam::classify(inc).dominated);
    CHECK(setfam::classify(tf("ano(x ; y)", {"x", "y"})).union_closed);
    CHECK(setfam::classify(tf("exc(x ; y)", {"x", "y"})).downward_closed);
    CHECK(setfam::classify(tf("const(x)", {"x", "y"})).downward_closed);
    CHECK_THROWS_AS(tf("dep(x ; y)", {"x", "y", "z"}, 3), Error);
}

TEST_CASE("reference and engine team families coincide") {
    Structure m(2);
    for (const char* f : {"dep(x ; y)", "x = y or inc(x ; y)", "E z . (ind(x ; ; z) and !z = y)", "NE tand even(x y)",
                          "Q majority z . (z = x ior dep(y ; z))"}) {
        auto p = parse_formula(f);
        CHECK_MESSAGE(team_family(m, p, {"x", "y"}) == reference_team_family(m, p, {"x", "y"}), f);
    }
}

TEST_CASE("locality") {
    Structure m(2);
    for (const char* f : {"dep(x ; y)", "NE", "x = y", "!x = y", "inc(x ; y) or ano(y ; x)", "E w . exc(x ; w)"})
        CHECK_MESSAGE(check_formula_locality(m, parse_formula(f), {"x", "y", "z"}), f);
    // tensor conjunction sees the dummy column
    CHECK_FALSE(check_formula_locality(m, parse_formula("even(x) tand even(x)"), {"x", "y"}));
}

TEST_CASE("dimension functions") {
    CHECK(dim_function(parse_formula("dep(x ; y)"), {"x", "y"}, 2, dims::CoverMode::dominate).value == 4);
    CHECK(dim_function(parse_formula("exc(x ; y)"), {"x", "y"}, 2, dims::CoverMode::dominate).value == 2);
    for (std::size_t n : {2, 3, 4})
        for (auto mode : {dims::CoverMode::dominate, dims::CoverMode::support, dims::CoverMode::interval})
            CHECK(dim_function(parse_formula("x = y"), {"x", "y"}, n, mode).value == 1);
    CHECK_THROWS_AS(dim_function(parse_formula("R(x)"), {"x"}, 2, dims::CoverMode::dominate), Error);
}

TEST_CASE("atom translations over the two-element model") {
    // the printed forms that do not define their atom
    const std::set<std::string> differ = {"dep-from-ind-zz", "inc-from-ano", "cind-from-ind"};
    Structure m(2);
    for (const auto& e : translation_suite()) {
        auto lhs = team_family(m, e.lhs, e.ctx), rhs = team_family(m, e.rhs, e.ctx);
        CHECK_MESSAGE((lhs == rhs) == (differ.count(e.name) == 0), e.name);
    }
    auto zz = find_equivalence("dep-from-ind-zz");
    CHECK(team_family(m, zz.rhs, zz.ctx).size() == 1);
    auto ia = find_equivalence("inc-from-ano");
    CHECK(team_family(m, ia.rhs, ia.ctx).size() == 16);
    CHECK(team_family(m, ia.lhs, ia.ctx).size() == 12);
    auto ci = find_equivalence("cind-from-ind");
    CHECK(team_family(m, ci.rhs, ci.ctx).size() == 244);
    CHECK(team_family(m, ci.lhs, ci.ctx).size() == 100);
    CHECK_THROWS_AS(find_equivalence("nosuch"), Error);
}

TEST_CASE("operator identities over the two-element model") {
    Structure m(2);
    for (const auto& e : operator_identities())
        CHECK_MESSAGE(team_family(m, e.lhs, e.ctx) == team_family(m, e.rhs, e.ctx), e.name);
    CHECK(tf("const(x) -> const(y)", {"x", "y"}) == tf("dep(x ; y)", {"x", "y"}));
    CHECK(tf("half(x)", {"x"}, 3) == atomcat::half_family(3));
    CHECK(tf("even(x)", {"x"}, 3) == atomcat::even_family(3));
}

TEST_CASE("a dummy variable keeps DD and bounds the other dimensions") {
    for (auto [f, small, big] : std::vector<std::tuple<const char*, Vars, Vars>>{
             {"dep(x ; y)", {"x", "y"}, {"x", "y", "z"}}, {"const(x)", {"x"}, {"x", "z"}}}) {
        auto a = tf(f, small), b = tf(f, big);
        const std::size_t r = max_team(a);
        const std::size_t factor = std::size_t(1) << r;  // n^(t r) with n = 2, t = 1
        CHECK(dd(b) == dd(a));
        CHECK(ddd(b) <= factor * ddd(a));
        CHECK(cd(b) <= factor * cd(a));
    }
}

TEST_CASE("composition agrees with per-team evaluation") {
    Structure m(2);
    const Vars ctx{"x", "y"};
    for (const char* f : {"x = y and dep(x ; y)", "inc(x ; y) or exc(x ; y)", "NE tand !x = y",
                          "E z . (ind(x ; ; z) ior z = y)", "A z . (dep(x ; z) or ano(y ; z))",
                          "Q even z . (x = z and NE)", "Q ge2 z . !z = y"}) {
        auto p = parse_formula(f);
        REQUIRE(composable(*p, ctx));
        CHECK_MESSAGE(compose_family(m, p, ctx) == team_family(m, p, ctx), f);
    }
    CHECK_FALSE(composable(*parse_formula("const(x) -> NE"), ctx));
    CHECK_THROWS_AS(compose_family(m, parse_formula("A1 x . NE"), ctx), Error);
    std::mt19937_64 rng(61);
    for (int it = 0; it < 25; ++it) {
        auto f = random_formula(rng, ctx, 3, 3);
        CHECK_MESSAGE(compose_family(m, f, ctx) == team_family(m, f, ctx), to_string(f));
    }
}
