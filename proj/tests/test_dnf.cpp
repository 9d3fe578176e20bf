#include <doctest.h>

#include "helpers.hpp"
#include "teamdim/atomcat.hpp"
#include "teamdim/dims.hpp"
#include "teamdim/dnf.hpp"
#include "teamdim/error.hpp"
#include "teamdim/setfam.hpp"

using namespace teamdim;
using namespace teamdim::dnf;
using th::fam;

namespace {

BoolFunc random_func(std::mt19937_64& rng, std::size_t n, double p) {
    BoolFunc f(n);
    std::bernoulli_distribution coin(p);
    for (std::size_t i = 0; i < f.table.size(); ++i) f.table[i] = coin(rng);
    return f;
}

}  // namespace

TEST_CASE("families and functions") {
    auto f = family_to_boolfunc(atomcat::even_family(2));
    CHECK(format_boolfunc(f) == "boolfunc 2\n1001\n");
    CHECK(boolfunc_to_family(BoolFunc(3)).empty());
    std::mt19937_64 rng(71);
    for (int it = 0; it < 50; ++it) {
        auto g = th::random_family(rng, 1 + it % 6, 0.5);
        CHECK(boolfunc_to_family(family_to_boolfunc(g)) == g);
    }
    CHECK(parse_boolfunc("boolfunc 3\n0111 1110\n") == parse_boolfunc(format_boolfunc(parse_boolfunc("boolfunc 3\n01111110"))));
    CHECK_THROWS_AS(parse_boolfunc("boolfunc 2\n101\n"), ParseError);
    CHECK_THROWS_AS(parse_boolfunc("boolfunc 2\n1021\n"), ParseError);
    CHECK_THROWS_AS(parse_boolfunc("0101\n"), ParseError);
}

TEST_CASE("prime implicants") {
    auto single = family_to_boolfunc(fam(3, {{0, 2}}));
    auto p = prime_implicants(single);
    REQUIRE(p.size() == 1);
    CHECK(p[0].to_string(3) == "101");
    auto even = prime_implicants(family_to_boolfunc(atomcat::even_family(2)));
    CHECK(even.size() == 2);
    auto all = prime_implicants(family_to_boolfunc(setfam::powerset(3)));
    REQUIRE(all.size() == 1);
    CHECK(all[0].to_string(3) == "---");
    CHECK(prime_implicants(BoolFunc(2)).empty());
}

TEST_CASE("prime implicants are the prime intervals") {
    std::mt19937_64 rng(72);
    for (int it = 0; it < 80; ++it) {
        auto f = th::random_family(rng, 1 + it % 6, 0.55);
        auto ps = prime_implicants(family_to_boolfunc(f));
        std::vector<Interval> ivs;
        for (const auto& p : ps) {
            ivs.push_back(p.interval(f.width()));
            CHECK(setfam::is_subfamily(ivs.back().members(), f));
        }
        auto expect = dims::prime_intervals(f);
        std::sort(ivs.begin(), ivs.end());
        std::sort(expect.begin(), expect.end());
        CHECK(ivs == expect);
    }
}

TEST_CASE("minimal DNF length") {
    CHECK(minimal_dnf_length(family_to_boolfunc(atomcat::even_family(2))).value == 2);
    CHECK(minimal_dnf_length(family_to_boolfunc(setfam::powerset(4))).value == 1);
    CHECK(minimal_dnf_length(BoolFunc(3)).value == 0);
    // x0 xor x1 xor x2 off one corner needs three cubes
    CHECK(minimal_dnf_length(parse_boolfunc("boolfunc 3\n01111110\n")).value == 3);
}

TEST_CASE("minimal DNF length equals cylindrical dimension") {
    std::mt19937_64 rng(73);
    for (int it = 0; it < 60; ++it) {
        const std::size_t n = 2 + it % 5;
        auto f = random_func(rng, n, it % 2 ? 0.5 : 0.7);
        auto m = minimal_dnf_length(f);
        CHECK(m.status == dims::Status::exact);
        CHECK(m.value == dims::cylindrical_dimension(boolfunc_to_family(f)).value);
        CHECK(dims::check_witness(boolfunc_to_family(f), m));
    }
}
