#include <doctest.h>

#include "helpers.hpp"
#include "teamdim/dims.hpp"
#include "teamdim/dnf.hpp"
#include "teamdim/kripke.hpp"
#include "teamdim/lindstrom.hpp"
#include "teamdim/parser.hpp"
#include "teamdim/setfam.hpp"
#include "teamdim/teamlogic.hpp"
#include "teamdim/tensor.hpp"

#include <numeric>

using namespace teamdim;

namespace {

// image of f under a permutation of the base
Family permute(const Family& f, const std::vector<std::size_t>& perm) {
    std::vector<Subset> out;
    for (const auto& s : f) {
        Subset t(f.width());
        for (auto e : s.elements()) t.set(perm[e]);
        out.push_back(t);
    }
    return Family(f.base(), out);
}

}  // namespace

TEST_CASE("dimensions are invariant under relabelling the base") {
    std::mt19937_64 rng(81);
    for (int it = 0; it < 60; ++it) {
        const std::size_t w = 2 + it % 4;
        auto f = th::random_family(rng, w, 0.5);
        std::vector<std::size_t> perm(w);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        auto g = permute(f, perm);
        CHECK(dims::upper_dimension(g).value == dims::upper_dimension(f).value);
        CHECK(dims::dual_upper_dimension(g).value == dims::dual_upper_dimension(f).value);
        CHECK(dims::cylindrical_dimension(g).value == dims::cylindrical_dimension(f).value);
    }
}

TEST_CASE("negation swaps the upper and dual upper dimension") {
    std::mt19937_64 rng(82);
    for (int it = 0; it < 60; ++it) {
        auto f = th::random_family(rng, 1 + it % 5, 0.5);
        auto g = tensor::tensor_negation(f);
        CHECK(tensor::tensor_negation(g) == f);
        CHECK(dims::upper_dimension(g).value == dims::dual_upper_dimension(f).value);
        CHECK(dims::dual_upper_dimension(g).value == dims::upper_dimension(f).value);
        CHECK(dims::cylindrical_dimension(g).value == dims::cylindrical_dimension(f).value);
    }
}

TEST_CASE("tensor images of intervals are intervals") {
    std::mt19937_64 rng(83);
    for (int it = 0; it < 200; ++it) {
        const std::size_t w = 1 + it % 5;
        const std::uint64_t all = (std::uint64_t(1) << w) - 1;
        auto mk = [&] {
            std::uint64_t hi = rng() & all, lo = hi & rng();
            return setfam::interval(Subset::from_mask(w, lo), Subset::from_mask(w, hi));
        };
        auto a = mk(), b = mk();
        auto op = tensor::BoolOp2::all()[it % 16];
        auto c = tensor::tensor_apply(op, a, b);
        CHECK(setfam::classify(c).interval);
        CHECK(dims::cylindrical_dimension(c).value == 1);
    }
}

TEST_CASE("the tensor disjunction of dominated families is bounded by the product") {
    std::mt19937_64 rng(84);
    for (int it = 0; it < 80; ++it) {
        auto a = th::random_nonempty_family(rng, 3, 0.4), b = th::random_nonempty_family(rng, 3, 0.4);
        auto c = tensor::tensor_apply(tensor::ops::op_or, a, b);
        CHECK(dims::upper_dimension(c).value <= dims::upper_dimension(a).value * dims::upper_dimension(b).value);
        CHECK(dims::cylindrical_dimension(c).value <=
              dims::cylindrical_dimension(a).value * dims::cylindrical_dimension(b).value);
        auto d = tensor::tensor_apply(tensor::ops::op_and, a, b);
        CHECK(dims::dual_upper_dimension(d).value <=
              dims::dual_upper_dimension(a).value * dims::dual_upper_dimension(b).value);
    }
}

TEST_CASE("Kripke form of the projection operator") {
    std::mt19937_64 rng(85);
    for (const char* cls : {"exists", "forall", "ge2", "majority"}) {
        auto k = logic::find_class(cls);
        auto r = logic::lindstrom_relation(k, {1}, 2, 2);
        for (int it = 0; it < 20; ++it) {
            auto f = th::random_family(rng, 4, 0.4);
            CHECK_MESSAGE(kripke::apply(r, {f}) == logic::lindstrom_apply(k, {1}, f, 2, 2), cls);
        }
    }
}

TEST_CASE("two evaluation paths agree on random formulas over three variables") {
    std::mt19937_64 rng(86);
    logic::Structure m(2);
    const logic::Vars ctx{"x", "y", "z"};
    for (int it = 0; it < 15; ++it) {
        auto f = logic::random_formula(rng, ctx, 3, 4);
        CHECK_MESSAGE(logic::compose_family(m, f, ctx) == logic::team_family(m, f, ctx), logic::to_string(f));
    }
}

TEST_CASE("dimension witnesses of team families verify") {
    logic::Structure m(2);
    for (const char* f : {"dep(x ; y)", "inc(x ; y)", "exc(x ; y) or x = y", "ind(x ; ; y) and NE"}) {
        auto fam = logic::team_family(m, logic::parse_formula(f), {"x", "y"});
        for (auto mode : {dims::CoverMode::dominate, dims::CoverMode::support, dims::CoverMode::interval})
            CHECK(dims::check_witness(fam, dims::dimension(fam, mode)));
        CHECK(dnf::minimal_dnf_length(dnf::family_to_boolfunc(fam)).value ==
              dims::cylindrical_dimension(fam).value);
    }
}
