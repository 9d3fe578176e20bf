#include <doctest.h>

#include "helpers.hpp"
#include "teamdim/error.hpp"
#include "teamdim/setfam.hpp"
#include "teamdim/tensor.hpp"

#include <set>

using namespace teamdim;
using namespace teamdim::tensor;
using th::fam;
using th::set;

namespace {

Kleene k_of(const std::set<bool>& vals) {
    if (vals.size() == 2) return Kleene::unknown;
    return *vals.begin() ? Kleene::one : Kleene::zero;
}

std::set<bool> values(Kleene k) {
    if (k == Kleene::unknown) return {false, true};
    return {k == Kleene::one};
}

Interval random_interval(std::mt19937_64& rng, std::size_t w) {
    const std::uint64_t all = (std::uint64_t(1) << w) - 1;
    const std::uint64_t hi = rng() & all, lo = hi & rng();
    return Interval{Subset::from_mask(w, lo), Subset::from_mask(w, hi)};
}

}  // namespace

TEST_CASE("operator names and bit strings") {
    CHECK(BoolOp2::parse("or") == ops::op_or);
    CHECK(BoolOp2::parse("and") == ops::op_and);
    CHECK(BoolOp2::parse("0111") == ops::op_or);
    CHECK(ops::op_or.bits() == "0111");
    CHECK(ops::op_minus.bits() == "0010");
    CHECK(ops::op_or.name() == "or");
    CHECK(BoolOp2::all().size() == 16);
    CHECK_THROWS_AS(BoolOp2::parse("01"), Error);
    CHECK_THROWS_AS(BoolOp2::parse("nope"), Error);
}

TEST_CASE("characteristic functions") {
    auto xi = char_function(fam(2, {{0}, {0, 1}}));
    CHECK(xi.values == std::vector<Kleene>{Kleene::one, Kleene::unknown});
    CHECK(char_function(fam(2, {{}})).values == std::vector<Kleene>{Kleene::zero, Kleene::zero});
    CHECK(char_function(setfam::powerset(1)).values == std::vector<Kleene>{Kleene::unknown});
    CHECK_THROWS_AS(char_function(Family(2)), Error);
}

TEST_CASE("Kleene extension") {
    CHECK(kleene_apply(ops::op_or, Kleene::unknown, Kleene::one) == Kleene::one);
    CHECK(kleene_apply(ops::op_and, Kleene::unknown, Kleene::zero) == Kleene::zero);
    CHECK(kleene_apply(ops::op_xor, Kleene::unknown, Kleene::one) == Kleene::unknown);
    // against the set-valued definition, all ops and all argument pairs
    for (auto op : BoolOp2::all())
        for (auto u : {Kleene::zero, Kleene::one, Kleene::unknown})
            for (auto v : {Kleene::zero, Kleene::one, Kleene::unknown}) {
                std::set<bool> out;
                for (bool a : values(u))
                    for (bool b : values(v)) out.insert(op(a, b));
                CHECK(kleene_apply(op, u, v) == k_of(out));
            }
}

TEST_CASE("tensor application") {
    CHECK(tensor_apply(ops::op_or, fam(2, {{0}}), fam(2, {{1}})) == fam(2, {{0, 1}}));
    auto singletons = fam(3, {{0}, {1}, {2}});
    CHECK(tensor_apply(ops::op_or, singletons, singletons) == fam(3, {{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}}));
    CHECK(tensor_negation(fam(2, {{}})) == fam(2, {{0, 1}}));
    CHECK(tensor_apply(ops::op_or, singletons, Family(3)).empty());
    CHECK(tensor_apply(ops::op_and, Family(3), singletons).empty());
    CHECK_THROWS_AS(tensor_apply(ops::op_or, fam(2, {{0}}), fam(3, {{0}})), Error);
    // A ∨ A differs from A here
    CHECK(tensor_apply(ops::op_or, singletons, singletons) != singletons);
}

TEST_CASE("interval closed form examples") {
    Interval a{Subset(2), set(2, {0})}, b{set(2, {1}), set(2, {1})};
    CHECK(tensor_interval_apply(ops::op_or, a, b) == Interval{set(2, {1}), set(2, {0, 1})});
    Interval l{set(3, {0}), set(3, {0, 2})}, full{Subset::full(3), Subset::full(3)}, none{Subset(3), Subset(3)};
    CHECK(tensor_interval_apply(ops::op_and, l, full) == l);
    CHECK(tensor_interval_apply(ops::op_xor, none, l) == l);
}

TEST_CASE("interval closed form matches enumeration") {
    std::mt19937_64 rng(31);
    for (int it = 0; it < 400; ++it) {
        const std::size_t w = 1 + it % 6;
        auto i = random_interval(rng, w), j = random_interval(rng, w);
        for (auto op : BoolOp2::all()) {
            auto closed = tensor_interval_apply(op, i, j);
            CHECK(closed.members() == tensor_apply(op, i.members(), j.members()));
        }
    }
}

TEST_CASE("characteristic function of a tensor image is pointwise") {
    std::mt19937_64 rng(32);
    for (int it = 0; it < 200; ++it) {
        const std::size_t w = 1 + it % 4;
        auto a = th::random_nonempty_family(rng, w, 0.4), b = th::random_nonempty_family(rng, w, 0.4);
        auto op = BoolOp2::all()[it % 16];
        auto c = char_function(tensor_apply(op, a, b));
        auto xa = char_function(a), xb = char_function(b);
        for (std::size_t e = 0; e < w; ++e) CHECK(c.values[e] == kleene_apply(op, xa.values[e], xb.values[e]));
    }
}

TEST_CASE("commutativity and associativity carry over to families") {
    std::mt19937_64 rng(33);
    for (auto op : BoolOp2::all()) {
        bool comm = true, assoc = true;
        for (int it = 0; it < 25; ++it) {
            auto a = th::random_nonempty_family(rng, 3, 0.3), b = th::random_nonempty_family(rng, 3, 0.3),
                 c = th::random_nonempty_family(rng, 3, 0.3);
            comm = comm && tensor_apply(op, a, b) == tensor_apply(op, b, a);
            assoc = assoc && tensor_apply(op, tensor_apply(op, a, b), c) == tensor_apply(op, a, tensor_apply(op, b, c));
        }
        CHECK(comm == op.commutative());
        if (op.associative()) CHECK(assoc);
        else CHECK_FALSE(assoc);
    }
}

TEST_CASE("p but not q breaks dominated convexity") {
    // h is dominated and convex but not supported
    auto h = fam(2, {{0}, {1}, {0, 1}});
    auto ph = setfam::classify(h);
    CHECK(ph.dominated);
    CHECK(ph.convex);
    CHECK_FALSE(ph.supported);
    auto out = tensor_apply(ops::op_minus, fam(2, {{0, 1}}), h);
    CHECK(out == fam(2, {{}, {0}, {1}}));
    CHECK_FALSE(setfam::classify(out).dominated);
}

TEST_CASE("general disjunction lays families side by side") {
    auto d = general_disjunction({fam(1, {{0}}), fam(2, {{}, {1}})});
    CHECK(d == fam(3, {{0}, {0, 2}}));
}
