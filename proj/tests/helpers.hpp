#pragma once

#include "teamdim/family.hpp"
#include "teamdim/textio.hpp"

#include <doctest.h>

#include <initializer_list>
#include <random>
#include <vector>

namespace doctest {
template <>
struct StringMaker<teamdim::Family> {
    static String convert(const teamdim::Family& f) {
        auto s = teamdim::io::format_family(f);
        for (auto& c : s)
            if (c == '\n') c = '|';
        return s.c_str();
    }
};
template <>
struct StringMaker<teamdim::Subset> {
    static String convert(const teamdim::Subset& s) { return s.to_string().c_str(); }
};
}  // namespace doctest

namespace th {

using teamdim::Family;
using teamdim::Subset;

inline Subset set(std::size_t width, std::initializer_list<std::size_t> elems) {
    return Subset::from_elements(width, elems);
}

inline Family fam(std::size_t width, std::initializer_list<std::initializer_list<std::size_t>> members) {
    std::vector<Subset> ms;
    for (auto m : members) ms.push_back(Subset::from_elements(width, m));
    return Family(teamdim::BaseSet(width), ms);
}

// each subset kept with probability p
inline Family random_family(std::mt19937_64& rng, std::size_t width, double p) {
    std::bernoulli_distribution keep(p);
    std::vector<std::uint64_t> masks;
    for (std::uint64_t m = 0; m < (std::uint64_t(1) << width); ++m)
        if (keep(rng)) masks.push_back(m);
    return Family::from_masks(width, masks);
}

inline Family random_nonempty_family(std::mt19937_64& rng, std::size_t width, double p) {
    for (;;) {
        auto f = random_family(rng, width, p);
        if (!f.empty()) return f;
    }
}

// brute force over all subfamilies is only feasible for tiny families; this
// one enumerates the members of an interval directly
inline Family interval_members(std::size_t width, std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> masks;
    for (std::uint64_t m = 0; m < (std::uint64_t(1) << width); ++m)
        if ((m & lo) == lo && (m & ~hi) == 0) masks.push_back(m);
    return Family::from_masks(width, masks);
}

}  // namespace th
