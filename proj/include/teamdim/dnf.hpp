#pragma once

#include "teamdim/budget.hpp"
#include "teamdim/dims.hpp"
#include "teamdim/family.hpp"

#include <boost/dynamic_bitset.hpp>

#include <string>
#include <vector>

// Families over an n-element base as Boolean functions of n variables:
// A ↦ the valuation with x_i true iff i ∈ A, minterm index = mask of A.
namespace teamdim::dnf {

inline constexpr std::size_t kMaxVars = 20;

struct BoolFunc {
    std::size_t vars = 0;
    boost::dynamic_bitset<> table;  // 2^vars bits

    BoolFunc() = default;
    explicit BoolFunc(std::size_t n);
    bool operator()(std::uint64_t minterm) const { return table.test(minterm); }
    friend bool operator==(const BoolFunc&, const BoolFunc&) = default;
};

BoolFunc family_to_boolfunc(const Family& f);
Family boolfunc_to_family(const BoolFunc& f);

// `boolfunc n` then 2^n characters of 0/1, whitespace ignored
BoolFunc parse_boolfunc(const std::string& text);
std::string format_boolfunc(const BoolFunc& f);

// fixed variables in `care`, their values in `value` (value ⊆ care)
struct Implicant {
    std::uint32_t value = 0;
    std::uint32_t care = 0;

    bool covers(std::uint64_t minterm) const { return (minterm & care) == value; }
    Interval interval(std::size_t n) const;  // [value, value ∪ free]
    std::string to_string(std::size_t n) const;  // per variable 0, 1 or -, variable 0 first
    friend auto operator<=>(const Implicant&, const Implicant&) = default;
};

// Quine–McCluskey merging; sorted
std::vector<Implicant> prime_implicants(const BoolFunc& f);

// shortest DNF as a cover of the minterms by prime implicants; the witness
// cubes are returned as intervals
dims::CoverResult minimal_dnf_length(const BoolFunc& f, const SearchBudget& budget = {});

}  // namespace teamdim::dnf
