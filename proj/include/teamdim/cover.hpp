#pragma once

#include "teamdim/budget.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

// Minimum set cover, shared by the dimension computations and the DNF bridge.
namespace teamdim::cover {

struct Instance {
    std::size_t universe = 0;
    std::vector<std::vector<std::size_t>> sets;  // element indices
    std::vector<std::size_t> forced;             // indices into sets that must be chosen
};

struct Solution {
    std::vector<std::size_t> chosen;  // sorted set indices
    bool exact = false;
    bool feasible = true;
};

Solution greedy(const Instance& inst);
// Branch and bound. On budget exhaustion returns the best cover found with exact=false.
Solution solve(const Instance& inst, const SearchBudget& budget);

}  // namespace teamdim::cover
