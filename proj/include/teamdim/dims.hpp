#pragma once

#include "teamdim/budget.hpp"
#include "teamdim/family.hpp"

#include <vector>

namespace teamdim::dims {

enum class Status { exact, upper_bound_budget };
enum class CoverMode { dominate, support, interval };

const char* to_string(Status s);
const char* to_string(CoverMode m);

struct CoverResult {
    std::size_t value = 0;
    CoverMode mode = CoverMode::dominate;
    std::vector<Subset> sets;         // dominate / support witnesses
    std::vector<Interval> intervals;  // interval witnesses
    Status status = Status::exact;
};

bool check_dominating(const Family& f, const std::vector<Subset>& g);
bool check_supporting(const Family& f, const std::vector<Subset>& g);
bool check_interval_cover(const Family& f, const std::vector<Interval>& cover);
bool check_witness(const Family& f, const CoverResult& r);

// DD, DDd and CD
CoverResult upper_dimension(const Family& f, const SearchBudget& budget = {});
CoverResult dual_upper_dimension(const Family& f, const SearchBudget& budget = {});
CoverResult cylindrical_dimension(const Family& f, const SearchBudget& budget = {});
CoverResult dimension(const Family& f, CoverMode mode, const SearchBudget& budget = {});
CoverResult greedy_cover(const Family& f, CoverMode mode);

// maximal intervals contained in f, sorted by (lower, upper)
std::vector<Interval> prime_intervals(const Family& f);

}  // namespace teamdim::dims
