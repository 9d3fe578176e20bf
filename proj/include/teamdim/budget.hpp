#pragma once

#include <chrono>
#include <cstdint>
#include <optional>

namespace teamdim {

struct SearchBudget {
    std::uint64_t max_nodes = 10'000'000;
    std::chrono::milliseconds wall_clock{30'000};

    static SearchBudget unlimited() {
        return {UINT64_MAX, std::chrono::milliseconds(INT64_MAX / 4)};
    }
};

// Counts nodes against a SearchBudget. Clock is sampled every 1024 ticks.
class BudgetMeter {
public:
    explicit BudgetMeter(const SearchBudget& b)
        : budget_(b), start_(std::chrono::steady_clock::now()) {}

    // returns false once the budget is exhausted (sticky)
    bool tick() {
        if (exhausted_) return false;
        ++nodes_;
        if (nodes_ > budget_.max_nodes) {
            exhausted_ = true;
        } else if ((nodes_ & 1023u) == 0 &&
                   std::chrono::steady_clock::now() - start_ > budget_.wall_clock) {
            exhausted_ = true;
        }
        return !exhausted_;
    }
    bool exhausted() const { return exhausted_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    SearchBudget budget_;
    std::chrono::steady_clock::time_point start_;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
};

}  // namespace teamdim
