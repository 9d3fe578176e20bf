#pragma once

#include "teamdim/subset.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace teamdim {

struct BaseSet {
    std::size_t size = 0;
    std::vector<std::string> labels;  // empty or exactly `size` distinct names

    BaseSet() = default;
    explicit BaseSet(std::size_t n) : size(n) {}
    BaseSet(std::size_t n, std::vector<std::string> names);

    std::string label(std::size_t i) const;
    friend bool operator==(const BaseSet& a, const BaseSet& b) { return a.size == b.size; }
};

// Bases up to this size get a dense membership bitmap.
inline constexpr std::size_t kDenseLimit = 20;

class Family;

struct Interval {
    Subset lower;
    Subset upper;

    // nullopt when lower is not a subset of upper
    static std::optional<Interval> make(const Subset& lower, const Subset& upper);
    bool contains(const Subset& s) const { return lower.is_subset_of(s) && s.is_subset_of(upper); }
    std::size_t free_count() const { return upper.count() - lower.count(); }
    Family members() const;

    friend bool operator==(const Interval&, const Interval&) = default;
    friend auto operator<=>(const Interval& a, const Interval& b) {
        if (auto c = a.lower <=> b.lower; c != 0) return c;
        return a.upper <=> b.upper;
    }
};

class Family {
public:
    Family() { build_index(); }
    explicit Family(std::size_t base_size) : Family(BaseSet(base_size)) {}
    explicit Family(BaseSet base);
    Family(BaseSet base, std::vector<Subset> members);  // sorts and deduplicates

    // like the constructor but rejects duplicate members
    static Family without_duplicates(BaseSet base, std::vector<Subset> members);
    static Family from_masks(std::size_t width, const std::vector<std::uint64_t>& masks);

    const BaseSet& base() const { return base_; }
    std::size_t width() const { return base_.size; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    const std::vector<Subset>& members() const { return members_; }
    const Subset& operator[](std::size_t i) const { return members_[i]; }
    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

    bool contains(const Subset& s) const;
    bool contains_mask(std::uint64_t m) const {
        return (dense_[m >> 6] >> (m & 63)) & 1u;
    }
    bool dense() const { return base_.size <= kDenseLimit; }
    // position of s in members(), or -1
    std::ptrdiff_t index_of(const Subset& s) const;

    std::vector<std::uint64_t> masks() const;  // requires width <= 64

    friend bool operator==(const Family& a, const Family& b) {
        return a.base_.size == b.base_.size && a.members_ == b.members_;
    }

private:
    void build_index();
    BaseSet base_;
    std::vector<Subset> members_;
    std::vector<std::uint64_t> dense_;
    std::unordered_set<Subset, SubsetHash> sparse_;
};

}  // namespace teamdim
