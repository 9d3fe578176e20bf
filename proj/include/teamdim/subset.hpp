#pragma once

#include <boost/container/small_vector.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace teamdim {

// Fixed-width bit vector over base elements 0..width-1.
// Ordered canonically by numeric value, element 0 least significant.
class Subset {
public:
    Subset() = default;
    explicit Subset(std::size_t width);

    static Subset from_mask(std::size_t width, std::uint64_t mask);
    static Subset from_elements(std::size_t width, const std::vector<std::size_t>& elems);
    static Subset from_elements(std::size_t width, std::initializer_list<std::size_t> elems);
    static Subset full(std::size_t width);

    std::size_t width() const { return width_; }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
    void assign(std::size_t i, bool v) { v ? set(i) : reset(i); }

    std::size_t count() const;
    bool none() const;
    bool any() const { return !none(); }
    bool is_subset_of(const Subset& o) const;
    bool intersects(const Subset& o) const;

    Subset& operator|=(const Subset& o);
    Subset& operator&=(const Subset& o);
    Subset& operator^=(const Subset& o);
    Subset& operator-=(const Subset& o);  // set difference
    Subset complement() const;

    friend Subset operator|(Subset a, const Subset& b) { return a |= b; }
    friend Subset operator&(Subset a, const Subset& b) { return a &= b; }
    friend Subset operator^(Subset a, const Subset& b) { return a ^= b; }
    friend Subset operator-(Subset a, const Subset& b) { return a -= b; }

    std::vector<std::size_t> elements() const;
    // iterate set bits: returns width() when none left
    std::size_t first() const { return next(0); }
    std::size_t next(std::size_t from) const;

    std::uint64_t to_mask() const;  // requires width <= 64
    std::size_t word_count() const { return words_.size(); }
    std::uint64_t word(std::size_t i) const { return words_[i]; }

    std::size_t hash() const;
    std::string to_string() const;  // "{0,2}"

    friend bool operator==(const Subset& a, const Subset& b) {
        return a.width_ == b.width_ && a.words_ == b.words_;
    }
    friend std::strong_ordering operator<=>(const Subset& a, const Subset& b);

private:
    void trim();
    std::size_t width_ = 0;
    boost::container::small_vector<std::uint64_t, 2> words_;
};

struct SubsetHash {
    std::size_t operator()(const Subset& s) const { return s.hash(); }
};

}  // namespace teamdim
