#pragma once

#include "teamdim/subset.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

namespace teamdim::logic {

using Vars = std::vector<std::string>;
using Tuple = std::vector<std::size_t>;

// n^m, throws CapExceeded when it does not fit comfortably in 63 bits
std::uint64_t power(std::size_t n, std::size_t m);
std::uint64_t encode(const Tuple& t, std::size_t n);  // Σ t_i n^i
Tuple decode(std::uint64_t code, std::size_t n, std::size_t m);

// Finite model over {0..n-1}. Tuples are stored by their code.
class Structure {
public:
    struct Rel {
        std::size_t arity = 0;
        std::unordered_set<std::uint64_t> tuples;
    };

    explicit Structure(std::size_t n = 2);

    std::size_t size() const { return n_; }
    void add_relation(const std::string& name, std::size_t arity, const std::vector<Tuple>& tuples);
    const Rel* find(const std::string& name) const;  // nullptr when absent
    bool holds(const std::string& name, const Tuple& args) const;
    const std::map<std::string, Rel>& relations() const { return rels_; }
    bool empty_vocabulary() const { return rels_.empty(); }

private:
    std::size_t n_;
    std::map<std::string, Rel> rels_;
};

// rows sorted and unique, coded over `vars` in order
struct Team {
    Vars vars;
    std::vector<std::uint64_t> rows;

    std::size_t size() const { return rows.size(); }
    friend bool operator==(const Team&, const Team&) = default;
};

Team make_team(Vars vars, const std::vector<Tuple>& rows, std::size_t n);
Subset team_to_subset(const Team& t, std::size_t n);  // base n^m
Team subset_to_team(const Vars& vars, const Subset& s, std::size_t n);

// `universe n`, then `rel NAME ARITY`, tuple lines, `end`
Structure parse_structure(const std::string& text);
std::string format_structure(const Structure& m);
// `vars x y ...`, then one tuple per line (`()` is the empty tuple)
Team parse_team(const std::string& text, std::size_t n);
std::string format_team(const Team& t, std::size_t n);

}  // namespace teamdim::logic
