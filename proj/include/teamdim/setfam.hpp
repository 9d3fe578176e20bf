#pragma once

#include "teamdim/family.hpp"

#include <cstdint>
#include <vector>

// Structural predicates, shadows, hulls and critical sets.
// Everything here works on bases of at most kDenseLimit elements.
namespace teamdim::setfam {

struct FamilyProfile {
    bool convex = false;
    bool dominated = false;
    bool supported = false;
    bool downward_closed = false;
    bool sperner = false;
    bool union_closed = false;
    bool interval = false;
};

Family interval(const Subset& lower, const Subset& upper);
Family powerset(std::size_t n);

FamilyProfile classify(const Family& f);

Subset union_of(const Family& f);         // empty subset for the empty family
Subset intersection_of(const Family& f);  // throws EmptyFamily

Family max_sets(const Family& f);
Family min_sets(const Family& f);

Family convex_shadow(const Family& f, const Subset& a);
Family dual_convex_shadow(const Family& f, const Subset& a);
Family critical_sets(const Family& f);
Family dual_critical_sets(const Family& f);

Family convex_hull(const Family& f);
Family dominated_hull(const Family& f);
Family supported_hull(const Family& f);

std::size_t vc_dimension(const Family& f);

Family family_union(const Family& a, const Family& b);
Family family_intersection(const Family& a, const Family& b);
bool is_subfamily(const Family& sub, const Family& sup);

namespace detail {
void require_dense(const Family& f);
// sorted ascending
std::vector<std::uint64_t> shadow_masks(const Family& f, std::uint64_t a);
std::vector<std::uint64_t> dual_shadow_masks(const Family& f, std::uint64_t a);
// indices into f.members()
std::vector<std::size_t> critical_indices(const Family& f, bool dual);
// bitmap over all 2^n subsets: C below some member / above some member
std::vector<std::uint8_t> down_closure(const Family& f);
std::vector<std::uint8_t> up_closure(const Family& f);
}  // namespace detail

}  // namespace teamdim::setfam
