#include "teamdim/dims.hpp"
#include "teamdim/cover.hpp"
#include "teamdim/error.hpp"
#include "teamdim/setfam.hpp"

#include <algorithm>
#include <unordered_set>

namespace teamdim::dims {

using setfam::detail::dual_shadow_masks;
using setfam::detail::require_dense;
using setfam::detail::shadow_masks;

const char* to_string(Status s) {
    return s == Status::exact ? "exact" : "upperBoundBudget";
}

const char* to_string(CoverMode m) {
    switch (m) {
    case CoverMode::dominate: return "dominate";
    case CoverMode::support: return "support";
    case CoverMode::interval: return "interval";
    }
    return "?";
}

namespace {

std::vector<std::int32_t> index_map(const Family& f) {
    std::vector<std::int32_t> idx(std::size_t(1) << f.width(), -1);
    for (std::size_t i = 0; i < f.size(); ++i) idx[f[i].to_mask()] = std::int32_t(i);
    return idx;
}

bool covers_all(const Family& f, const std::vector<std::uint8_t>& hit) {
    return std::all_of(hit.begin(), hit.end(), [](auto h) { return h != 0; }) && hit.size() == f.size();
}

bool check_shadow_cover(const Family& f, const std::vector<Subset>& g, bool dual) {
    require_dense(f);
    for (const auto& s : g)
        if (!f.contains(s)) throw Error(ErrorKind::NotASubfamily, "witness set " + s.to_string() + " is not a member");
    auto idx = index_map(f);
    std::vector<std::uint8_t> hit(f.size(), 0);
    for (const auto& s : g)
        for (auto m : dual ? dual_shadow_masks(f, s.to_mask()) : shadow_masks(f, s.to_mask())) hit[idx[m]] = 1;
    return covers_all(f, hit);
}

void for_each_in(const Interval& iv, auto&& fn) {
    std::uint64_t lo = iv.lower.to_mask(), free = iv.upper.to_mask() & ~lo;
    std::uint64_t sub = 0;
    do {
        fn(lo | sub);
        sub = (sub - free) & free;
    } while (sub != 0);
}

struct Candidates {
    cover::Instance inst;
    std::vector<Subset> sets;
    std::vector<Interval> intervals;
};

Candidates shadow_candidates(const Family& f, bool dual) {
    Candidates c;
    auto idx = index_map(f);
    auto crit = setfam::detail::critical_indices(f, dual);
    Family extremal = dual ? setfam::min_sets(f) : setfam::max_sets(f);
    c.inst.universe = f.size();
    for (auto i : crit) {
        std::vector<std::size_t> elems;
        auto a = f[i].to_mask();
        for (auto m : dual ? dual_shadow_masks(f, a) : shadow_masks(f, a)) elems.push_back(std::size_t(idx[m]));
        if (extremal.contains(f[i])) c.inst.forced.push_back(c.sets.size());
        c.inst.sets.push_back(std::move(elems));
        c.sets.push_back(f[i]);
    }
    return c;
}

Candidates interval_candidates(const Family& f) {
    Candidates c;
    auto idx = index_map(f);
    c.intervals = prime_intervals(f);
    c.inst.universe = f.size();
    for (const auto& iv : c.intervals) {
        std::vector<std::size_t> elems;
        for_each_in(iv, [&](std::uint64_t m) { elems.push_back(std::size_t(idx[m])); });
        c.inst.sets.push_back(std::move(elems));
    }
    return c;
}

CoverResult finish(const Candidates& c, const cover::Solution& sol, CoverMode mode) {
    CoverResult r;
    r.mode = mode;
    r.value = sol.chosen.size();
    r.status = sol.exact ? Status::exact : Status::upper_bound_budget;
    for (auto i : sol.chosen) {
        if (mode == CoverMode::interval)
            r.intervals.push_back(c.intervals[i]);
        else
            r.sets.push_back(c.sets[i]);
    }
    return r;
}

Candidates candidates(const Family& f, CoverMode mode) {
    switch (mode) {
    case CoverMode::dominate: return shadow_candidates(f, false);
    case CoverMode::support: return shadow_candidates(f, true);
    case CoverMode::interval: return interval_candidates(f);
    }
    return {};
}

}  // namespace

bool check_dominating(const Family& f, const std::vector<Subset>& g) { return check_shadow_cover(f, g, false); }
bool check_supporting(const Family& f, const std::vector<Subset>& g) { return check_shadow_cover(f, g, true); }

bool check_interval_cover(const Family& f, const std::vector<Interval>& cover) {
    require_dense(f);
    auto idx = index_map(f);
    std::vector<std::uint8_t> hit(f.size(), 0);
    for (const auto& iv : cover) {
        bool inside = true;
        for_each_in(iv, [&](std::uint64_t m) {
            if (idx[m] < 0)
                inside = false;
            else
                hit[idx[m]] = 1;
        });
        if (!inside) return false;
    }
    return covers_all(f, hit);
}

bool check_witness(const Family& f, const CoverResult& r) {
    switch (r.mode) {
    case CoverMode::dominate: return r.sets.size() == r.value && check_dominating(f, r.sets);
    case CoverMode::support: return r.sets.size() == r.value && check_supporting(f, r.sets);
    case CoverMode::interval: return r.intervals.size() == r.value && check_interval_cover(f, r.intervals);
    }
    return false;
}

std::vector<Interval> prime_intervals(const Family& f) {
    require_dense(f);
    const std::size_t n = f.width();
    std::unordered_set<std::uint64_t> inside;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> all;
    for (const auto& m : f) {
        auto l = m.to_mask();
        for (auto u : dual_shadow_masks(f, l)) {
            inside.insert((l << 32) | u);
            all.push_back({l, u});
        }
    }
    std::vector<Interval> out;
    for (auto [l, u] : all) {
        bool prime = true;
        for (std::size_t x = 0; x < n && prime; ++x) {
            std::uint64_t b = std::uint64_t(1) << x;
            if ((l & b) && inside.count(((l & ~b) << 32) | u)) prime = false;
            if (!(u & b) && inside.count((l << 32) | (u | b))) prime = false;
        }
        if (prime) out.push_back(Interval{Subset::from_mask(n, l), Subset::from_mask(n, u)});
    }
    std::sort(out.begin(), out.end());
    return out;
}

CoverResult dimension(const Family& f, CoverMode mode, const SearchBudget& budget) {
    require_dense(f);
    CoverResult r;
    r.mode = mode;
    if (f.empty()) return r;
    auto c = candidates(f, mode);
    return finish(c, cover::solve(c.inst, budget), mode);
}

CoverResult upper_dimension(const Family& f, const SearchBudget& budget) {
    return dimension(f, CoverMode::dominate, budget);
}
CoverResult dual_upper_dimension(const Family& f, const SearchBudget& budget) {
    return dimension(f, CoverMode::support, budget);
}
CoverResult cylindrical_dimension(const Family& f, const SearchBudget& budget) {
    return dimension(f, CoverMode::interval, budget);
}

CoverResult greedy_cover(const Family& f, CoverMode mode) {
    require_dense(f);
    CoverResult r;
    r.mode = mode;
    if (f.empty()) return r;
    auto c = candidates(f, mode);
    auto sol = cover::greedy(c.inst);
    r = finish(c, sol, mode);
    r.status = Status::upper_bound_budget;
    return r;
}

}  // namespace teamdim::dims
