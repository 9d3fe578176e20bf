#include "teamdim/cover.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace teamdim::cover {

namespace {

using Bits = std::vector<std::uint64_t>;

inline bool bit(const Bits& b, std::size_t i) { return (b[i >> 6] >> (i & 63)) & 1u; }
inline void setbit(Bits& b, std::size_t i) { b[i >> 6] |= std::uint64_t(1) << (i & 63); }

std::size_t overlap(const Bits& a, const Bits& b) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < a.size(); ++i) c += std::popcount(a[i] & b[i]);
    return c;
}

bool covered_by(const Bits& a, const Bits& b, const Bits& mask) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] & mask[i] & ~b[i]) return false;
    return true;
}

bool empty_bits(const Bits& b) {
    for (auto w : b)
        if (w) return false;
    return true;
}

class Solver {
public:
    Solver(const Instance& inst, const SearchBudget& budget)
        : inst_(inst), meter_(budget), words_((inst.universe + 63) / 64) {
        for (const auto& s : inst.sets) {
            Bits b(words_, 0);
            for (auto e : s) setbit(b, e);
            sets_.push_back(std::move(b));
        }
        elem_sets_.resize(inst.universe);
        for (std::size_t i = 0; i < sets_.size(); ++i)
            for (auto e : inst.sets[i]) elem_sets_[e].push_back(i);
        for (auto& v : elem_sets_) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
    }

    Solution run() {
        Bits uncovered(words_, 0);
        for (std::size_t e = 0; e < inst_.universe; ++e) setbit(uncovered, e);
        std::vector<std::size_t> chosen;
        for (auto f : inst_.forced) {
            if (std::find(chosen.begin(), chosen.end(), f) != chosen.end()) continue;
            chosen.push_back(f);
            for (std::size_t i = 0; i < words_; ++i) uncovered[i] &= ~sets_[f][i];
        }
        Solution g = greedy_from(uncovered, chosen);
        if (!g.feasible) return g;
        best_ = g.chosen;
        std::vector<std::uint8_t> excluded(sets_.size(), 0);
        dfs(uncovered, chosen, excluded);
        Solution out;
        out.chosen = best_;
        std::sort(out.chosen.begin(), out.chosen.end());
        out.exact = !meter_.exhausted();
        return out;
    }

    Solution greedy_from(Bits uncovered, std::vector<std::size_t> chosen) const {
        Solution s;
        while (!empty_bits(uncovered)) {
            std::size_t best = SIZE_MAX, gain = 0;
            for (std::size_t i = 0; i < sets_.size(); ++i) {
                std::size_t g = overlap(sets_[i], uncovered);
                if (g > gain) {
                    gain = g;
                    best = i;
                }
            }
            if (best == SIZE_MAX) {
                s.feasible = false;
                return s;
            }
            chosen.push_back(best);
            for (std::size_t i = 0; i < words_; ++i) uncovered[i] &= ~sets_[best][i];
        }
        s.chosen = chosen;
        std::sort(s.chosen.begin(), s.chosen.end());
        s.exact = false;
        return s;
    }

private:
    // pairwise-uncoverable uncovered elements, picked greedily
    std::size_t packing_bound(const Bits& uncovered, const std::vector<std::uint8_t>& excluded) {
        std::vector<std::uint8_t> blocked(sets_.size(), 0);
        std::size_t count = 0;
        for (std::size_t w = 0; w < words_; ++w)
            for (std::uint64_t r = uncovered[w]; r; r &= r - 1) {
                std::size_t e = w * 64 + std::countr_zero(r);
                bool free = true;
                for (auto s : elem_sets_[e])
                    if (!excluded[s] && blocked[s]) {
                        free = false;
                        break;
                    }
                if (!free) continue;
                ++count;
                for (auto s : elem_sets_[e]) blocked[s] = 1;
            }
        return count;
    }

    void dfs(const Bits& uncovered, std::vector<std::size_t>& chosen, std::vector<std::uint8_t>& excluded) {
        if (!meter_.tick()) return;
        if (empty_bits(uncovered)) {
            if (chosen.size() < best_.size()) best_ = chosen;
            return;
        }
        if (chosen.size() + 1 >= best_.size()) return;
        if (chosen.size() + packing_bound(uncovered, excluded) >= best_.size()) return;

        // element with fewest usable sets
        std::size_t pick = SIZE_MAX, fewest = SIZE_MAX;
        for (std::size_t w = 0; w < words_; ++w)
            for (std::uint64_t r = uncovered[w]; r; r &= r - 1) {
                std::size_t e = w * 64 + std::countr_zero(r);
                std::size_t c = 0;
                for (auto s : elem_sets_[e]) c += !excluded[s];
                if (c < fewest) {
                    fewest = c;
                    pick = e;
                }
            }
        if (fewest == 0) return;

        std::vector<std::pair<std::size_t, std::size_t>> cands;  // (-gain, index)
        for (auto s : elem_sets_[pick])
            if (!excluded[s]) cands.push_back({overlap(sets_[s], uncovered), s});
        // drop candidates whose useful part is contained in another candidate's
        std::vector<std::uint8_t> dominated(cands.size(), 0);
        for (std::size_t i = 0; i < cands.size(); ++i)
            for (std::size_t j = 0; j < cands.size() && !dominated[i]; ++j) {
                if (i == j || dominated[j]) continue;
                if (cands[j].first < cands[i].first) continue;
                if (cands[j].first == cands[i].first && cands[j].second > cands[i].second) continue;
                if (covered_by(sets_[cands[i].second], sets_[cands[j].second], uncovered)) dominated[i] = 1;
            }
        std::vector<std::pair<std::size_t, std::size_t>> order;
        for (std::size_t i = 0; i < cands.size(); ++i)
            if (!dominated[i]) order.push_back(cands[i]);
        std::sort(order.begin(), order.end(), [](auto a, auto b) {
            return a.first != b.first ? a.first > b.first : a.second < b.second;
        });

        std::vector<std::size_t> newly_excluded;
        for (auto [gain, s] : order) {
            Bits next(uncovered);
            for (std::size_t i = 0; i < words_; ++i) next[i] &= ~sets_[s][i];
            chosen.push_back(s);
            dfs(next, chosen, excluded);
            chosen.pop_back();
            if (meter_.exhausted()) break;
            excluded[s] = 1;
            newly_excluded.push_back(s);
        }
        for (auto s : newly_excluded) excluded[s] = 0;
    }

    const Instance& inst_;
    BudgetMeter meter_;
    std::size_t words_;
    std::vector<Bits> sets_;
    std::vector<std::vector<std::size_t>> elem_sets_;
    std::vector<std::size_t> best_;
};

}  // namespace

Solution greedy(const Instance& inst) {
    Solver s(inst, SearchBudget{});
    Bits uncovered((inst.universe + 63) / 64, 0);
    for (std::size_t e = 0; e < inst.universe; ++e) setbit(uncovered, e);
    std::vector<std::size_t> chosen;
    for (auto f : inst.forced) {
        if (std::find(chosen.begin(), chosen.end(), f) != chosen.end()) continue;
        chosen.push_back(f);
        for (auto e : inst.sets[f])
            uncovered[e >> 6] &= ~(std::uint64_t(1) << (e & 63));
    }
    return s.greedy_from(uncovered, chosen);
}

Solution solve(const Instance& inst, const SearchBudget& budget) {
    Solver s(inst, budget);
    return s.run();
}

}  // namespace teamdim::cover
