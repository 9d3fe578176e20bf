#include "teamdim/setfam.hpp"
#include "teamdim/error.hpp"

#include <algorithm>
#include <bit>

namespace teamdim::setfam {

namespace detail {

void require_dense(const Family& f) {
    if (!f.dense())
        throw Error(ErrorKind::CapExceeded,
                    "base of size " + std::to_string(f.width()) + " exceeds " + std::to_string(kDenseLimit));
}

std::vector<std::uint64_t> shadow_masks(const Family& f, std::uint64_t a) {
    // good(B) = B in F and good(B+x) for every x in A\B; walk subsets of A downwards
    std::vector<std::uint64_t> bits;
    for (std::uint64_t r = a; r; r &= r - 1) bits.push_back(r & -r);
    const std::size_t k = bits.size();
    std::vector<std::uint8_t> good(std::size_t(1) << k, 0);
    std::vector<std::uint64_t> out;
    std::uint64_t sub = a;
    for (std::size_t c = good.size(); c-- > 0;) {
        bool g = f.contains_mask(sub);
        for (std::size_t j = 0; g && j < k; ++j)
            if (!((c >> j) & 1u) && !good[c | (std::size_t(1) << j)]) g = false;
        good[c] = g;
        if (g) out.push_back(sub);
        sub = (sub - 1) & a;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<std::uint64_t> dual_shadow_masks(const Family& f, std::uint64_t a) {
    const std::uint64_t full = (f.width() == 64) ? ~std::uint64_t(0) : ((std::uint64_t(1) << f.width()) - 1);
    const std::uint64_t rest = full & ~a;
    std::vector<std::uint64_t> bits;
    for (std::uint64_t r = rest; r; r &= r - 1) bits.push_back(r & -r);
    const std::size_t k = bits.size();
    std::vector<std::uint8_t> good(std::size_t(1) << k, 0);
    std::vector<std::uint64_t> out;
    std::uint64_t sub = 0;  // subsets of rest, ascending
    for (std::size_t c = 0; c < good.size(); ++c) {
        std::uint64_t b = a | sub;
        bool g = f.contains_mask(b);
        for (std::size_t j = 0; g && j < k; ++j)
            if (((c >> j) & 1u) && !good[c & ~(std::size_t(1) << j)]) g = false;
        good[c] = g;
        if (g) out.push_back(b);
        sub = (sub - rest) & rest;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::size_t> critical_indices(const Family& f, bool dual) {
    require_dense(f);
    const auto ms = f.masks();
    std::vector<std::vector<std::uint64_t>> shadows(ms.size());
    for (std::size_t i = 0; i < ms.size(); ++i)
        shadows[i] = dual ? dual_shadow_masks(f, ms[i]) : shadow_masks(f, ms[i]);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        // a larger shadow must belong to a member in the opposite shadow of ms[i]
        auto others = dual ? shadow_masks(f, ms[i]) : dual_shadow_masks(f, ms[i]);
        bool maximal = true;
        for (auto b : others) {
            if (b == ms[i]) continue;
            auto j = f.index_of(Subset::from_mask(f.width(), b));
            if (std::includes(shadows[j].begin(), shadows[j].end(), shadows[i].begin(), shadows[i].end())) {
                maximal = false;
                break;
            }
        }
        if (maximal) out.push_back(i);
    }
    return out;
}

std::vector<std::uint8_t> down_closure(const Family& f) {
    require_dense(f);
    const std::size_t n = f.width();
    std::vector<std::uint8_t> d(std::size_t(1) << n, 0);
    for (const auto& m : f) d[m.to_mask()] = 1;
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < d.size(); ++c)
            if (!((c >> b) & 1u) && d[c | (std::size_t(1) << b)]) d[c] = 1;
    return d;
}

std::vector<std::uint8_t> up_closure(const Family& f) {
    require_dense(f);
    const std::size_t n = f.width();
    std::vector<std::uint8_t> u(std::size_t(1) << n, 0);
    for (const auto& m : f) u[m.to_mask()] = 1;
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < u.size(); ++c)
            if (((c >> b) & 1u) && u[c & ~(std::size_t(1) << b)]) u[c] = 1;
    return u;
}

}  // namespace detail

using detail::require_dense;

static Family from_bitmap(std::size_t width, const std::vector<std::uint8_t>& bm) {
    std::vector<std::uint64_t> ms;
    for (std::size_t c = 0; c < bm.size(); ++c)
        if (bm[c]) ms.push_back(c);
    return Family::from_masks(width, ms);
}

Family interval(const Subset& lower, const Subset& upper) {
    if (lower.width() != upper.width()) throw Error(ErrorKind::BaseMismatch, "interval bounds over different bases");
    auto iv = Interval::make(lower, upper);
    if (!iv) return Family(BaseSet(lower.width()));
    return iv->members();
}

Family powerset(std::size_t n) {
    return interval(Subset(n), Subset::full(n));
}

Subset union_of(const Family& f) {
    Subset u(f.width());
    for (const auto& m : f) u |= m;
    return u;
}

Subset intersection_of(const Family& f) {
    if (f.empty()) throw Error(ErrorKind::EmptyFamily, "intersection of the empty family");
    Subset r = f[0];
    for (const auto& m : f) r &= m;
    return r;
}

FamilyProfile classify(const Family& f) {
    require_dense(f);
    FamilyProfile p;
    p.convex = convex_hull(f) == f;
    if (!f.empty()) {
        Subset u = union_of(f), l = intersection_of(f);
        p.dominated = f.contains(u);
        p.supported = f.contains(l);
        p.interval = f.size() == (std::size_t(1) << (u.count() - l.count()));
    }
    p.downward_closed = from_bitmap(f.width(), detail::down_closure(f)) == f;
    p.sperner = max_sets(f).size() == f.size();
    // the empty subfamily has union ∅, so ∅ must be present
    p.union_closed = f.contains(Subset(f.width()));
    if (p.union_closed) {
        const auto ms = f.masks();
        for (std::size_t i = 0; i < ms.size() && p.union_closed; ++i)
            for (std::size_t j = i + 1; j < ms.size(); ++j)
                if (!f.contains_mask(ms[i] | ms[j])) {
                    p.union_closed = false;
                    break;
                }
    }
    return p;
}

Family max_sets(const Family& f) {
    require_dense(f);
    auto down = detail::down_closure(f);
    std::vector<Subset> out;
    for (const auto& m : f) {
        std::uint64_t a = m.to_mask();
        bool maximal = true;
        for (std::size_t x = 0; x < f.width() && maximal; ++x)
            if (!((a >> x) & 1u) && down[a | (std::uint64_t(1) << x)]) maximal = false;
        if (maximal) out.push_back(m);
    }
    return Family(f.base(), std::move(out));
}

Family min_sets(const Family& f) {
    require_dense(f);
    auto up = detail::up_closure(f);
    std::vector<Subset> out;
    for (const auto& m : f) {
        std::uint64_t a = m.to_mask();
        bool minimal = true;
        for (std::size_t x = 0; x < f.width() && minimal; ++x)
            if (((a >> x) & 1u) && up[a & ~(std::uint64_t(1) << x)]) minimal = false;
        if (minimal) out.push_back(m);
    }
    return Family(f.base(), std::move(out));
}

Family convex_shadow(const Family& f, const Subset& a) {
    require_dense(f);
    if (!f.contains(a)) throw Error(ErrorKind::NotAMember, "set " + a.to_string() + " is not a member");
    return Family::from_masks(f.width(), detail::shadow_masks(f, a.to_mask()));
}

Family dual_convex_shadow(const Family& f, const Subset& a) {
    require_dense(f);
    if (!f.contains(a)) throw Error(ErrorKind::NotAMember, "set " + a.to_string() + " is not a member");
    return Family::from_masks(f.width(), detail::dual_shadow_masks(f, a.to_mask()));
}

static Family pick(const Family& f, const std::vector<std::size_t>& idx) {
    std::vector<Subset> out;
    for (auto i : idx) out.push_back(f[i]);
    return Family(f.base(), std::move(out));
}

Family critical_sets(const Family& f) { return pick(f, detail::critical_indices(f, false)); }
Family dual_critical_sets(const Family& f) { return pick(f, detail::critical_indices(f, true)); }

Family convex_hull(const Family& f) {
    require_dense(f);
    auto up = detail::up_closure(f);
    auto down = detail::down_closure(f);
    for (std::size_t c = 0; c < up.size(); ++c) up[c] = up[c] && down[c];
    return from_bitmap(f.width(), up);
}

Family dominated_hull(const Family& f) {
    require_dense(f);
    if (f.empty()) throw Error(ErrorKind::EmptyFamily, "dominated hull of the empty family");
    auto up = detail::up_closure(f);
    std::uint64_t u = union_of(f).to_mask();
    for (std::size_t c = 0; c < up.size(); ++c)
        if (c & ~u) up[c] = 0;
    return from_bitmap(f.width(), up);
}

Family supported_hull(const Family& f) {
    require_dense(f);
    if (f.empty()) throw Error(ErrorKind::EmptyFamily, "supported hull of the empty family");
    auto down = detail::down_closure(f);
    std::uint64_t l = intersection_of(f).to_mask();
    for (std::size_t c = 0; c < down.size(); ++c)
        if ((c & l) != l) down[c] = 0;
    return from_bitmap(f.width(), down);
}

std::size_t vc_dimension(const Family& f) {
    require_dense(f);
    if (f.empty()) return 0;
    const std::size_t n = f.width();
    const auto ms = f.masks();
    std::size_t kmax = std::min<std::size_t>(n, std::bit_width(f.size()) - 1);
    std::vector<std::uint8_t> seen;
    for (std::size_t k = kmax; k > 0; --k) {
        // all k-subsets of the base, Gosper's hack
        for (std::uint64_t a = (std::uint64_t(1) << k) - 1; a < (std::uint64_t(1) << n);) {
            seen.assign(std::size_t(1) << k, 0);
            std::size_t distinct = 0;
            for (auto m : ms) {
                std::size_t t = 0, j = 0;
                for (std::uint64_t r = a; r; r &= r - 1, ++j)
                    if (m & r & -r) t |= std::size_t(1) << j;
                if (!seen[t]) {
                    seen[t] = 1;
                    if (++distinct == seen.size()) break;
                }
            }
            if (distinct == seen.size()) return k;
            std::uint64_t c = a & -a, r = a + c;
            a = (((r ^ a) >> 2) / c) | r;
        }
    }
    return 0;
}

Family family_union(const Family& a, const Family& b) {
    if (a.width() != b.width()) throw Error(ErrorKind::BaseMismatch, "families over different bases");
    std::vector<Subset> ms(a.members());
    ms.insert(ms.end(), b.begin(), b.end());
    return Family(a.base(), std::move(ms));
}

Family family_intersection(const Family& a, const Family& b) {
    if (a.width() != b.width()) throw Error(ErrorKind::BaseMismatch, "families over different bases");
    std::vector<Subset> ms;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(ms));
    return Family(a.base(), std::move(ms));
}

bool is_subfamily(const Family& sub, const Family& sup) {
    if (sub.width() != sup.width()) throw Error(ErrorKind::BaseMismatch, "families over different bases");
    return std::includes(sup.begin(), sup.end(), sub.begin(), sub.end());
}

}  // namespace teamdim::setfam
