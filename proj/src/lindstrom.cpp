#include "teamdim/lindstrom.hpp"
#include "teamdim/setfam.hpp"
#include "teamdim/structure.hpp"

#include <charconv>

namespace teamdim::logic {

bool QuantifierClass::contains_empty(std::size_t n, std::size_t r) const {
    return member(n, r, Subset(power(n, r)));
}

bool QuantifierClass::has_member_below(std::size_t n, std::size_t r, const Subset& w) const {
    if (upward_closed) return member(n, r, w);
    auto elems = w.elements();
    if (elems.size() > 20) throw Error(ErrorKind::CapExceeded, "too many candidate tuples for a quantifier class");
    for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << elems.size()); ++bits) {
        Subset s(w.width());
        for (std::size_t j = 0; j < elems.size(); ++j)
            if ((bits >> j) & 1u) s.set(elems[j]);
        if (member(n, r, s)) return true;
    }
    return false;
}

QuantifierClass find_class(const std::string& name) {
    QuantifierClass k;
    k.name = name;
    if (name == "exists") {
        k.member = [](std::size_t, std::size_t, const Subset& s) { return s.any(); };
        k.upward_closed = k.union_closed = true;
    } else if (name == "forall") {
        k.member = [](std::size_t, std::size_t, const Subset& s) { return s.count() == s.width(); };
        k.upward_closed = k.union_closed = true;
    } else if (name == "majority" || name == "most") {
        k.member = [](std::size_t, std::size_t, const Subset& s) { return 2 * s.count() > s.width(); };
        k.upward_closed = k.union_closed = true;
    } else if (name == "even") {
        k.member = [](std::size_t, std::size_t, const Subset& s) { return s.count() % 2 == 0; };
    } else if (name.size() > 2 && name.compare(0, 2, "ge") == 0) {
        std::size_t t = 0;
        auto [p, ec] = std::from_chars(name.data() + 2, name.data() + name.size(), t);
        if (ec != std::errc() || p != name.data() + name.size())
            throw Error(ErrorKind::Input, "unknown quantifier class " + name);
        k.member = [t](std::size_t, std::size_t, const Subset& s) { return s.count() >= t; };
        k.upward_closed = k.union_closed = true;
    } else {
        throw Error(ErrorKind::Input, "unknown quantifier class " + name);
    }
    return k;
}

std::vector<std::string> catalog_names() { return {"exists", "forall", "ge<k>", "majority", "most", "even"}; }

void check_positions(const std::vector<std::size_t>& ell, std::size_t m) {
    std::vector<bool> seen(m, false);
    for (auto l : ell) {
        if (l >= m) throw Error(ErrorKind::IndexClash, "position " + std::to_string(l) + " out of range");
        if (seen[l]) throw Error(ErrorKind::IndexClash, "position " + std::to_string(l) + " repeated");
        seen[l] = true;
    }
}

std::vector<Subset> fibres(const Subset& s, const std::vector<std::size_t>& ell, std::size_t n, std::size_t m) {
    check_positions(ell, m);
    const std::size_t r = ell.size();
    if (s.width() != power(n, m)) throw Error(ErrorKind::BaseMismatch, "team is not over M^m");
    std::vector<Subset> out(power(n, m - r), Subset(power(n, r)));
    for (auto c : s.elements()) {
        auto [a, b] = unshuffle(decode(c, n, m), ell);
        out[encode(a, n)].set(encode(b, n));
    }
    return out;
}

std::optional<Subset> proper_projection(const Subset& s, const QuantifierClass& k, const std::vector<std::size_t>& ell,
                                        std::size_t n, std::size_t m) {
    auto fs = fibres(s, ell, n, m);
    const std::size_t r = ell.size();
    Subset pi(fs.size());
    for (std::size_t a = 0; a < fs.size(); ++a) {
        bool in = k.contains(n, r, fs[a]);
        if (in) pi.set(a);
        if (!in && fs[a].any()) return std::nullopt;
    }
    return pi;
}

namespace {

// support of s when every nonempty fibre is in K
std::optional<Subset> support_if_fibres_in(const Subset& s, const QuantifierClass& k,
                                           const std::vector<std::size_t>& ell, std::size_t n, std::size_t m) {
    auto fs = fibres(s, ell, n, m);
    Subset sup(fs.size());
    for (std::size_t a = 0; a < fs.size(); ++a) {
        if (fs[a].none()) continue;
        if (!k.contains(n, ell.size(), fs[a])) return std::nullopt;
        sup.set(a);
    }
    return sup;
}

}  // namespace

Family lindstrom_apply(const QuantifierClass& k, const std::vector<std::size_t>& ell, const Family& f, std::size_t n,
                       std::size_t m) {
    check_positions(ell, m);
    if (f.width() != power(n, m)) throw Error(ErrorKind::BaseMismatch, "family is not over M^m");
    const std::size_t out_width = power(n, m - ell.size());
    if (out_width > kDenseLimit) throw Error(ErrorKind::CapExceeded, "projected base too large");
    std::vector<Subset> out;
    if (!k.contains_empty(n, ell.size())) {
        for (const auto& a : f)
            if (auto p = proper_projection(a, k, ell, n, m)) out.push_back(*p);
        return Family(BaseSet(out_width), std::move(out));
    }
    for (const auto& a : f)
        if (auto p = support_if_fibres_in(a, k, ell, n, m)) out.push_back(*p);
    auto up = setfam::detail::up_closure(Family(BaseSet(out_width), std::move(out)));
    std::vector<Subset> closed;
    for (std::uint64_t mask = 0; mask < up.size(); ++mask)
        if (up[mask]) closed.push_back(Subset::from_mask(out_width, mask));
    return Family(BaseSet(out_width), std::move(closed));
}

kripke::Relation lindstrom_relation(const QuantifierClass& k, const std::vector<std::size_t>& ell, std::size_t n,
                                    std::size_t m) {
    check_positions(ell, m);
    const std::size_t src = power(n, m), tgt = power(n, m - ell.size());
    const bool empty_in = k.contains_empty(n, ell.size());
    auto pred = [=](const Subset& out, const std::vector<Subset>& args) {
        if (!empty_in) {
            auto p = proper_projection(args[0], k, ell, n, m);
            return p && *p == out;
        }
        auto s = support_if_fibres_in(args[0], k, ell, n, m);
        return s && s->is_subset_of(out);
    };
    auto image = [=](const std::vector<Subset>& args) {
        std::vector<Subset> outs;
        if (!empty_in) {
            if (auto p = proper_projection(args[0], k, ell, n, m)) outs.push_back(*p);
            return outs;
        }
        auto s = support_if_fibres_in(args[0], k, ell, n, m);
        if (!s) return outs;
        for (const auto& b : setfam::interval(*s, Subset::full(tgt))) outs.push_back(b);
        return outs;
    };
    return kripke::Relation("Q-" + k.name, 1, src, tgt, pred, image);
}

}  // namespace teamdim::logic
