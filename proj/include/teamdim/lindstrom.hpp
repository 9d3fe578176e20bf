#pragma once

#include "teamdim/error.hpp"
#include "teamdim/family.hpp"
#include "teamdim/kripke.hpp"

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace teamdim::logic {

// Isomorphism-closed class of (M, R), R ⊆ M^r. R is a subset of M^r coded
// with the first coordinate least significant.
struct QuantifierClass {
    using Member = std::function<bool(std::size_t n, std::size_t r, const Subset& rel)>;

    std::string name;
    Member member;
    bool upward_closed = false;  // R ∈ K and R ⊆ R' imply R' ∈ K
    bool union_closed = false;   // unions of members are members

    bool contains(std::size_t n, std::size_t r, const Subset& rel) const { return member(n, r, rel); }
    bool contains_empty(std::size_t n, std::size_t r) const;
    // some member of K is a subset of w
    bool has_member_below(std::size_t n, std::size_t r, const Subset& w) const;
};

// exists, forall, ge<k>, majority (alias most), even
QuantifierClass find_class(const std::string& name);
std::vector<std::string> catalog_names();

void check_positions(const std::vector<std::size_t>& ell, std::size_t m);

// z = x ⊗_ell y: z[ell[j]] = y[j], the other slots take x in order
template <class T>
std::vector<T> shuffle(const std::vector<T>& xs, const std::vector<T>& ys, const std::vector<std::size_t>& ell) {
    if (ys.size() != ell.size()) throw Error(ErrorKind::IndexClash, "ell and y differ in length");
    const std::size_t m = xs.size() + ys.size();
    check_positions(ell, m);
    std::vector<T> z(m);
    std::vector<bool> taken(m, false);
    for (std::size_t j = 0; j < ell.size(); ++j) {
        z[ell[j]] = ys[j];
        taken[ell[j]] = true;
    }
    std::size_t i = 0;
    for (std::size_t k = 0; k < m; ++k)
        if (!taken[k]) z[k] = xs[i++];
    return z;
}

template <class T>
std::pair<std::vector<T>, std::vector<T>> unshuffle(const std::vector<T>& zs, const std::vector<std::size_t>& ell) {
    check_positions(ell, zs.size());
    std::vector<T> xs, ys;
    std::vector<bool> taken(zs.size(), false);
    for (auto l : ell) {
        ys.push_back(zs[l]);
        taken[l] = true;
    }
    for (std::size_t k = 0; k < zs.size(); ++k)
        if (!taken[k]) xs.push_back(zs[k]);
    return {xs, ys};
}

// fibres S[a] for every a ∈ M^{m-r}; index = code of a
std::vector<Subset> fibres(const Subset& s, const std::vector<std::size_t>& ell, std::size_t n, std::size_t m);

// π^p_{K,ell}(S), or nullopt when S is not proper
std::optional<Subset> proper_projection(const Subset& s, const QuantifierClass& k, const std::vector<std::size_t>& ell,
                                        std::size_t n, std::size_t m);

// Δ_{K,ell}. When (M,∅) ∈ K the result is the up-closure of the supports of the
// sets all of whose nonempty fibres lie in K.
Family lindstrom_apply(const QuantifierClass& k, const std::vector<std::size_t>& ell, const Family& f, std::size_t n,
                       std::size_t m);

// the same operator as a Kripke relation between P(M^{m-r}) and P(M^m)
kripke::Relation lindstrom_relation(const QuantifierClass& k, const std::vector<std::size_t>& ell, std::size_t n,
                                    std::size_t m);

}  // namespace teamdim::logic
