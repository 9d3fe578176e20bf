#include "teamdim/family.hpp"
#include "teamdim/error.hpp"

#include <algorithm>
#include <set>

namespace teamdim {

BaseSet::BaseSet(std::size_t n, std::vector<std::string> names) : size(n), labels(std::move(names)) {
    if (!labels.empty()) {
        if (labels.size() != n) throw Error(ErrorKind::Input, "label count does not match base size");
        std::set<std::string> seen(labels.begin(), labels.end());
        if (seen.size() != labels.size()) throw Error(ErrorKind::Input, "duplicate base labels");
    }
}

std::string BaseSet::label(std::size_t i) const {
    return labels.empty() ? std::to_string(i) : labels[i];
}

std::optional<Interval> Interval::make(const Subset& lower, const Subset& upper) {
    if (!lower.is_subset_of(upper)) return std::nullopt;
    return Interval{lower, upper};
}

Family Interval::members() const {
    std::vector<std::size_t> free = (upper - lower).elements();
    if (free.size() > 30) throw Error(ErrorKind::CapExceeded, "interval too large to enumerate");
    std::vector<Subset> out;
    out.reserve(std::size_t(1) << free.size());
    for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << free.size()); ++bits) {
        Subset s = lower;
        for (std::size_t j = 0; j < free.size(); ++j)
            if ((bits >> j) & 1u) s.set(free[j]);
        out.push_back(std::move(s));
    }
    return Family(BaseSet(lower.width()), std::move(out));
}

Family::Family(BaseSet base) : base_(std::move(base)) { build_index(); }

Family::Family(BaseSet base, std::vector<Subset> members) : base_(std::move(base)), members_(std::move(members)) {
    for (const auto& m : members_)
        if (m.width() != base_.size) throw Error(ErrorKind::BaseMismatch, "member width differs from base size");
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    build_index();
}

Family Family::without_duplicates(BaseSet base, std::vector<Subset> members) {
    std::size_t before = members.size();
    Family f(std::move(base), std::move(members));
    if (f.size() != before) throw Error(ErrorKind::Input, "duplicate member");
    return f;
}

Family Family::from_masks(std::size_t width, const std::vector<std::uint64_t>& masks) {
    std::vector<Subset> ms;
    ms.reserve(masks.size());
    for (auto m : masks) ms.push_back(Subset::from_mask(width, m));
    return Family(BaseSet(width), std::move(ms));
}

void Family::build_index() {
    if (dense()) {
        std::size_t bits = std::size_t(1) << base_.size;
        dense_.assign((bits + 63) / 64, 0);
        for (const auto& m : members_) {
            auto v = m.to_mask();
            dense_[v >> 6] |= std::uint64_t(1) << (v & 63);
        }
    } else {
        sparse_.insert(members_.begin(), members_.end());
    }
}

bool Family::contains(const Subset& s) const {
    if (s.width() != base_.size) throw Error(ErrorKind::BaseMismatch, "subset width differs from base size");
    if (dense()) return contains_mask(s.to_mask());
    return sparse_.count(s) != 0;
}

std::ptrdiff_t Family::index_of(const Subset& s) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), s);
    if (it == members_.end() || *it != s) return -1;
    return it - members_.begin();
}

std::vector<std::uint64_t> Family::masks() const {
    std::vector<std::uint64_t> out;
    out.reserve(members_.size());
    for (const auto& m : members_) out.push_back(m.to_mask());
    return out;
}

}  // namespace teamdim
