#include "teamdim/subset.hpp"
#include "teamdim/error.hpp"

#include <bit>

namespace teamdim {

const char* to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::BaseMismatch: return "base-mismatch";
    case ErrorKind::NotAMember: return "not-a-member";
    case ErrorKind::NotASubfamily: return "not-a-subfamily";
    case ErrorKind::EmptyFamily: return "empty-family";
    case ErrorKind::UndefinedChar: return "undefined-char";
    case ErrorKind::CapExceeded: return "cap-exceeded";
    case ErrorKind::Budget: return "budget";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::UnboundVariable: return "unbound-variable";
    case ErrorKind::Arity: return "arity";
    case ErrorKind::IndexClash: return "index-clash";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Input: return "input";
    }
    return "error";
}

Subset::Subset(std::size_t width) : width_(width), words_((width + 63) / 64, 0) {}

Subset Subset::from_mask(std::size_t width, std::uint64_t mask) {
    Subset s(width);
    if (width == 0) return s;
    s.words_[0] = mask;
    s.trim();
    return s;
}

Subset Subset::from_elements(std::size_t width, const std::vector<std::size_t>& elems) {
    Subset s(width);
    for (auto e : elems) {
        if (e >= width) throw Error(ErrorKind::Input, "element " + std::to_string(e) + " out of range");
        s.set(e);
    }
    return s;
}

Subset Subset::from_elements(std::size_t width, std::initializer_list<std::size_t> elems) {
    return from_elements(width, std::vector<std::size_t>(elems));
}

Subset Subset::full(std::size_t width) {
    Subset s(width);
    for (auto& w : s.words_) w = ~std::uint64_t(0);
    s.trim();
    return s;
}

void Subset::trim() {
    if (width_ % 64 != 0 && !words_.empty())
        words_.back() &= (std::uint64_t(1) << (width_ % 64)) - 1;
}

std::size_t Subset::count() const {
    std::size_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
}

bool Subset::none() const {
    for (auto w : words_)
        if (w) return false;
    return true;
}

static void check_width(const Subset& a, const Subset& b) {
    if (a.width() != b.width())
        throw Error(ErrorKind::BaseMismatch, "subsets over different bases");
}

bool Subset::is_subset_of(const Subset& o) const {
    check_width(*this, o);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~o.words_[i]) return false;
    return true;
}

bool Subset::intersects(const Subset& o) const {
    check_width(*this, o);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & o.words_[i]) return true;
    return false;
}

Subset& Subset::operator|=(const Subset& o) {
    check_width(*this, o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
}

Subset& Subset::operator&=(const Subset& o) {
    check_width(*this, o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
}

Subset& Subset::operator^=(const Subset& o) {
    check_width(*this, o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
}

Subset& Subset::operator-=(const Subset& o) {
    check_width(*this, o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
}

Subset Subset::complement() const {
    Subset r(*this);
    for (auto& w : r.words_) w = ~w;
    r.trim();
    return r;
}

std::vector<std::size_t> Subset::elements() const {
    std::vector<std::size_t> out;
    for (std::size_t i = first(); i < width_; i = next(i + 1)) out.push_back(i);
    return out;
}

std::size_t Subset::next(std::size_t from) const {
    if (from >= width_) return width_;
    std::size_t wi = from >> 6;
    std::uint64_t w = words_[wi] & (~std::uint64_t(0) << (from & 63));
    while (true) {
        if (w) return wi * 64 + std::countr_zero(w);
        if (++wi >= words_.size()) return width_;
        w = words_[wi];
    }
}

std::uint64_t Subset::to_mask() const {
    if (width_ > 64) throw Error(ErrorKind::CapExceeded, "subset wider than 64 bits");
    return words_.empty() ? 0 : words_[0];
}

std::size_t Subset::hash() const {
    std::size_t h = width_ * 0x9e3779b97f4a7c15ULL;
    for (auto w : words_) h = (h ^ w) * 0x100000001b3ULL + (h >> 29);
    return h;
}

std::string Subset::to_string() const {
    std::string s = "{";
    bool first_elem = true;
    for (auto e : elements()) {
        if (!first_elem) s += ",";
        s += std::to_string(e);
        first_elem = false;
    }
    return s + "}";
}

std::strong_ordering operator<=>(const Subset& a, const Subset& b) {
    if (a.width_ != b.width_) return a.width_ <=> b.width_;
    for (std::size_t i = a.words_.size(); i-- > 0;)
        if (a.words_[i] != b.words_[i]) return a.words_[i] <=> b.words_[i];
    return std::strong_ordering::equal;
}

}  // namespace teamdim
