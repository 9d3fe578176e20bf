#include "teamdim/tensor.hpp"
#include "teamdim/error.hpp"

#include <array>
#include <unordered_set>
#include <utility>

namespace teamdim::tensor {

namespace {

struct Alias {
    const char* name;
    const char* bits;
};

// b00 b01 b10 b11
constexpr std::array<Alias, 16> kAliases{{
    {"false", "0000"},  {"and", "0001"},     {"minus", "0010"}, {"left", "0011"},
    {"rminus", "0100"}, {"right", "0101"},   {"xor", "0110"},   {"or", "0111"},
    {"nor", "1000"},    {"iff", "1001"},     {"nright", "1010"}, {"rimplies", "1011"},
    {"nleft", "1100"},  {"implies", "1101"}, {"nand", "1110"},  {"true", "1111"},
}};

}  // namespace

BoolOp2 BoolOp2::from_bits(const std::string& b) {
    if (b.size() != 4) throw Error(ErrorKind::Input, "operation table must have 4 bits: " + b);
    BoolOp2 op;
    for (std::size_t i = 0; i < 4; ++i) {
        if (b[i] != '0' && b[i] != '1') throw Error(ErrorKind::Input, "bad operation table: " + b);
        if (b[i] == '1') op.table |= std::uint8_t(1u << i);
    }
    return op;
}

BoolOp2 BoolOp2::parse(const std::string& s) {
    for (const auto& a : kAliases)
        if (s == a.name) return from_bits(a.bits);
    if (s == "xnor") return from_bits("1001");
    return from_bits(s);
}

std::string BoolOp2::bits() const {
    std::string s(4, '0');
    for (std::size_t i = 0; i < 4; ++i)
        if ((table >> i) & 1u) s[i] = '1';
    return s;
}

std::string BoolOp2::name() const {
    auto b = bits();
    for (const auto& a : kAliases)
        if (b == a.bits) return a.name;
    return b;
}

std::vector<BoolOp2> BoolOp2::all() {
    std::vector<BoolOp2> out;
    for (unsigned t = 0; t < 16; ++t) out.push_back(BoolOp2{std::uint8_t(t)});
    return out;
}

bool BoolOp2::associative() const {
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                if ((*this)((*this)(a, b), c) != (*this)(a, (*this)(b, c))) return false;
    return true;
}

char to_char(Kleene k) {
    return k == Kleene::zero ? '0' : k == Kleene::one ? '1' : 'u';
}

Kleene kleene_apply(BoolOp2 op, Kleene u, Kleene v) {
    auto values = [](Kleene k) {
        if (k == Kleene::zero) return std::pair<int, int>{0, 0};
        if (k == Kleene::one) return std::pair<int, int>{1, 1};
        return std::pair<int, int>{0, 1};
    };
    auto [u0, u1] = values(u);
    auto [v0, v1] = values(v);
    bool seen0 = false, seen1 = false;
    for (int a = u0; a <= u1; ++a)
        for (int b = v0; b <= v1; ++b) (op(a, b) ? seen1 : seen0) = true;
    if (seen0 && seen1) return Kleene::unknown;
    return seen1 ? Kleene::one : Kleene::zero;
}

KleeneChar char_function(const Family& f) {
    if (f.empty()) throw Error(ErrorKind::UndefinedChar, "characteristic function of the empty family");
    KleeneChar xi{f.width(), std::vector<Kleene>(f.width())};
    for (std::size_t x = 0; x < f.width(); ++x) {
        bool in = false, out = false;
        for (const auto& m : f) (m.test(x) ? in : out) = true;
        xi.values[x] = in && out ? Kleene::unknown : in ? Kleene::one : Kleene::zero;
    }
    return xi;
}

KleeneChar char_function(const Interval& iv) {
    KleeneChar xi{iv.lower.width(), std::vector<Kleene>(iv.lower.width())};
    for (std::size_t x = 0; x < xi.base; ++x)
        xi.values[x] = iv.lower.test(x) ? Kleene::one : iv.upper.test(x) ? Kleene::unknown : Kleene::zero;
    return xi;
}

static Subset combine(BoolOp2 op, const Subset& a, const Subset& b) {
    // word-parallel evaluation of the truth table
    Subset r(a.width());
    const Subset na = a.complement(), nb = b.complement();
    if (op(0, 0)) r |= na & nb;
    if (op(0, 1)) r |= na & b;
    if (op(1, 0)) r |= a & nb;
    if (op(1, 1)) r |= a & b;
    return r;
}

Family tensor_apply(BoolOp2 op, const Family& a, const Family& b) {
    if (a.width() != b.width()) throw Error(ErrorKind::BaseMismatch, "tensor operands over different bases");
    std::unordered_set<Subset, SubsetHash> seen;
    std::vector<Subset> out;
    for (const auto& x : a)
        for (const auto& y : b) {
            Subset c = combine(op, x, y);
            if (seen.insert(c).second) out.push_back(std::move(c));
        }
    return Family(a.base(), std::move(out));
}

Family tensor_negation(const Family& f) {
    std::vector<Subset> out;
    out.reserve(f.size());
    for (const auto& m : f) out.push_back(m.complement());
    return Family(f.base(), std::move(out));
}

Interval tensor_interval_apply(BoolOp2 op, const Interval& i, const Interval& j) {
    if (i.lower.width() != j.lower.width()) throw Error(ErrorKind::BaseMismatch, "intervals over different bases");
    auto xi = char_function(i), xj = char_function(j);
    Subset lo(xi.base), hi(xi.base);
    for (std::size_t x = 0; x < xi.base; ++x) {
        auto w = kleene_apply(op, xi.values[x], xj.values[x]);
        if (w == Kleene::one) lo.set(x);
        if (w != Kleene::zero) hi.set(x);
    }
    return Interval{lo, hi};
}

Family general_disjunction(const std::vector<Family>& parts) {
    std::size_t width = 0;
    for (const auto& p : parts) width += p.width();
    std::vector<Subset> acc{Subset(width)};
    std::size_t offset = 0;
    for (const auto& p : parts) {
        std::vector<Subset> next;
        for (const auto& s : acc)
            for (const auto& m : p) {
                Subset t = s;
                for (auto e : m.elements()) t.set(offset + e);
                next.push_back(std::move(t));
            }
        acc = std::move(next);
        offset += p.width();
    }
    return Family(BaseSet(width), std::move(acc));
}

}  // namespace teamdim::tensor
