#include "teamdim/atomcat.hpp"
#include "teamdim/error.hpp"

#include <bit>
#include <functional>

namespace teamdim::atomcat {

namespace {

std::size_t checked_base(std::size_t w) {
    if (w > kDenseLimit) throw Error(ErrorKind::CapExceeded, "product base of " + std::to_string(w) + " elements");
    return w;
}

std::size_t ipow(std::size_t b, std::size_t e) {
    std::size_t p = 1;
    for (std::size_t i = 0; i < e; ++i) {
        if (p > (std::size_t(1) << 40) / std::max<std::size_t>(b, 1))
            throw Error(ErrorKind::CapExceeded, "size overflows");
        p *= b;
    }
    return p;
}

BigInt big_pow(const BigInt& b, std::size_t e) {
    BigInt p = 1;
    for (std::size_t i = 0; i < e; ++i) p *= b;
    return p;
}

// members built by choosing one option per block: the product of the option lists
Family product_of_choices(std::size_t width, const std::vector<std::vector<std::uint64_t>>& blocks) {
    std::vector<std::uint64_t> masks{0};
    for (const auto& opts : blocks) {
        std::vector<std::uint64_t> next;
        next.reserve(masks.size() * opts.size());
        for (auto m : masks)
            for (auto o : opts) next.push_back(m | o);
        masks = std::move(next);
    }
    return Family::from_masks(width, masks);
}

Family filter_masks(std::size_t width, const std::function<bool(std::uint64_t)>& keep) {
    std::vector<std::uint64_t> masks;
    for (std::uint64_t m = 0; m < (std::uint64_t(1) << width); ++m)
        if (keep(m)) masks.push_back(m);
    return Family::from_masks(width, masks);
}

// dom and rg of R ⊆ X×X as bitmasks over X
std::pair<std::uint64_t, std::uint64_t> dom_rg(std::uint64_t rel, std::size_t l) {
    std::uint64_t dom = 0, rg = 0;
    for (std::size_t x = 0; x < l; ++x)
        for (std::size_t y = 0; y < l; ++y)
            if ((rel >> (x * l + y)) & 1u) {
                dom |= std::uint64_t(1) << x;
                rg |= std::uint64_t(1) << y;
            }
    return {dom, rg};
}

// masks of A × B inside a block of X×Y starting at bit `offset`
std::vector<std::uint64_t> rectangles(std::size_t l, std::size_t r, std::size_t offset, std::size_t stride) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t a = 0; a < (std::uint64_t(1) << l); ++a)
        for (std::uint64_t b = 0; b < (std::uint64_t(1) << r); ++b) {
            std::uint64_t m = 0;
            for (std::size_t x = 0; x < l; ++x)
                for (std::size_t y = 0; y < r; ++y)
                    if (((a >> x) & 1u) && ((b >> y) & 1u)) m |= std::uint64_t(1) << (offset + (x * r + y) * stride);
            out.push_back(m);
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

const char* to_string(TableFamily t) {
    switch (t) {
    case TableFamily::mappings: return "F";
    case TableFamily::exclusion: return "X";
    case TableFamily::inclusion: return "Iinc";
    case TableFamily::anonymous: return "Y";
    case TableFamily::products: return "Iind";
    }
    return "?";
}

std::vector<TableFamily> all_table_families() {
    return {TableFamily::mappings, TableFamily::exclusion, TableFamily::inclusion, TableFamily::anonymous,
            TableFamily::products};
}

Family mapping_family(std::size_t l, std::size_t r) {
    const auto w = checked_base(l * r);
    std::vector<std::vector<std::uint64_t>> blocks(l);
    for (std::size_t x = 0; x < l; ++x) {
        blocks[x].push_back(0);
        for (std::size_t y = 0; y < r; ++y) blocks[x].push_back(std::uint64_t(1) << (x * r + y));
    }
    return product_of_choices(w, blocks);
}

Family exclusion_family(std::size_t l) {
    const auto w = checked_base(l * l);
    return filter_masks(w, [l](std::uint64_t m) {
        auto [d, g] = dom_rg(m, l);
        return (d & g) == 0;
    });
}

Family inclusion_family(std::size_t l) {
    const auto w = checked_base(l * l);
    return filter_masks(w, [l](std::uint64_t m) {
        auto [d, g] = dom_rg(m, l);
        return (d & ~g) == 0;
    });
}

Family anonymous_family(std::size_t l, std::size_t r) {
    const auto w = checked_base(l * r);
    std::vector<std::vector<std::uint64_t>> blocks(l);
    for (std::size_t x = 0; x < l; ++x)
        for (std::uint64_t ys = 0; ys < (std::uint64_t(1) << r); ++ys)
            if (std::popcount(ys) != 1) blocks[x].push_back(ys << (x * r));
    return product_of_choices(w, blocks);
}

Family product_family(std::size_t l, std::size_t r) {
    const auto w = checked_base(l * r);
    return Family::from_masks(w, rectangles(l, r, 0, 1));
}

Family cond_product_family(std::size_t l, std::size_t r, std::size_t s) {
    const auto w = checked_base(l * r * s);
    // element (x, y, c) sits at (x·r + y)·s + c
    std::vector<std::vector<std::uint64_t>> blocks;
    for (std::size_t c = 0; c < s; ++c) blocks.push_back(rectangles(l, r, c, s));
    return product_of_choices(w, blocks);
}

Family even_family(std::size_t size) {
    return filter_masks(checked_base(size), [](std::uint64_t m) { return std::popcount(m) % 2 == 0; });
}

Family half_family(std::size_t size) {
    return filter_masks(checked_base(size), [size](std::uint64_t m) { return 2 * std::size_t(std::popcount(m)) <= size; });
}

Family table_family(TableFamily t, std::size_t l, std::size_t r) {
    switch (t) {
    case TableFamily::mappings: return mapping_family(l, r);
    case TableFamily::exclusion: return exclusion_family(l);
    case TableFamily::inclusion: return inclusion_family(l);
    case TableFamily::anonymous: return anonymous_family(l, r);
    case TableFamily::products: return product_family(l, r);
    }
    throw Error(ErrorKind::Input, "unknown family");
}

BigInt binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    BigInt c = 1;
    for (std::size_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

std::string DimValue::to_string() const {
    if (is_exact()) return lo.str();
    return "[" + lo.str() + "," + hi.str() + "]";
}

DimFormulaResult table_dims(TableFamily t, std::size_t l, std::size_t r) {
    const BigInt two = 2;
    switch (t) {
    case TableFamily::mappings: {
        auto v = big_pow(r, l);
        return {DimValue::exact(v), DimValue::exact(1), DimValue::exact(v)};
    }
    case TableFamily::exclusion: {
        BigInt v = big_pow(two, l) - 2;
        return {DimValue::exact(v), DimValue::exact(1), DimValue::exact(v)};
    }
    case TableFamily::inclusion: {
        BigInt sum = 1;
        for (std::size_t k = 2; k <= l; ++k) sum += binomial(l, k) * big_pow(k, k);
        return {DimValue::exact(big_pow(two, l) - l), DimValue::exact(sum), DimValue::exact(sum)};
    }
    case TableFamily::anonymous: {
        BigInt sum = 0;
        const BigInt pairs = binomial(r, 2);
        for (std::size_t k = 0; k <= l; ++k) sum += binomial(l, k) * big_pow(pairs, k);
        return {DimValue::exact(big_pow(two, l)), DimValue::exact(sum), DimValue::exact(sum)};
    }
    case TableFamily::products: {
        BigInt p = (big_pow(two, l) - l - 1) * (big_pow(two, r) - r - 1);
        return {DimValue::exact(p + l + r), DimValue::exact(p + 1), DimValue::exact(p + l + r)};
    }
    }
    throw Error(ErrorKind::Input, "unknown family");
}

const char* to_string(AtomKind k) {
    switch (k) {
    case AtomKind::dep: return "dep";
    case AtomKind::exc: return "exc";
    case AtomKind::inc: return "inc";
    case AtomKind::ano: return "ano";
    case AtomKind::pure_ind: return "ind";
    case AtomKind::cond_ind: return "cind";
    case AtomKind::even: return "even";
    case AtomKind::half: return "half";
    }
    return "?";
}

AtomKind parse_atom_kind(const std::string& s) {
    for (auto k : {AtomKind::dep, AtomKind::exc, AtomKind::inc, AtomKind::ano, AtomKind::pure_ind, AtomKind::cond_ind,
                   AtomKind::even, AtomKind::half})
        if (s == to_string(k)) return k;
    if (s == "pureInd" || s == "pure_ind") return AtomKind::pure_ind;
    if (s == "condInd" || s == "cond_ind") return AtomKind::cond_ind;
    throw Error(ErrorKind::Input, "unknown atom kind " + s);
}

namespace {

void check_spec(const AtomSpec& a) {
    if (a.n < 2) throw Error(ErrorKind::Input, "universe size must be at least 2");
    if (a.m == 0) throw Error(ErrorKind::Input, "m must be positive");
    if ((a.kind == AtomKind::pure_ind || a.kind == AtomKind::cond_ind) && a.k == 0)
        throw Error(ErrorKind::Input, "k must be positive");
    if (a.kind == AtomKind::cond_ind && a.s == 0) throw Error(ErrorKind::Input, "s must be positive");
}

std::vector<std::string> names(const char* stem, std::size_t count) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(count == 1 ? stem : stem + std::to_string(i));
    return out;
}

std::string join(const std::vector<std::string>& vs) {
    std::string out;
    for (const auto& v : vs) out += (out.empty() ? "" : " ") + v;
    return out;
}

}  // namespace

std::vector<std::string> atom_variables(const AtomSpec& a) {
    check_spec(a);
    auto xs = names("x", a.m);
    switch (a.kind) {
    case AtomKind::dep:
    case AtomKind::ano:
        xs.push_back("y");
        return xs;
    case AtomKind::exc:
    case AtomKind::inc: {
        auto ys = names("y", a.m);
        xs.insert(xs.end(), ys.begin(), ys.end());
        return xs;
    }
    case AtomKind::pure_ind: {
        auto ys = names("y", a.k);
        xs.insert(xs.end(), ys.begin(), ys.end());
        return xs;
    }
    case AtomKind::cond_ind: {
        auto zs = names("z", a.s), ys = names("y", a.k);
        xs.insert(xs.end(), zs.begin(), zs.end());
        xs.insert(xs.end(), ys.begin(), ys.end());
        return xs;
    }
    case AtomKind::even:
    case AtomKind::half:
        return xs;
    }
    return xs;
}

std::string atom_formula(const AtomSpec& a) {
    check_spec(a);
    auto xs = join(names("x", a.m));
    switch (a.kind) {
    case AtomKind::dep: return "dep(" + xs + " ; y)";
    case AtomKind::ano: return "ano(" + xs + " ; y)";
    case AtomKind::exc: return "exc(" + xs + " ; " + join(names("y", a.m)) + ")";
    case AtomKind::inc: return "inc(" + xs + " ; " + join(names("y", a.m)) + ")";
    case AtomKind::pure_ind: return "ind(" + xs + " ;; " + join(names("y", a.k)) + ")";
    case AtomKind::cond_ind:
        return "ind(" + xs + " ; " + join(names("z", a.s)) + " ; " + join(names("y", a.k)) + ")";
    case AtomKind::even: return "even(" + xs + ")";
    case AtomKind::half: return "half(" + xs + ")";
    }
    return "";
}

std::vector<std::vector<std::size_t>> atom_groups(const AtomSpec& a) {
    check_spec(a);
    auto range = [](std::size_t from, std::size_t count) {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < count; ++i) out.push_back(from + i);
        return out;
    };
    switch (a.kind) {
    case AtomKind::dep:
    case AtomKind::ano: return {range(0, a.m), range(a.m, 1)};
    case AtomKind::exc:
    case AtomKind::inc: return {range(0, a.m), range(a.m, a.m)};
    case AtomKind::pure_ind: return {range(0, a.m), range(a.m, a.k)};
    // product order X×Y×Z, team order x z y
    case AtomKind::cond_ind: return {range(0, a.m), range(a.m + a.s, a.k), range(a.m, a.s)};
    case AtomKind::even:
    case AtomKind::half: return {range(0, a.m)};
    }
    return {};
}

std::size_t base_size(const AtomSpec& a) {
    check_spec(a);
    return ipow(a.n, atom_variables(a).size());
}

Family gen_family(const AtomSpec& a) {
    check_spec(a);
    checked_base(base_size(a));
    const std::size_t xm = ipow(a.n, a.m);
    switch (a.kind) {
    case AtomKind::dep: return mapping_family(xm, a.n);
    case AtomKind::exc: return exclusion_family(xm);
    case AtomKind::inc: return inclusion_family(xm);
    case AtomKind::ano: return anonymous_family(xm, a.n);
    case AtomKind::pure_ind: return product_family(xm, ipow(a.n, a.k));
    case AtomKind::cond_ind: return cond_product_family(xm, ipow(a.n, a.k), ipow(a.n, a.s));
    case AtomKind::even: return even_family(xm);
    case AtomKind::half: return half_family(xm);
    }
    throw Error(ErrorKind::Input, "unknown atom kind");
}

DimFormulaResult closed_form_dims(const AtomSpec& a) {
    check_spec(a);
    const std::size_t xm = ipow(a.n, a.m);
    const BigInt two = 2;
    switch (a.kind) {
    case AtomKind::dep: return table_dims(TableFamily::mappings, xm, a.n);
    case AtomKind::exc: return table_dims(TableFamily::exclusion, xm, 0);
    case AtomKind::inc: return table_dims(TableFamily::inclusion, xm, 0);
    case AtomKind::ano: return table_dims(TableFamily::anonymous, xm, a.n);
    case AtomKind::pure_ind: return table_dims(TableFamily::products, xm, ipow(a.n, a.k));
    case AtomKind::cond_ind: {
        const std::size_t yk = ipow(a.n, a.k), zs = ipow(a.n, a.s);
        BigInt p = (big_pow(two, xm) - xm - 1) * (big_pow(two, yk) - yk - 1);
        const BigInt up = p + xm + yk, down = p + 1;
        return {DimValue{up, big_pow(up, zs)}, DimValue{down, big_pow(down, zs)}, DimValue{up, big_pow(up, zs)}};
    }
    case AtomKind::even: {
        auto v = big_pow(two, xm - 1);
        return {DimValue::exact(v), DimValue::exact(v), DimValue::exact(v)};
    }
    case AtomKind::half: {
        auto v = binomial(xm, xm / 2);
        return {DimValue::exact(v), DimValue::exact(1), DimValue::exact(v)};
    }
    }
    throw Error(ErrorKind::Input, "unknown atom kind");
}

GrowthLabels growth_label(const AtomSpec& a) {
    check_spec(a);
    auto E = [](std::size_t k) { return "E_" + std::to_string(k); };
    auto F = [](std::size_t k) { return "F_" + std::to_string(k); };
    switch (a.kind) {
    case AtomKind::dep: return {F(a.m), E(0), F(a.m)};
    case AtomKind::exc: return {E(a.m), E(0), E(a.m)};
    case AtomKind::inc: return {E(a.m), F(a.m), F(a.m)};
    case AtomKind::ano: return {E(a.m), F(0), E(a.m)};
    case AtomKind::pure_ind: return {E(a.m + a.k), E(a.m + a.k), E(a.m + a.k)};
    case AtomKind::cond_ind: return {E(a.m + a.k + a.s), E(a.m + a.k + a.s), E(a.m + a.k + a.s)};
    case AtomKind::even: return {E(a.m), E(a.m), E(a.m)};
    case AtomKind::half: return {E(a.m), E(0), E(a.m)};
    }
    return {};
}

Family team_to_product(const Family& f, std::size_t n, std::size_t vars,
                       const std::vector<std::vector<std::size_t>>& groups) {
    const std::size_t width = ipow(n, vars);
    if (f.width() != width) throw Error(ErrorKind::BaseMismatch, "family is not over M^m");
    std::vector<std::size_t> sizes;
    std::size_t covered = 0;
    for (const auto& g : groups) {
        sizes.push_back(ipow(n, g.size()));
        covered += g.size();
    }
    if (covered != vars) throw Error(ErrorKind::IndexClash, "groups do not partition the columns");
    std::vector<std::size_t> image(width);
    for (std::size_t code = 0; code < width; ++code) {
        std::vector<std::size_t> digit(vars);
        for (std::size_t i = 0, c = code; i < vars; ++i, c /= n) digit[i] = c % n;
        std::size_t idx = 0;
        for (std::size_t j = 0; j < groups.size(); ++j) {
            std::size_t part = 0, w = 1;
            for (auto col : groups[j]) {
                part += digit.at(col) * w;
                w *= n;
            }
            idx = idx * sizes[j] + part;
        }
        image[code] = idx;
    }
    std::vector<Subset> out;
    for (const auto& s : f) {
        Subset t(width);
        for (auto e : s.elements()) t.set(image[e]);
        out.push_back(t);
    }
    return Family(BaseSet(width), std::move(out));
}

}  // namespace teamdim::atomcat
