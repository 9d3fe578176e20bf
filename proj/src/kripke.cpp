#include "teamdim/kripke.hpp"
#include "teamdim/error.hpp"
#include "teamdim/textio.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace teamdim::kripke {

Relation::Relation(std::string name, std::size_t arity, std::size_t source, std::size_t target, Predicate pred,
                   Image image)
    : name_(std::move(name)), arity_(arity), source_(source), target_(target), pred_(std::move(pred)),
      image_(std::move(image)) {}

Relation Relation::from_rows(std::string name, std::size_t arity, std::size_t source, std::size_t target,
                             std::vector<Row> rows) {
    for (const auto& row : rows) {
        if (row.args.size() != arity) throw Error(ErrorKind::Arity, "row arity differs from relation arity");
        if (row.out.width() != target) throw Error(ErrorKind::BaseMismatch, "row output over wrong base");
        for (const auto& a : row.args)
            if (a.width() != source) throw Error(ErrorKind::BaseMismatch, "row argument over wrong base");
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.out != b.out) return a.out < b.out;
        return a.args < b.args;
    });
    rows.erase(std::unique(rows.begin(), rows.end(),
                           [](const Row& a, const Row& b) { return a.out == b.out && a.args == b.args; }),
               rows.end());
    auto shared = std::make_shared<const std::vector<Row>>(std::move(rows));
    std::map<Subset, std::set<std::vector<Subset>>> index;
    for (const auto& row : *shared) index[row.out].insert(row.args);
    auto idx = std::make_shared<decltype(index)>(std::move(index));
    Relation r(
        std::move(name), arity, source, target,
        [idx](const Subset& out, const std::vector<Subset>& args) {
            auto it = idx->find(out);
            return it != idx->end() && it->second.count(args) != 0;
        });
    r.rows_ = shared;
    return r;
}

bool Relation::contains(const Subset& out, const std::vector<Subset>& args) const {
    if (args.size() != arity_) throw Error(ErrorKind::Arity, "wrong number of arguments for " + name_);
    return pred_(out, args);
}

const std::vector<Relation::Row>& Relation::rows() const {
    if (!rows_) throw Error(ErrorKind::Unsupported, "relation " + name_ + " has no explicit extension");
    return *rows_;
}

namespace {

void for_each_tuple(std::size_t arity, std::size_t source, auto&& fn) {
    const std::uint64_t per = std::uint64_t(1) << source;
    std::vector<Subset> args(arity, Subset(source));
    std::vector<std::uint64_t> digits(arity, 0);
    while (true) {
        for (std::size_t i = 0; i < arity; ++i) args[i] = Subset::from_mask(source, digits[i]);
        fn(args);
        std::size_t i = 0;
        while (i < arity && ++digits[i] == per) digits[i++] = 0;
        if (i == arity) break;
    }
}

// rows packed as (out mask, tuple bits); component i occupies bits [i|X|, (i+1)|X|)
struct Packed {
    std::size_t n = 0, x = 0, y = 0;
    std::vector<std::vector<std::uint64_t>> by_out;

    std::uint64_t comp(std::uint64_t t, std::size_t i) const {
        return (t >> (i * x)) & ((x == 64) ? ~std::uint64_t(0) : ((std::uint64_t(1) << x) - 1));
    }
};

Relation materialize_impl(const Relation& r);

Packed pack(const Relation& in) {
    const Relation r = in.has_rows() ? in : materialize_impl(in);
    if (r.target() > 16 || r.source() * r.arity() > 64)
        throw Error(ErrorKind::CapExceeded, "relation too large for explicit checks");
    Packed p;
    p.n = r.arity();
    p.x = r.source();
    p.y = r.target();
    p.by_out.resize(std::size_t(1) << p.y);
    for (const auto& row : r.rows()) {
        std::uint64_t t = 0;
        for (std::size_t i = 0; i < p.n; ++i) t |= row.args[i].to_mask() << (i * p.x);
        p.by_out[row.out.to_mask()].push_back(t);
    }
    for (auto& v : p.by_out) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    return p;
}

std::vector<std::vector<std::uint64_t>> local_closure(const std::vector<std::vector<std::uint64_t>>& singles,
                                                      std::size_t y) {
    std::vector<std::vector<std::uint64_t>> c(std::size_t(1) << y);
    c[0] = {0};
    for (std::size_t a = 1; a < c.size(); ++a) {
        std::size_t low = a & (~a + 1);
        std::size_t bit = std::size_t(std::countr_zero(low));
        std::vector<std::uint64_t> out;
        for (auto t : c[a & ~low])
            for (auto s : singles[bit]) out.push_back(t | s);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        c[a] = std::move(out);
    }
    return c;
}

Relation unpack(const std::string& name, const Packed& p) {
    std::vector<Relation::Row> rows;
    for (std::size_t b = 0; b < p.by_out.size(); ++b)
        for (auto t : p.by_out[b]) {
            Relation::Row row{Subset::from_mask(p.y, b), {}};
            for (std::size_t i = 0; i < p.n; ++i) row.args.push_back(Subset::from_mask(p.x, p.comp(t, i)));
            rows.push_back(std::move(row));
        }
    return Relation::from_rows(name, p.n, p.x, p.y, std::move(rows));
}

template <bool Sharp>
bool check_star(const Relation& r) {
    Packed p = pack(r);
    const std::size_t ny = p.by_out.size();
    for (std::size_t a = 0; a < ny; ++a)
        for (std::size_t b = 0; b < ny; ++b) {
            if (p.by_out[a].empty() || p.by_out[b].empty()) continue;
            const std::size_t u = a | b, core = a & b;
            for (auto ta : p.by_out[a])
                for (auto tb : p.by_out[b]) {
                    for (std::size_t c = u;; c = (c - 1) & u) {
                        bool in_hull = Sharp ? ((a & ~c) == 0 || (b & ~c) == 0)
                                             : ((core & ~c) == 0 && ((c & ~a) == 0 || (c & ~b) == 0));
                        if (in_hull) {
                            bool found = false;
                            for (auto tc : p.by_out[c]) {
                                bool ok = true;
                                for (std::size_t i = 0; i < p.n && ok; ++i) {
                                    auto ai = p.comp(ta, i), bi = p.comp(tb, i), ci = p.comp(tc, i);
                                    if (Sharp)
                                        ok = (ci & ~(ai | bi)) == 0 && ((ai & ~ci) == 0 || (bi & ~ci) == 0);
                                    else
                                        ok = ((ai & bi) & ~ci) == 0 && ((ci & ~ai) == 0 || (ci & ~bi) == 0);
                                }
                                if (ok) {
                                    found = true;
                                    break;
                                }
                            }
                            if (!found) return false;
                        }
                        if (c == 0) break;
                    }
                }
        }
    return true;
}

Relation materialize_impl(const Relation& r) {
    if (r.has_rows()) return r;
    if (r.target() + r.source() * r.arity() > 24)
        throw Error(ErrorKind::CapExceeded, "relation " + r.name() + " too large to materialize");
    std::vector<Relation::Row> rows;
    for_each_tuple(r.arity(), r.source(), [&](const std::vector<Subset>& args) {
        if (r.image()) {
            for (auto& out : r.image()(args)) rows.push_back({out, args});
        } else {
            for (std::uint64_t b = 0; b < (std::uint64_t(1) << r.target()); ++b) {
                Subset out = Subset::from_mask(r.target(), b);
                if (r.contains(out, args)) rows.push_back({out, args});
            }
        }
    });
    return Relation::from_rows(r.name(), r.arity(), r.source(), r.target(), std::move(rows));
}

}  // namespace

Relation materialize(const Relation& r) { return materialize_impl(r); }

Family apply(const Relation& r, const std::vector<Family>& args) {
    if (args.size() != r.arity()) throw Error(ErrorKind::Arity, "wrong number of arguments for " + r.name());
    for (const auto& a : args)
        if (a.width() != r.source()) throw Error(ErrorKind::BaseMismatch, "argument over wrong base for " + r.name());
    std::vector<Subset> out;
    if (r.has_rows()) {
        for (const auto& row : r.rows()) {
            bool ok = true;
            for (std::size_t i = 0; i < args.size() && ok; ++i) ok = args[i].contains(row.args[i]);
            if (ok) out.push_back(row.out);
        }
        return Family(BaseSet(r.target()), std::move(out));
    }
    for (const auto& a : args)
        if (a.empty()) return Family(BaseSet(r.target()));
    // odometer over member tuples
    std::vector<std::size_t> pos(args.size(), 0);
    std::vector<Subset> tuple(args.size());
    while (true) {
        for (std::size_t i = 0; i < args.size(); ++i) tuple[i] = args[i][pos[i]];
        if (r.image()) {
            for (auto& s : r.image()(tuple)) out.push_back(std::move(s));
        } else {
            if (r.target() > 24) throw Error(ErrorKind::CapExceeded, "target base too large to enumerate");
            for (std::uint64_t b = 0; b < (std::uint64_t(1) << r.target()); ++b) {
                Subset o = Subset::from_mask(r.target(), b);
                if (r.contains(o, tuple)) out.push_back(std::move(o));
            }
        }
        std::size_t i = 0;
        while (i < args.size() && ++pos[i] == args[i].size()) pos[i++] = 0;
        if (i == args.size()) break;
    }
    return Family(BaseSet(r.target()), std::move(out));
}

bool is_local(const Relation& r) {
    if (r.target() > 12) throw Error(ErrorKind::CapExceeded, "target base too large for the locality check");
    Packed p = pack(r);
    std::vector<std::vector<std::uint64_t>> singles(p.y);
    for (std::size_t a = 0; a < p.y; ++a) singles[a] = p.by_out[std::size_t(1) << a];
    auto closure = local_closure(singles, p.y);
    return closure == p.by_out;
}

bool is_separating(const Relation& r) {
    Packed p = pack(r);
    for (std::size_t a = 0; a < p.y; ++a)
        for (std::size_t b = a + 1; b < p.y; ++b)
            for (auto s : p.by_out[std::size_t(1) << a])
                for (auto t : p.by_out[std::size_t(1) << b])
                    if (s & t) return false;
    return true;
}

bool check_union_law(const Relation& r, const std::vector<std::vector<Family>>& parts) {
    if (parts.size() != r.arity()) throw Error(ErrorKind::Arity, "wrong number of argument partitions");
    std::vector<Family> unions;
    for (const auto& ps : parts) {
        Family u(BaseSet(r.source()));
        for (const auto& f : ps) {
            std::vector<Subset> ms(u.members());
            ms.insert(ms.end(), f.begin(), f.end());
            u = Family(BaseSet(r.source()), std::move(ms));
        }
        unions.push_back(std::move(u));
    }
    Family lhs = kripke::apply(r, unions);
    std::vector<Subset> rhs;
    for (const auto& ps : parts)
        if (ps.empty()) return lhs.empty();
    std::vector<std::size_t> pos(parts.size(), 0);
    while (true) {
        std::vector<Family> args;
        for (std::size_t i = 0; i < parts.size(); ++i) args.push_back(parts[i][pos[i]]);
        for (const auto& s : kripke::apply(r, args)) rhs.push_back(s);
        std::size_t i = 0;
        while (i < parts.size() && ++pos[i] == parts[i].size()) pos[i++] = 0;
        if (i == parts.size()) break;
    }
    return lhs == Family(BaseSet(r.target()), std::move(rhs));
}

bool check_star_sharp(const Relation& r) { return check_star<true>(r); }
bool check_star_flat(const Relation& r) { return check_star<false>(r); }

Relation intersection(std::size_t base) {
    return Relation(
        "intersection", 2, base, base,
        [](const Subset& out, const std::vector<Subset>& a) { return a[0] == out && a[1] == out; },
        [](const std::vector<Subset>& a) { return a[0] == a[1] ? std::vector<Subset>{a[0]} : std::vector<Subset>{}; });
}

Relation tensor_relation(tensor::BoolOp2 op, std::size_t base) {
    auto combine = [op](const Subset& a, const Subset& b) {
        Subset r(a.width());
        for (std::size_t x = 0; x < a.width(); ++x)
            if (op(a.test(x), b.test(x))) r.set(x);
        return r;
    };
    return Relation(
        "tensor-" + op.name(), 2, base, base,
        [combine](const Subset& out, const std::vector<Subset>& a) { return combine(a[0], a[1]) == out; },
        [combine](const std::vector<Subset>& a) { return std::vector<Subset>{combine(a[0], a[1])}; });
}

Relation negation(std::size_t base) {
    return Relation(
        "negation", 1, base, base,
        [](const Subset& out, const std::vector<Subset>& a) { return a[0].complement() == out; },
        [](const std::vector<Subset>& a) { return std::vector<Subset>{a[0].complement()}; });
}

Relation restricted_union(std::size_t base) {
    return Relation(
        "restricted-union", 2, base, base,
        [](const Subset& out, const std::vector<Subset>& a) {
            return (a[0] == out && a[1].none()) || (a[0].none() && a[1] == out);
        },
        [](const std::vector<Subset>& a) {
            std::vector<Subset> r;
            if (a[1].none()) r.push_back(a[0]);
            if (a[0].none() && a[1] != a[0]) r.push_back(a[1]);
            return r;
        });
}

static void check_onto(const std::vector<std::size_t>& f, std::size_t target) {
    std::vector<bool> hit(target, false);
    for (auto v : f) {
        if (v >= target) throw Error(ErrorKind::Input, "projection value out of range");
        hit[v] = true;
    }
    if (std::find(hit.begin(), hit.end(), false) != hit.end())
        throw Error(ErrorKind::Input, "projection map is not onto");
}

static Subset image_of(const std::vector<std::size_t>& f, std::size_t target, const Subset& a) {
    Subset out(target);
    for (auto e : a.elements()) out.set(f[e]);
    return out;
}

Relation projection(const std::vector<std::size_t>& f, std::size_t target) {
    check_onto(f, target);
    return Relation(
        "projection", 1, f.size(), target,
        [f, target](const Subset& out, const std::vector<Subset>& a) { return image_of(f, target, a[0]) == out; },
        [f, target](const std::vector<Subset>& a) { return std::vector<Subset>{image_of(f, target, a[0])}; });
}

Relation inverse_projection(const std::vector<std::size_t>& f, std::size_t target) {
    check_onto(f, target);
    const std::size_t xs = f.size();
    return Relation(
        "inverse-projection", 1, target, xs,
        [f, target](const Subset& out, const std::vector<Subset>& a) { return image_of(f, target, out) == a[0]; },
        [f, target, xs](const std::vector<Subset>& a) {
            std::vector<Subset> r;
            for (std::uint64_t m = 0; m < (std::uint64_t(1) << xs); ++m) {
                Subset s = Subset::from_mask(xs, m);
                if (image_of(f, target, s) == a[0]) r.push_back(std::move(s));
            }
            return r;
        });
}

Relation local_nonseparating_witness() {
    std::vector<Relation::Row> rows;
    Subset full = Subset::full(2);
    rows.push_back({Subset(2), {Subset(2)}});
    for (std::uint64_t y = 1; y < 4; ++y) rows.push_back({Subset::from_mask(2, y), {full}});
    return Relation::from_rows("local-nonseparating", 1, 2, 2, std::move(rows));
}

Relation random_local(std::mt19937_64& rng, std::size_t arity, std::size_t source, std::size_t target,
                      std::size_t max_tuples, bool separating) {
    if (target > 12 || source * arity > 64) throw Error(ErrorKind::CapExceeded, "random relation too large");
    Packed p;
    p.n = arity;
    p.x = source;
    p.y = target;
    // owner[i][x] = target element allowed to use source element x in component i
    std::vector<std::vector<std::size_t>> owner(arity, std::vector<std::size_t>(source));
    for (auto& row : owner)
        for (auto& o : row) o = std::uniform_int_distribution<std::size_t>(0, target)(rng);
    std::vector<std::vector<std::uint64_t>> singles(target);
    for (std::size_t a = 0; a < target; ++a) {
        std::size_t k = std::uniform_int_distribution<std::size_t>(0, max_tuples)(rng);
        for (std::size_t j = 0; j < k; ++j) {
            std::uint64_t t = 0;
            for (std::size_t i = 0; i < arity; ++i) {
                std::uint64_t allowed = 0;
                for (std::size_t x = 0; x < source; ++x)
                    if (!separating || owner[i][x] == a) allowed |= std::uint64_t(1) << x;
                std::uint64_t c = rng() & allowed;
                t |= c << (i * source);
            }
            singles[a].push_back(t);
        }
        std::sort(singles[a].begin(), singles[a].end());
        singles[a].erase(std::unique(singles[a].begin(), singles[a].end()), singles[a].end());
    }
    p.by_out = local_closure(singles, target);
    return unpack(separating ? "random-local-separating" : "random-local", p);
}

Relation parse_extension(const std::string& text, const std::string& name) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::size_t n = 0, x = 0, y = 0;
    bool header = false;
    std::vector<Relation::Row> rows;
    while (std::getline(in, line)) {
        ++lineno;
        auto t = io::trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (!header) {
            std::istringstream h{std::string(t)};
            std::string kw;
            if (!(h >> kw >> n >> x >> y) || kw != "kripke")
                throw ParseError("expected header `kripke n |X| |Y|`", lineno, 1);
            header = true;
            continue;
        }
        std::vector<std::string> parts;
        std::string cur;
        for (char ch : t) {
            if (ch == ';') {
                parts.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        parts.push_back(cur);
        if (parts.size() != n + 1) throw ParseError("row must have " + std::to_string(n + 1) + " parts", lineno, 1);
        Relation::Row row{io::parse_element_list(parts[0], y, lineno), {}};
        for (std::size_t i = 0; i < n; ++i) row.args.push_back(io::parse_element_list(parts[i + 1], x, lineno));
        rows.push_back(std::move(row));
    }
    if (!header) throw ParseError("missing kripke header", lineno + 1, 1);
    return Relation::from_rows(name, n, x, y, std::move(rows));
}

std::string format_extension(const Relation& r) {
    std::ostringstream out;
    out << "kripke " << r.arity() << ' ' << r.source() << ' ' << r.target() << '\n';
    for (const auto& row : r.rows()) {
        out << io::format_element_list(row.out);
        for (const auto& a : row.args) out << " ; " << io::format_element_list(a);
        out << '\n';
    }
    return out.str();
}

}  // namespace teamdim::kripke
