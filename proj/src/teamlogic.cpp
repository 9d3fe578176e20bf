#include "teamdim/teamlogic.hpp"
#include "teamdim/error.hpp"
#include "teamdim/lindstrom.hpp"
#include "teamdim/parser.hpp"
#include "teamdim/setfam.hpp"

#include <algorithm>
#include <map>

namespace teamdim::logic {

namespace {

std::size_t team_base(const Structure& m, const Vars& ctx) {
    auto w = power(m.size(), ctx.size());
    if (w > kTeamBaseCap)
        throw Error(ErrorKind::CapExceeded, "n^m = " + std::to_string(w) + " exceeds the team base cap");
    return w;
}

Team mask_team(const Vars& ctx, std::uint64_t mask, std::size_t width) {
    Team t;
    t.vars = ctx;
    for (std::size_t i = 0; i < width; ++i)
        if ((mask >> i) & 1u) t.rows.push_back(i);
    return t;
}

template <class Sat>
Family filter_teams(const Vars& ctx, std::size_t width, Sat sat) {
    std::vector<std::uint64_t> masks;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << width); ++mask)
        if (sat(mask_team(ctx, mask, width))) masks.push_back(mask);
    return Family::from_masks(width, masks);
}

std::vector<std::uint8_t> bitmap(const Family& f) {
    std::vector<std::uint8_t> out(std::size_t(1) << f.width(), 0);
    for (const auto& s : f) out[s.to_mask()] = 1;
    return out;
}

// c[S] = 1 iff S = U ∪ V (or U ∩ V when `meet`) for some U ∈ a, V ∈ b
Family convolve(const Family& a, const Family& b, bool meet) {
    const std::size_t w = a.width();
    const std::size_t size = std::size_t(1) << w;
    std::vector<std::int64_t> fa(size), fb(size);
    auto ba = bitmap(a), bb = bitmap(b);
    for (std::size_t s = 0; s < size; ++s) {
        fa[s] = ba[s];
        fb[s] = bb[s];
    }
    auto zeta = [&](std::vector<std::int64_t>& f, int sign) {
        for (std::size_t i = 0; i < w; ++i) {
            const std::size_t bit = std::size_t(1) << i;
            for (std::size_t s = 0; s < size; ++s) {
                if (meet ? (s & bit) == 0 : (s & bit) != 0) f[s] += sign * f[s ^ bit];
            }
        }
    };
    zeta(fa, 1);
    zeta(fb, 1);
    for (std::size_t s = 0; s < size; ++s) fa[s] *= fb[s];
    zeta(fa, -1);
    std::vector<std::uint64_t> masks;
    for (std::size_t s = 0; s < size; ++s)
        if (fa[s] > 0) masks.push_back(s);
    return Family::from_masks(w, masks);
}

bool rebinds(const Formula& f, const Vars& ctx) {
    return std::any_of(f.xs.begin(), f.xs.end(),
                       [&](const std::string& v) { return std::find(ctx.begin(), ctx.end(), v) != ctx.end(); });
}

Vars extend(const Vars& ctx, const Vars& q) {
    Vars out = ctx;
    out.insert(out.end(), q.begin(), q.end());
    return out;
}

}  // namespace

Family team_family(const Structure& m, const FormulaPtr& f, const Vars& ctx, const SearchBudget& per_team) {
    const auto width = team_base(m, ctx);
    check_formula(m, *f, ctx);
    Evaluator ev(m, per_team);
    return filter_teams(ctx, width, [&](const Team& t) { return ev.satisfies(t, f); });
}

Family reference_team_family(const Structure& m, const FormulaPtr& f, const Vars& ctx, const SearchBudget& per_team) {
    const auto width = team_base(m, ctx);
    check_formula(m, *f, ctx);
    return filter_teams(ctx, width, [&](const Team& t) { return reference_satisfies(m, t, f, per_team); });
}

bool composable(const Formula& f, const Vars& ctx) {
    switch (f.kind) {
    case Kind::Imp: case Kind::E1: case Kind::A1: case Kind::D1:
        return false;
    case Kind::Exists: case Kind::Forall: case Kind::Q:
        return !rebinds(f, ctx) && composable(*f.left, extend(ctx, f.xs));
    case Kind::And: case Kind::Or: case Kind::Ior: case Kind::Tand:
        return composable(*f.left, ctx) && composable(*f.right, ctx);
    default:
        return true;
    }
}

Family compose_family(const Structure& m, const FormulaPtr& f, const Vars& ctx) {
    const auto width = team_base(m, ctx);
    check_formula(m, *f, ctx);
    if (!composable(*f, ctx))
        throw Error(ErrorKind::Unsupported, "no operator form for " + to_string(f));
    switch (f->kind) {
    case Kind::Eq: case Kind::Neq: case Kind::Rel: case Kind::NRel: {
        // [∅, rows satisfying the literal]
        std::uint64_t good = 0;
        for (std::size_t i = 0; i < width; ++i)
            if (reference_satisfies(m, mask_team(ctx, std::uint64_t(1) << i, width), f)) good |= std::uint64_t(1) << i;
        return setfam::interval(Subset(width), Subset::from_mask(width, good));
    }
    case Kind::And: return setfam::family_intersection(compose_family(m, f->left, ctx), compose_family(m, f->right, ctx));
    case Kind::Ior: return setfam::family_union(compose_family(m, f->left, ctx), compose_family(m, f->right, ctx));
    case Kind::Or: return convolve(compose_family(m, f->left, ctx), compose_family(m, f->right, ctx), false);
    case Kind::Tand: return convolve(compose_family(m, f->left, ctx), compose_family(m, f->right, ctx), true);
    case Kind::Exists: case Kind::Forall: case Kind::Q: {
        const Vars inner = extend(ctx, f->xs);
        auto body = compose_family(m, f->left, inner);
        std::vector<std::size_t> ell;
        for (std::size_t j = 0; j < f->xs.size(); ++j) ell.push_back(ctx.size() + j);
        const auto cls = find_class(f->kind == Kind::Exists ? "exists" : f->kind == Kind::Forall ? "forall" : f->name);
        return lindstrom_apply(cls, ell, body, m.size(), inner.size());
    }
    default: {
        // dependency atoms, NE, even, half: local, so decided once per
        // projection to the free variables
        const Vars& fv = f->free;
        std::vector<std::size_t> cols;
        for (const auto& v : fv) cols.push_back(std::size_t(std::find(ctx.begin(), ctx.end(), v) - ctx.begin()));
        std::vector<std::uint64_t> image(width);
        for (std::size_t i = 0; i < width; ++i) {
            auto full = decode(i, m.size(), ctx.size());
            Tuple p;
            for (auto c : cols) p.push_back(full[c]);
            image[i] = encode(p, m.size());
        }
        std::map<std::vector<std::uint64_t>, bool> seen;
        return filter_teams(ctx, width, [&](const Team& t) {
            std::vector<std::uint64_t> rows;
            for (auto r : t.rows) rows.push_back(image[r]);
            std::sort(rows.begin(), rows.end());
            rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
            auto it = seen.find(rows);
            if (it == seen.end()) it = seen.emplace(rows, reference_satisfies(m, Team{fv, rows}, f)).first;
            return it->second;
        });
    }
    }
}

bool check_formula_locality(const Structure& m, const FormulaPtr& f, const Vars& ctx, const SearchBudget& per_team) {
    const auto width = team_base(m, ctx);
    check_formula(m, *f, ctx);
    const Vars& fv = f->free;
    auto cols = std::vector<std::size_t>();
    for (const auto& v : fv) cols.push_back(std::size_t(std::find(ctx.begin(), ctx.end(), v) - ctx.begin()));
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << width); ++mask) {
        Team t = mask_team(ctx, mask, width);
        std::vector<Tuple> rows;
        for (auto r : t.rows) {
            auto full = decode(r, m.size(), ctx.size());
            Tuple p;
            for (auto c : cols) p.push_back(full[c]);
            rows.push_back(p);
        }
        Team small = make_team(fv, rows, m.size());
        if (reference_satisfies(m, t, f, per_team) != reference_satisfies(m, small, f, per_team)) return false;
    }
    return true;
}

dims::CoverResult dim_function(const FormulaPtr& f, const Vars& ctx, std::size_t n, dims::CoverMode which,
                               const SearchBudget& budget) {
    if (uses_relations(*f))
        throw Error(ErrorKind::Unsupported,
                    "dimension functions are only computed for formulas without relation symbols");
    Structure m(n);
    return dims::dimension(team_family(m, f, ctx, budget), which, budget);
}

namespace {

FormulaPtr random_leaf(std::mt19937_64& rng, const Vars& ctx) {
    auto pick = [&]() { return ctx[std::uniform_int_distribution<std::size_t>(0, ctx.size() - 1)(rng)]; };
    switch (std::uniform_int_distribution<int>(0, 12)(rng)) {
    case 0: return eq(pick(), pick());
    case 1: return neq(pick(), pick());
    case 2: return dep({pick()}, pick());
    case 3: return constancy({pick()});
    case 4: return exc({pick()}, {pick()});
    case 5: return inc({pick()}, {pick()});
    case 6: return ano({pick()}, pick());
    case 7: return ind({pick()}, {}, {pick()});
    case 8: return ind({pick()}, {pick()}, {pick()});
    case 9: return ne();
    case 10: return even({pick()});
    case 11: return half({pick()});
    default: return dep({}, pick());
    }
}

std::string fresh_name(const Vars& ctx) {
    for (std::size_t i = 0;; ++i) {
        std::string v = "v" + std::to_string(i);
        if (std::find(ctx.begin(), ctx.end(), v) == ctx.end()) return v;
    }
}

}  // namespace

FormulaPtr random_formula(std::mt19937_64& rng, const Vars& ctx, std::size_t depth, std::size_t max_vars) {
    if (ctx.empty()) throw Error(ErrorKind::Input, "random formulas need a nonempty context");
    if (depth == 0 || std::uniform_int_distribution<int>(0, 3)(rng) == 0) return random_leaf(rng, ctx);
    const bool can_bind = ctx.size() < max_vars;
    const int choice = std::uniform_int_distribution<int>(0, can_bind ? 6 : 3)(rng);
    if (choice <= 3) {
        static const Kind kinds[] = {Kind::And, Kind::Or, Kind::Ior, Kind::Tand};
        return binary(kinds[choice], random_formula(rng, ctx, depth - 1, max_vars),
                      random_formula(rng, ctx, depth - 1, max_vars));
    }
    const std::string v = fresh_name(ctx);
    Vars inner = ctx;
    inner.push_back(v);
    auto body = random_formula(rng, inner, depth - 1, max_vars);
    if (choice == 4) return exists(v, body);
    if (choice == 5) return forall(v, body);
    static const char* classes[] = {"exists", "forall", "majority", "ge2", "even"};
    return lindstrom(classes[std::uniform_int_distribution<int>(0, 4)(rng)], {v}, body);
}

std::vector<Equivalence> translation_suite() {
    auto p = [](const char* s) { return parse_formula(s); };
    std::vector<Equivalence> out;
    out.push_back({"dep-from-exc", p("dep(x ; y)"), p("A z . (z = y or exc(x z ; x y))"), {"x", "y"}});
    out.push_back({"dep-from-ind", p("dep(x ; y)"),
                   p("A z . E w . ((!z = x or w = y) and ind(x y ;; z w))"), {"x", "y"}});
    out.push_back({"dep-from-ind-zz", p("dep(x ; y)"),
                   p("A z . E w . ((!z = x or w = y) and ind(z y ;; z w))"), {"x", "y"}});
    out.push_back({"exc-from-dep", p("exc(t1 ; t2)"),
                   p("A z . E u1 u2 . (dep(z ; u1) and dep(z ; u2) and "
                     "((u1 = u2 and !z = t1) or (!u1 = u2 and !z = t2)))"),
                   {"t1", "t2"}});
    out.push_back({"exc-from-inc-ind", p("exc(x ; y)"), p("E z . (inc(x ; z) and ind(y ;; z) and !y = z)"),
                   {"x", "y"}});
    out.push_back({"inc-from-ind", p("inc(t1 ; t2)"),
                   p("A v1 v2 z . ((!z = t1 and !z = t2) or (!v1 = v2 and !z = t2) or "
                     "((v1 = v2 or z = t2) and ind(z ;; v1 v2)))"),
                   {"t1", "t2"}});
    out.push_back({"inc-from-ano", p("inc(t1 ; t2)"),
                   p("(E x . A y . x = y) or (A w1 w2 . E y z . "
                     "(((w1 = w2 and y = t1) or (!w1 = w2 and y = t2)) and ano(y ; z)))"),
                   {"t1", "t2"}});
    out.push_back({"ano-from-inc", p("ano(x ; y)"), p("E u . (!u = y and inc(x u ; x y))"), {"x", "y"}});
    out.push_back({"cind-from-dep-exc-inc", p("ind(t2 ; t1 ; t3)"),
                   p("A p q r . E u1 u2 u3 u4 . (dep(p q r ; u1) and dep(p q r ; u2) and dep(p q r ; u3) and "
                     "dep(p q r ; u4) and ((!u1 = u2 and exc(p q ; t1 t2)) or "
                     "(u1 = u2 and !u3 = u4 and exc(p r ; t1 t3)) or "
                     "(u1 = u2 and u3 = u4 and inc(p q r ; t1 t2 t3))))"),
                   {"t1", "t2", "t3"}});
    out.push_back({"cind-from-ind", p("ind(x ; z ; y)"),
                   p("A p q . E u w . ((!z = p or !z = q or (u = x and w = y)) and "
                     "(!z = p or !z = q or !p = q or z = p) and ind(p u ;; q w))"),
                   {"x", "z", "y"}});
    return out;
}

std::vector<Equivalence> operator_identities() {
    auto p = [](const char* s) { return parse_formula(s); };
    std::vector<Equivalence> out;
    out.push_back({"forall1-dep", p("A1 x . dep(x ; y)"), p("A x . (const(x) -> dep(x ; y))"), {"y"}});
    out.push_back({"forall1-exc", p("A1 x . exc(x ; y)"), p("A x . (const(x) -> exc(x ; y))"), {"y"}});
    out.push_back({"forall1-or", p("A1 x . (x = y or const(y))"), p("A x . (const(x) -> (x = y or const(y)))"),
                   {"y"}});
    out.push_back({"delta1-const", p("d1 x . const(y)"), p("A1 z . (!x = z or const(y))"), {"x", "y"}});
    out.push_back({"delta1-exc", p("d1 x . exc(x ; y)"), p("A1 z . (!x = z or exc(x ; y))"), {"x", "y"}});
    out.push_back({"dep-via-delta1", p("dep(x ; y)"), p("d1 x . const(y)"), {"x", "y"}});
    out.push_back({"dep-via-forall1", p("dep(x ; y)"), p("A1 z . (!z = x or const(y))"), {"x", "y"}});
    out.push_back({"dep-via-imp", p("dep(x ; y)"), p("const(x) -> const(y)"), {"x", "y"}});
    out.push_back({"ior-via-exists", p("dep(a ; b) ior inc(a ; b)"),
                   p("E x y . (const(x) and const(y) and ((x = y and dep(a ; b)) or (!x = y and inc(a ; b))))"),
                   {"a", "b"}});
    out.push_back({"half-via-dep-exc", p("half(x)"), p("E y . (dep(y ; x) and exc(x ; y))"), {"x"}});
    out.push_back({"even-via-ind-inc", p("even(x)"),
                   p("E u v y z . (ind(y z ;; x) and inc(y ; x) and inc(z ; x) and "
                     "((u = v and inc(x ; y)) or (!u = v and inc(x ; z))) and exc(y ; z) and "
                     "dep(z ; y) and dep(y ; z))"),
                   {"x"}, true});
    return out;
}

Equivalence find_equivalence(const std::string& name) {
    for (auto list : {translation_suite(), operator_identities()})
        for (auto& e : list)
            if (e.name == name) return e;
    throw Error(ErrorKind::Input, "unknown equivalence " + name);
}

}  // namespace teamdim::logic
