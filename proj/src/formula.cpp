#include "teamdim/formula.hpp"
#include "teamdim/error.hpp"

#include <algorithm>
#include <set>

namespace teamdim::logic {

namespace {

void add_free(std::vector<std::string>& out, const std::vector<std::string>& vs) {
    for (const auto& v : vs)
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
}

std::vector<std::size_t> positions(const std::vector<std::string>& free, const std::vector<std::string>& vs) {
    std::vector<std::size_t> p;
    for (const auto& v : vs)
        p.push_back(std::size_t(std::find(free.begin(), free.end(), v) - free.begin()));
    return p;
}

void require_distinct(const std::vector<std::string>& vs, const char* what) {
    std::set<std::string> s(vs.begin(), vs.end());
    if (s.size() != vs.size()) throw Error(ErrorKind::Arity, std::string(what) + ": repeated variable");
}

FormulaPtr make_atom(Kind k, std::string name, std::vector<std::string> xs, std::vector<std::string> ys,
                     std::vector<std::string> zs) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->name = std::move(name);
    f->xs = std::move(xs);
    f->ys = std::move(ys);
    f->zs = std::move(zs);
    add_free(f->free, f->xs);
    add_free(f->free, f->zs);
    add_free(f->free, f->ys);
    f->px = positions(f->free, f->xs);
    f->py = positions(f->free, f->ys);
    f->pz = positions(f->free, f->zs);
    switch (k) {
    case Kind::Eq: case Kind::Neq: case Kind::Rel: case Kind::NRel:
        f->flat = f->dc = f->uc = true;
        break;
    case Kind::Dep: case Kind::Const: case Kind::Exc: case Kind::Half:
        f->dc = true;
        break;
    case Kind::Inc: case Kind::Ano:
        f->uc = true;
        break;
    default:
        break;
    }
    return f;
}

}  // namespace

FormulaPtr eq(const std::string& x, const std::string& y) { return make_atom(Kind::Eq, "", {x}, {y}, {}); }
FormulaPtr neq(const std::string& x, const std::string& y) { return make_atom(Kind::Neq, "", {x}, {y}, {}); }

FormulaPtr rel(const std::string& name, std::vector<std::string> args) {
    return make_atom(Kind::Rel, name, std::move(args), {}, {});
}
FormulaPtr nrel(const std::string& name, std::vector<std::string> args) {
    return make_atom(Kind::NRel, name, std::move(args), {}, {});
}

FormulaPtr dep(std::vector<std::string> xs, const std::string& y) {
    return make_atom(Kind::Dep, "", std::move(xs), {y}, {});
}

FormulaPtr constancy(std::vector<std::string> xs) {
    if (xs.empty()) throw Error(ErrorKind::Arity, "const needs at least one variable");
    return make_atom(Kind::Const, "", std::move(xs), {}, {});
}

FormulaPtr exc(std::vector<std::string> xs, std::vector<std::string> ys) {
    if (xs.empty() || xs.size() != ys.size())
        throw Error(ErrorKind::Arity, "exclusion sides must be nonempty and of equal length");
    return make_atom(Kind::Exc, "", std::move(xs), std::move(ys), {});
}

FormulaPtr inc(std::vector<std::string> xs, std::vector<std::string> ys) {
    if (xs.empty() || xs.size() != ys.size())
        throw Error(ErrorKind::Arity, "inclusion sides must be nonempty and of equal length");
    return make_atom(Kind::Inc, "", std::move(xs), std::move(ys), {});
}

FormulaPtr ano(std::vector<std::string> xs, const std::string& y) {
    if (xs.empty()) throw Error(ErrorKind::Arity, "anonymity needs a nonempty left side");
    return make_atom(Kind::Ano, "", std::move(xs), {y}, {});
}

FormulaPtr ind(std::vector<std::string> xs, std::vector<std::string> zs, std::vector<std::string> ys) {
    if (xs.empty() || ys.empty()) throw Error(ErrorKind::Arity, "independence sides must be nonempty");
    return make_atom(Kind::Ind, "", std::move(xs), std::move(ys), std::move(zs));
}

FormulaPtr ne() { return make_atom(Kind::NE, "", {}, {}, {}); }

FormulaPtr even(std::vector<std::string> xs) {
    if (xs.empty()) throw Error(ErrorKind::Arity, "even needs at least one variable");
    return make_atom(Kind::Even, "", std::move(xs), {}, {});
}

FormulaPtr half(std::vector<std::string> xs) {
    if (xs.empty()) throw Error(ErrorKind::Arity, "half needs at least one variable");
    return make_atom(Kind::Half, "", std::move(xs), {}, {});
}

FormulaPtr binary(Kind k, FormulaPtr a, FormulaPtr b) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->left = std::move(a);
    f->right = std::move(b);
    add_free(f->free, f->left->free);
    add_free(f->free, f->right->free);
    f->depth = 1 + std::max(f->left->depth, f->right->depth);
    const auto &l = *f->left, &r = *f->right;
    switch (k) {
    case Kind::And:
    case Kind::Or:
        f->flat = l.flat && r.flat;
        f->dc = l.dc && r.dc;
        f->uc = l.uc && r.uc;
        break;
    case Kind::Tand:
        f->flat = l.flat && r.flat;
        f->dc = l.dc && r.dc;
        f->uc = f->flat;
        break;
    case Kind::Ior:
        f->dc = l.dc && r.dc;
        f->uc = false;
        break;
    case Kind::Imp:
        f->flat = l.flat && r.flat;
        f->dc = true;
        f->uc = f->flat;
        break;
    default:
        throw Error(ErrorKind::Input, "not a binary connective");
    }
    return f;
}

FormulaPtr conj(FormulaPtr a, FormulaPtr b) { return binary(Kind::And, std::move(a), std::move(b)); }
FormulaPtr disj(FormulaPtr a, FormulaPtr b) { return binary(Kind::Or, std::move(a), std::move(b)); }
FormulaPtr ior(FormulaPtr a, FormulaPtr b) { return binary(Kind::Ior, std::move(a), std::move(b)); }
FormulaPtr tand(FormulaPtr a, FormulaPtr b) { return binary(Kind::Tand, std::move(a), std::move(b)); }
FormulaPtr imp(FormulaPtr a, FormulaPtr b) { return binary(Kind::Imp, std::move(a), std::move(b)); }

static FormulaPtr make_quant(Kind k, std::string name, std::vector<std::string> vars, FormulaPtr body) {
    if (vars.empty()) throw Error(ErrorKind::Arity, "quantifier without variables");
    require_distinct(vars, "quantifier");
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->name = std::move(name);
    f->xs = std::move(vars);
    f->left = std::move(body);
    const auto& b = *f->left;
    if (k == Kind::D1) {
        add_free(f->free, b.free);
        add_free(f->free, f->xs);
    } else {
        for (const auto& v : b.free)
            if (std::find(f->xs.begin(), f->xs.end(), v) == f->xs.end()) f->free.push_back(v);
    }
    f->depth = 1 + b.depth;
    switch (k) {
    case Kind::Exists:
    case Kind::Forall:
        f->flat = b.flat;
        f->dc = b.dc;
        f->uc = b.uc;
        break;
    case Kind::A1:
    case Kind::D1:
        f->flat = b.flat;
        f->dc = b.dc;
        f->uc = b.uc;
        break;
    case Kind::E1:
        f->dc = b.dc;
        break;
    case Kind::Q:
        f->flat = b.flat;
        f->dc = b.dc;
        f->uc = b.flat;
        break;
    default:
        throw Error(ErrorKind::Input, "not a quantifier");
    }
    return f;
}

FormulaPtr quant(Kind k, const std::string& x, FormulaPtr body) { return make_quant(k, "", {x}, std::move(body)); }
FormulaPtr exists(const std::string& x, FormulaPtr body) { return quant(Kind::Exists, x, std::move(body)); }
FormulaPtr forall(const std::string& x, FormulaPtr body) { return quant(Kind::Forall, x, std::move(body)); }
FormulaPtr exists1(const std::string& x, FormulaPtr body) { return quant(Kind::E1, x, std::move(body)); }
FormulaPtr forall1(const std::string& x, FormulaPtr body) { return quant(Kind::A1, x, std::move(body)); }
FormulaPtr delta1(const std::string& x, FormulaPtr body) { return quant(Kind::D1, x, std::move(body)); }

FormulaPtr lindstrom(const std::string& cls, std::vector<std::string> ys, FormulaPtr body) {
    return make_quant(Kind::Q, cls, std::move(ys), std::move(body));
}

FormulaPtr conj_all(const std::vector<FormulaPtr>& fs) {
    if (fs.empty()) throw Error(ErrorKind::Input, "empty conjunction");
    FormulaPtr acc = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
    return acc;
}

FormulaPtr disj_all(const std::vector<FormulaPtr>& fs) {
    if (fs.empty()) throw Error(ErrorKind::Input, "empty disjunction");
    FormulaPtr acc = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i) acc = disj(acc, fs[i]);
    return acc;
}

FormulaPtr eq_all(const std::vector<std::string>& xs, const std::vector<std::string>& ys) {
    if (xs.size() != ys.size() || xs.empty()) throw Error(ErrorKind::Arity, "tuple lengths differ");
    std::vector<FormulaPtr> parts;
    for (std::size_t i = 0; i < xs.size(); ++i) parts.push_back(eq(xs[i], ys[i]));
    return conj_all(parts);
}

FormulaPtr neq_any(const std::vector<std::string>& xs, const std::vector<std::string>& ys) {
    if (xs.size() != ys.size() || xs.empty()) throw Error(ErrorKind::Arity, "tuple lengths differ");
    std::vector<FormulaPtr> parts;
    for (std::size_t i = 0; i < xs.size(); ++i) parts.push_back(neq(xs[i], ys[i]));
    return disj_all(parts);
}

namespace {

std::string join(const std::vector<std::string>& vs) {
    std::string out;
    for (const auto& v : vs) {
        if (!out.empty()) out += ' ';
        out += v;
    }
    return out;
}

const char* op_text(Kind k) {
    switch (k) {
    case Kind::And: return "and";
    case Kind::Or: return "or";
    case Kind::Ior: return "ior";
    case Kind::Tand: return "tand";
    case Kind::Imp: return "->";
    default: return "?";
    }
}

const char* quant_text(Kind k) {
    switch (k) {
    case Kind::Exists: return "E";
    case Kind::Forall: return "A";
    case Kind::E1: return "E1";
    case Kind::A1: return "A1";
    case Kind::D1: return "d1";
    default: return "Q";
    }
}

}  // namespace

std::string to_string(const Formula& f) {
    switch (f.kind) {
    case Kind::Eq: return f.xs[0] + " = " + f.ys[0];
    case Kind::Neq: return "!" + f.xs[0] + " = " + f.ys[0];
    case Kind::Rel: return f.name + "(" + join(f.xs) + ")";
    case Kind::NRel: return "!" + f.name + "(" + join(f.xs) + ")";
    case Kind::Dep: return "dep(" + join(f.xs) + (f.xs.empty() ? "; " : " ; ") + f.ys[0] + ")";
    case Kind::Const: return "const(" + join(f.xs) + ")";
    case Kind::Exc: return "exc(" + join(f.xs) + " ; " + join(f.ys) + ")";
    case Kind::Inc: return "inc(" + join(f.xs) + " ; " + join(f.ys) + ")";
    case Kind::Ano: return "ano(" + join(f.xs) + " ; " + f.ys[0] + ")";
    case Kind::Ind:
        return "ind(" + join(f.xs) + " ; " + (f.zs.empty() ? "" : join(f.zs) + " ") + "; " + join(f.ys) + ")";
    case Kind::NE: return "NE";
    case Kind::Even: return "even(" + join(f.xs) + ")";
    case Kind::Half: return "half(" + join(f.xs) + ")";
    case Kind::And: case Kind::Or: case Kind::Ior: case Kind::Tand: case Kind::Imp:
        return "(" + to_string(*f.left) + " " + op_text(f.kind) + " " + to_string(*f.right) + ")";
    case Kind::Q:
        return "(Q " + f.name + " " + join(f.xs) + " . " + to_string(*f.left) + ")";
    default:
        return "(" + std::string(quant_text(f.kind)) + " " + f.xs[0] + " . " + to_string(*f.left) + ")";
    }
}

bool uses_kind(const Formula& f, Kind k) {
    if (f.kind == k) return true;
    if (f.left && uses_kind(*f.left, k)) return true;
    return f.right && uses_kind(*f.right, k);
}

bool uses_relations(const Formula& f) { return uses_kind(f, Kind::Rel) || uses_kind(f, Kind::NRel); }

}  // namespace teamdim::logic
