#include "teamdim/evaluator.hpp"
#include "teamdim/error.hpp"
#include "teamdim/lindstrom.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace teamdim::logic {

bool has_empty_team_property(const Formula& f) { return !uses_kind(f, Kind::NE); }

void check_formula(const Structure& m, const Formula& f, const Vars& vars) {
    for (const auto& v : f.free)
        if (std::find(vars.begin(), vars.end(), v) == vars.end())
            throw Error(ErrorKind::UnboundVariable, "free variable " + v + " is not in the team");
    struct Walk {
        const Structure& m;
        void operator()(const Formula& g) const {
            if (g.kind == Kind::Rel || g.kind == Kind::NRel) {
                const auto* r = m.find(g.name);
                if (!r) throw Error(ErrorKind::Input, "relation symbol " + g.name + " is not in the model");
                if (r->arity != g.xs.size()) throw Error(ErrorKind::Arity, "wrong number of arguments for " + g.name);
            }
            if (g.kind == Kind::Q) find_class(g.name);
            if (g.left) (*this)(*g.left);
            if (g.right) (*this)(*g.right);
        }
    };
    Walk{m}(f);
}

namespace {

using Rows = std::vector<std::uint64_t>;

[[noreturn]] void out_of_budget() { throw Error(ErrorKind::Budget, "search budget exhausted"); }

Rows unite(const Rows& a, const Rows& b) {
    Rows out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Rows minus(const Rows& a, const Rows& b) {
    Rows out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool includes(const Rows& big, const Rows& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

bool has(const Rows& r, std::uint64_t x) { return std::binary_search(r.begin(), r.end(), x); }

void normalize(Rows& r) {
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
}

void conjuncts(const Formula* f, std::vector<const Formula*>& out) {
    if (f->kind == Kind::And) {
        conjuncts(f->left.get(), out);
        conjuncts(f->right.get(), out);
    } else {
        out.push_back(f);
    }
}

// variables in scope after binding q: the old ones minus q, then q
Vars scope_after(const Vars& vars, const Vars& q) {
    Vars out;
    for (const auto& v : vars)
        if (std::find(q.begin(), q.end(), v) == q.end()) out.push_back(v);
    out.insert(out.end(), q.begin(), q.end());
    return out;
}

bool contains_var(const std::vector<std::string>& vs, const std::string& v) {
    return std::find(vs.begin(), vs.end(), v) != vs.end();
}

std::string memo_key(const Formula* f, const Vars& vars, const Rows& t) {
    std::string k(reinterpret_cast<const char*>(&f), sizeof f);
    for (const auto& v : vars) {
        k += v;
        k += '\x1f';
    }
    k += '\x1e';
    k.append(reinterpret_cast<const char*>(t.data()), t.size() * sizeof(std::uint64_t));
    return k;
}

// Row codec, relation lookup and rowwise evaluation of flat formulas.
class Core {
public:
    explicit Core(const Structure& m) : m_(m), n_(m.size()) {
        pw_.push_back(1);
        while (pw_.size() < 63 && pw_.back() <= (std::uint64_t(1) << 62) / n_) pw_.push_back(pw_.back() * n_);
    }

    const Structure& structure() const { return m_; }
    std::size_t n() const { return n_; }

    std::uint64_t pw(std::size_t i) const {
        if (i >= pw_.size()) throw Error(ErrorKind::CapExceeded, "too many variables for the row code");
        return pw_[i];
    }
    std::size_t digit(std::uint64_t c, std::size_t i) const { return std::size_t((c / pw_[i]) % n_); }

    std::vector<std::size_t> cols(const Vars& from, const std::vector<std::string>& to) const {
        std::vector<std::size_t> out;
        out.reserve(to.size());
        for (const auto& v : to) {
            auto it = std::find(from.begin(), from.end(), v);
            if (it == from.end()) throw Error(ErrorKind::UnboundVariable, "variable " + v + " is not in scope");
            out.push_back(std::size_t(it - from.begin()));
        }
        return out;
    }

    std::uint64_t remap(std::uint64_t c, const std::vector<std::size_t>& cs) const {
        std::uint64_t out = 0;
        for (std::size_t j = 0; j < cs.size(); ++j) out += digit(c, cs[j]) * pw_[j];
        return out;
    }

    Rows project(const Rows& t, const Vars& from, const Vars& to) const {
        if (from == to) return t;
        auto cs = cols(from, to);
        Rows out;
        out.reserve(t.size());
        for (auto s : t) out.push_back(remap(s, cs));
        normalize(out);
        return out;
    }

    // rows of w whose projection lies in z
    Rows preimage(const Rows& w, const Vars& from, const Vars& to, const Rows& z) const {
        auto cs = cols(from, to);
        Rows out;
        for (auto s : w)
            if (has(z, remap(s, cs))) out.push_back(s);
        return out;
    }

    Rows all_rows(std::size_t m) const {
        auto sz = pw(m);
        if (sz > (1u << 20)) throw Error(ErrorKind::CapExceeded, "team space too large to enumerate");
        Rows out(sz);
        for (std::uint64_t i = 0; i < sz; ++i) out[i] = i;
        return out;
    }

    // T[M^q/Q]: every row extended by every value tuple of the new columns
    Rows extend_all(const Rows& t, const Vars& vars, const Vars& scope, std::size_t q) const {
        const std::size_t k = scope.size() - q;
        auto cs = cols(vars, Vars(scope.begin(), scope.begin() + long(k)));
        Rows out;
        for (auto s : t) {
            auto base = remap(s, cs);
            for (std::uint64_t b = 0; b < pw(q); ++b) out.push_back(base + b * pw_[k]);
        }
        normalize(out);
        return out;
    }

    // T[a/x] for a single new column holding value a
    Rows extend_const(const Rows& t, const Vars& vars, const Vars& scope, std::size_t a) const {
        const std::size_t k = scope.size() - 1;
        auto cs = cols(vars, Vars(scope.begin(), scope.begin() + long(k)));
        Rows out;
        for (auto s : t) out.push_back(remap(s, cs) + a * pw_[k]);
        normalize(out);
        return out;
    }

    const QuantifierClass& cls(const std::string& name) const {
        auto it = classes_.find(name);
        if (it == classes_.end()) it = classes_.emplace(name, find_class(name)).first;
        return it->second;
    }

    bool row_sat(const Formula& f, const Vars& vars, std::uint64_t code) const {
        Env env;
        for (std::size_t i = 0; i < vars.size(); ++i) env.emplace_back(&vars[i], digit(code, i));
        return flat_rec(f, env);
    }

    bool all_rows_sat(const Formula& f, const Vars& vars, const Rows& t) const {
        for (auto s : t)
            if (!row_sat(f, vars, s)) return false;
        return true;
    }

    Rows filter_rows(const Formula& f, const Vars& vars, const Rows& t) const {
        Rows out;
        for (auto s : t)
            if (row_sat(f, vars, s)) out.push_back(s);
        return out;
    }

    // direct check of the dependency atoms on a team over vars
    bool atom_sat(const Formula& f, const Vars& vars, const Rows& t) const {
        auto X = cols(vars, f.xs), Y = cols(vars, f.ys), Z = cols(vars, f.zs);
        switch (f.kind) {
        case Kind::Dep: {
            std::unordered_map<std::uint64_t, std::uint64_t> fn;
            for (auto s : t) {
                auto [it, fresh] = fn.emplace(remap(s, X), remap(s, Y));
                if (!fresh && it->second != remap(s, Y)) return false;
            }
            return true;
        }
        case Kind::Const: {
            for (auto s : t)
                if (remap(s, X) != remap(t.front(), X)) return false;
            return true;
        }
        case Kind::Exc: {
            std::unordered_set<std::uint64_t> xs;
            for (auto s : t) xs.insert(remap(s, X));
            for (auto s : t)
                if (xs.count(remap(s, Y))) return false;
            return true;
        }
        case Kind::Inc: {
            std::unordered_set<std::uint64_t> ys;
            for (auto s : t) ys.insert(remap(s, Y));
            for (auto s : t)
                if (!ys.count(remap(s, X))) return false;
            return true;
        }
        case Kind::Ano: {
            std::map<std::uint64_t, std::set<std::uint64_t>> cls;
            for (auto s : t) cls[remap(s, X)].insert(remap(s, Y));
            for (const auto& [k, v] : cls)
                if (v.size() < 2) return false;
            return true;
        }
        case Kind::Ind: {
            std::set<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> triples;
            std::map<std::uint64_t, std::pair<std::set<std::uint64_t>, std::set<std::uint64_t>>> slices;
            for (auto s : t) {
                auto z = remap(s, Z), x = remap(s, X), y = remap(s, Y);
                triples.emplace(z, x, y);
                slices[z].first.insert(x);
                slices[z].second.insert(y);
            }
            for (const auto& [z, sides] : slices)
                for (auto x : sides.first)
                    for (auto y : sides.second)
                        if (!triples.count({z, x, y})) return false;
            return true;
        }
        case Kind::NE:
            return !t.empty();
        case Kind::Even:
        case Kind::Half: {
            std::unordered_set<std::uint64_t> xs;
            for (auto s : t) xs.insert(remap(s, X));
            if (f.kind == Kind::Even) return xs.size() % 2 == 0;
            return 2 * xs.size() <= pw(f.xs.size());
        }
        default:
            throw Error(ErrorKind::Unsupported, "not an atom");
        }
    }

private:
    using Env = std::vector<std::pair<const std::string*, std::size_t>>;

    static std::size_t lookup(const Env& env, const std::string& v) {
        for (auto it = env.rbegin(); it != env.rend(); ++it)
            if (*it->first == v) return it->second;
        throw Error(ErrorKind::UnboundVariable, "variable " + v + " is not in scope");
    }

    bool rel_holds(const Formula& f, const Env& env) const {
        const auto* r = m_.find(f.name);
        if (!r) throw Error(ErrorKind::Input, "relation symbol " + f.name + " is not in the model");
        if (r->arity != f.xs.size()) throw Error(ErrorKind::Arity, "wrong number of arguments for " + f.name);
        std::uint64_t code = 0;
        for (std::size_t i = 0; i < f.xs.size(); ++i) code += lookup(env, f.xs[i]) * pw_[i];
        return r->tuples.count(code) > 0;
    }

    bool flat_rec(const Formula& f, Env& env) const {
        switch (f.kind) {
        case Kind::Eq: return lookup(env, f.xs[0]) == lookup(env, f.ys[0]);
        case Kind::Neq: return lookup(env, f.xs[0]) != lookup(env, f.ys[0]);
        case Kind::Rel: return rel_holds(f, env);
        case Kind::NRel: return !rel_holds(f, env);
        case Kind::And:
        case Kind::Tand: return flat_rec(*f.left, env) && flat_rec(*f.right, env);
        case Kind::Or: return flat_rec(*f.left, env) || flat_rec(*f.right, env);
        case Kind::Imp: return !flat_rec(*f.left, env) || flat_rec(*f.right, env);
        case Kind::D1: return flat_rec(*f.left, env);
        case Kind::Exists:
        case Kind::Forall:
        case Kind::A1: {
            const bool any = f.kind == Kind::Exists;
            for (std::size_t a = 0; a < n_; ++a) {
                env.emplace_back(&f.xs[0], a);
                bool v = flat_rec(*f.left, env);
                env.pop_back();
                if (v == any) return any;
            }
            return !any;
        }
        case Kind::Q: {
            const std::size_t r = f.xs.size();
            Subset w(pw(r));
            for (std::uint64_t b = 0; b < pw(r); ++b) {
                for (std::size_t j = 0; j < r; ++j) env.emplace_back(&f.xs[j], digit(b, j));
                if (flat_rec(*f.left, env)) w.set(b);
                env.resize(env.size() - r);
            }
            return cls(f.name).has_member_below(n_, r, w);
        }
        default:
            throw Error(ErrorKind::Unsupported, "rowwise evaluation of a non-flat formula");
        }
    }

    Structure m_;
    std::size_t n_;
    std::vector<std::uint64_t> pw_;
    mutable std::map<std::string, QuantifierClass> classes_;
};

// -------------------------------------------------------------------------
// Search-based evaluator

class Engine : public Core {
public:
    Engine(const Structure& m, SearchBudget b) : Core(m), budget_(b), meter_(b) {}

    void reset_meter() { meter_ = BudgetMeter(budget_); }
    std::uint64_t nodes() const { return meter_.nodes(); }

    bool sat(const Formula& f, const Vars& vars, const Rows& t) {
        const Info& in = info(f);
        if (t.empty() && in.etp) return true;
        if (in.local && vars != f.free) return sat(f, f.free, project(t, vars, f.free));
        if (f.flat) return all_rows_sat(f, vars, t);
        if (f.is_atom()) return atom_sat(f, vars, t);
        auto key = memo_key(&f, vars, t);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        tick();
        bool v = dispatch(f, vars, t);
        if (memo_.size() > 4'000'000) memo_.clear();
        memo_.emplace(std::move(key), v);
        return v;
    }

private:
    struct Info {
        bool local = true;
        bool etp = true;
    };

    const Info& info(const Formula& f) {
        auto it = info_.find(&f);
        if (it != info_.end()) return it->second;
        Info in;
        in.etp = has_empty_team_property(f);
        if (!f.flat) {
            if (f.kind == Kind::Tand) in.local = false;
            if (f.kind == Kind::Q && !cls(f.name).union_closed) in.local = false;
            if (f.left && !info(*f.left).local) in.local = false;
            if (f.right && !info(*f.right).local) in.local = false;
        }
        return info_.emplace(&f, in).first->second;
    }

    void tick() {
        if (!meter_.tick()) out_of_budget();
    }

    bool dispatch(const Formula& f, const Vars& vars, const Rows& t) {
        switch (f.kind) {
        case Kind::And: return sat(*f.left, vars, t) && sat(*f.right, vars, t);
        case Kind::Ior: return sat(*f.left, vars, t) || sat(*f.right, vars, t);
        case Kind::Or: return sat_or(f, vars, t);
        case Kind::Tand: return sat_tand(f, vars, t);
        case Kind::Imp: return sat_imp(f, vars, t);
        case Kind::Exists: return sat_exists(f, vars, t);
        case Kind::Forall: {
            auto scope = scope_after(vars, f.xs);
            return sat(*f.left, scope, extend_all(t, vars, scope, 1));
        }
        case Kind::E1:
        case Kind::A1: {
            auto scope = scope_after(vars, f.xs);
            const bool any = f.kind == Kind::E1;
            for (std::size_t a = 0; a < n(); ++a)
                if (sat(*f.left, scope, extend_const(t, vars, scope, a)) == any) return any;
            return !any;
        }
        case Kind::D1: {
            auto c = cols(vars, f.xs)[0];
            std::vector<Rows> parts(n());
            for (auto s : t) parts[digit(s, c)].push_back(s);
            for (const auto& p : parts)
                if (!sat(*f.left, vars, p)) return false;
            return true;
        }
        case Kind::Q: return sat_q(f, vars, t);
        default: throw Error(ErrorKind::Unsupported, "unexpected formula kind");
        }
    }

    // ---- disjunction

    // can row s belong to a subteam satisfying f? flat parts decide, the
    // rest is assumed possible
    bool allowed(const Formula& f, const Vars& vars, std::uint64_t s) const {
        if (f.flat) return row_sat(f, vars, s);
        if (f.kind == Kind::And) return allowed(*f.left, vars, s) && allowed(*f.right, vars, s);
        if (f.kind == Kind::Or) return allowed(*f.left, vars, s) || allowed(*f.right, vars, s);
        return true;
    }

    bool guards_hold(const std::vector<const Formula*>& gs, const Vars& vars, std::uint64_t s) const {
        for (auto g : gs)
            if (!row_sat(*g, vars, s)) return false;
        return true;
    }

    bool sat_or(const Formula& f, const Vars& vars, const Rows& t) {
        const Formula &l = *f.left, &r = *f.right;
        Rows only_l, only_r, both;
        for (auto s : t) {
            bool a = allowed(l, vars, s), b = allowed(r, vars, s);
            if (!a && !b) return false;
            (a && b ? both : a ? only_l : only_r).push_back(s);
        }
        if (l.flat) return interval(r, vars, only_r, unite(only_r, both));
        if (r.flat) return interval(l, vars, only_l, unite(only_l, both));
        if (both.empty()) return sat(l, vars, only_l) && sat(r, vars, only_r);
        if (l.uc && r.uc) {
            auto zl = maxsub(l, vars, unite(only_l, both));
            auto zr = maxsub(r, vars, unite(only_r, both));
            return includes(zl, only_l) && includes(zr, only_r) && unite(zl, zr) == t;
        }
        const bool partition = l.dc && r.dc;
        return split_search(l, r, vars, only_l, only_r, both, 0, partition);
    }

    // assign the free rows to the left, the right or (lax) both sides
    bool split_search(const Formula& l, const Formula& r, const Vars& vars, const Rows& u, const Rows& v,
                      const Rows& free, std::size_t i, bool partition) {
        tick();
        Rows rest(free.begin() + long(i), free.end());
        if (!maybe(l, vars, u, unite(u, rest)) || !maybe(r, vars, v, unite(v, rest))) return false;
        if (i == free.size()) return sat(l, vars, u) && sat(r, vars, v);
        const auto s = free[i];
        Rows u2 = unite(u, {s}), v2 = unite(v, {s});
        if (split_search(l, r, vars, u2, v, free, i + 1, partition)) return true;
        if (split_search(l, r, vars, u, v2, free, i + 1, partition)) return true;
        return !partition && split_search(l, r, vars, u2, v2, free, i + 1, partition);
    }

    // ---- is there S with lo ⊆ S ⊆ hi satisfying f?

    bool interval(const Formula& f, const Vars& vars, const Rows& lo, const Rows& hi) {
        const Info& in = info(f);
        if (in.local && vars != f.free) return interval(f, f.free, project(lo, vars, f.free), project(hi, vars, f.free));
        if (f.flat) return all_rows_sat(f, vars, lo);
        if (f.dc) return sat(f, vars, lo);
        if (f.uc) return includes(maxsub(f, vars, hi), lo);
        std::vector<const Formula*> cs, rest;
        conjuncts(&f, cs);
        Rows hi2 = hi;
        for (auto c : cs) {
            if (c->flat)
                hi2 = filter_rows(*c, vars, hi2);
            else
                rest.push_back(c);
        }
        if (!includes(hi2, lo)) return false;
        if (rest.size() == 1 && separable_ind(*rest[0])) return ind_interval(*rest[0], vars, lo, hi2);
        return interval_search(f, vars, lo, minus(hi2, lo), 0);
    }

    static bool separable_ind(const Formula& f) {
        if (f.kind != Kind::Ind) return false;
        std::set<std::string> seen;
        for (const auto* list : {&f.xs, &f.ys, &f.zs})
            for (const auto& v : *list)
                if (!seen.insert(v).second) return false;
        return true;
    }

    bool ind_interval(const Formula& f, const Vars& vars, const Rows& lo, const Rows& hi) {
        auto X = cols(vars, f.xs), Y = cols(vars, f.ys), Z = cols(vars, f.zs);
        struct Slice {
            std::set<std::uint64_t> lx, ly, ux;
            std::set<std::pair<std::uint64_t, std::uint64_t>> pairs;
        };
        std::map<std::uint64_t, Slice> slices;
        for (auto s : hi) {
            auto& sl = slices[remap(s, Z)];
            sl.ux.insert(remap(s, X));
            sl.pairs.emplace(remap(s, X), remap(s, Y));
        }
        for (auto s : lo) {
            auto& sl = slices[remap(s, Z)];
            sl.lx.insert(remap(s, X));
            sl.ly.insert(remap(s, Y));
        }
        for (const auto& [z, sl] : slices) {
            if (sl.lx.empty()) continue;
            std::vector<std::uint64_t> optional;
            for (auto x : sl.ux)
                if (!sl.lx.count(x)) optional.push_back(x);
            if (optional.size() > 20) throw Error(ErrorKind::CapExceeded, "independence slice too wide");
            std::set<std::uint64_t> ys;
            for (const auto& p : sl.pairs) ys.insert(p.second);
            bool ok = false;
            for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << optional.size()) && !ok; ++bits) {
                tick();
                std::vector<std::uint64_t> a(sl.lx.begin(), sl.lx.end());
                for (std::size_t j = 0; j < optional.size(); ++j)
                    if ((bits >> j) & 1u) a.push_back(optional[j]);
                ok = true;
                for (auto y : sl.ly) {
                    for (auto x : a)
                        if (!sl.pairs.count({x, y})) {
                            ok = false;
                            break;
                        }
                    if (!ok) break;
                }
            }
            if (!ok) return false;
        }
        return true;
    }

    bool interval_search(const Formula& f, const Vars& vars, const Rows& cur, const Rows& free, std::size_t i) {
        tick();
        Rows rest(free.begin() + long(i), free.end());
        if (!maybe(f, vars, cur, unite(cur, rest))) return false;
        if (i == free.size()) return sat(f, vars, cur);
        if (interval_search(f, vars, unite(cur, {free[i]}), free, i + 1)) return true;
        return interval_search(f, vars, cur, free, i + 1);
    }

    // ---- necessary condition for some S ∈ [lo, hi] satisfying f

    bool maybe(const Formula& f, const Vars& vars, const Rows& lo, const Rows& hi) {
        const Info& in = info(f);
        if (lo.empty() && in.etp) return true;
        if (in.local && vars != f.free) return maybe(f, f.free, project(lo, vars, f.free), project(hi, vars, f.free));
        if (f.flat) return all_rows_sat(f, vars, lo);
        if (f.dc) return sat(f, vars, lo);
        if (f.uc) return includes(maxsub(f, vars, hi), lo);
        switch (f.kind) {
        case Kind::And: return maybe(*f.left, vars, lo, hi) && maybe(*f.right, vars, lo, hi);
        case Kind::Ior: return maybe(*f.left, vars, lo, hi) || maybe(*f.right, vars, lo, hi);
        case Kind::Ind: return ind_possible(f, vars, lo, hi);
        case Kind::Or: {
            Rows ll, lr, hl, hr;
            for (auto s : lo) {
                bool a = allowed(*f.left, vars, s), b = allowed(*f.right, vars, s);
                if (!a && !b) return false;
                if (a && !b) ll.push_back(s);
                if (b && !a) lr.push_back(s);
            }
            for (auto s : hi) {
                if (allowed(*f.left, vars, s)) hl.push_back(s);
                if (allowed(*f.right, vars, s)) hr.push_back(s);
            }
            return maybe(*f.left, vars, ll, hl) && maybe(*f.right, vars, lr, hr);
        }
        default: return true;
        }
    }

    bool ind_possible(const Formula& f, const Vars& vars, const Rows& lo, const Rows& hi) {
        auto X = cols(vars, f.xs), Y = cols(vars, f.ys), Z = cols(vars, f.zs);
        std::set<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> up;
        for (auto s : hi) up.emplace(remap(s, Z), remap(s, X), remap(s, Y));
        std::map<std::uint64_t, std::pair<std::set<std::uint64_t>, std::set<std::uint64_t>>> slices;
        for (auto s : lo) {
            auto& sl = slices[remap(s, Z)];
            sl.first.insert(remap(s, X));
            sl.second.insert(remap(s, Y));
        }
        for (const auto& [z, sl] : slices)
            for (auto x : sl.first)
                for (auto y : sl.second)
                    if (!up.count({z, x, y})) return false;
        return true;
    }

    // ---- greatest subteam of w satisfying a union-closed f

    Rows maxsub(const Formula& f, const Vars& vars, const Rows& w) {
        if (vars != f.free) return preimage(w, vars, f.free, maxsub(f, f.free, project(w, vars, f.free)));
        if (f.flat) return filter_rows(f, vars, w);
        tick();
        switch (f.kind) {
        case Kind::Inc:
        case Kind::Ano: {
            auto X = cols(vars, f.xs), Y = cols(vars, f.ys);
            Rows cur = w;
            for (;;) {
                Rows next;
                if (f.kind == Kind::Inc) {
                    std::unordered_set<std::uint64_t> ys;
                    for (auto s : cur) ys.insert(remap(s, Y));
                    for (auto s : cur)
                        if (ys.count(remap(s, X))) next.push_back(s);
                } else {
                    std::map<std::uint64_t, std::set<std::uint64_t>> cls;
                    for (auto s : cur) cls[remap(s, X)].insert(remap(s, Y));
                    for (auto s : cur)
                        if (cls[remap(s, X)].size() >= 2) next.push_back(s);
                }
                if (next.size() == cur.size()) return cur;
                cur = std::move(next);
            }
        }
        case Kind::And: {
            Rows cur = w;
            for (;;) {
                Rows next = maxsub(*f.left, vars, maxsub(*f.right, vars, cur));
                if (next.size() == cur.size()) return cur;
                cur = std::move(next);
            }
        }
        case Kind::Or: return unite(maxsub(*f.left, vars, w), maxsub(*f.right, vars, w));
        case Kind::Exists: {
            auto scope = scope_after(vars, f.xs);
            auto z = maxsub(*f.left, scope, extend_all(w, vars, scope, 1));
            const Vars outer(scope.begin(), scope.end() - 1);
            return preimage(w, vars, outer, project(z, scope, outer));
        }
        case Kind::Forall:
        case Kind::A1: {
            auto scope = scope_after(vars, f.xs);
            Rows cur = w;
            for (;;) {
                Rows next;
                if (f.kind == Kind::Forall) {
                    auto z = maxsub(*f.left, scope, extend_all(cur, vars, scope, 1));
                    for (auto s : cur) {
                        bool all = true;
                        for (auto e : extend_all({s}, vars, scope, 1)) all = all && has(z, e);
                        if (all) next.push_back(s);
                    }
                } else {
                    std::vector<Rows> zs;
                    for (std::size_t a = 0; a < n(); ++a)
                        zs.push_back(maxsub(*f.left, scope, extend_const(cur, vars, scope, a)));
                    for (auto s : cur) {
                        bool all = true;
                        for (std::size_t a = 0; a < n() && all; ++a)
                            all = has(zs[a], extend_const({s}, vars, scope, a)[0]);
                        if (all) next.push_back(s);
                    }
                }
                if (next.size() == cur.size()) return cur;
                cur = std::move(next);
            }
        }
        case Kind::D1: {
            auto c = cols(vars, f.xs)[0];
            std::vector<Rows> parts(n());
            for (auto s : w) parts[digit(s, c)].push_back(s);
            Rows out;
            for (const auto& p : parts) out = unite(out, maxsub(*f.left, vars, p));
            return out;
        }
        default:
            throw Error(ErrorKind::Unsupported, "no greatest-subteam rule for this formula");
        }
    }

    // ---- choice search: one option per group, options are row sets

    struct Group {
        std::vector<Rows> options;
    };

    bool search_groups(const Formula& body, const Vars& scope, std::vector<Group> groups) {
        Rows everything;
        for (const auto& g : groups)
            for (const auto& o : g.options) everything = unite(everything, o);
        for (auto& g : groups) {
            std::vector<Rows> kept;
            for (auto& o : g.options) {
                tick();
                if (maybe(body, scope, o, everything)) kept.push_back(std::move(o));
            }
            if (kept.empty()) return false;
            g.options = std::move(kept);
        }
        std::stable_sort(groups.begin(), groups.end(),
                         [](const Group& a, const Group& b) { return a.options.size() < b.options.size(); });
        std::vector<Rows> hull(groups.size() + 1);
        for (std::size_t i = groups.size(); i-- > 0;) {
            hull[i] = hull[i + 1];
            for (const auto& o : groups[i].options) hull[i] = unite(hull[i], o);
        }
        return choose(body, scope, groups, hull, 0, {});
    }

    bool choose(const Formula& body, const Vars& scope, const std::vector<Group>& groups, const std::vector<Rows>& hull,
                std::size_t i, const Rows& cur) {
        if (i == groups.size()) return sat(body, scope, cur);
        for (const auto& o : groups[i].options) {
            tick();
            Rows next = unite(cur, o);
            if (!maybe(body, scope, next, unite(next, hull[i + 1]))) continue;
            if (choose(body, scope, groups, hull, i + 1, next)) return true;
        }
        return false;
    }

    // ---- existential blocks

    bool sat_exists(const Formula& f, const Vars& vars, const Rows& t) {
        Vars q = f.xs;
        const Formula* body = f.left.get();
        while (body->kind == Kind::Exists && !contains_var(q, body->xs[0])) {
            q.push_back(body->xs[0]);
            body = body->left.get();
        }
        const auto scope = scope_after(vars, q);
        const std::size_t k = scope.size() - q.size();
        const Vars outer(scope.begin(), scope.begin() + long(k));
        Rows bases = project(t, vars, outer);

        std::vector<const Formula*> cs, flats, rest;
        conjuncts(body, cs);
        for (auto c : cs) (c->flat ? flats : rest).push_back(c);

        const std::uint64_t width = pw(q.size());
        std::vector<Rows> cands(bases.size());
        Rows all;
        for (std::size_t g = 0; g < bases.size(); ++g) {
            for (std::uint64_t b = 0; b < width; ++b) {
                auto row = bases[g] + b * pw(k);
                if (guards_hold(flats, scope, row)) cands[g].push_back(row);
            }
            if (cands[g].empty()) return false;
            all = unite(all, cands[g]);
        }

        if (body->uc) {
            auto z = maxsub(*body, scope, all);
            for (const auto& c : cands)
                if (std::none_of(c.begin(), c.end(), [&](std::uint64_t r) { return has(z, r); })) return false;
            return true;
        }
        if (body->dc) {
            std::vector<Group> groups(bases.size());
            for (std::size_t g = 0; g < bases.size(); ++g)
                for (auto r : cands[g]) groups[g].options.push_back({r});
            return search_groups(*body, scope, std::move(groups));
        }
        if (rest.size() == 1 && separable_ind(*rest[0]) && rest[0]->zs.empty())
            return exists_product(*body, *rest[0], scope, cands, all);
        if (auto groups = skolem_groups(*body, rest, q, scope, outer, bases, cands, k))
            return search_groups(*body, scope, std::move(*groups));

        std::vector<Group> groups(bases.size());
        for (std::size_t g = 0; g < bases.size(); ++g) {
            const auto& c = cands[g];
            if (c.size() > 16) throw Error(ErrorKind::Budget, "too many witness sets for an existential block");
            std::vector<std::uint64_t> masks;
            for (std::uint64_t bits = 1; bits < (std::uint64_t(1) << c.size()); ++bits) masks.push_back(bits);
            std::stable_sort(masks.begin(), masks.end(),
                             [](std::uint64_t a, std::uint64_t b) { return std::popcount(a) < std::popcount(b); });
            for (auto bits : masks) {
                Rows o;
                for (std::size_t j = 0; j < c.size(); ++j)
                    if ((bits >> j) & 1u) o.push_back(c[j]);
                groups[g].options.push_back(std::move(o));
            }
        }
        return search_groups(*body, scope, std::move(groups));
    }

    // body = flats ∧ x ⊥ y: for each x-side A the best y-side is forced
    bool exists_product(const Formula& body, const Formula& ind, const Vars& scope, const std::vector<Rows>& cands,
                        const Rows& all) {
        auto X = cols(scope, ind.xs), Y = cols(scope, ind.ys);
        std::set<std::pair<std::uint64_t, std::uint64_t>> pairs;
        std::set<std::uint64_t> xset, yset;
        for (auto r : all) {
            pairs.emplace(remap(r, X), remap(r, Y));
            xset.insert(remap(r, X));
            yset.insert(remap(r, Y));
        }
        std::vector<std::uint64_t> xs(xset.begin(), xset.end());
        if (xs.size() > 20) throw Error(ErrorKind::CapExceeded, "independence side too wide");
        for (std::uint64_t bits = 1; bits < (std::uint64_t(1) << xs.size()); ++bits) {
            tick();
            std::set<std::uint64_t> a, b;
            for (std::size_t j = 0; j < xs.size(); ++j)
                if ((bits >> j) & 1u) a.insert(xs[j]);
            for (auto y : yset) {
                bool ok = true;
                for (auto x : a) ok = ok && pairs.count({x, y});
                if (ok) b.insert(y);
            }
            if (b.empty()) continue;
            Rows s;
            bool covered = true;
            for (const auto& c : cands) {
                bool hit = false;
                for (auto r : c)
                    if (a.count(remap(r, X)) && b.count(remap(r, Y))) {
                        s.push_back(r);
                        hit = true;
                    }
                if (!hit) {
                    covered = false;
                    break;
                }
            }
            if (!covered) continue;
            normalize(s);
            if (sat(body, scope, s)) return true;
        }
        return false;
    }

    // every bound variable is a function of outer variables W via a dep atom:
    // one value tuple per W-class
    std::optional<std::vector<Group>> skolem_groups(const Formula& body, const std::vector<const Formula*>& rest,
                                                    const Vars& q, const Vars& scope, const Vars& outer,
                                                    const Rows& bases, const std::vector<Rows>& cands, std::size_t k) {
        Vars w;
        std::vector<std::set<std::string>> wsets;
        for (const auto& u : q) {
            const Formula* found = nullptr;
            for (auto c : rest)
                if (c->kind == Kind::Dep && c->ys[0] == u &&
                    std::none_of(c->xs.begin(), c->xs.end(), [&](const std::string& v) { return contains_var(q, v); }))
                    found = c;
            if (!found) return std::nullopt;
            wsets.emplace_back(found->xs.begin(), found->xs.end());
            for (const auto& v : found->xs)
                if (!contains_var(w, v)) w.push_back(v);
        }
        const std::set<std::string> wall(w.begin(), w.end());
        bool dedup = std::all_of(wsets.begin(), wsets.end(), [&](const auto& s) { return s == wall; });
        std::vector<const Formula*> literals;
        collect_for_dedup(body, q, wall, literals, dedup);

        auto W = cols(outer, w);
        std::map<std::uint64_t, std::vector<std::uint64_t>> classes;
        for (auto b : bases) classes[remap(b, W)].push_back(b);
        std::vector<Group> groups;
        const std::uint64_t width = pw(q.size());
        for (const auto& [key, members] : classes) {
            Group g;
            std::set<std::vector<bool>> seen;
            for (std::uint64_t b = 0; b < width; ++b) {
                Rows o;
                bool ok = true;
                for (auto base : members) {
                    auto row = base + b * pw(k);
                    auto gi = std::size_t(std::lower_bound(bases.begin(), bases.end(), base) - bases.begin());
                    if (!has(cands[gi], row)) {
                        ok = false;
                        break;
                    }
                    o.push_back(row);
                }
                if (!ok) continue;
                if (dedup) {
                    std::vector<bool> sig;
                    for (auto row : o)
                        for (auto lit : literals) sig.push_back(row_sat(*lit, scope, row));
                    if (!seen.insert(sig).second) continue;
                }
                normalize(o);
                g.options.push_back(std::move(o));
            }
            if (g.options.empty()) return std::vector<Group>{Group{}};
            groups.push_back(std::move(g));
        }
        return groups;
    }

    // literals mentioning bound variables; dedup is only sound when every
    // other mention of them is a dep atom over the whole class key
    static void collect_for_dedup(const Formula& f, const Vars& q, const std::set<std::string>& wall,
                                  std::vector<const Formula*>& literals, bool& dedup) {
        if (f.kind == Kind::And || f.kind == Kind::Or) {
            collect_for_dedup(*f.left, q, wall, literals, dedup);
            collect_for_dedup(*f.right, q, wall, literals, dedup);
            return;
        }
        if (f.is_quantifier() || f.is_binary()) {
            dedup = false;
            return;
        }
        bool mentions = std::any_of(f.free.begin(), f.free.end(), [&](const std::string& v) { return contains_var(q, v); });
        if (!mentions) return;
        switch (f.kind) {
        case Kind::Eq: case Kind::Neq: case Kind::Rel: case Kind::NRel:
            literals.push_back(&f);
            return;
        case Kind::Dep:
            if (contains_var(q, f.ys[0]) && std::set<std::string>(f.xs.begin(), f.xs.end()) == wall) return;
            dedup = false;
            return;
        default:
            dedup = false;
        }
    }

    // ---- Lindström quantifiers

    bool sat_q(const Formula& f, const Vars& vars, const Rows& t) {
        const auto& K = cls(f.name);
        const Vars& ys = f.xs;
        const std::size_t r = ys.size();
        const auto scope = scope_after(vars, ys);
        const std::size_t k = scope.size() - r;
        const Vars outer(scope.begin(), scope.begin() + long(k));
        const Formula& body = *f.left;
        Rows bases = project(t, vars, outer);
        const std::uint64_t width = pw(r);
        if (width > 16) throw Error(ErrorKind::CapExceeded, "quantified tuple space too large");

        std::vector<const Formula*> cs, flats;
        conjuncts(&body, cs);
        for (auto c : cs)
            if (c->flat) flats.push_back(c);
        std::vector<std::uint64_t> candmask(bases.size(), 0);
        Rows all;
        for (std::size_t g = 0; g < bases.size(); ++g)
            for (std::uint64_t b = 0; b < width; ++b) {
                auto row = bases[g] + b * pw(k);
                if (guards_hold(flats, scope, row)) {
                    candmask[g] |= std::uint64_t(1) << b;
                    all.push_back(row);
                }
            }
        normalize(all);

        if (body.uc && K.upward_closed && !K.contains_empty(n(), r)) {
            auto z = maxsub(body, scope, all);
            for (auto base : bases) {
                Subset w(width);
                for (std::uint64_t b = 0; b < width; ++b)
                    if (has(z, base + b * pw(k))) w.set(b);
                if (!K.contains(n(), r, w)) return false;
            }
            return true;
        }
        std::vector<std::uint64_t> members;
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << width); ++mask)
            if (K.contains(n(), r, Subset::from_mask(width, mask))) members.push_back(mask);
        std::vector<Group> groups(bases.size());
        for (std::size_t g = 0; g < bases.size(); ++g) {
            for (auto mask : members) {
                if ((mask & ~candmask[g]) != 0) continue;
                Rows o;
                for (std::uint64_t b = 0; b < width; ++b)
                    if ((mask >> b) & 1u) o.push_back(bases[g] + b * pw(k));
                groups[g].options.push_back(std::move(o));
            }
            if (groups[g].options.empty()) return false;
        }
        return search_groups(body, scope, std::move(groups));
    }

    // ---- tensor conjunction: T = U ∩ V over the whole context

    bool sat_tand(const Formula& f, const Vars& vars, const Rows& t) {
        const Formula &l = *f.left, &r = *f.right;
        Rows full = all_rows(vars.size());
        if (l.dc) return sat(l, vars, t) && interval(r, vars, t, full);
        if (r.dc) return sat(r, vars, t) && interval(l, vars, t, full);
        return tand_search(l, r, vars, t, full, t, minus(full, t), 0);
    }

    bool tand_search(const Formula& l, const Formula& r, const Vars& vars, const Rows& t, const Rows& full,
                     const Rows& u, const Rows& free, std::size_t i) {
        tick();
        Rows rest(free.begin() + long(i), free.end());
        if (!maybe(l, vars, u, unite(u, rest))) return false;
        if (i == free.size()) return sat(l, vars, u) && interval(r, vars, t, unite(t, minus(full, u)));
        if (tand_search(l, r, vars, t, full, u, free, i + 1)) return true;
        return tand_search(l, r, vars, t, full, unite(u, {free[i]}), free, i + 1);
    }

    // ---- intuitionistic implication: every subteam

    bool sat_imp(const Formula& f, const Vars& vars, const Rows& t) {
        if (t.size() > 24) throw Error(ErrorKind::CapExceeded, "team too large for subteam enumeration");
        return imp_visit(f, vars, t, {}, 0);
    }

    bool imp_visit(const Formula& f, const Vars& vars, const Rows& t, const Rows& y, std::size_t start) {
        tick();
        bool a = sat(*f.left, vars, y);
        if (!a && f.left->dc) return true;
        if (a && !sat(*f.right, vars, y)) return false;
        for (std::size_t j = start; j < t.size(); ++j)
            if (!imp_visit(f, vars, t, unite(y, {t[j]}), j + 1)) return false;
        return true;
    }

    SearchBudget budget_;
    BudgetMeter meter_;
    std::unordered_map<const Formula*, Info> info_;
    std::unordered_map<std::string, bool> memo_;
};

// -------------------------------------------------------------------------
// Reference evaluator: the definitions, verbatim, over the full context.

class Reference : public Core {
public:
    Reference(const Structure& m, SearchBudget b) : Core(m), meter_(b) {}

    bool sat(const Formula& f, const Vars& vars, const Rows& t) {
        auto key = memo_key(&f, vars, t);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        tick();
        bool v = eval(f, vars, t);
        memo_.emplace(std::move(key), v);
        return v;
    }

private:
    void tick() {
        if (!meter_.tick()) out_of_budget();
    }

    std::size_t col(const Vars& vars, const std::string& v) const { return cols(vars, {v})[0]; }

    bool agree(const Vars& vars, std::uint64_t s, std::uint64_t t, const std::vector<std::string>& xs) const {
        for (const auto& x : xs)
            if (digit(s, col(vars, x)) != digit(t, col(vars, x))) return false;
        return true;
    }

    bool same_values(const Vars& vars, std::uint64_t s, const std::vector<std::string>& xs, std::uint64_t t,
                     const std::vector<std::string>& ys) const {
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (digit(s, col(vars, xs[i])) != digit(t, col(vars, ys[i]))) return false;
        return true;
    }

    bool atom(const Formula& f, const Vars& vars, const Rows& t) const {
        switch (f.kind) {
        case Kind::Dep:
            for (auto s : t)
                for (auto u : t)
                    if (agree(vars, s, u, f.xs) && !agree(vars, s, u, f.ys)) return false;
            return true;
        case Kind::Const:
            for (auto s : t)
                for (auto u : t)
                    if (!agree(vars, s, u, f.xs)) return false;
            return true;
        case Kind::Exc:
            for (auto s : t)
                for (auto u : t)
                    if (same_values(vars, s, f.xs, u, f.ys)) return false;
            return true;
        case Kind::Inc:
            for (auto s : t)
                if (std::none_of(t.begin(), t.end(), [&](std::uint64_t u) { return same_values(vars, s, f.xs, u, f.ys); }))
                    return false;
            return true;
        case Kind::Ano:
            for (auto s : t)
                if (std::none_of(t.begin(), t.end(), [&](std::uint64_t u) {
                        return agree(vars, s, u, f.xs) && !agree(vars, s, u, f.ys);
                    }))
                    return false;
            return true;
        case Kind::Ind:
            for (auto s : t)
                for (auto u : t) {
                    if (!agree(vars, s, u, f.zs)) continue;
                    bool found = std::any_of(t.begin(), t.end(), [&](std::uint64_t w) {
                        return agree(vars, w, s, f.zs) && agree(vars, w, s, f.xs) && agree(vars, w, u, f.ys);
                    });
                    if (!found) return false;
                }
            return true;
        case Kind::NE:
            return !t.empty();
        case Kind::Even:
        case Kind::Half: {
            std::set<std::vector<std::size_t>> vals;
            for (auto s : t) {
                std::vector<std::size_t> v;
                for (const auto& x : f.xs) v.push_back(digit(s, col(vars, x)));
                vals.insert(v);
            }
            if (f.kind == Kind::Even) return vals.size() % 2 == 0;
            return 2 * vals.size() <= pw(f.xs.size());
        }
        default:
            throw Error(ErrorKind::Unsupported, "not an atom");
        }
    }

    // all subsets of `rows`, as callbacks; stops when fn returns true
    template <class Fn>
    bool any_subset(const Rows& rows, Fn fn) {
        if (rows.size() > 24) throw Error(ErrorKind::CapExceeded, "too many rows for subset enumeration");
        for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << rows.size()); ++bits) {
            tick();
            Rows s;
            for (std::size_t j = 0; j < rows.size(); ++j)
                if ((bits >> j) & 1u) s.push_back(rows[j]);
            if (fn(s)) return true;
        }
        return false;
    }

    // choose one option per row of t; odometer over the option lists
    template <class Options, class Fn>
    bool any_choice(const Rows& t, Options options, Fn fn) {
        std::vector<std::vector<Rows>> opts;
        for (auto s : t) opts.push_back(options(s));
        for (const auto& o : opts)
            if (o.empty()) return false;
        std::vector<std::size_t> idx(t.size(), 0);
        for (;;) {
            tick();
            Rows s;
            for (std::size_t i = 0; i < t.size(); ++i) s.insert(s.end(), opts[i][idx[i]].begin(), opts[i][idx[i]].end());
            normalize(s);
            if (fn(s)) return true;
            std::size_t i = 0;
            while (i < idx.size() && ++idx[i] == opts[i].size()) idx[i++] = 0;
            if (i == idx.size()) return false;
        }
    }

    bool eval(const Formula& f, const Vars& vars, const Rows& t) {
        switch (f.kind) {
        case Kind::Eq: case Kind::Neq: case Kind::Rel: case Kind::NRel:
            return all_rows_sat(f, vars, t);
        case Kind::Dep: case Kind::Const: case Kind::Exc: case Kind::Inc: case Kind::Ano:
        case Kind::Ind: case Kind::NE: case Kind::Even: case Kind::Half:
            return atom(f, vars, t);
        case Kind::And: return sat(*f.left, vars, t) && sat(*f.right, vars, t);
        case Kind::Ior: return sat(*f.left, vars, t) || sat(*f.right, vars, t);
        case Kind::Or: {
            // each row goes left, right or both
            std::vector<std::size_t> side(t.size(), 0);
            for (;;) {
                tick();
                Rows u, v;
                for (std::size_t i = 0; i < t.size(); ++i) {
                    if (side[i] != 1) u.push_back(t[i]);
                    if (side[i] != 0) v.push_back(t[i]);
                }
                if (sat(*f.left, vars, u) && sat(*f.right, vars, v)) return true;
                std::size_t i = 0;
                while (i < side.size() && ++side[i] == 3) side[i++] = 0;
                if (i == side.size()) return false;
            }
        }
        case Kind::Tand: {
            Rows full = all_rows(vars.size());
            Rows outside = minus(full, t);
            return any_subset(outside, [&](const Rows& extra_u) {
                Rows u = unite(t, extra_u);
                if (!sat(*f.left, vars, u)) return false;
                return any_subset(minus(outside, extra_u), [&](const Rows& extra_v) {
                    return sat(*f.right, vars, unite(t, extra_v));
                });
            });
        }
        case Kind::Imp:
            return !any_subset(t, [&](const Rows& y) { return sat(*f.left, vars, y) && !sat(*f.right, vars, y); });
        case Kind::Exists:
        case Kind::Forall:
        case Kind::E1:
        case Kind::A1: {
            auto scope = scope_after(vars, f.xs);
            if (f.kind == Kind::Forall) return sat(*f.left, scope, extend_all(t, vars, scope, 1));
            if (f.kind == Kind::E1 || f.kind == Kind::A1) {
                const bool any = f.kind == Kind::E1;
                for (std::size_t a = 0; a < n(); ++a)
                    if (sat(*f.left, scope, extend_const(t, vars, scope, a)) == any) return any;
                return !any;
            }
            return any_choice(
                t,
                [&](std::uint64_t s) {
                    std::vector<Rows> opts;
                    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n()); ++mask) {
                        Rows o;
                        for (std::size_t a = 0; a < n(); ++a)
                            if ((mask >> a) & 1u) o.push_back(extend_const({s}, vars, scope, a)[0]);
                        normalize(o);
                        opts.push_back(o);
                    }
                    return opts;
                },
                [&](const Rows& s) { return sat(*f.left, scope, s); });
        }
        case Kind::D1: {
            auto c = col(vars, f.xs[0]);
            for (std::size_t a = 0; a < n(); ++a) {
                Rows part;
                for (auto s : t)
                    if (digit(s, c) == a) part.push_back(s);
                if (!sat(*f.left, vars, part)) return false;
            }
            return true;
        }
        case Kind::Q: {
            const auto& K = cls(f.name);
            const std::size_t r = f.xs.size();
            auto scope = scope_after(vars, f.xs);
            const std::size_t k = scope.size() - r;
            const std::uint64_t width = pw(r);
            if (width > 16) throw Error(ErrorKind::CapExceeded, "quantified tuple space too large");
            auto outer_cols = cols(vars, Vars(scope.begin(), scope.begin() + long(k)));
            return any_choice(
                t,
                [&](std::uint64_t s) {
                    std::vector<Rows> opts;
                    auto base = remap(s, outer_cols);
                    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << width); ++mask) {
                        if (!K.contains(n(), r, Subset::from_mask(width, mask))) continue;
                        Rows o;
                        for (std::uint64_t b = 0; b < width; ++b)
                            if ((mask >> b) & 1u) o.push_back(base + b * pw(k));
                        opts.push_back(o);
                    }
                    return opts;
                },
                [&](const Rows& s) { return sat(*f.left, scope, s); });
        }
        }
        throw Error(ErrorKind::Unsupported, "unexpected formula kind");
    }

    BudgetMeter meter_;
    std::unordered_map<std::string, bool> memo_;
};

}  // namespace

struct Evaluator::Impl {
    Impl(const Structure& m, SearchBudget b) : engine(m, b) {}
    Engine engine;
    std::unordered_set<FormulaPtr> held;  // the caches key on node addresses
};

Evaluator::Evaluator(const Structure& m, SearchBudget budget) : impl_(std::make_unique<Impl>(m, budget)) {}
Evaluator::~Evaluator() = default;
Evaluator::Evaluator(Evaluator&&) noexcept = default;
Evaluator& Evaluator::operator=(Evaluator&&) noexcept = default;

bool Evaluator::satisfies(const Team& t, const FormulaPtr& f) {
    check_formula(impl_->engine.structure(), *f, t.vars);
    impl_->held.insert(f);
    impl_->engine.reset_meter();
    return impl_->engine.sat(*f, t.vars, t.rows);
}

std::uint64_t Evaluator::nodes() const { return impl_->engine.nodes(); }
const Structure& Evaluator::structure() const { return impl_->engine.structure(); }

bool satisfies(const Structure& m, const Team& t, const FormulaPtr& f, const SearchBudget& budget) {
    Evaluator e(m, budget);
    return e.satisfies(t, f);
}

bool reference_satisfies(const Structure& m, const Team& t, const FormulaPtr& f, const SearchBudget& budget) {
    check_formula(m, *f, t.vars);
    Reference r(m, budget);
    return r.sat(*f, t.vars, t.rows);
}

}  // namespace teamdim::logic
