#include "teamdim/structure.hpp"
#include "teamdim/error.hpp"
#include "teamdim/textio.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <set>
#include <sstream>

namespace teamdim::logic {

std::uint64_t power(std::size_t n, std::size_t m) {
    std::uint64_t p = 1;
    for (std::size_t i = 0; i < m; ++i) {
        if (n != 0 && p > (std::uint64_t(1) << 62) / n) throw Error(ErrorKind::CapExceeded, "n^m overflows");
        p *= n;
    }
    return p;
}

std::uint64_t encode(const Tuple& t, std::size_t n) {
    std::uint64_t code = 0, w = 1;
    for (auto v : t) {
        code += v * w;
        w *= n;
    }
    return code;
}

Tuple decode(std::uint64_t code, std::size_t n, std::size_t m) {
    Tuple t(m);
    for (std::size_t i = 0; i < m; ++i) {
        t[i] = code % n;
        code /= n;
    }
    return t;
}

Structure::Structure(std::size_t n) : n_(n) {
    if (n == 0) throw Error(ErrorKind::Input, "universe must be nonempty");
}

void Structure::add_relation(const std::string& name, std::size_t arity, const std::vector<Tuple>& tuples) {
    if (rels_.count(name)) throw Error(ErrorKind::Input, "relation " + name + " defined twice");
    power(n_, arity);
    Rel r;
    r.arity = arity;
    for (const auto& t : tuples) {
        if (t.size() != arity) throw Error(ErrorKind::Arity, "tuple of wrong length for " + name);
        for (auto v : t)
            if (v >= n_) throw Error(ErrorKind::Input, "tuple element outside the universe in " + name);
        r.tuples.insert(encode(t, n_));
    }
    rels_.emplace(name, std::move(r));
}

const Structure::Rel* Structure::find(const std::string& name) const {
    auto it = rels_.find(name);
    return it == rels_.end() ? nullptr : &it->second;
}

bool Structure::holds(const std::string& name, const Tuple& args) const {
    const Rel* r = find(name);
    if (!r) throw Error(ErrorKind::Input, "unknown relation " + name);
    if (r->arity != args.size()) throw Error(ErrorKind::Arity, "wrong number of arguments for " + name);
    return r->tuples.count(encode(args, n_)) > 0;
}

Team make_team(Vars vars, const std::vector<Tuple>& rows, std::size_t n) {
    std::set<std::string> distinct(vars.begin(), vars.end());
    if (distinct.size() != vars.size()) throw Error(ErrorKind::Input, "repeated team variable");
    power(n, vars.size());
    Team t;
    t.vars = std::move(vars);
    for (const auto& r : rows) {
        if (r.size() != t.vars.size()) throw Error(ErrorKind::Arity, "row length differs from the variable list");
        for (auto v : r)
            if (v >= n) throw Error(ErrorKind::Input, "row value outside the universe");
        t.rows.push_back(encode(r, n));
    }
    std::sort(t.rows.begin(), t.rows.end());
    t.rows.erase(std::unique(t.rows.begin(), t.rows.end()), t.rows.end());
    return t;
}

Subset team_to_subset(const Team& t, std::size_t n) {
    auto space = power(n, t.vars.size());
    if (space > (1u << 24)) throw Error(ErrorKind::CapExceeded, "team space too large for a subset");
    Subset s(space);
    for (auto r : t.rows) s.set(r);
    return s;
}

Team subset_to_team(const Vars& vars, const Subset& s, std::size_t n) {
    if (s.width() != power(n, vars.size())) throw Error(ErrorKind::BaseMismatch, "subset width is not n^m");
    Team t;
    t.vars = vars;
    for (auto e : s.elements()) t.rows.push_back(e);
    return t;
}

namespace {

std::vector<std::string> words(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream in{std::string(line)};
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

std::size_t number(const std::string& w, int line, const char* what) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc() || p != w.data() + w.size()) throw ParseError(std::string("expected ") + what, line, 1);
    return v;
}

Tuple tuple_line(const std::vector<std::string>& ws, std::size_t arity, std::size_t n, int line) {
    if (arity == 0 && ws.size() == 1 && ws[0] == "()") return {};
    if (ws.size() != arity) throw ParseError("expected " + std::to_string(arity) + " values", line, 1);
    Tuple t;
    for (const auto& w : ws) {
        auto v = number(w, line, "a universe element");
        if (v >= n) throw ParseError("element " + w + " outside the universe", line, 1);
        t.push_back(v);
    }
    return t;
}

}  // namespace

Structure parse_structure(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    std::optional<Structure> m;
    std::string cur;
    std::size_t arity = 0;
    std::vector<Tuple> tuples;
    bool open = false;
    while (std::getline(in, raw)) {
        ++lineno;
        auto line = io::trim(raw);
        if (line.empty() || line[0] == '#') continue;
        auto ws = words(line);
        if (!m) {
            if (ws.size() != 2 || ws[0] != "universe") throw ParseError("expected `universe n`", lineno, 1);
            auto n = number(ws[1], lineno, "a universe size");
            if (n == 0) throw ParseError("universe must be nonempty", lineno, 1);
            m.emplace(n);
            continue;
        }
        if (!open) {
            if (ws.size() != 3 || ws[0] != "rel") throw ParseError("expected `rel NAME ARITY`", lineno, 1);
            cur = ws[1];
            arity = number(ws[2], lineno, "an arity");
            if (m->find(cur)) throw ParseError("relation " + cur + " defined twice", lineno, 1);
            tuples.clear();
            open = true;
            continue;
        }
        if (ws.size() == 1 && ws[0] == "end") {
            m->add_relation(cur, arity, tuples);
            open = false;
            continue;
        }
        tuples.push_back(tuple_line(ws, arity, m->size(), lineno));
    }
    if (!m) throw ParseError("missing `universe` line", lineno + 1, 1);
    if (open) throw ParseError("relation " + cur + " is missing `end`", lineno + 1, 1);
    return *m;
}

std::string format_structure(const Structure& m) {
    std::ostringstream out;
    out << "universe " << m.size() << '\n';
    for (const auto& [name, r] : m.relations()) {
        out << "rel " << name << ' ' << r.arity << '\n';
        std::vector<std::uint64_t> codes(r.tuples.begin(), r.tuples.end());
        std::sort(codes.begin(), codes.end());
        for (auto c : codes) {
            auto t = decode(c, m.size(), r.arity);
            if (t.empty()) out << "()";
            for (std::size_t i = 0; i < t.size(); ++i) out << (i ? " " : "") << t[i];
            out << '\n';
        }
        out << "end\n";
    }
    return out.str();
}

Team parse_team(const std::string& text, std::size_t n) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    std::optional<Vars> vars;
    std::vector<Tuple> rows;
    while (std::getline(in, raw)) {
        ++lineno;
        auto line = io::trim(raw);
        if (line.empty() || line[0] == '#') continue;
        auto ws = words(line);
        if (!vars) {
            if (ws.empty() || ws[0] != "vars") throw ParseError("expected `vars ...`", lineno, 1);
            vars = Vars(ws.begin() + 1, ws.end());
            std::set<std::string> d(vars->begin(), vars->end());
            if (d.size() != vars->size()) throw ParseError("repeated team variable", lineno, 1);
            continue;
        }
        rows.push_back(tuple_line(ws, vars->size(), n, lineno));
    }
    if (!vars) throw ParseError("missing `vars` line", lineno + 1, 1);
    return make_team(*vars, rows, n);
}

std::string format_team(const Team& t, std::size_t n) {
    std::ostringstream out;
    out << "vars";
    for (const auto& v : t.vars) out << ' ' << v;
    out << '\n';
    for (auto r : t.rows) {
        auto tup = decode(r, n, t.vars.size());
        if (tup.empty()) out << "()";
        for (std::size_t i = 0; i < tup.size(); ++i) out << (i ? " " : "") << tup[i];
        out << '\n';
    }
    return out.str();
}

}  // namespace teamdim::logic
