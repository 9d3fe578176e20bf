#include "teamdim/textio.hpp"
#include "teamdim/error.hpp"

#include <charconv>
#include <sstream>
#include <unordered_set>

namespace teamdim::io {

std::string_view trim(std::string_view s) {
    const char* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

Subset parse_element_list(std::string_view text, std::size_t width, int line) {
    auto t = trim(text);
    Subset s(width);
    if (t == "-") return s;
    if (t.empty()) throw ParseError("empty element list (use `-` for the empty set)", line, 1);
    std::size_t pos = 0;
    long prev = -1;
    while (pos < t.size()) {
        while (pos < t.size() && (t[pos] == ' ' || t[pos] == '\t')) ++pos;
        if (pos >= t.size()) break;
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(t.data() + pos, t.data() + t.size(), v);
        int col = int(pos) + 1;
        if (ec != std::errc() || (ptr != t.data() + t.size() && *ptr != ' ' && *ptr != '\t'))
            throw ParseError("expected an element index", line, col);
        if (v >= width) throw ParseError("element " + std::to_string(v) + " out of range", line, col);
        if (long(v) <= prev) throw ParseError("element indices must be strictly ascending", line, col);
        prev = long(v);
        s.set(v);
        pos = std::size_t(ptr - t.data());
    }
    return s;
}

std::string format_element_list(const Subset& s) {
    if (s.none()) return "-";
    std::string out;
    for (auto e : s.elements()) {
        if (!out.empty()) out += ' ';
        out += std::to_string(e);
    }
    return out;
}

Family parse_family(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::optional<std::size_t> base;
    std::vector<Subset> members;
    std::unordered_set<Subset, SubsetHash> seen;
    while (std::getline(in, line)) {
        ++lineno;
        auto t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (!base) {
            std::istringstream h{std::string(t)};
            std::string kw;
            std::size_t n = 0;
            std::string rest;
            if (!(h >> kw >> n) || kw != "base" || (h >> rest)) throw ParseError("expected `base N`", lineno, 1);
            if (n > 64) throw ParseError("base larger than 64 elements", lineno, 6);
            base = n;
            continue;
        }
        Subset s = parse_element_list(t, *base, lineno);
        if (!seen.insert(s).second) throw ParseError("duplicate member " + s.to_string(), lineno, 1);
        members.push_back(std::move(s));
    }
    if (!base) throw ParseError("missing `base N` header", lineno + 1, 1);
    return Family(BaseSet(*base), std::move(members));
}

std::string format_family(const Family& f) {
    std::string out = "base " + std::to_string(f.width()) + "\n";
    for (const auto& m : f) out += format_element_list(m) + "\n";
    return out;
}

std::string format_witness(const dims::CoverResult& r) {
    std::string out;
    if (r.mode == dims::CoverMode::interval) {
        for (const auto& iv : r.intervals)
            out += "[" + format_element_list(iv.lower) + "] [" + format_element_list(iv.upper) + "]\n";
    } else {
        for (const auto& s : r.sets) out += format_element_list(s) + "\n";
    }
    return out;
}

}  // namespace teamdim::io
