#include "teamdim/dnf.hpp"
#include "teamdim/cover.hpp"
#include "teamdim/error.hpp"
#include "teamdim/textio.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace teamdim::dnf {

namespace {

void check_vars(std::size_t n) {
    if (n > kMaxVars) throw Error(ErrorKind::CapExceeded, "more than 20 variables");
}

}  // namespace

BoolFunc::BoolFunc(std::size_t n) : vars(n) {
    check_vars(n);
    table.resize(std::size_t(1) << n);
}

BoolFunc family_to_boolfunc(const Family& f) {
    BoolFunc b(f.width());
    for (const auto& s : f) b.table.set(s.to_mask());
    return b;
}

Family boolfunc_to_family(const BoolFunc& f) {
    std::vector<std::uint64_t> masks;
    for (auto i = f.table.find_first(); i != boost::dynamic_bitset<>::npos; i = f.table.find_next(i)) masks.push_back(i);
    return Family::from_masks(f.vars, masks);
}

BoolFunc parse_boolfunc(const std::string& text) {
    std::istringstream in(text);
    std::string raw, bits;
    int lineno = 0;
    bool header = false;
    std::size_t n = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto line = io::trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            std::istringstream h{std::string(line)};
            std::string kw;
            if (!(h >> kw >> n) || kw != "boolfunc") throw ParseError("expected `boolfunc n`", lineno, 1);
            std::string extra;
            if (h >> extra) throw ParseError("unexpected text after the variable count", lineno, 1);
            if (n > kMaxVars) throw ParseError("more than 20 variables", lineno, 1);
            header = true;
            continue;
        }
        for (char c : line) {
            if (c == '0' || c == '1')
                bits += c;
            else if (!std::isspace(static_cast<unsigned char>(c)))
                throw ParseError(std::string("unexpected character '") + c + "' in truth table", lineno, 1);
        }
    }
    if (!header) throw ParseError("missing `boolfunc n` header", lineno + 1, 1);
    if (bits.size() != (std::size_t(1) << n))
        throw ParseError("truth table needs " + std::to_string(std::size_t(1) << n) + " bits, got " +
                             std::to_string(bits.size()),
                         lineno, 1);
    BoolFunc f(n);
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i] == '1') f.table.set(i);
    return f;
}

std::string format_boolfunc(const BoolFunc& f) {
    std::string out = "boolfunc " + std::to_string(f.vars) + "\n";
    for (std::size_t i = 0; i < f.table.size(); ++i) out += f.table.test(i) ? '1' : '0';
    return out + "\n";
}

Interval Implicant::interval(std::size_t n) const {
    const std::uint64_t all = n == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << n) - 1;
    return Interval{Subset::from_mask(n, value), Subset::from_mask(n, value | (all & ~std::uint64_t(care)))};
}

std::string Implicant::to_string(std::size_t n) const {
    std::string s;
    for (std::size_t i = 0; i < n; ++i) s += ((care >> i) & 1u) ? (((value >> i) & 1u) ? '1' : '0') : '-';
    return s;
}

std::vector<Implicant> prime_implicants(const BoolFunc& f) {
    const std::size_t n = f.vars;
    check_vars(n);
    const std::uint32_t all = (std::uint32_t(1) << n) - 1;
    // cubes keyed by free-variable mask; values have the free bits cleared
    std::unordered_map<std::uint32_t, std::unordered_set<std::uint32_t>> level, next;
    for (auto i = f.table.find_first(); i != boost::dynamic_bitset<>::npos; i = f.table.find_next(i))
        level[0].insert(std::uint32_t(i));
    std::vector<Implicant> primes;
    std::size_t total = 0;
    while (!level.empty()) {
        next.clear();
        for (const auto& [freem, values] : level) {
            for (auto v : values) {
                bool merged = false;
                for (std::size_t b = 0; b < n; ++b) {
                    const std::uint32_t bit = std::uint32_t(1) << b;
                    if (freem & bit) continue;
                    if (values.count(v ^ bit)) {
                        merged = true;
                        next[freem | bit].insert(v & ~bit);
                    }
                }
                if (!merged) primes.push_back({v, all & ~freem});
            }
            total += values.size();
            if (total > 20'000'000) throw Error(ErrorKind::CapExceeded, "too many implicants");
        }
        std::swap(level, next);
    }
    std::sort(primes.begin(), primes.end());
    return primes;
}

dims::CoverResult minimal_dnf_length(const BoolFunc& f, const SearchBudget& budget) {
    dims::CoverResult r;
    r.mode = dims::CoverMode::interval;
    if (f.table.none()) return r;
    auto primes = prime_implicants(f);
    std::unordered_map<std::uint64_t, std::size_t> index;
    for (auto i = f.table.find_first(); i != boost::dynamic_bitset<>::npos; i = f.table.find_next(i))
        index.emplace(i, index.size());
    cover::Instance inst;
    inst.universe = index.size();
    for (const auto& p : primes) {
        std::vector<std::size_t> elems;
        const std::uint32_t freem = ((std::uint32_t(1) << f.vars) - 1) & ~p.care;
        // every completion of the free bits
        for (std::uint32_t sub = freem;; sub = (sub - 1) & freem) {
            elems.push_back(index.at(p.value | sub));
            if (sub == 0) break;
        }
        std::sort(elems.begin(), elems.end());
        inst.sets.push_back(std::move(elems));
    }
    auto sol = cover::solve(inst, budget);
    r.value = sol.chosen.size();
    for (auto i : sol.chosen) r.intervals.push_back(primes[i].interval(f.vars));
    r.status = sol.exact ? dims::Status::exact : dims::Status::upper_bound_budget;
    return r;
}

}  // namespace teamdim::dnf
