#pragma once

#include "teamdim/family.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

// Concrete families of relations and the closed forms of their dimensions.
// Product bases X×Y(×Z) are indexed mixed radix, last coordinate fastest:
// (x, y) ↦ x·|Y| + y.
namespace teamdim::atomcat {

using BigInt = boost::multiprecision::cpp_int;

// the five families over X×Y (or X×X), |X| = l, |Y| = r
enum class TableFamily { mappings, exclusion, inclusion, anonymous, products };
const char* to_string(TableFamily t);
std::vector<TableFamily> all_table_families();

Family mapping_family(std::size_t l, std::size_t r);    // graphs of partial functions X → Y
Family exclusion_family(std::size_t l);                 // R ⊆ X×X, dom ∩ rg = ∅
Family inclusion_family(std::size_t l);                 // R ⊆ X×X, dom ⊆ rg
Family anonymous_family(std::size_t l, std::size_t r);  // every x in dom has two distinct images
Family product_family(std::size_t l, std::size_t r);    // A × B
// ⋃_c A_c × B_c × {c} over X×Y×Z
Family cond_product_family(std::size_t l, std::size_t r, std::size_t s);
Family even_family(std::size_t size);
Family half_family(std::size_t size);  // |A| ≤ size/2
Family table_family(TableFamily t, std::size_t l, std::size_t r);

struct DimValue {
    BigInt lo, hi;
    static DimValue exact(BigInt v) { return {v, v}; }
    bool is_exact() const { return lo == hi; }
    bool contains(const BigInt& v) const { return lo <= v && v <= hi; }
    std::string to_string() const;  // "12" or "[2,25]"
};

struct DimFormulaResult {
    DimValue dd, ddd, cd;
};

DimFormulaResult table_dims(TableFamily t, std::size_t l, std::size_t r);

enum class AtomKind { dep, exc, inc, ano, pure_ind, cond_ind, even, half };
const char* to_string(AtomKind k);
AtomKind parse_atom_kind(const std::string& s);

// Atom over a universe of size n. m = len x̄; k = len ȳ (pure_ind, cond_ind);
// s = len of the condition (cond_ind).
struct AtomSpec {
    AtomKind kind = AtomKind::dep;
    std::size_t m = 1, k = 1, s = 1;
    std::size_t n = 2;
};

std::size_t base_size(const AtomSpec& a);
Family gen_family(const AtomSpec& a);
DimFormulaResult closed_form_dims(const AtomSpec& a);

struct GrowthLabels {
    std::string dd, ddd, cd;
};
GrowthLabels growth_label(const AtomSpec& a);

// the formula whose team family is gen_family(a), and the re-indexing that
// takes its team base to the product base
std::string atom_formula(const AtomSpec& a);
std::vector<std::string> atom_variables(const AtomSpec& a);
// factor j of the product collects the team columns groups[j]; within a
// factor the code is Σ v_i n^i as for teams
Family team_to_product(const Family& f, std::size_t n, std::size_t vars,
                       const std::vector<std::vector<std::size_t>>& groups);
std::vector<std::vector<std::size_t>> atom_groups(const AtomSpec& a);

BigInt binomial(std::size_t n, std::size_t k);

}  // namespace teamdim::atomcat
