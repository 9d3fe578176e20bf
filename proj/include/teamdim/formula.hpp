#pragma once

#include <memory>
#include <string>
#include <vector>

namespace teamdim::logic {

enum class Kind {
    Eq, Neq, Rel, NRel,                      // first-order literals
    Dep, Const, Exc, Inc, Ano, Ind,          // dependency atoms
    NE, Even, Half,
    And, Or, Ior, Tand, Imp,                 // binary connectives
    Exists, Forall, E1, A1, D1, Q,           // quantifiers (D1 does not bind)
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable AST node. Builders below fill in the derived fields.
struct Formula {
    Kind kind;
    std::string name;                    // relation symbol or quantifier class
    std::vector<std::string> xs, ys, zs;  // see builders for the role of each list
    FormulaPtr left, right;              // body of a quantifier is `left`

    // derived
    std::vector<std::string> free;       // free variables, first occurrence order
    std::vector<std::size_t> px, py, pz;  // positions of xs/ys/zs inside `free` (atoms only)
    bool flat = false;                   // satisfaction is rowwise
    bool dc = false;                     // downward closed
    bool uc = false;                     // closed under unions
    std::size_t depth = 0;

    bool is_atom() const { return kind < Kind::And; }
    bool is_binary() const { return kind >= Kind::And && kind <= Kind::Imp; }
    bool is_quantifier() const { return kind >= Kind::Exists; }
    bool binds() const { return is_quantifier() && kind != Kind::D1; }
};

FormulaPtr eq(const std::string& x, const std::string& y);
FormulaPtr neq(const std::string& x, const std::string& y);
FormulaPtr rel(const std::string& name, std::vector<std::string> args);
FormulaPtr nrel(const std::string& name, std::vector<std::string> args);
FormulaPtr dep(std::vector<std::string> xs, const std::string& y);  // xs may be empty
FormulaPtr constancy(std::vector<std::string> xs);
FormulaPtr exc(std::vector<std::string> xs, std::vector<std::string> ys);
FormulaPtr inc(std::vector<std::string> xs, std::vector<std::string> ys);
FormulaPtr ano(std::vector<std::string> xs, const std::string& y);
// xs independent of ys given zs (zs may be empty)
FormulaPtr ind(std::vector<std::string> xs, std::vector<std::string> zs, std::vector<std::string> ys);
FormulaPtr ne();
FormulaPtr even(std::vector<std::string> xs);
FormulaPtr half(std::vector<std::string> xs);

FormulaPtr conj(FormulaPtr a, FormulaPtr b);
FormulaPtr disj(FormulaPtr a, FormulaPtr b);
FormulaPtr ior(FormulaPtr a, FormulaPtr b);
FormulaPtr tand(FormulaPtr a, FormulaPtr b);
FormulaPtr imp(FormulaPtr a, FormulaPtr b);
FormulaPtr binary(Kind k, FormulaPtr a, FormulaPtr b);

FormulaPtr exists(const std::string& x, FormulaPtr body);
FormulaPtr forall(const std::string& x, FormulaPtr body);
FormulaPtr exists1(const std::string& x, FormulaPtr body);
FormulaPtr forall1(const std::string& x, FormulaPtr body);
FormulaPtr delta1(const std::string& x, FormulaPtr body);
FormulaPtr quant(Kind k, const std::string& x, FormulaPtr body);
FormulaPtr lindstrom(const std::string& cls, std::vector<std::string> ys, FormulaPtr body);

// conjunction / disjunction of a list (list must be nonempty)
FormulaPtr conj_all(const std::vector<FormulaPtr>& fs);
FormulaPtr disj_all(const std::vector<FormulaPtr>& fs);
// x̄ = ȳ and x̄ ≠ ȳ as conjunction / disjunction of literals
FormulaPtr eq_all(const std::vector<std::string>& xs, const std::vector<std::string>& ys);
FormulaPtr neq_any(const std::vector<std::string>& xs, const std::vector<std::string>& ys);

// concrete syntax accepted by the parser
std::string to_string(const Formula& f);
inline std::string to_string(const FormulaPtr& f) { return to_string(*f); }

bool uses_relations(const Formula& f);
bool uses_kind(const Formula& f, Kind k);

}  // namespace teamdim::logic
