#pragma once

#include "teamdim/budget.hpp"
#include "teamdim/formula.hpp"
#include "teamdim/structure.hpp"

#include <memory>

namespace teamdim::logic {

// Lax team semantics. Local subformulas are evaluated on the projection of
// the team to their free variables; tensor conjunction and Lindström classes
// that are not union closed see the whole context.
// The memo table survives across calls, so one Evaluator per structure is
// the cheap way to evaluate many teams.
class Evaluator {
public:
    explicit Evaluator(const Structure& m, SearchBudget budget = {});
    ~Evaluator();
    Evaluator(Evaluator&&) noexcept;
    Evaluator& operator=(Evaluator&&) noexcept;

    // throws Error(Budget) when the search budget of this call runs out
    bool satisfies(const Team& t, const FormulaPtr& f);
    std::uint64_t nodes() const;  // search nodes spent by the last call
    const Structure& structure() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

bool satisfies(const Structure& m, const Team& t, const FormulaPtr& f, const SearchBudget& budget = {});

// Literal definitions over the full context with exhaustive searches.
// Exponential everywhere; meant for cross-checking on tiny inputs.
bool reference_satisfies(const Structure& m, const Team& t, const FormulaPtr& f,
                         const SearchBudget& budget = {});

// free variables covered by `vars`, relation symbols and arities, class names
void check_formula(const Structure& m, const Formula& f, const Vars& vars);

// syntactic test: no NE anywhere, so the empty team satisfies f
bool has_empty_team_property(const Formula& f);

}  // namespace teamdim::logic
