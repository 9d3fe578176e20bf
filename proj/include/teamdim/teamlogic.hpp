#pragma once

#include "teamdim/budget.hpp"
#include "teamdim/dims.hpp"
#include "teamdim/evaluator.hpp"
#include "teamdim/family.hpp"
#include "teamdim/formula.hpp"
#include "teamdim/structure.hpp"

#include <random>
#include <string>
#include <vector>

namespace teamdim::logic {

// teams are enumerated over M^m with n^m at most this
inline constexpr std::size_t kTeamBaseCap = 20;

// ⟦φ⟧ over the context: every team, one satisfies() call each.
// `per_team` is the search budget of each call.
Family team_family(const Structure& m, const FormulaPtr& f, const Vars& ctx, const SearchBudget& per_team = {});
Family reference_team_family(const Structure& m, const FormulaPtr& f, const Vars& ctx,
                             const SearchBudget& per_team = {});

// Bottom-up: ∧ ∩, ⊻ ∪, ∨ and ⍋ as union / intersection convolutions, ∃ ∀ Q
// through lindstrom_apply. Literals and atoms are enumerated directly.
// Throws Unsupported outside {literals, atoms, ∧, ∨, ⊻, ⍋, ∃, ∀, Q} or when a
// quantifier rebinds a variable of its context.
Family compose_family(const Structure& m, const FormulaPtr& f, const Vars& ctx);
bool composable(const Formula& f, const Vars& ctx);

// every team T over ctx: T ⊨ f iff T restricted to free(f) ⊨ f (reference evaluator)
bool check_formula_locality(const Structure& m, const FormulaPtr& f, const Vars& ctx,
                            const SearchBudget& per_team = {});

// dimension of ⟦φ⟧ over the bare n-element structure; φ must not use relation symbols
dims::CoverResult dim_function(const FormulaPtr& f, const Vars& ctx, std::size_t n, dims::CoverMode which,
                               const SearchBudget& budget = {});

// Random formula of the composable fragment over ctx, at most `depth` levels
// of connectives and quantifiers. Quantifiers bind fresh names and are only
// used while the context has fewer than max_vars variables.
FormulaPtr random_formula(std::mt19937_64& rng, const Vars& ctx, std::size_t depth, std::size_t max_vars);

struct Equivalence {
    std::string name;
    FormulaPtr lhs;  // the atom or operator being defined
    FormulaPtr rhs;  // its definition
    Vars ctx;
    bool slow = false;
};

// the atom translations with one-variable tuples, both printed and amended
// forms where they differ
std::vector<Equivalence> translation_suite();
// ∀¹, δ¹, →, ⊻, half and even identities
std::vector<Equivalence> operator_identities();
Equivalence find_equivalence(const std::string& name);

}  // namespace teamdim::logic
