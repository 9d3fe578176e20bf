#pragma once

#include "teamdim/formula.hpp"

#include <string>

namespace teamdim::logic {

// Throws ParseError (line/column) on malformed input and Error(Arity) on
// atoms whose variable lists violate their arity rules.
FormulaPtr parse_formula(const std::string& text);

}  // namespace teamdim::logic
