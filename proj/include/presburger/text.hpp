#pragma once

#include <string>

#include "presburger/ast.hpp"

// Text form of Presburger formulas:
//
//   term := int | var | term "+" term | term "-" term | int "*" var
//   atom := term "<=" term | term "=" term | int "|" term
//   form := atom | "!" form | form "&" form | form "or" form | form "->" form
//         | "(" form ")" | ("exists"|"forall") var "." form
//
// Binding, tightest first: "!", "&", "or", "->" (right associative);
// a quantifier body extends as far right as possible.

namespace presburger {

class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Deterministic text for f, re-parseable by parse_formula.
std::string to_text(const FormulaStore& st, FormulaId f);

// Parses a formula; names bind to fresh variables.  Free occurrences are
// fresh too and reported through `free_names` when provided.
FormulaId parse_formula(FormulaStore& st, const std::string& text,
                        std::vector<std::string>* free_names = nullptr);

}  // namespace presburger
