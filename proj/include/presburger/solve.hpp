#pragma once

#include <optional>

#include "presburger/ast.hpp"

namespace presburger {

using Assignment = std::vector<std::pair<VarId, long long>>;  // sorted by VarId

// Negation normal form: negations pushed to atoms, Implies/Iff expanded.
// Remaining negations sit only on Dvd atoms.
FormulaId nnf(FormulaStore& st, FormulaId f);

// Propagation pass: folds ground subformulas and resolves existential blocks
// whose variables are pinned by equalities (the one-point rule), collapsing
// case disjunctions as their guards become decidable.  Quantifiers it cannot
// resolve are left in place.
FormulaId resolve(FormulaStore& st, FormulaId f);

// Cooper elimination for one quantifier: q must be Exists(x, phi) with phi
// quantifier-free; the result is quantifier-free, equivalent over Z, and free
// in the same variables minus x.
FormulaId eliminate(FormulaStore& st, FormulaId q);

// Eliminates every quantifier, innermost first.
FormulaId eliminate_all(FormulaStore& st, FormulaId f);

// Truth of a sentence over (Z, 0, 1, +, -, <=).  Throws std::invalid_argument
// on free variables and budget_exhausted when the store budget runs out.
bool decide(FormulaStore& st, FormulaId sentence);

// Truth under an assignment covering the free variables.  Quantifiers that
// survive propagation are enumerated over [-bound, bound]; reaching one
// without a bound is an error.
bool evaluate(FormulaStore& st, FormulaId f, const Assignment& assignment,
              std::optional<long long> quantifier_bound = {});

}  // namespace presburger
