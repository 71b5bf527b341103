#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "plactic/interpretation.hpp"

// First-order sentences over the monoid signature with letter constants,
// their translation into Presburger arithmetic through the interpretation,
// and the deciders built on top: sentence truth, identities, and Diophantine
// systems.
//
// Text form:
//   mterm := "eps" | "[" int+ "]" | var | mterm "." mterm
//   mform := mterm "=" mterm | "!" mform | mform "&" mform | mform "or" mform
//          | mform "->" mform | "(" mform ")" | ("exists"|"forall") var ":" mform
// Equation systems are one `lhs = rhs` per line, variables all existential.

namespace plactic::fo {

struct MTerm;
using MTermPtr = std::shared_ptr<const MTerm>;

struct MTerm {
  enum class Kind { Var, Word, Concat };
  Kind kind;
  std::string name;  // Var
  plactic::Word word;  // Word constant; empty = epsilon
  MTermPtr lhs, rhs;   // Concat

  static MTermPtr make_var(std::string name);
  static MTermPtr make_word(plactic::Word w);
  static MTermPtr make_concat(MTermPtr l, MTermPtr r);
};

struct MFormula;
using MFormulaPtr = std::shared_ptr<const MFormula>;

struct MFormula {
  enum class Kind { Eq, Not, And, Or, Implies, Iff, Exists, Forall };
  Kind kind;
  MTermPtr t1, t2;    // Eq
  MFormulaPtr f1, f2;
  std::string var;    // quantifiers

  static MFormulaPtr make_eq(MTermPtr a, MTermPtr b);
  static MFormulaPtr make_not(MFormulaPtr f);
  static MFormulaPtr make_binary(Kind k, MFormulaPtr a, MFormulaPtr b);
  static MFormulaPtr make_quant(Kind k, std::string var, MFormulaPtr body);
};

struct EquationSystem {
  std::vector<std::pair<MTermPtr, MTermPtr>> equations;  // all variables existential
};

class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

MTermPtr parse_term(const std::string& text);
MFormulaPtr parse_sentence(const std::string& text);
EquationSystem parse_system(const std::string& text);

// Free variable names, sorted and deduplicated.
std::vector<std::string> free_variables(const MFormula& f);
std::vector<std::string> term_variables(const MTerm& t);

// Translation through the interpretation: each monoid variable becomes a
// domain-guarded block of k integer variables, each concatenation one eta
// application over a fresh domain-guarded block.  `introduced_blocks`, when
// given, receives every block the translation quantifies (for the
// relativization check).
presburger::FormulaId translate(presburger::FormulaStore& st,
                                const interp::Interpretation& ip, const MFormula& f,
                                std::vector<interp::VarBlock>* introduced_blocks = nullptr);

struct DecideOptions {
  long long budget = 10'000'000;
};

// Truth of the closed formula f in the rank-n plactic monoid.
bool decide_sentence(const MFormula& f, int rank, const DecideOptions& opts = {});

// The universal closure of u = v.
bool check_identity(const MTermPtr& u, const MTermPtr& v, int rank,
                    const DecideOptions& opts = {});

using Witness = std::map<std::string, ExponentVector>;

// Satisfiability of the existential closure of the system; optionally
// extracts one solution by bound doubling and per-coordinate binary search.
std::pair<bool, std::optional<Witness>> solve_system(const EquationSystem& sys, int rank,
                                                     bool extract_witness = false,
                                                     const DecideOptions& opts = {});

// Evaluates a term under an assignment of tableaux to variables (Schensted
// semantics); the reference path used by tests and bounded searches.
Tableau eval_term(const MTerm& t, const std::map<std::string, Tableau>& env, int rank);

}  // namespace plactic::fo
