#pragma once

#include <utility>
#include <vector>

#include "plactic/columns.hpp"
#include "presburger/ast.hpp"

// Rank-parametric construction of the interpretation of the rank-n plactic
// monoid in Presburger arithmetic: the domain formula over exponent vectors,
// equality, the component maps (bottom row, top tableau, row insertion,
// stitch), right multiplication by a letter power, and the multiplication
// formula eta_n built by recursion on rank.
//
// Formulas are templates over fixed variable blocks recorded in the
// Interpretation; instantiate them by substituting the block variables.

namespace plactic::interp {

using presburger::FormulaId;
using presburger::FormulaStore;
using presburger::VarId;
using VarBlock = std::vector<VarId>;

// Everything about rank n that is computed combinatorially rather than as a
// formula.
struct Tables {
  int rank = 0;
  ColumnTable table;
  // Incompatible index pairs (p, q), p < q, 0-based, sorted.
  std::vector<std::pair<int, int>> incompatible;
  // bottom_sets[x-1]: indices of columns whose bottom letter is x.
  std::vector<std::vector<int>> bottom_sets;
  // top_sets[i]: indices of columns that equal column i after removing their
  // bottom letter.  Empty for columns containing the letter 1.
  std::vector<std::vector<int>> top_sets;
  Word alpha;             // letters, length rank * 2^(rank-1)
  std::vector<int> beta;  // 0-based column index per alpha entry
  // embed[j]: index in this table of the rank-(n-1) column j shifted up by
  // one letter.  Empty at rank 1.
  std::vector<int> embed;

  int k() const { return table.size(); }
  int letter_coord(Letter x) const { return table.letter_index(x); }
};

Tables make_tables(int rank);

struct Interpretation {
  Tables tables;
  VarBlock a_vars, b_vars, c_vars;  // named a1..ak, b1..bk, c1..ck
  VarId m_var = 0;                  // named m
  FormulaId domain = 0;             // over a
  FormulaId equality = 0;           // over a, b
  FormulaId eta = 0;                // multiplication graph over a, b, c
  std::vector<FormulaId> mu;        // per letter x: graph of mu_x over (m, a) -> b

  int rank() const { return tables.rank; }
  int k() const { return tables.k(); }
};

// Runs the uniform generation procedure: recursive generation for the lower
// rank, column enumeration and ordering, pairwise compatibility, the domain
// and equality formulas, one mu per letter, and the alpha/beta chain forming
// eta.  Deterministic: identical output for identical input on a fresh store.
Interpretation generate(FormulaStore& st, int rank);

// Individual formula builders over caller-supplied variable blocks.
FormulaId build_domain(FormulaStore& st, const Tables& t, const VarBlock& x);
FormulaId build_equality(FormulaStore& st, const Tables& t, const VarBlock& a,
                         const VarBlock& b);
// Graph of the bottom-row map: out is the exponent vector of B(phi(a)).
FormulaId build_bottom(FormulaStore& st, const Tables& t, const VarBlock& a,
                       const VarBlock& out);
// Graph of the top-tableau map.
FormulaId build_top(FormulaStore& st, const Tables& t, const VarBlock& a,
                    const VarBlock& out);
// Graphs of the row-insertion maps: out is T(r x^m) resp. B(r x^m) for a row
// vector r and multiplicity m.
FormulaId build_rho_top(FormulaStore& st, const Tables& t, Letter x, VarId m,
                        const VarBlock& r, const VarBlock& out);
FormulaId build_rho_bottom(FormulaStore& st, const Tables& t, Letter x, VarId m,
                           const VarBlock& r, const VarBlock& out);
// Graph of the stitch: a a top tableau, b a row, d the combined tableau.
// Unsatisfiable in d when the compatibility condition gamma fails.
FormulaId build_stitch(FormulaStore& st, const Tables& t, const VarBlock& a,
                       const VarBlock& b, const VarBlock& d);
// Graph of mu_x(m, a) = b; lower is the rank-(n-1) interpretation living in
// the same store.
FormulaId build_mu(FormulaStore& st, const Tables& t, const Interpretation& lower,
                   Letter x, VarId m, const VarBlock& a, const VarBlock& b);

// Instantiates a formula template: block variables replaced by the given
// terms (variables or constants).
FormulaId instantiate(FormulaStore& st, FormulaId templ,
                      const std::vector<std::pair<VarId, presburger::LinearTerm>>& map);

}  // namespace plactic::interp
