#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

// Presburger arithmetic over (Z, 0, 1, +, -, <=): linear terms, formulas as a
// hash-consed DAG, and the structural operations (substitution, negation
// normal form) the decision procedure is built from.
//
// Every node is immutable and owned by a FormulaStore; structurally equal
// formulas receive the same FormulaId.  A store is confined to one worker at
// a time; independent stores may be used concurrently.

namespace presburger {

using VarId = std::uint32_t;
using FormulaId = std::uint32_t;

// Thrown when a store exceeds its live-node budget.  Deciders report this
// distinctly from a TRUE/FALSE verdict.
class budget_exhausted : public std::runtime_error {
 public:
  explicit budget_exhausted(const std::string& what) : std::runtime_error(what) {}
};

// constant + sum of coeff * var, coefficients nonzero, sorted by variable.
class LinearTerm {
 public:
  LinearTerm() = default;
  explicit LinearTerm(long long constant) : constant_(constant) {}
  static LinearTerm variable(VarId v, long long coeff = 1);

  long long constant() const { return constant_; }
  const std::vector<std::pair<VarId, long long>>& coeffs() const { return coeffs_; }

  bool is_constant() const { return coeffs_.empty(); }
  long long coeff_of(VarId v) const;
  bool mentions(VarId v) const { return coeff_of(v) != 0; }

  LinearTerm& operator+=(const LinearTerm& o);
  LinearTerm& operator-=(const LinearTerm& o);
  LinearTerm& operator*=(long long s);
  friend LinearTerm operator+(LinearTerm a, const LinearTerm& b) { return a += b; }
  friend LinearTerm operator-(LinearTerm a, const LinearTerm& b) { return a -= b; }
  friend LinearTerm operator*(LinearTerm a, long long s) { return a *= s; }
  LinearTerm operator-() const;

  // Replaces each mapped variable by its term (simultaneous substitution).
  LinearTerm substituted(const std::vector<std::pair<VarId, LinearTerm>>& map) const;

  bool operator==(const LinearTerm& o) const {
    return constant_ == o.constant_ && coeffs_ == o.coeffs_;
  }
  std::size_t hash() const;

 private:
  long long constant_ = 0;
  std::vector<std::pair<VarId, long long>> coeffs_;
  void add_monomial(VarId v, long long c);
};

enum class Kind : std::uint8_t {
  True,
  False,
  Leq,      // term <= 0
  Eq,       // term = 0
  Dvd,      // modulus | term, modulus >= 2
  Not,
  And,
  Or,
  Implies,
  Iff,
  Exists,
  Forall,
};

struct Node {
  Kind kind;
  FormulaId lhs = 0, rhs = 0;  // children for connectives; lhs for Not/quantifiers
  VarId var = 0;               // quantifiers
  long long modulus = 0;       // Dvd
  LinearTerm term;             // atoms

  bool operator==(const Node& o) const {
    return kind == o.kind && lhs == o.lhs && rhs == o.rhs && var == o.var &&
           modulus == o.modulus && term == o.term;
  }
};

using Subst = std::vector<std::pair<VarId, LinearTerm>>;  // sorted by VarId

class FormulaStore {
 public:
  FormulaStore();

  VarId fresh_var(std::string name = {});
  const std::string& var_name(VarId v) const { return var_names_[v]; }
  std::size_t var_count() const { return var_names_.size(); }

  std::size_t node_count() const { return nodes_.size(); }
  long long budget() const { return budget_; }
  void set_budget(long long nodes) { budget_ = nodes; }

  const Node& node(FormulaId f) const { return nodes_[f]; }
  Kind kind(FormulaId f) const { return nodes_[f].kind; }

  FormulaId mk_true() const { return true_; }
  FormulaId mk_false() const { return false_; }
  FormulaId mk_bool(bool b) const { return b ? true_ : false_; }

  // Atom constructors normalize: constant folding, gcd reduction, and for
  // divisibilities coefficient reduction mod the modulus.
  FormulaId leq0(LinearTerm t);                               // t <= 0
  FormulaId leq(const LinearTerm& a, const LinearTerm& b) { return leq0(a - b); }
  FormulaId eq0(LinearTerm t);                                // t = 0
  FormulaId eq(const LinearTerm& a, const LinearTerm& b) { return eq0(a - b); }
  FormulaId dvd(long long modulus, LinearTerm t);             // modulus | t

  FormulaId negation(FormulaId f);
  FormulaId conj(FormulaId a, FormulaId b);
  FormulaId disj(FormulaId a, FormulaId b);
  FormulaId implies(FormulaId a, FormulaId b);
  FormulaId iff(FormulaId a, FormulaId b);
  FormulaId exists(VarId v, FormulaId body);
  FormulaId forall(VarId v, FormulaId body);

  // Balanced folds (keep AST depth logarithmic in the conjunct count).
  FormulaId conj_all(std::span<const FormulaId> fs);
  FormulaId disj_all(std::span<const FormulaId> fs);
  FormulaId exists_block(std::span<const VarId> vars, FormulaId body);
  FormulaId forall_block(std::span<const VarId> vars, FormulaId body);

  bool is_const(FormulaId f) const { return f == true_ || f == false_; }

  // True when v occurs free in f.
  bool mentions(FormulaId f, VarId v);
  // Free variables of f, sorted.
  std::vector<VarId> free_vars(FormulaId f);

  // Simultaneous substitution of free variables.  Bound variables must not
  // appear in the map's domain or in any replacement term.
  FormulaId substitute(FormulaId f, const Subst& map);

  // Equivalent formula rebuilt through the normalizing constructors.
  FormulaId simplify(FormulaId f);

  // Number of distinct DAG nodes reachable from f.
  std::size_t dag_size(FormulaId f);

  // Flattens the conjunctive spine of f (And nodes only).
  void conjuncts(FormulaId f, std::vector<FormulaId>& out) const;
  void disjuncts(FormulaId f, std::vector<FormulaId>& out) const;

 private:
  FormulaId intern(Node n);

  // Deque keeps node references stable while constructors append.
  std::deque<Node> nodes_;
  std::unordered_map<std::size_t, std::vector<FormulaId>> index_;  // hash -> ids
  std::vector<std::string> var_names_;
  long long budget_ = 10'000'000;
  FormulaId true_ = 0, false_ = 0;
  std::unordered_map<std::uint64_t, bool> mentions_memo_;  // (f, v) -> bool
};

}  // namespace presburger
