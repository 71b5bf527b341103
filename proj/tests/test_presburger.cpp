#include <doctest.h>

#include <functional>
#include <numeric>
#include <random>
#include <unordered_map>

#include "presburger/ast.hpp"
#include "presburger/solve.hpp"
#include "presburger/text.hpp"

using namespace presburger;

namespace {

LinearTerm V(VarId v, long long c = 1) { return LinearTerm::variable(v, c); }
LinearTerm K(long long k) { return LinearTerm(k); }

// Reference model checker: direct structural evaluation, quantifiers
// enumerated over [-range, range].  Shares nothing with resolve/eliminate.
bool brute_eval(const FormulaStore& st, FormulaId f, long long range,
                std::unordered_map<VarId, long long>& env) {
  const Node& n = st.node(f);
  auto value = [&](const LinearTerm& t) {
    long long val = t.constant();
    for (const auto& [v, c] : t.coeffs()) val += c * env.at(v);
    return val;
  };
  switch (n.kind) {
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::Leq:
      return value(n.term) <= 0;
    case Kind::Eq:
      return value(n.term) == 0;
    case Kind::Dvd:
      return value(n.term) % n.modulus == 0;
    case Kind::Not:
      return !brute_eval(st, n.lhs, range, env);
    case Kind::And:
      return brute_eval(st, n.lhs, range, env) && brute_eval(st, n.rhs, range, env);
    case Kind::Or:
      return brute_eval(st, n.lhs, range, env) || brute_eval(st, n.rhs, range, env);
    case Kind::Implies:
      return !brute_eval(st, n.lhs, range, env) || brute_eval(st, n.rhs, range, env);
    case Kind::Iff:
      return brute_eval(st, n.lhs, range, env) == brute_eval(st, n.rhs, range, env);
    case Kind::Exists:
      for (long long x = -range; x <= range; ++x) {
        env[n.var] = x;
        if (brute_eval(st, n.lhs, range, env)) return true;
      }
      env.erase(n.var);
      return false;
    case Kind::Forall:
      for (long long x = -range; x <= range; ++x) {
        env[n.var] = x;
        if (!brute_eval(st, n.lhs, range, env)) return false;
      }
      env.erase(n.var);
      return true;
  }
  return false;
}

bool brute_eval(const FormulaStore& st, FormulaId f, long long range) {
  std::unordered_map<VarId, long long> env;
  return brute_eval(st, f, range, env);
}

// Sound witness bound for "exists x. phi" under an assignment to the other
// free variables: lambda * (sum of |t(sigma)| over atoms) + period + 1.
long long cooper_witness_bound(const FormulaStore& st, FormulaId phi, VarId x,
                               const std::unordered_map<VarId, long long>& sigma) {
  long long lambda = 1, divisors = 1, sum = 0;
  std::vector<FormulaId> stack{phi};
  std::unordered_map<FormulaId, bool> seen;
  while (!stack.empty()) {
    FormulaId id = stack.back();
    stack.pop_back();
    if (seen.count(id)) continue;
    seen[id] = true;
    const Node& n = st.node(id);
    switch (n.kind) {
      case Kind::Leq:
      case Kind::Eq:
      case Kind::Dvd: {
        long long c = n.term.coeff_of(x);
        if (c != 0) lambda = std::lcm(lambda, c < 0 ? -c : c);
        if (n.kind == Kind::Dvd) divisors = std::lcm(divisors, n.modulus);
        long long rest = n.term.constant();
        for (const auto& [v, cv] : n.term.coeffs())
          if (v != x) rest += cv * sigma.at(v);
        sum += rest < 0 ? -rest : rest;
        break;
      }
      case Kind::Not:
        stack.push_back(n.lhs);
        break;
      case Kind::And:
      case Kind::Or:
      case Kind::Implies:
      case Kind::Iff:
        stack.push_back(n.lhs);
        stack.push_back(n.rhs);
        break;
      default:
        break;
    }
  }
  return lambda * sum + lambda * divisors + 1;
}

}  // namespace

TEST_CASE("linear terms") {
  FormulaStore st;
  VarId x = st.fresh_var("x"), y = st.fresh_var("y");
  LinearTerm t = V(x, 2) + V(y, -3) + K(5);
  CHECK(t.coeff_of(x) == 2);
  CHECK(t.coeff_of(y) == -3);
  CHECK(t.constant() == 5);
  LinearTerm u = t - V(x, 2);
  CHECK(u.coeff_of(x) == 0);
  CHECK_FALSE(u.mentions(x));
  LinearTerm s = t.substituted({{x, V(y) + K(1)}});
  CHECK(s.coeff_of(y) == -1);
  CHECK(s.constant() == 7);
}

TEST_CASE("constructors normalize") {
  FormulaStore st;
  VarId x = st.fresh_var("x");
  CHECK(st.leq0(K(-3)) == st.mk_true());
  CHECK(st.leq0(K(1)) == st.mk_false());
  CHECK(st.eq0(V(x, 2) + K(1)) == st.mk_false());  // parity obstruction
  CHECK(st.dvd(1, V(x)) == st.mk_true());
  CHECK(st.dvd(4, V(x, 4) + K(8)) == st.mk_true());
  FormulaId a = st.leq0(V(x) + K(-2));
  CHECK(st.conj(a, st.mk_true()) == a);
  CHECK(st.disj(a, a) == a);
  CHECK(st.conj(a, st.mk_false()) == st.mk_false());
  CHECK(st.negation(st.negation(a)) == a);
  // 2x <= 3  reduces to  x <= 1
  CHECK(st.leq0(V(x, 2) + K(-3)) == st.leq0(V(x) + K(-1)));
}

TEST_CASE("hash consing gives pointer identity") {
  FormulaStore st;
  VarId x = st.fresh_var("x"), y = st.fresh_var("y");
  FormulaId f1 = st.conj(st.leq(V(x), V(y)), st.eq(V(x), K(0)));
  FormulaId f2 = st.conj(st.leq(V(x), V(y)), st.eq(V(x), K(0)));
  CHECK(f1 == f2);
  std::size_t before = st.node_count();
  st.conj(st.leq(V(x), V(y)), st.eq(V(x), K(0)));
  CHECK(st.node_count() == before);
}

TEST_CASE("simplify examples") {
  FormulaStore st;
  VarId x = st.fresh_var("x");
  FormulaId phi = st.leq(V(x), K(7));
  CHECK(st.simplify(st.conj(phi, st.mk_true())) == phi);
  CHECK(st.simplify(st.leq(K(0), K(5))) == st.mk_true());
  CHECK(st.simplify(st.disj(st.eq(V(x), K(0)), st.eq(V(x), K(0)))) == st.eq(V(x), K(0)));
  FormulaId f = st.forall(x, st.implies(st.leq(K(0), V(x)), st.leq(K(-1), V(x))));
  CHECK(st.simplify(f) == f);  // idempotent fixed point
  CHECK(st.dag_size(st.simplify(f)) <= st.dag_size(f));
}

TEST_CASE("evaluate") {
  FormulaStore st;
  CHECK(evaluate(st, st.leq(K(3), K(5)), {}));
  CHECK_FALSE(evaluate(st, st.dvd(2, K(7)), {}));

  VarId x = st.fresh_var("x"), y = st.fresh_var("y");
  // x + y <= 2x at x=4, y=3 is 7 <= 8.
  FormulaId f = st.leq(V(x) + V(y), V(x, 2));
  CHECK(evaluate(st, f, {{x, 4}, {y, 3}}));
  CHECK_FALSE(evaluate(st, f, {{x, 4}, {y, 5}}));

  CHECK_THROWS_AS(evaluate(st, f, {{x, 4}}), std::invalid_argument);

  // A quantifier that propagation cannot remove needs a bound.
  FormulaId q = st.exists(y, st.conj(st.leq(K(0), V(y)), st.dvd(3, V(y) + V(x))));
  CHECK(evaluate(st, q, {{x, 2}}, 10));
  CHECK_THROWS_AS(evaluate(st, q, {{x, 2}}), std::invalid_argument);
}

TEST_CASE("eliminate worked examples") {
  FormulaStore st;
  VarId a = st.fresh_var("a"), b = st.fresh_var("b"), x = st.fresh_var("x");

  FormulaId between = st.exists(x, st.conj(st.leq(V(a), V(x)), st.leq(V(x), V(b))));
  FormulaId r1 = eliminate(st, between);
  for (long long va = -10; va <= 10; ++va)
    for (long long vb = -10; vb <= 10; ++vb)
      CHECK(evaluate(st, r1, {{a, va}, {b, vb}}) == (va <= vb));

  FormulaId doubled = st.exists(x, st.eq(V(x, 2), V(a)));
  FormulaId r2 = eliminate(st, doubled);
  for (long long va = -20; va <= 20; ++va)
    CHECK(evaluate(st, r2, {{a, va}}) == (va % 2 == 0));

  CHECK(eliminate(st, st.exists(x, st.mk_true())) == st.mk_true());

  CHECK_THROWS_AS(eliminate(st, st.forall(x, st.leq(V(x), K(0)))), std::invalid_argument);
  CHECK_THROWS_AS(eliminate(st, st.exists(x, st.exists(a, st.eq(V(x), V(a))))),
                  std::invalid_argument);
}

TEST_CASE("decide basics") {
  FormulaStore st;
  VarId x = st.fresh_var("x"), y = st.fresh_var("y");
  VarId a = st.fresh_var("a"), b = st.fresh_var("b");

  CHECK(decide(st, st.exists(x, st.eq(V(x), K(0)))));

  FormulaId parity = st.forall(
      x, st.exists(y, st.disj(st.eq(V(x), V(y, 2)), st.eq(V(x), V(y, 2) + K(1)))));
  CHECK(decide(st, parity));

  FormulaId frob7 = st.exists(
      a, st.exists(b, st.conj_all(std::vector<FormulaId>{
                          st.leq(K(0), V(a)), st.leq(K(0), V(b)),
                          st.eq(V(a, 3) + V(b, 5), K(7))})));
  CHECK_FALSE(decide(st, frob7));

  // Every x >= 8 is 3a + 5b with a, b >= 0.
  FormulaId chicken = st.forall(
      x, st.implies(st.leq(K(8), V(x)),
                    st.exists(a, st.exists(b, st.conj_all(std::vector<FormulaId>{
                                                 st.leq(K(0), V(a)), st.leq(K(0), V(b)),
                                                 st.eq(V(a, 3) + V(b, 5), V(x))})))));
  CHECK(decide(st, chicken));

  CHECK_THROWS_AS(decide(st, st.leq(V(x), K(0))), std::invalid_argument);
}

TEST_CASE("decide agrees with brute force on a random corpus") {
  const long long range = 10;
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::uniform_int_distribution<int> small(0, 2);

  for (int trial = 0; trial < 200; ++trial) {
    FormulaStore st;
    int quant_count = 1 + trial % 3;
    std::vector<VarId> vars;
    for (int i = 0; i < quant_count; ++i) vars.push_back(st.fresh_var());

    auto atom = [&]() {
      LinearTerm t(coeff(rng));
      for (VarId v : vars) t += V(v, coeff(rng));
      switch (small(rng)) {
        case 0:
          return st.leq0(t);
        case 1:
          return st.eq0(t);
        default:
          return st.dvd(2 + small(rng), t);
      }
    };
    std::function<FormulaId(int)> body = [&](int depth) -> FormulaId {
      if (depth == 0) return atom();
      switch (small(rng)) {
        case 0:
          return st.negation(body(depth - 1));
        case 1:
          return st.conj(body(depth - 1), body(depth - 1));
        default:
          return st.disj(body(depth - 1), body(depth - 1));
      }
    };

    // Relativized sentence: every quantifier ranges over [-range, range], so
    // enumeration and quantifier elimination answer the same question.
    FormulaId f = body(2);
    for (int i = quant_count; i-- > 0;) {
      VarId v = vars[i];
      FormulaId guard = st.conj(st.leq(K(-range), V(v)), st.leq(V(v), K(range)));
      if (small(rng) == 0)
        f = st.forall(v, st.implies(guard, f));
      else
        f = st.exists(v, st.conj(guard, f));
    }
    bool expected = brute_eval(st, f, range);
    CAPTURE(trial);
    CHECK(decide(st, f) == expected);
  }
}

TEST_CASE("eliminate preserves truth on random instances") {
  std::mt19937 rng(7041776);
  std::uniform_int_distribution<int> coeff(-4, 4);
  std::uniform_int_distribution<int> small(0, 2);
  std::uniform_int_distribution<long long> point(-8, 8);

  for (int trial = 0; trial < 120; ++trial) {
    FormulaStore st;
    VarId x = st.fresh_var("x");
    std::vector<VarId> frees{st.fresh_var("u"), st.fresh_var("v")};

    auto atom = [&]() {
      LinearTerm t(coeff(rng));
      t += V(x, coeff(rng));
      for (VarId v : frees) t += V(v, coeff(rng));
      switch (small(rng)) {
        case 0:
          return st.leq0(t);
        case 1:
          return st.eq0(t);
        default:
          return st.dvd(2 + small(rng), t);
      }
    };
    std::function<FormulaId(int)> body = [&](int depth) -> FormulaId {
      if (depth == 0) return atom();
      switch (small(rng)) {
        case 0:
          return st.negation(body(depth - 1));
        case 1:
          return st.conj(body(depth - 1), body(depth - 1));
        default:
          return st.disj(body(depth - 1), body(depth - 1));
      }
    };
    FormulaId phi = body(2);
    if (!st.mentions(phi, x)) continue;
    FormulaId elim = eliminate(st, st.exists(x, phi));
    CHECK(st.free_vars(elim).size() <= 2);

    for (int pts = 0; pts < 4; ++pts) {
      std::unordered_map<VarId, long long> sigma{{frees[0], point(rng)},
                                                 {frees[1], point(rng)}};
      long long bound = cooper_witness_bound(st, phi, x, sigma);
      bool witness = false;
      for (long long w = -bound; w <= bound && !witness; ++w) {
        std::unordered_map<VarId, long long> env = sigma;
        env[x] = w;
        witness = brute_eval(st, phi, 0, env);
      }
      Assignment assignment{{frees[0], sigma[frees[0]]}, {frees[1], sigma[frees[1]]}};
      std::sort(assignment.begin(), assignment.end());
      CAPTURE(trial);
      CHECK(evaluate(st, elim, assignment, bound) == witness);
    }
  }
}

TEST_CASE("budget is reported distinctly") {
  FormulaStore st;
  st.set_budget(40);
  VarId x = st.fresh_var("x");
  bool hit = false;
  try {
    FormulaId f = st.mk_true();
    for (int i = 0; i < 50; ++i) f = st.conj(f, st.leq(V(x), K(i)));
  } catch (const budget_exhausted&) {
    hit = true;
  }
  CHECK(hit);
}

TEST_CASE("text round trip") {
  FormulaStore st;
  std::vector<std::string> inputs = {
      "exists x. x = 0",
      "forall x. exists y. (x = y + y) or (x = y + y + 1)",
      "exists a. exists b. 0 <= a & 0 <= b & 3*a + 5*b = 7",
      "forall x. 8 <= x -> exists a. exists b. 0 <= a & 0 <= b & 3*a + 5*b = x",
      "exists x. !(2 | x + 1) & x <= 10",
      "forall x. (exists y. x = 2*y) or (exists y. x = 2*y + 1)",
  };
  for (const std::string& text : inputs) {
    FormulaId f = parse_formula(st, text);
    std::string printed = to_text(st, f);
    FormulaId g = parse_formula(st, printed);
    CAPTURE(text);
    CAPTURE(printed);
    CHECK(to_text(st, g) == printed);
    CHECK(decide(st, f) == decide(st, g));
  }
}

TEST_CASE("parsed sentences decide correctly") {
  FormulaStore st;
  CHECK(decide(st, parse_formula(st, "forall x. exists y. (x = y+y) or (x = y+y+1)")));
  CHECK_FALSE(decide(st, parse_formula(st, "exists a. exists b. 0 <= a & 0 <= b & 3*a + 5*b = 7")));
  CHECK(decide(st, parse_formula(st, "exists x. 2 | x & 3 | x & x = 6")));
  std::vector<std::string> frees;
  parse_formula(st, "x + 1 <= y", &frees);
  CHECK(frees.size() == 2);
  CHECK_THROWS_AS(parse_formula(st, "exists x. x <"), parse_error);
  CHECK_THROWS_AS(parse_formula(st, "exists x. (x = 0"), parse_error);
}
