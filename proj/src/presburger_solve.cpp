#include "presburger/solve.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <numeric>
#include <unordered_set>

namespace presburger {

namespace {

// Bodies above this DAG size only accept constant one-point substitutions;
// symbolic ones would duplicate large shared subformulas.
constexpr std::size_t kSymbolicSubstLimit = 4000;
constexpr std::size_t kDistributeLimit = 8;

long long checked_lcm(long long a, long long b) {
  long long g = std::gcd(a, b);
  __int128 l = static_cast<__int128>(a / g) * b;
  if (l > (static_cast<__int128>(1) << 56))
    throw budget_exhausted("coefficient lcm overflow during elimination");
  return static_cast<long long>(l);
}

class Resolver {
 public:
  explicit Resolver(FormulaStore& st) : st_(st) {}

  FormulaId run(FormulaId f) {
    auto it = memo_.find(f);
    if (it != memo_.end()) return it->second;
    const Node& n = st_.node(f);
    FormulaId out = f;
    switch (n.kind) {
      case Kind::True:
      case Kind::False:
      case Kind::Leq:
      case Kind::Eq:
      case Kind::Dvd:
        break;
      case Kind::Not:
        out = st_.negation(run(n.lhs));
        break;
      case Kind::And:
        out = st_.conj(run(n.lhs), run(n.rhs));
        break;
      case Kind::Or:
        out = st_.disj(run(n.lhs), run(n.rhs));
        break;
      case Kind::Implies:
        out = st_.implies(run(n.lhs), run(n.rhs));
        break;
      case Kind::Iff:
        out = st_.iff(run(n.lhs), run(n.rhs));
        break;
      case Kind::Forall:
        out = st_.forall(n.var, run(n.lhs));
        break;
      case Kind::Exists: {
        // Gather the maximal existential prefix and resolve it as one block.
        std::vector<VarId> vars{n.var};
        FormulaId body = n.lhs;
        while (st_.kind(body) == Kind::Exists) {
          vars.push_back(st_.node(body).var);
          body = st_.node(body).lhs;
        }
        out = exists_block(std::move(vars), run(body));
        break;
      }
    }
    memo_.emplace(f, out);
    return out;
  }

 private:
  FormulaId exists_block(std::vector<VarId> vars, FormulaId body) {
    while (true) {
      if (st_.is_const(body)) return body;
      std::erase_if(vars, [&](VarId v) { return !st_.mentions(body, v); });
      if (vars.empty()) return body;

      if (st_.kind(body) == Kind::Or) {
        std::vector<FormulaId> ds;
        st_.disjuncts(body, ds);
        if (ds.size() <= kDistributeLimit) {
          std::vector<FormulaId> parts;
          for (FormulaId d : ds) parts.push_back(exists_block(vars, run(d)));
          return st_.disj_all(parts);
        }
      }

      std::vector<FormulaId> conjs;
      st_.conjuncts(body, conjs);
      std::vector<FormulaId> with, without;
      for (FormulaId c : conjs) {
        bool hit = false;
        for (VarId v : vars)
          if (st_.mentions(c, v)) {
            hit = true;
            break;
          }
        (hit ? with : without).push_back(c);
      }
      if (!without.empty()) {
        FormulaId inner = exists_block(vars, st_.conj_all(with));
        return st_.conj(st_.conj_all(without), inner);
      }

      std::optional<std::size_t> body_size;
      Subst batch;
      for (VarId v : vars) {
        auto t = find_unit_eq(body, v, vars);
        if (!t) continue;
        if (!t->is_constant()) {
          if (!body_size) body_size = st_.dag_size(body);
          if (*body_size > kSymbolicSubstLimit) continue;
        }
        batch.push_back({v, std::move(*t)});
      }
      if (batch.empty()) break;
      std::sort(batch.begin(), batch.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      std::unordered_set<VarId> gone;
      for (const auto& [v, t] : batch) gone.insert(v);
      std::erase_if(vars, [&](VarId v) { return gone.count(v) > 0; });
      body = run(st_.substitute(body, batch));
    }
    return st_.exists_block(vars, body);
  }

  // Searches the conjunctive spine (descending through nested existentials)
  // for an equality pinning v with unit coefficient.  The solution term must
  // not mention v, any other variable of the block, or any quantifier crossed
  // on the way down.
  std::optional<LinearTerm> find_unit_eq(FormulaId f, VarId v,
                                         const std::vector<VarId>& block) {
    std::vector<VarId> skip;
    return find_unit_eq_rec(f, v, block, skip);
  }

  std::optional<LinearTerm> find_unit_eq_rec(FormulaId f, VarId v,
                                             const std::vector<VarId>& block,
                                             std::vector<VarId>& skip) {
    const Node& n = st_.node(f);
    switch (n.kind) {
      case Kind::Eq: {
        long long c = n.term.coeff_of(v);
        if (c != 1 && c != -1) return std::nullopt;
        LinearTerm rest = n.term - LinearTerm::variable(v, c);
        if (c == 1) rest *= -1;  // v = rest
        for (VarId b : block)
          if (rest.mentions(b)) return std::nullopt;
        for (VarId s : skip)
          if (rest.mentions(s)) return std::nullopt;
        return rest;
      }
      case Kind::And: {
        if (auto t = find_unit_eq_rec(n.lhs, v, block, skip)) return t;
        return find_unit_eq_rec(n.rhs, v, block, skip);
      }
      case Kind::Exists: {
        skip.push_back(n.var);
        auto t = find_unit_eq_rec(n.lhs, v, block, skip);
        skip.pop_back();
        return t;
      }
      default:
        return std::nullopt;
    }
  }

  FormulaStore& st_;
  std::unordered_map<FormulaId, FormulaId> memo_;
};

}  // namespace

FormulaId nnf(FormulaStore& st, FormulaId f) {
  std::unordered_map<std::uint64_t, FormulaId> memo;
  auto rec = [&](auto&& self, FormulaId id, bool pos) -> FormulaId {
    std::uint64_t key = (static_cast<std::uint64_t>(id) << 1) | (pos ? 1 : 0);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    const Node& n = st.node(id);
    FormulaId out = id;
    switch (n.kind) {
      case Kind::True:
      case Kind::False:
        out = pos ? id : st.negation(id);
        break;
      case Kind::Leq:
        out = pos ? id : st.negation(id);  // folds into a Leq atom
        break;
      case Kind::Eq:
        if (pos) {
          out = id;
        } else {
          LinearTerm low = n.term + LinearTerm(1);          // t <= -1
          LinearTerm high = -n.term + LinearTerm(1);        // t >= 1
          out = st.disj(st.leq0(std::move(low)), st.leq0(std::move(high)));
        }
        break;
      case Kind::Dvd:
        out = pos ? id : st.negation(id);
        break;
      case Kind::Not:
        out = self(self, n.lhs, !pos);
        break;
      case Kind::And:
        out = pos ? st.conj(self(self, n.lhs, true), self(self, n.rhs, true))
                  : st.disj(self(self, n.lhs, false), self(self, n.rhs, false));
        break;
      case Kind::Or:
        out = pos ? st.disj(self(self, n.lhs, true), self(self, n.rhs, true))
                  : st.conj(self(self, n.lhs, false), self(self, n.rhs, false));
        break;
      case Kind::Implies:
        out = pos ? st.disj(self(self, n.lhs, false), self(self, n.rhs, true))
                  : st.conj(self(self, n.lhs, true), self(self, n.rhs, false));
        break;
      case Kind::Iff:
        if (pos) {
          out = st.conj(st.disj(self(self, n.lhs, false), self(self, n.rhs, true)),
                        st.disj(self(self, n.lhs, true), self(self, n.rhs, false)));
        } else {
          out = st.conj(st.disj(self(self, n.lhs, true), self(self, n.rhs, true)),
                        st.disj(self(self, n.lhs, false), self(self, n.rhs, false)));
        }
        break;
      case Kind::Exists:
        out = pos ? st.exists(n.var, self(self, n.lhs, true))
                  : st.forall(n.var, self(self, n.lhs, false));
        break;
      case Kind::Forall:
        out = pos ? st.forall(n.var, self(self, n.lhs, true))
                  : st.exists(n.var, self(self, n.lhs, false));
        break;
    }
    memo.emplace(key, out);
    return out;
  };
  return rec(rec, f, true);
}

FormulaId resolve(FormulaStore& st, FormulaId f) { return Resolver(st).run(f); }

namespace {

// One Cooper step over NNF input whose atoms are Leq/Eq/Dvd/Not(Dvd).
class CooperStep {
 public:
  CooperStep(FormulaStore& st, VarId v) : st_(st), v_(v) {}

  FormulaId run(FormulaId body) {
    // Equalities on v become conjunctions of two inequalities.
    body = expand_eq(body);
    if (!st_.mentions(body, v_)) return body;

    lambda_ = 1;
    scan_coefficients(body);
    y_ = st_.fresh_var();
    FormulaId unit = rewrite_unit(body);
    if (lambda_ > 1) unit = st_.conj(unit, st_.dvd(lambda_, LinearTerm::variable(y_)));

    period_ = lambda_;
    std::vector<LinearTerm> lowers, uppers;
    collect_bounds(unit, lowers, uppers);

    bool from_below = lowers.size() <= uppers.size();
    FormulaId inf = infinity_version(unit, from_below);
    std::vector<FormulaId> cases;
    std::unordered_set<FormulaId> seen{st_.mk_false()};
    auto push = [&](FormulaId f) {
      if (seen.insert(f).second) cases.push_back(f);
      return f == st_.mk_true();
    };
    for (long long j = 1; j <= period_; ++j) {
      Subst s{{y_, LinearTerm(from_below ? j : -j)}};
      if (push(st_.substitute(inf, s))) return st_.mk_true();
    }
    const auto& bounds = from_below ? lowers : uppers;
    for (const LinearTerm& b : bounds) {
      for (long long j = 0; j < period_; ++j) {
        LinearTerm target = b;
        target += LinearTerm(from_below ? j : -j);
        Subst s{{y_, std::move(target)}};
        if (push(st_.substitute(unit, s))) return st_.mk_true();
      }
    }
    return st_.disj_all(cases);
  }

 private:
  FormulaId expand_eq(FormulaId f) {
    return rebuild(f, [&](const Node& n) -> std::optional<FormulaId> {
      if (n.kind == Kind::Eq && n.term.mentions(v_))
        return st_.conj(st_.leq0(n.term), st_.leq0(-n.term));
      return std::nullopt;
    });
  }

  void scan_coefficients(FormulaId f) {
    std::unordered_set<FormulaId> seen;
    std::vector<FormulaId> stack{f};
    while (!stack.empty()) {
      FormulaId id = stack.back();
      stack.pop_back();
      if (!seen.insert(id).second) continue;
      const Node& n = st_.node(id);
      switch (n.kind) {
        case Kind::Leq:
        case Kind::Dvd: {
          long long c = n.term.coeff_of(v_);
          if (c != 0) lambda_ = checked_lcm(lambda_, c < 0 ? -c : c);
          break;
        }
        case Kind::Not:
          stack.push_back(n.lhs);
          break;
        case Kind::And:
        case Kind::Or:
          stack.push_back(n.lhs);
          stack.push_back(n.rhs);
          break;
        case Kind::Eq:
          assert(!n.term.mentions(v_));
          break;
        default:
          break;
      }
    }
  }

  // Rewrites every atom c*v + r REL 0 into (+/-)y + (lambda/|c|)*r REL 0,
  // where y stands for lambda*v.
  FormulaId rewrite_unit(FormulaId f) {
    return rebuild(f, [&](const Node& n) -> std::optional<FormulaId> {
      if (n.kind != Kind::Leq && n.kind != Kind::Dvd) return std::nullopt;
      long long c = n.term.coeff_of(v_);
      if (c == 0) return std::nullopt;
      long long scale = lambda_ / (c < 0 ? -c : c);
      LinearTerm rest = n.term - LinearTerm::variable(v_, c);
      rest *= scale;
      rest += LinearTerm::variable(y_, c < 0 ? -1 : 1);
      if (n.kind == Kind::Leq) return st_.leq0(std::move(rest));
      return st_.dvd(n.modulus * scale, std::move(rest));
    });
  }

  void collect_bounds(FormulaId f, std::vector<LinearTerm>& lowers,
                      std::vector<LinearTerm>& uppers) {
    std::unordered_set<FormulaId> seen;
    std::vector<FormulaId> stack{f};
    while (!stack.empty()) {
      FormulaId id = stack.back();
      stack.pop_back();
      if (!seen.insert(id).second) continue;
      const Node& n = st_.node(id);
      switch (n.kind) {
        case Kind::Leq: {
          long long c = n.term.coeff_of(y_);
          if (c == 1) {
            LinearTerm u = -(n.term - LinearTerm::variable(y_));  // y <= u
            if (std::find(uppers.begin(), uppers.end(), u) == uppers.end())
              uppers.push_back(std::move(u));
          } else if (c == -1) {
            LinearTerm l = n.term + LinearTerm::variable(y_);     // l <= y
            if (std::find(lowers.begin(), lowers.end(), l) == lowers.end())
              lowers.push_back(std::move(l));
          } else {
            assert(c == 0);
          }
          break;
        }
        case Kind::Dvd:
          if (n.term.mentions(y_)) period_ = checked_lcm(period_, n.modulus);
          break;
        case Kind::Not:
          stack.push_back(n.lhs);
          break;
        case Kind::And:
        case Kind::Or:
          stack.push_back(n.lhs);
          stack.push_back(n.rhs);
          break;
        default:
          break;
      }
    }
  }

  // phi with the inequalities on y replaced by their limit truth values.
  FormulaId infinity_version(FormulaId f, bool from_below) {
    return rebuild(f, [&](const Node& n) -> std::optional<FormulaId> {
      if (n.kind != Kind::Leq) return std::nullopt;
      long long c = n.term.coeff_of(y_);
      if (c == 0) return std::nullopt;
      bool is_upper = c == 1;
      return st_.mk_bool(from_below ? is_upper : !is_upper);
    });
  }

  FormulaId rebuild(FormulaId f, const std::function<std::optional<FormulaId>(const Node&)>& leaf) {
    std::unordered_map<FormulaId, FormulaId> memo;
    auto rec = [&](auto&& self, FormulaId id) -> FormulaId {
      auto it = memo.find(id);
      if (it != memo.end()) return it->second;
      const Node& n = st_.node(id);
      FormulaId out = id;
      switch (n.kind) {
        case Kind::Not:
          out = st_.negation(self(self, n.lhs));
          break;
        case Kind::And:
          out = st_.conj(self(self, n.lhs), self(self, n.rhs));
          break;
        case Kind::Or:
          out = st_.disj(self(self, n.lhs), self(self, n.rhs));
          break;
        default:
          if (auto r = leaf(n)) out = *r;
          break;
      }
      memo.emplace(id, out);
      return out;
    };
    return rec(rec, f);
  }

  FormulaStore& st_;
  VarId v_;
  VarId y_ = 0;
  long long lambda_ = 1;
  long long period_ = 1;
};

// Eliminates v from body given a pinning conjunct c*v + rest = 0: every atom
// is scaled by |c| so that c*v can be replaced by -rest, and |c| must divide
// rest.  No case split, so this is always preferred over the Cooper step.
FormulaId equality_resolution(FormulaStore& st, VarId v, long long c,
                              const LinearTerm& rest, FormulaId body) {
  long long a = c < 0 ? -c : c;
  long long sign = c < 0 ? -1 : 1;
  std::unordered_map<FormulaId, FormulaId> memo;
  auto rec = [&](auto&& self, FormulaId id) -> FormulaId {
    auto it = memo.find(id);
    if (it != memo.end()) return it->second;
    const Node& n = st.node(id);
    FormulaId out = id;
    switch (n.kind) {
      case Kind::Not:
        out = st.negation(self(self, n.lhs));
        break;
      case Kind::And:
        out = st.conj(self(self, n.lhs), self(self, n.rhs));
        break;
      case Kind::Or:
        out = st.disj(self(self, n.lhs), self(self, n.rhs));
        break;
      case Kind::Leq:
      case Kind::Eq:
      case Kind::Dvd: {
        long long av = n.term.coeff_of(v);
        if (av == 0) break;
        LinearTerm scaled = (n.term - LinearTerm::variable(v, av)) * a;
        scaled -= rest * (av * sign);
        if (n.kind == Kind::Leq)
          out = st.leq0(std::move(scaled));
        else if (n.kind == Kind::Eq)
          out = st.eq0(std::move(scaled));
        else
          out = st.dvd(n.modulus * a, std::move(scaled));
        break;
      }
      default:
        break;
    }
    memo.emplace(id, out);
    return out;
  };
  return st.conj(st.dvd(a, rest), rec(rec, body));
}

long long eval_ground_term(const LinearTerm& t, VarId v, long long x) {
  long long val = t.constant();
  for (const auto& [var, c] : t.coeffs()) val += var == v ? c * x : 0;
  return val;
}

bool eval_univariate(const FormulaStore& st, FormulaId f, VarId v, long long x) {
  const Node& n = st.node(f);
  switch (n.kind) {
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::Leq:
      return eval_ground_term(n.term, v, x) <= 0;
    case Kind::Eq:
      return eval_ground_term(n.term, v, x) == 0;
    case Kind::Dvd:
      return eval_ground_term(n.term, v, x) % n.modulus == 0;
    case Kind::Not:
      return !eval_univariate(st, n.lhs, v, x);
    case Kind::And:
      return eval_univariate(st, n.lhs, v, x) && eval_univariate(st, n.rhs, v, x);
    case Kind::Or:
      return eval_univariate(st, n.lhs, v, x) || eval_univariate(st, n.rhs, v, x);
    case Kind::Implies:
      return !eval_univariate(st, n.lhs, v, x) || eval_univariate(st, n.rhs, v, x);
    case Kind::Iff:
      return eval_univariate(st, n.lhs, v, x) == eval_univariate(st, n.rhs, v, x);
    default:
      throw std::logic_error("quantifier in univariate evaluation");
  }
}

// When v is the only free variable, any satisfying value may be assumed to
// lie within the Cooper witness bound, so a direct scan decides the formula.
// Constant interval bounds on the conjunctive spine shrink the scan further.
std::optional<FormulaId> univariate_exists(FormulaStore& st, VarId v, FormulaId body) {
  constexpr long long kScanLimit = 300'000;
  constexpr long long kEvalOps = 200'000'000;

  std::optional<long long> lo, hi;
  {
    std::vector<FormulaId> conjs;
    st.conjuncts(body, conjs);
    for (FormulaId c : conjs) {
      const Node& n = st.node(c);
      if (n.kind != Kind::Leq && n.kind != Kind::Eq) continue;
      long long cv = n.term.coeff_of(v);
      if (cv == 0) continue;
      long long k = n.term.constant();
      if (n.term.coeffs().size() != 1) continue;
      // cv*v + k <= 0 (or = 0)
      if (cv > 0 || n.kind == Kind::Eq) {
        long long u = cv > 0 ? -k : k;  // v <= floor(u / |cv|)
        long long d = cv > 0 ? cv : -cv;
        long long q = u >= 0 ? u / d : -((-u + d - 1) / d);
        hi = hi ? std::min(*hi, q) : q;
      }
      if (cv < 0 || n.kind == Kind::Eq) {
        long long u = cv < 0 ? k : -k;  // v >= ceil(u / |cv|)
        long long d = cv > 0 ? cv : -cv;
        long long q = u >= 0 ? (u + d - 1) / d : -(-u / d);
        lo = lo ? std::max(*lo, q) : q;
      }
    }
  }
  if (lo && hi) {
    if (*lo > *hi) return st.mk_false();
    long long width = *hi - *lo + 1;
    if (width <= kScanLimit &&
        width * static_cast<long long>(st.dag_size(body)) <= kEvalOps) {
      for (long long x = *lo; x <= *hi; ++x)
        if (eval_univariate(st, body, v, x)) return st.mk_true();
      return st.mk_false();
    }
  }

  long long lambda = 1, divisors = 1, max_const = 0;
  std::unordered_set<FormulaId> seen;
  std::vector<FormulaId> stack{body};
  while (!stack.empty()) {
    FormulaId id = stack.back();
    stack.pop_back();
    if (!seen.insert(id).second) continue;
    const Node& n = st.node(id);
    switch (n.kind) {
      case Kind::Leq:
      case Kind::Eq:
      case Kind::Dvd: {
        long long c = n.term.coeff_of(v);
        if (c != 0) lambda = checked_lcm(lambda, c < 0 ? -c : c);
        if (n.kind == Kind::Dvd) divisors = checked_lcm(divisors, n.modulus);
        long long k = n.term.constant();
        max_const = std::max(max_const, k < 0 ? -k : k);
        if (lambda > kScanLimit || divisors > kScanLimit) return std::nullopt;
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
      case Kind::Exists:
      case Kind::Forall:
        return std::nullopt;
      default:
        break;
    }
  }
  __int128 bound = static_cast<__int128>(lambda) * max_const +
                   static_cast<__int128>(lambda) * divisors + 1;
  if (bound > kScanLimit) return std::nullopt;
  long long b = static_cast<long long>(bound);
  if ((2 * b + 1) * static_cast<long long>(st.dag_size(body)) > kEvalOps)
    return std::nullopt;
  for (long long x = -b; x <= b; ++x)
    if (eval_univariate(st, body, v, x)) return st.mk_true();
  return st.mk_false();
}

// Full existential elimination of v from a quantifier-free body.
FormulaId exists_eliminate(FormulaStore& st, VarId v, FormulaId body) {
  body = nnf(st, body);
  if (st.is_const(body) || !st.mentions(body, v)) return body;

  if (st.free_vars(body) == std::vector<VarId>{v}) {
    if (auto r = univariate_exists(st, v, body)) return *r;
  }

  if (st.kind(body) == Kind::Or) {
    std::vector<FormulaId> ds;
    st.disjuncts(body, ds);
    std::vector<FormulaId> parts;
    parts.reserve(ds.size());
    for (FormulaId d : ds) parts.push_back(exists_eliminate(st, v, d));
    return st.disj_all(parts);
  }

  std::vector<FormulaId> conjs;
  st.conjuncts(body, conjs);

  std::vector<FormulaId> with, without;
  for (FormulaId c : conjs) (st.mentions(c, v) ? with : without).push_back(c);
  if (!without.empty())
    return st.conj(st.conj_all(without), exists_eliminate(st, v, st.conj_all(with)));

  // Equality resolution: any equality conjunct pinning v removes the
  // quantifier; prefer the smallest coefficient.
  {
    FormulaId pivot = 0;
    long long pivot_c = 0;
    for (FormulaId c : conjs) {
      const Node& n = st.node(c);
      if (n.kind != Kind::Eq) continue;
      long long coeff = n.term.coeff_of(v);
      if (coeff == 0) continue;
      long long mag = coeff < 0 ? -coeff : coeff;
      if (pivot_c == 0 || mag < (pivot_c < 0 ? -pivot_c : pivot_c)) {
        pivot = c;
        pivot_c = coeff;
      }
    }
    if (pivot_c != 0) {
      LinearTerm rest = st.node(pivot).term - LinearTerm::variable(v, pivot_c);
      return equality_resolution(st, v, pivot_c, rest, body);
    }
  }

  // Case split on a disjunctive conjunct when every branch pins v; each
  // branch then resolves by the one-point rule, so the split cannot blow up.
  for (std::size_t i = 0; i < conjs.size(); ++i) {
    const Node& n = st.node(conjs[i]);
    if (n.kind != Kind::Or) continue;
    std::vector<FormulaId> branches;
    st.disjuncts(conjs[i], branches);
    if (branches.size() > kDistributeLimit) continue;
    bool all_pin = true;
    for (FormulaId b : branches) {
      std::vector<FormulaId> sub;
      st.conjuncts(b, sub);
      bool pin = false;
      for (FormulaId s : sub) {
        const Node& m = st.node(s);
        if (m.kind == Kind::Eq && m.term.coeff_of(v) != 0) {
          pin = true;
          break;
        }
      }
      if (!pin) {
        all_pin = false;
        break;
      }
    }
    if (!all_pin) continue;
    std::vector<FormulaId> rest;
    for (std::size_t j = 0; j < conjs.size(); ++j)
      if (j != i) rest.push_back(conjs[j]);
    FormulaId rest_f = st.conj_all(rest);
    std::vector<FormulaId> parts;
    for (FormulaId b : branches)
      parts.push_back(exists_eliminate(st, v, st.conj(b, rest_f)));
    return st.disj_all(parts);
  }

  return CooperStep(st, v).run(body);
}

}  // namespace

FormulaId eliminate(FormulaStore& st, FormulaId q) {
  const Node& n = st.node(q);
  // The normalizing constructors may already have collapsed the quantifier
  // (e.g. a constant or variable-free body); such inputs pass through.
  FormulaId body = n.kind == Kind::Exists ? n.lhs : q;
  std::unordered_set<FormulaId> seen;  // reject nested quantifiers in the body
  std::vector<FormulaId> stack{body};
  while (!stack.empty()) {
    FormulaId id = stack.back();
    stack.pop_back();
    if (!seen.insert(id).second) continue;
    const Node& m = st.node(id);
    if (m.kind == Kind::Exists || m.kind == Kind::Forall)
      throw std::invalid_argument("eliminate expects a quantifier-free body");
    if (m.kind == Kind::Not || m.kind == Kind::And || m.kind == Kind::Or ||
        m.kind == Kind::Implies || m.kind == Kind::Iff) {
      stack.push_back(m.lhs);
      if (m.kind != Kind::Not) stack.push_back(m.rhs);
    }
  }
  if (n.kind != Kind::Exists) return st.simplify(q);
  return exists_eliminate(st, n.var, body);
}

FormulaId eliminate_all(FormulaStore& st, FormulaId f) {
  std::unordered_map<FormulaId, FormulaId> memo;
  auto rec = [&](auto&& self, FormulaId id) -> FormulaId {
    auto it = memo.find(id);
    if (it != memo.end()) return it->second;
    const Node& n = st.node(id);
    FormulaId out = id;
    switch (n.kind) {
      case Kind::True:
      case Kind::False:
      case Kind::Leq:
      case Kind::Eq:
      case Kind::Dvd:
        break;
      case Kind::Not:
        out = st.negation(self(self, n.lhs));
        break;
      case Kind::And:
        out = st.conj(self(self, n.lhs), self(self, n.rhs));
        break;
      case Kind::Or:
        out = st.disj(self(self, n.lhs), self(self, n.rhs));
        break;
      case Kind::Implies:
        out = st.implies(self(self, n.lhs), self(self, n.rhs));
        break;
      case Kind::Iff:
        out = st.iff(self(self, n.lhs), self(self, n.rhs));
        break;
      case Kind::Exists:
        out = exists_eliminate(st, n.var, self(self, n.lhs));
        break;
      case Kind::Forall:
        out = st.negation(exists_eliminate(st, n.var, nnf(st, st.negation(self(self, n.lhs)))));
        break;
    }
    memo.emplace(id, out);
    return out;
  };
  return rec(rec, f);
}

bool decide(FormulaStore& st, FormulaId sentence) {
  if (!st.free_vars(sentence).empty())
    throw std::invalid_argument("decide: sentence has free variables");
  FormulaId g = resolve(st, sentence);
  if (st.is_const(g)) return g == st.mk_true();
  g = eliminate_all(st, g);
  g = resolve(st, g);
  if (!st.is_const(g)) throw std::logic_error("decision procedure left residue");
  return g == st.mk_true();
}

namespace {

long long term_value(const LinearTerm& t,
                     const std::unordered_map<VarId, long long>& env) {
  long long val = t.constant();
  for (const auto& [v, c] : t.coeffs()) val += c * env.at(v);
  return val;
}

bool bounded_eval(FormulaStore& st, FormulaId f, long long bound,
                  std::unordered_map<VarId, long long>& env) {
  const Node& n = st.node(f);
  switch (n.kind) {
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::Leq:
      return term_value(n.term, env) <= 0;
    case Kind::Eq:
      return term_value(n.term, env) == 0;
    case Kind::Dvd:
      return term_value(n.term, env) % n.modulus == 0;
    case Kind::Not:
      return !bounded_eval(st, n.lhs, bound, env);
    case Kind::And:
      return bounded_eval(st, n.lhs, bound, env) && bounded_eval(st, n.rhs, bound, env);
    case Kind::Or:
      return bounded_eval(st, n.lhs, bound, env) || bounded_eval(st, n.rhs, bound, env);
    case Kind::Implies:
      return !bounded_eval(st, n.lhs, bound, env) || bounded_eval(st, n.rhs, bound, env);
    case Kind::Iff:
      return bounded_eval(st, n.lhs, bound, env) == bounded_eval(st, n.rhs, bound, env);
    case Kind::Exists: {
      for (long long x = -bound; x <= bound; ++x) {
        env[n.var] = x;
        if (bounded_eval(st, n.lhs, bound, env)) {
          env.erase(n.var);
          return true;
        }
      }
      env.erase(n.var);
      return false;
    }
    case Kind::Forall: {
      for (long long x = -bound; x <= bound; ++x) {
        env[n.var] = x;
        if (!bounded_eval(st, n.lhs, bound, env)) {
          env.erase(n.var);
          return false;
        }
      }
      env.erase(n.var);
      return true;
    }
  }
  return false;
}

}  // namespace

bool evaluate(FormulaStore& st, FormulaId f, const Assignment& assignment,
              std::optional<long long> quantifier_bound) {
  std::vector<VarId> free = st.free_vars(f);
  for (VarId v : free) {
    auto it = std::lower_bound(assignment.begin(), assignment.end(), v,
                               [](const auto& p, VarId x) { return p.first < x; });
    if (it == assignment.end() || it->first != v)
      throw std::invalid_argument("evaluate: variable " + st.var_name(v) + " is not assigned");
  }
  Subst map;
  map.reserve(assignment.size());
  for (const auto& [v, val] : assignment) map.push_back({v, LinearTerm(val)});
  FormulaId g = resolve(st, st.substitute(f, map));
  if (st.is_const(g)) return g == st.mk_true();
  if (!quantifier_bound)
    throw std::invalid_argument("evaluate: quantifier met without a bound");
  std::unordered_map<VarId, long long> env;
  return bounded_eval(st, g, *quantifier_bound, env);
}

}  // namespace presburger
