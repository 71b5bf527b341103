#include "presburger/ast.hpp"

#include <algorithm>
#include <numeric>

namespace presburger {

namespace {

long long gcdll(long long a, long long b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

// Floor division for possibly negative numerators.
long long floor_div(long long a, long long b) {
  long long q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

long long mod_nonneg(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

std::size_t hash_mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

}  // namespace

LinearTerm LinearTerm::variable(VarId v, long long coeff) {
  LinearTerm t;
  if (coeff != 0) t.coeffs_.push_back({v, coeff});
  return t;
}

long long LinearTerm::coeff_of(VarId v) const {
  auto it = std::lower_bound(coeffs_.begin(), coeffs_.end(), v,
                             [](const auto& p, VarId x) { return p.first < x; });
  return (it != coeffs_.end() && it->first == v) ? it->second : 0;
}

void LinearTerm::add_monomial(VarId v, long long c) {
  if (c == 0) return;
  auto it = std::lower_bound(coeffs_.begin(), coeffs_.end(), v,
                             [](const auto& p, VarId x) { return p.first < x; });
  if (it != coeffs_.end() && it->first == v) {
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
  } else {
    coeffs_.insert(it, {v, c});
  }
}

LinearTerm& LinearTerm::operator+=(const LinearTerm& o) {
  constant_ += o.constant_;
  for (const auto& [v, c] : o.coeffs_) add_monomial(v, c);
  return *this;
}

LinearTerm& LinearTerm::operator-=(const LinearTerm& o) {
  constant_ -= o.constant_;
  for (const auto& [v, c] : o.coeffs_) add_monomial(v, -c);
  return *this;
}

LinearTerm& LinearTerm::operator*=(long long s) {
  if (s == 0) {
    constant_ = 0;
    coeffs_.clear();
    return *this;
  }
  constant_ *= s;
  for (auto& [v, c] : coeffs_) c *= s;
  return *this;
}

LinearTerm LinearTerm::operator-() const {
  LinearTerm t = *this;
  t *= -1;
  return t;
}

LinearTerm LinearTerm::substituted(const Subst& map) const {
  LinearTerm out(constant_);
  for (const auto& [v, c] : coeffs_) {
    auto it = std::lower_bound(map.begin(), map.end(), v,
                               [](const auto& p, VarId x) { return p.first < x; });
    if (it != map.end() && it->first == v) {
      LinearTerm scaled = it->second;
      scaled *= c;
      out += scaled;
    } else {
      out.add_monomial(v, c);
    }
  }
  return out;
}

std::size_t LinearTerm::hash() const {
  std::size_t h = std::hash<long long>{}(constant_);
  for (const auto& [v, c] : coeffs_) {
    h = hash_mix(h, v);
    h = hash_mix(h, std::hash<long long>{}(c));
  }
  return h;
}

FormulaStore::FormulaStore() {
  Node t{Kind::True, 0, 0, 0, 0, {}};
  Node f{Kind::False, 0, 0, 0, 0, {}};
  true_ = intern(std::move(t));
  false_ = intern(std::move(f));
}

VarId FormulaStore::fresh_var(std::string name) {
  VarId v = static_cast<VarId>(var_names_.size());
  if (name.empty()) name = "v" + std::to_string(v);
  var_names_.push_back(std::move(name));
  return v;
}

FormulaId FormulaStore::intern(Node n) {
  std::size_t h = hash_mix(static_cast<std::size_t>(n.kind), n.lhs);
  h = hash_mix(h, n.rhs);
  h = hash_mix(h, n.var);
  h = hash_mix(h, std::hash<long long>{}(n.modulus));
  h = hash_mix(h, n.term.hash());
  auto& bucket = index_[h];
  for (FormulaId id : bucket)
    if (nodes_[id] == n) return id;
  if (static_cast<long long>(nodes_.size()) >= budget_)
    throw budget_exhausted("formula node budget of " + std::to_string(budget_) + " exceeded");
  FormulaId id = static_cast<FormulaId>(nodes_.size());
  nodes_.push_back(std::move(n));
  bucket.push_back(id);
  return id;
}

FormulaId FormulaStore::leq0(LinearTerm t) {
  if (t.is_constant()) return mk_bool(t.constant() <= 0);
  long long g = 0;
  for (const auto& [v, c] : t.coeffs()) g = gcdll(g, c);
  if (g > 1) {
    LinearTerm reduced;
    for (const auto& [v, c] : t.coeffs()) reduced += LinearTerm::variable(v, c / g);
    // g*s + k <= 0  <=>  s <= floor(-k/g)  <=>  s - floor(-k/g) <= 0
    reduced += LinearTerm(-floor_div(-t.constant(), g));
    t = std::move(reduced);
  }
  Node n{Kind::Leq, 0, 0, 0, 0, std::move(t)};
  return intern(std::move(n));
}

FormulaId FormulaStore::eq0(LinearTerm t) {
  if (t.is_constant()) return mk_bool(t.constant() == 0);
  long long g = 0;
  for (const auto& [v, c] : t.coeffs()) g = gcdll(g, c);
  if (g > 1) {
    if (t.constant() % g != 0) return false_;
    LinearTerm reduced(t.constant() / g);
    for (const auto& [v, c] : t.coeffs()) reduced += LinearTerm::variable(v, c / g);
    t = std::move(reduced);
  }
  // Canonical sign: leading coefficient positive.
  if (!t.coeffs().empty() && t.coeffs().front().second < 0) t *= -1;
  Node n{Kind::Eq, 0, 0, 0, 0, std::move(t)};
  return intern(std::move(n));
}

FormulaId FormulaStore::dvd(long long modulus, LinearTerm t) {
  if (modulus < 0) modulus = -modulus;
  if (modulus == 0) return eq0(std::move(t));
  if (modulus == 1) return true_;
  // d | g*s  <=>  (d/gcd(d,g)) | s, so divide out the content of the term.
  long long g = gcdll(t.constant(), 0);
  for (const auto& [v, c] : t.coeffs()) g = gcdll(g, c);
  long long shared = gcdll(g, modulus);
  if (shared > 1) {
    modulus /= shared;
    if (modulus == 1) return true_;
    LinearTerm scaled(t.constant() / shared);
    for (const auto& [v, c] : t.coeffs()) scaled += LinearTerm::variable(v, c / shared);
    t = std::move(scaled);
  }
  LinearTerm reduced(mod_nonneg(t.constant(), modulus));
  for (const auto& [v, c] : t.coeffs()) reduced += LinearTerm::variable(v, mod_nonneg(c, modulus));
  if (reduced.is_constant()) return mk_bool(reduced.constant() % modulus == 0);
  Node n{Kind::Dvd, 0, 0, 0, modulus, std::move(reduced)};
  return intern(std::move(n));
}

FormulaId FormulaStore::negation(FormulaId f) {
  const Node& n = nodes_[f];
  switch (n.kind) {
    case Kind::True:
      return false_;
    case Kind::False:
      return true_;
    case Kind::Not:
      return n.lhs;
    case Kind::Leq: {
      // !(t <= 0)  <=>  1 - t <= 0
      LinearTerm t = n.term;
      t *= -1;
      t += LinearTerm(1);
      return leq0(std::move(t));
    }
    default: {
      Node m{Kind::Not, f, 0, 0, 0, {}};
      return intern(std::move(m));
    }
  }
}

FormulaId FormulaStore::conj(FormulaId a, FormulaId b) {
  if (a == false_ || b == false_) return false_;
  if (a == true_) return b;
  if (b == true_) return a;
  if (a == b) return a;
  Node n{Kind::And, a, b, 0, 0, {}};
  return intern(std::move(n));
}

FormulaId FormulaStore::disj(FormulaId a, FormulaId b) {
  if (a == true_ || b == true_) return true_;
  if (a == false_) return b;
  if (b == false_) return a;
  if (a == b) return a;
  Node n{Kind::Or, a, b, 0, 0, {}};
  return intern(std::move(n));
}

FormulaId FormulaStore::implies(FormulaId a, FormulaId b) {
  if (a == false_) return true_;
  if (a == true_) return b;
  if (b == true_) return true_;
  if (b == false_) return negation(a);
  if (a == b) return true_;
  Node n{Kind::Implies, a, b, 0, 0, {}};
  return intern(std::move(n));
}

FormulaId FormulaStore::iff(FormulaId a, FormulaId b) {
  if (a == true_) return b;
  if (b == true_) return a;
  if (a == false_) return negation(b);
  if (b == false_) return negation(a);
  if (a == b) return true_;
  Node n{Kind::Iff, a, b, 0, 0, {}};
  return intern(std::move(n));
}

FormulaId FormulaStore::exists(VarId v, FormulaId body) {
  if (is_const(body)) return body;
  if (!mentions(body, v)) return body;
  Node n{Kind::Exists, body, 0, v, 0, {}};
  return intern(std::move(n));
}

FormulaId FormulaStore::forall(VarId v, FormulaId body) {
  if (is_const(body)) return body;
  if (!mentions(body, v)) return body;
  Node n{Kind::Forall, body, 0, v, 0, {}};
  return intern(std::move(n));
}

FormulaId FormulaStore::conj_all(std::span<const FormulaId> fs) {
  if (fs.empty()) return true_;
  if (fs.size() == 1) return fs[0];
  std::size_t mid = fs.size() / 2;
  return conj(conj_all(fs.first(mid)), conj_all(fs.subspan(mid)));
}

FormulaId FormulaStore::disj_all(std::span<const FormulaId> fs) {
  if (fs.empty()) return false_;
  if (fs.size() == 1) return fs[0];
  std::size_t mid = fs.size() / 2;
  return disj(disj_all(fs.first(mid)), disj_all(fs.subspan(mid)));
}

FormulaId FormulaStore::exists_block(std::span<const VarId> vars, FormulaId body) {
  for (std::size_t i = vars.size(); i-- > 0;) body = exists(vars[i], body);
  return body;
}

FormulaId FormulaStore::forall_block(std::span<const VarId> vars, FormulaId body) {
  for (std::size_t i = vars.size(); i-- > 0;) body = forall(vars[i], body);
  return body;
}

bool FormulaStore::mentions(FormulaId f, VarId v) {
  std::uint64_t key = (static_cast<std::uint64_t>(f) << 32) | v;
  auto it = mentions_memo_.find(key);
  if (it != mentions_memo_.end()) return it->second;
  const Node& n = nodes_[f];
  bool result = false;
  switch (n.kind) {
    case Kind::True:
    case Kind::False:
      result = false;
      break;
    case Kind::Leq:
    case Kind::Eq:
    case Kind::Dvd:
      result = n.term.mentions(v);
      break;
    case Kind::Not:
      result = mentions(n.lhs, v);
      break;
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff:
      result = mentions(n.lhs, v) || mentions(n.rhs, v);
      break;
    case Kind::Exists:
    case Kind::Forall:
      result = n.var != v && mentions(n.lhs, v);
      break;
  }
  mentions_memo_.emplace(key, result);
  return result;
}

std::vector<VarId> FormulaStore::free_vars(FormulaId f) {
  std::unordered_map<FormulaId, std::vector<VarId>> memo;
  auto merge = [](const std::vector<VarId>& a, const std::vector<VarId>& b) {
    std::vector<VarId> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  };
  auto rec = [&](auto&& self, FormulaId id) -> const std::vector<VarId>& {
    auto it = memo.find(id);
    if (it != memo.end()) return it->second;
    const Node& n = nodes_[id];
    std::vector<VarId> vars;
    switch (n.kind) {
      case Kind::True:
      case Kind::False:
        break;
      case Kind::Leq:
      case Kind::Eq:
      case Kind::Dvd:
        for (const auto& [v, c] : n.term.coeffs()) vars.push_back(v);
        break;
      case Kind::Not:
        vars = self(self, n.lhs);
        break;
      case Kind::And:
      case Kind::Or:
      case Kind::Implies:
      case Kind::Iff:
        vars = merge(self(self, n.lhs), self(self, n.rhs));
        break;
      case Kind::Exists:
      case Kind::Forall: {
        vars = self(self, n.lhs);
        auto pos = std::lower_bound(vars.begin(), vars.end(), n.var);
        if (pos != vars.end() && *pos == n.var) vars.erase(pos);
        break;
      }
    }
    return memo.emplace(id, std::move(vars)).first->second;
  };
  return rec(rec, f);
}

FormulaId FormulaStore::substitute(FormulaId f, const Subst& map) {
  if (map.empty()) return f;
  std::unordered_map<FormulaId, FormulaId> memo;
  auto applies = [&](const LinearTerm& t) {
    for (const auto& [v, c] : map)
      if (t.mentions(v)) return true;
    return false;
  };
  auto rec = [&](auto&& self, FormulaId id) -> FormulaId {
    auto it = memo.find(id);
    if (it != memo.end()) return it->second;
    const Node& n = nodes_[id];
    FormulaId out = id;
    switch (n.kind) {
      case Kind::True:
      case Kind::False:
        break;
      case Kind::Leq:
        if (applies(n.term)) out = leq0(n.term.substituted(map));
        break;
      case Kind::Eq:
        if (applies(n.term)) out = eq0(n.term.substituted(map));
        break;
      case Kind::Dvd:
        if (applies(n.term)) out = dvd(n.modulus, n.term.substituted(map));
        break;
      case Kind::Not:
        out = negation(self(self, n.lhs));
        break;
      case Kind::And:
        out = conj(self(self, n.lhs), self(self, n.rhs));
        break;
      case Kind::Or:
        out = disj(self(self, n.lhs), self(self, n.rhs));
        break;
      case Kind::Implies:
        out = implies(self(self, n.lhs), self(self, n.rhs));
        break;
      case Kind::Iff:
        out = iff(self(self, n.lhs), self(self, n.rhs));
        break;
      case Kind::Exists:
      case Kind::Forall: {
        FormulaId body = self(self, n.lhs);
        out = n.kind == Kind::Exists ? exists(n.var, body) : forall(n.var, body);
        break;
      }
    }
    memo.emplace(id, out);
    return out;
  };
  return rec(rec, f);
}

FormulaId FormulaStore::simplify(FormulaId f) {
  // Construction already normalizes, so this is a rebuild through the
  // constructors; it never grows the formula and is idempotent.
  std::unordered_map<FormulaId, FormulaId> memo;
  auto rec = [&](auto&& self, FormulaId id) -> FormulaId {
    auto it = memo.find(id);
    if (it != memo.end()) return it->second;
    const Node& n = nodes_[id];
    FormulaId out = id;
    switch (n.kind) {
      case Kind::True:
      case Kind::False:
        break;
      case Kind::Leq:
        out = leq0(n.term);
        break;
      case Kind::Eq:
        out = eq0(n.term);
        break;
      case Kind::Dvd:
        out = dvd(n.modulus, n.term);
        break;
      case Kind::Not:
        out = negation(self(self, n.lhs));
        break;
      case Kind::And:
        out = conj(self(self, n.lhs), self(self, n.rhs));
        break;
      case Kind::Or:
        out = disj(self(self, n.lhs), self(self, n.rhs));
        break;
      case Kind::Implies:
        out = implies(self(self, n.lhs), self(self, n.rhs));
        break;
      case Kind::Iff:
        out = iff(self(self, n.lhs), self(self, n.rhs));
        break;
      case Kind::Exists:
        out = exists(n.var, self(self, n.lhs));
        break;
      case Kind::Forall:
        out = forall(n.var, self(self, n.lhs));
        break;
    }
    memo.emplace(id, out);
    return out;
  };
  return rec(rec, f);
}

std::size_t FormulaStore::dag_size(FormulaId f) {
  std::unordered_map<FormulaId, bool> seen;
  std::vector<FormulaId> stack{f};
  while (!stack.empty()) {
    FormulaId id = stack.back();
    stack.pop_back();
    if (seen.count(id)) continue;
    seen[id] = true;
    const Node& n = nodes_[id];
    switch (n.kind) {
      case Kind::Not:
      case Kind::Exists:
      case Kind::Forall:
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
  return seen.size();
}

void FormulaStore::conjuncts(FormulaId f, std::vector<FormulaId>& out) const {
  const Node& n = nodes_[f];
  if (n.kind == Kind::And) {
    conjuncts(n.lhs, out);
    conjuncts(n.rhs, out);
  } else {
    out.push_back(f);
  }
}

void FormulaStore::disjuncts(FormulaId f, std::vector<FormulaId>& out) const {
  const Node& n = nodes_[f];
  if (n.kind == Kind::Or) {
    disjuncts(n.lhs, out);
    disjuncts(n.rhs, out);
  } else {
    out.push_back(f);
  }
}

}  // namespace presburger
