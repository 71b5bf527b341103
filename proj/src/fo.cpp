#include "plactic/fo.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "presburger/solve.hpp"

namespace plactic::fo {

using interp::Interpretation;
using interp::VarBlock;
using presburger::FormulaId;
using presburger::FormulaStore;
using presburger::LinearTerm;
using presburger::VarId;

MTermPtr MTerm::make_var(std::string name) {
  auto t = std::make_shared<MTerm>();
  t->kind = Kind::Var;
  t->name = std::move(name);
  return t;
}

MTermPtr MTerm::make_word(plactic::Word w) {
  auto t = std::make_shared<MTerm>();
  t->kind = Kind::Word;
  t->word = std::move(w);
  return t;
}

MTermPtr MTerm::make_concat(MTermPtr l, MTermPtr r) {
  auto t = std::make_shared<MTerm>();
  t->kind = Kind::Concat;
  t->lhs = std::move(l);
  t->rhs = std::move(r);
  return t;
}

MFormulaPtr MFormula::make_eq(MTermPtr a, MTermPtr b) {
  auto f = std::make_shared<MFormula>();
  f->kind = Kind::Eq;
  f->t1 = std::move(a);
  f->t2 = std::move(b);
  return f;
}

MFormulaPtr MFormula::make_not(MFormulaPtr g) {
  auto f = std::make_shared<MFormula>();
  f->kind = Kind::Not;
  f->f1 = std::move(g);
  return f;
}

MFormulaPtr MFormula::make_binary(Kind k, MFormulaPtr a, MFormulaPtr b) {
  auto f = std::make_shared<MFormula>();
  f->kind = k;
  f->f1 = std::move(a);
  f->f2 = std::move(b);
  return f;
}

MFormulaPtr MFormula::make_quant(Kind k, std::string var, MFormulaPtr body) {
  auto f = std::make_shared<MFormula>();
  f->kind = k;
  f->var = std::move(var);
  f->f1 = std::move(body);
  return f;
}

namespace {

void collect_term_vars(const MTerm& t, std::set<std::string>& out) {
  switch (t.kind) {
    case MTerm::Kind::Var:
      out.insert(t.name);
      break;
    case MTerm::Kind::Word:
      break;
    case MTerm::Kind::Concat:
      collect_term_vars(*t.lhs, out);
      collect_term_vars(*t.rhs, out);
      break;
  }
}

void collect_free(const MFormula& f, std::set<std::string>& bound,
                  std::set<std::string>& out) {
  switch (f.kind) {
    case MFormula::Kind::Eq: {
      std::set<std::string> vars;
      collect_term_vars(*f.t1, vars);
      collect_term_vars(*f.t2, vars);
      for (const auto& v : vars)
        if (!bound.count(v)) out.insert(v);
      break;
    }
    case MFormula::Kind::Not:
      collect_free(*f.f1, bound, out);
      break;
    case MFormula::Kind::Exists:
    case MFormula::Kind::Forall: {
      bool added = bound.insert(f.var).second;
      collect_free(*f.f1, bound, out);
      if (added) bound.erase(f.var);
      break;
    }
    default:
      collect_free(*f.f1, bound, out);
      collect_free(*f.f2, bound, out);
      break;
  }
}

void check_constants(const MTerm& t, int rank) {
  switch (t.kind) {
    case MTerm::Kind::Var:
      break;
    case MTerm::Kind::Word:
      check_letters(t.word, rank);
      break;
    case MTerm::Kind::Concat:
      check_constants(*t.lhs, rank);
      check_constants(*t.rhs, rank);
      break;
  }
}

void check_formula_constants(const MFormula& f, int rank) {
  switch (f.kind) {
    case MFormula::Kind::Eq:
      check_constants(*f.t1, rank);
      check_constants(*f.t2, rank);
      break;
    case MFormula::Kind::Not:
    case MFormula::Kind::Exists:
    case MFormula::Kind::Forall:
      check_formula_constants(*f.f1, rank);
      break;
    default:
      check_formula_constants(*f.f1, rank);
      check_formula_constants(*f.f2, rank);
      break;
  }
}

}  // namespace

std::vector<std::string> term_variables(const MTerm& t) {
  std::set<std::string> vars;
  collect_term_vars(t, vars);
  return {vars.begin(), vars.end()};
}

std::vector<std::string> free_variables(const MFormula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class MLexer {
 public:
  explicit MLexer(const std::string& text) : text_(text) { skip(); }

  bool at_end() const { return pos_ >= text_.size(); }

  bool try_punct(const char* p) {
    std::size_t len = std::char_traits<char>::length(p);
    if (text_.compare(pos_, len, p) == 0) {
      pos_ += len;
      skip();
      return true;
    }
    return false;
  }

  bool peek_punct(const char* p) const {
    return text_.compare(pos_, std::char_traits<char>::length(p), p) == 0;
  }

  bool peek_ident(const char* w) const {
    std::size_t len = std::char_traits<char>::length(w);
    if (text_.compare(pos_, len, w) != 0) return false;
    std::size_t after = pos_ + len;
    return after >= text_.size() ||
           (!std::isalnum(static_cast<unsigned char>(text_[after])) && text_[after] != '_');
  }

  bool try_ident(const char* w) {
    if (!peek_ident(w)) return false;
    pos_ += std::char_traits<char>::length(w);
    skip();
    return true;
  }

  std::string ident() {
    if (pos_ >= text_.size() ||
        (!std::isalpha(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '_'))
      fail("expected identifier");
    std::size_t j = pos_;
    while (j < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_'))
      ++j;
    std::string s = text_.substr(pos_, j - pos_);
    pos_ = j;
    skip();
    return s;
  }

  long long integer() {
    std::size_t j = pos_;
    if (j < text_.size() && text_[j] == '-') ++j;
    std::size_t digits = j;
    while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
    if (j == digits) fail("expected integer");
    long long v = std::stoll(text_.substr(pos_, j - pos_));
    pos_ = j;
    skip();
    return v;
  }

  bool peek_int() const {
    return pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
            (text_[pos_] == '-' && pos_ + 1 < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))));
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error(msg + " near position " + std::to_string(pos_));
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  const std::string& text_;
  std::size_t pos_ = 0;
};

class MParser {
 public:
  explicit MParser(const std::string& text) : lex_(text) {}

  MFormulaPtr formula() {
    MFormulaPtr f = form();
    if (!lex_.at_end()) lex_.fail("trailing input");
    return f;
  }

  MTermPtr whole_term() {
    MTermPtr t = term();
    if (!lex_.at_end()) lex_.fail("trailing input");
    return t;
  }

  std::pair<MTermPtr, MTermPtr> equation() {
    MTermPtr l = term();
    if (!lex_.try_punct("=")) lex_.fail("expected '=' in equation");
    MTermPtr r = term();
    if (!lex_.at_end()) lex_.fail("trailing input");
    return {l, r};
  }

 private:
  MFormulaPtr form() {
    if (lex_.peek_ident("exists") || lex_.peek_ident("forall")) {
      bool ex = lex_.try_ident("exists");
      if (!ex) lex_.try_ident("forall");
      std::string v = lex_.ident();
      if (v == "eps" || v == "or" || v == "exists" || v == "forall")
        lex_.fail("reserved word used as variable");
      if (!lex_.try_punct(":")) lex_.fail("expected ':' after quantified variable");
      MFormulaPtr body = form();
      return MFormula::make_quant(ex ? MFormula::Kind::Exists : MFormula::Kind::Forall,
                                  std::move(v), std::move(body));
    }
    MFormulaPtr lhs = or_chain();
    if (lex_.try_punct("->"))
      return MFormula::make_binary(MFormula::Kind::Implies, std::move(lhs), form());
    if (lex_.try_punct("<->"))
      return MFormula::make_binary(MFormula::Kind::Iff, std::move(lhs), form());
    return lhs;
  }

  MFormulaPtr or_chain() {
    MFormulaPtr f = and_chain();
    while (lex_.try_ident("or"))
      f = MFormula::make_binary(MFormula::Kind::Or, std::move(f), and_chain());
    return f;
  }

  MFormulaPtr and_chain() {
    MFormulaPtr f = unary();
    while (lex_.try_punct("&"))
      f = MFormula::make_binary(MFormula::Kind::And, std::move(f), unary());
    return f;
  }

  MFormulaPtr unary() {
    if (lex_.try_punct("!")) return MFormula::make_not(unary());
    if (lex_.try_punct("(")) {
      MFormulaPtr f = form();
      if (!lex_.try_punct(")")) lex_.fail("expected ')'");
      return f;
    }
    if (lex_.peek_ident("exists") || lex_.peek_ident("forall")) return form();
    MTermPtr l = term();
    if (!lex_.try_punct("=")) lex_.fail("expected '=' after term");
    return MFormula::make_eq(std::move(l), term());
  }

  MTermPtr term() {
    MTermPtr t = factor();
    while (lex_.try_punct(".")) t = MTerm::make_concat(std::move(t), factor());
    return t;
  }

  MTermPtr factor() {
    if (lex_.try_ident("eps")) return MTerm::make_word({});
    if (lex_.try_punct("[")) {
      plactic::Word w;
      while (!lex_.try_punct("]")) {
        if (!lex_.peek_int()) lex_.fail("expected integer in word constant");
        w.push_back(static_cast<Letter>(lex_.integer()));
      }
      return MTerm::make_word(std::move(w));
    }
    std::string name = lex_.ident();
    if (name == "or" || name == "exists" || name == "forall")
      lex_.fail("reserved word used as variable");
    return MTerm::make_var(std::move(name));
  }

  MLexer lex_;
};

}  // namespace

MTermPtr parse_term(const std::string& text) { return MParser(text).whole_term(); }

MFormulaPtr parse_sentence(const std::string& text) { return MParser(text).formula(); }

EquationSystem parse_system(const std::string& text) {
  EquationSystem sys;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find_first_of(";\n", start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    start = end + 1;
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (!blank) sys.equations.push_back(MParser(line).equation());
    if (end == text.size()) break;
  }
  if (sys.equations.empty()) throw parse_error("empty equation system");
  return sys;
}

// ---------------------------------------------------------------------------
// Translation

namespace {

// A monoid value in translated form: either a block of variables or a fixed
// exponent vector.
struct VectorExpr {
  std::vector<LinearTerm> coords;

  static VectorExpr from_block(const VarBlock& b) {
    VectorExpr e;
    e.coords.reserve(b.size());
    for (VarId v : b) e.coords.push_back(LinearTerm::variable(v));
    return e;
  }
  static VectorExpr from_constant(const ExponentVector& v) {
    VectorExpr e;
    e.coords.reserve(v.v.size());
    for (long long x : v.v) e.coords.push_back(LinearTerm(x));
    return e;
  }
};

class Translator {
 public:
  Translator(FormulaStore& st, const Interpretation& ip,
             std::vector<VarBlock>* introduced)
      : st_(st), ip_(ip), introduced_(introduced) {}

  FormulaId run(const MFormula& f, std::map<std::string, VarBlock>& env) {
    switch (f.kind) {
      case MFormula::Kind::Eq:
        return atom(f, env);
      case MFormula::Kind::Not:
        return st_.negation(run(*f.f1, env));
      case MFormula::Kind::And:
        return st_.conj(run(*f.f1, env), run(*f.f2, env));
      case MFormula::Kind::Or:
        return st_.disj(run(*f.f1, env), run(*f.f2, env));
      case MFormula::Kind::Implies:
        return st_.implies(run(*f.f1, env), run(*f.f2, env));
      case MFormula::Kind::Iff:
        return st_.iff(run(*f.f1, env), run(*f.f2, env));
      case MFormula::Kind::Exists:
      case MFormula::Kind::Forall: {
        VarBlock block = fresh_block();
        std::optional<VarBlock> saved;
        if (auto it = env.find(f.var); it != env.end()) saved = it->second;
        env[f.var] = block;
        FormulaId body = run(*f.f1, env);
        if (saved)
          env[f.var] = *saved;
        else
          env.erase(f.var);
        FormulaId dom = interp::build_domain(st_, ip_.tables, block);
        if (f.kind == MFormula::Kind::Exists)
          return st_.exists_block(block, st_.conj(dom, body));
        return st_.forall_block(block, st_.implies(dom, body));
      }
    }
    throw std::logic_error("unreachable");
  }

 private:
  VarBlock fresh_block() {
    VarBlock b(ip_.k());
    for (int i = 0; i < ip_.k(); ++i) b[i] = st_.fresh_var();
    if (introduced_) introduced_->push_back(b);
    return b;
  }

  // Left fold of the factor list; every product is one eta application over a
  // fresh block.
  VectorExpr chain(const MTerm& t, std::map<std::string, VarBlock>& env,
                   std::vector<FormulaId>& conjuncts, VarBlock& bound) {
    std::vector<const MTerm*> factors;
    flatten(t, factors);
    VectorExpr cur = leaf(*factors[0], env);
    for (std::size_t i = 1; i < factors.size(); ++i) {
      VectorExpr next = leaf(*factors[i], env);
      VarBlock out = fresh_block();
      bound.insert(bound.end(), out.begin(), out.end());
      conjuncts.push_back(interp::build_domain(st_, ip_.tables, out));
      conjuncts.push_back(eta_instance(cur, next, VectorExpr::from_block(out)));
      cur = VectorExpr::from_block(out);
    }
    return cur;
  }

  void flatten(const MTerm& t, std::vector<const MTerm*>& out) {
    if (t.kind == MTerm::Kind::Concat) {
      flatten(*t.lhs, out);
      flatten(*t.rhs, out);
    } else {
      out.push_back(&t);
    }
  }

  VectorExpr leaf(const MTerm& t, std::map<std::string, VarBlock>& env) {
    if (t.kind == MTerm::Kind::Var) {
      auto it = env.find(t.name);
      if (it == env.end()) throw std::invalid_argument("unbound monoid variable " + t.name);
      return VectorExpr::from_block(it->second);
    }
    return VectorExpr::from_constant(normal_form(t.word, ip_.rank()));
  }

  FormulaId eta_instance(const VectorExpr& a, const VectorExpr& b, const VectorExpr& c) {
    presburger::Subst map;
    for (int i = 0; i < ip_.k(); ++i) {
      map.push_back({ip_.a_vars[i], a.coords[i]});
      map.push_back({ip_.b_vars[i], b.coords[i]});
      map.push_back({ip_.c_vars[i], c.coords[i]});
    }
    return interp::instantiate(st_, ip_.eta, map);
  }

  FormulaId atom(const MFormula& f, std::map<std::string, VarBlock>& env) {
    std::vector<FormulaId> conjuncts;
    VarBlock bound;
    VectorExpr lhs = chain(*f.t1, env, conjuncts, bound);
    VectorExpr rhs = chain(*f.t2, env, conjuncts, bound);
    presburger::Subst map;
    for (int i = 0; i < ip_.k(); ++i) {
      map.push_back({ip_.a_vars[i], lhs.coords[i]});
      map.push_back({ip_.b_vars[i], rhs.coords[i]});
    }
    conjuncts.push_back(interp::instantiate(st_, ip_.equality, map));
    return st_.exists_block(bound, st_.conj_all(conjuncts));
  }

  FormulaStore& st_;
  const Interpretation& ip_;
  std::vector<VarBlock>* introduced_;
};

}  // namespace

FormulaId translate(FormulaStore& st, const Interpretation& ip, const MFormula& f,
                    std::vector<VarBlock>* introduced_blocks) {
  check_formula_constants(f, ip.rank());
  std::map<std::string, VarBlock> env;
  for (const std::string& name : free_variables(f)) {
    VarBlock b(ip.k());
    for (int i = 0; i < ip.k(); ++i) b[i] = st.fresh_var(name + std::to_string(i + 1));
    env[name] = b;
  }
  return Translator(st, ip, introduced_blocks).run(f, env);
}

bool decide_sentence(const MFormula& f, int rank, const DecideOptions& opts) {
  if (!free_variables(f).empty())
    throw std::invalid_argument("decide_sentence: formula has free variables");
  FormulaStore st;
  st.set_budget(opts.budget);
  Interpretation ip = interp::generate(st, rank);
  FormulaId g = translate(st, ip, f);
  return presburger::decide(st, g);
}

bool check_identity(const MTermPtr& u, const MTermPtr& v, int rank,
                    const DecideOptions& opts) {
  MFormulaPtr f = MFormula::make_eq(u, v);
  std::vector<std::string> vars = free_variables(*f);
  for (auto it = vars.rbegin(); it != vars.rend(); ++it)
    f = MFormula::make_quant(MFormula::Kind::Forall, *it, f);
  return decide_sentence(*f, rank, opts);
}

Tableau eval_term(const MTerm& t, const std::map<std::string, Tableau>& env, int rank) {
  switch (t.kind) {
    case MTerm::Kind::Var: {
      auto it = env.find(t.name);
      if (it == env.end()) throw std::invalid_argument("unbound variable " + t.name);
      return it->second;
    }
    case MTerm::Kind::Word:
      return p_map(t.word, rank);
    case MTerm::Kind::Concat:
      return multiply(eval_term(*t.lhs, env, rank), eval_term(*t.rhs, env, rank));
  }
  throw std::logic_error("unreachable");
}

std::pair<bool, std::optional<Witness>> solve_system(const EquationSystem& sys, int rank,
                                                     bool extract_witness,
                                                     const DecideOptions& opts) {
  if (sys.equations.empty()) throw std::invalid_argument("empty equation system");
  FormulaStore st;
  st.set_budget(opts.budget);
  Interpretation ip = interp::generate(st, rank);

  std::set<std::string> var_set;
  for (const auto& [l, r] : sys.equations) {
    collect_term_vars(*l, var_set);
    collect_term_vars(*r, var_set);
    check_constants(*l, rank);
    check_constants(*r, rank);
  }
  std::vector<std::string> vars(var_set.begin(), var_set.end());

  // Base formula with the system variables as free blocks.
  std::map<std::string, VarBlock> env;
  VarBlock all_vars;
  for (const std::string& name : vars) {
    VarBlock b(ip.k());
    for (int i = 0; i < ip.k(); ++i) b[i] = st.fresh_var(name + std::to_string(i + 1));
    env[name] = b;
    all_vars.insert(all_vars.end(), b.begin(), b.end());
  }
  std::vector<FormulaId> parts;
  for (const auto& [name, block] : env)
    parts.push_back(interp::build_domain(st, ip.tables, block));
  Translator tr(st, ip, nullptr);
  for (const auto& [l, r] : sys.equations) {
    MFormulaPtr eq = MFormula::make_eq(l, r);
    parts.push_back(tr.run(*eq, env));
  }
  FormulaId base = st.conj_all(parts);

  bool sat = presburger::decide(st, st.exists_block(all_vars, base));
  if (!sat || !extract_witness) return {sat, std::nullopt};

  // Bound doubling on the total box count, then pin coordinates one at a
  // time by binary search on "coordinate <= value".
  LinearTerm total;
  for (VarId v : all_vars) total += LinearTerm::variable(v);
  long long bound = 1;
  while (!presburger::decide(
      st, st.exists_block(all_vars, st.conj(base, st.leq(total, LinearTerm(bound)))))) {
    bound *= 2;
    if (bound > (1ll << 40)) throw std::logic_error("witness bound search diverged");
  }
  std::vector<FormulaId> pins{st.leq(total, LinearTerm(bound))};
  Witness witness;
  for (const std::string& name : vars) {
    ExponentVector ev{rank, std::vector<long long>(ip.k(), 0)};
    for (int i = 0; i < ip.k(); ++i) {
      VarId coord = env[name][i];
      long long lo = 0, hi = bound;
      while (lo < hi) {
        long long mid = lo + (hi - lo) / 2;
        std::vector<FormulaId> test{base, st.leq(LinearTerm::variable(coord), LinearTerm(mid))};
        test.insert(test.end(), pins.begin(), pins.end());
        if (presburger::decide(st, st.exists_block(all_vars, st.conj_all(test))))
          hi = mid;
        else
          lo = mid + 1;
      }
      ev.v[i] = lo;
      pins.push_back(st.eq(LinearTerm::variable(coord), LinearTerm(lo)));
    }
    witness[name] = ev;
  }
  return {true, witness};
}

}  // namespace plactic::fo
