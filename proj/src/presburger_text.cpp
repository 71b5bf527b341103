#include "presburger/text.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace presburger {

namespace {

// Precedence levels, loosest to tightest.
enum Prec { kForm = 0, kImplies = 1, kOr = 2, kAnd = 3, kNeg = 4 };

void print_monomials(std::ostream& os, const FormulaStore& st,
                     const std::vector<std::pair<VarId, long long>>& coeffs,
                     long long constant) {
  bool first = true;
  for (const auto& [v, c] : coeffs) {
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    long long a = c < 0 ? -c : c;
    if (a != 1) os << a << "*";
    os << st.var_name(v);
  }
  if (constant != 0 || first) {
    if (first)
      os << constant;
    else
      os << (constant < 0 ? " - " : " + ") << (constant < 0 ? -constant : constant);
  }
}

// Splits t REL 0 into P REL N with nonnegative coefficients on both sides.
void print_split(std::ostream& os, const FormulaStore& st, const LinearTerm& t,
                 const char* rel) {
  std::vector<std::pair<VarId, long long>> pos, neg;
  for (const auto& [v, c] : t.coeffs())
    (c > 0 ? pos : neg).push_back({v, c > 0 ? c : -c});
  long long k = t.constant();
  long long pk = k > 0 ? k : 0;
  long long nk = k < 0 ? -k : 0;
  print_monomials(os, st, pos, pk);
  os << ' ' << rel << ' ';
  print_monomials(os, st, neg, nk);
}

void print_rec(std::ostream& os, const FormulaStore& st, FormulaId f, int prec) {
  const Node& n = st.node(f);
  switch (n.kind) {
    case Kind::True:
      os << "0 <= 0";
      break;
    case Kind::False:
      os << "1 <= 0";
      break;
    case Kind::Leq:
      print_split(os, st, n.term, "<=");
      break;
    case Kind::Eq:
      print_split(os, st, n.term, "=");
      break;
    case Kind::Dvd: {
      os << n.modulus << " | ";
      print_monomials(os, st, n.term.coeffs(), n.term.constant());
      break;
    }
    case Kind::Not:
      os << "!";
      print_rec(os, st, n.lhs, kNeg);
      break;
    case Kind::And: {
      bool parens = prec > kAnd;
      if (parens) os << "(";
      print_rec(os, st, n.lhs, kAnd);
      os << " & ";
      print_rec(os, st, n.rhs, kAnd);
      if (parens) os << ")";
      break;
    }
    case Kind::Or: {
      bool parens = prec > kOr;
      if (parens) os << "(";
      print_rec(os, st, n.lhs, kOr);
      os << " or ";
      print_rec(os, st, n.rhs, kOr);
      if (parens) os << ")";
      break;
    }
    case Kind::Implies: {
      bool parens = prec > kImplies;
      if (parens) os << "(";
      print_rec(os, st, n.lhs, kImplies + 1);  // right associative
      os << " -> ";
      print_rec(os, st, n.rhs, kImplies);
      if (parens) os << ")";
      break;
    }
    case Kind::Iff: {
      bool parens = prec > kImplies;
      if (parens) os << "(";
      print_rec(os, st, n.lhs, kImplies + 1);
      os << " <-> ";
      print_rec(os, st, n.rhs, kImplies);
      if (parens) os << ")";
      break;
    }
    case Kind::Exists:
    case Kind::Forall: {
      bool parens = prec > kForm;
      if (parens) os << "(";
      os << (n.kind == Kind::Exists ? "exists " : "forall ") << st.var_name(n.var) << ". ";
      print_rec(os, st, n.lhs, kForm);
      if (parens) os << ")";
      break;
    }
  }
}

struct Token {
  enum Type { Int, Ident, Punct, End } type;
  std::string text;
  long long value = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error(msg + " near position " + std::to_string(pos_));
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ >= text_.size()) {
      tok_ = {Token::End, "", 0};
      return;
    }
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = pos_;
      while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
      tok_ = {Token::Int, text_.substr(pos_, j - pos_), std::stoll(text_.substr(pos_, j - pos_))};
      pos_ = j;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = pos_;
      while (j < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_'))
        ++j;
      tok_ = {Token::Ident, text_.substr(pos_, j - pos_), 0};
      pos_ = j;
      return;
    }
    for (const char* p : {"<->", "->", "<=", "="}) {
      std::size_t len = std::char_traits<char>::length(p);
      if (text_.compare(pos_, len, p) == 0) {
        tok_ = {Token::Punct, p, 0};
        pos_ += len;
        return;
      }
    }
    if (std::string("!&|()+-*.").find(c) != std::string::npos) {
      tok_ = {Token::Punct, std::string(1, c), 0};
      ++pos_;
      return;
    }
    throw parse_error(std::string("unexpected character '") + c + "'");
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  Token tok_;
};

class Parser {
 public:
  Parser(FormulaStore& st, const std::string& text, std::vector<std::string>* free_names)
      : st_(st), lex_(text), free_names_(free_names) {}

  FormulaId parse() {
    FormulaId f = form();
    if (lex_.peek().type != Token::End) lex_.fail("trailing input");
    return f;
  }

 private:
  bool punct(const char* p) const {
    return lex_.peek().type == Token::Punct && lex_.peek().text == p;
  }
  bool ident(const char* w) const {
    return lex_.peek().type == Token::Ident && lex_.peek().text == w;
  }

  VarId lookup(const std::string& name) {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it)
      if (it->first == name) return it->second;
    auto it = free_.find(name);
    if (it != free_.end()) return it->second;
    VarId v = st_.fresh_var(name);
    free_.emplace(name, v);
    if (free_names_) free_names_->push_back(name);
    return v;
  }

  // form := quantified | implies-chain
  FormulaId form() {
    if (ident("exists") || ident("forall")) {
      bool ex = lex_.next().text == "exists";
      if (lex_.peek().type != Token::Ident) lex_.fail("expected variable after quantifier");
      std::string name = lex_.next().text;
      if (name == "exists" || name == "forall" || name == "or")
        lex_.fail("reserved word used as variable");
      if (!punct(".")) lex_.fail("expected '.' after quantified variable");
      lex_.next();
      VarId v = st_.fresh_var(name);
      scopes_.push_back({name, v});
      FormulaId body = form();
      scopes_.pop_back();
      return ex ? st_.exists(v, body) : st_.forall(v, body);
    }
    return implies_chain();
  }

  FormulaId implies_chain() {
    FormulaId lhs = or_chain();
    if (punct("->")) {
      lex_.next();
      return st_.implies(lhs, form_tail());
    }
    if (punct("<->")) {
      lex_.next();
      return st_.iff(lhs, form_tail());
    }
    return lhs;
  }

  // The right-hand side of an implication may itself be quantified.
  FormulaId form_tail() { return form(); }

  FormulaId or_chain() {
    FormulaId f = and_chain();
    while (ident("or")) {
      lex_.next();
      f = st_.disj(f, and_chain());
    }
    return f;
  }

  FormulaId and_chain() {
    FormulaId f = unary();
    while (punct("&")) {
      lex_.next();
      f = st_.conj(f, unary());
    }
    return f;
  }

  FormulaId unary() {
    if (punct("!")) {
      lex_.next();
      return st_.negation(unary());
    }
    if (punct("(")) {
      lex_.next();
      FormulaId f = form();
      if (!punct(")")) lex_.fail("expected ')'");
      lex_.next();
      return f;
    }
    if (ident("exists") || ident("forall")) return form();
    return atom();
  }

  FormulaId atom() {
    LinearTerm lhs = term();
    if (punct("|")) {
      if (!lhs.is_constant()) lex_.fail("divisibility modulus must be an integer");
      lex_.next();
      return st_.dvd(lhs.constant(), term());
    }
    if (punct("<=")) {
      lex_.next();
      return st_.leq(lhs, term());
    }
    if (punct("=")) {
      lex_.next();
      return st_.eq(lhs, term());
    }
    lex_.fail("expected '<=', '=' or '|' in atom");
  }

  LinearTerm term() {
    LinearTerm t = primary();
    while (punct("+") || punct("-")) {
      bool add = lex_.next().text == "+";
      LinearTerm rhs = primary();
      if (add)
        t += rhs;
      else
        t -= rhs;
    }
    return t;
  }

  LinearTerm primary() {
    if (punct("-")) {
      lex_.next();
      return -primary();
    }
    if (lex_.peek().type == Token::Int) {
      long long k = lex_.next().value;
      if (punct("*")) {
        lex_.next();
        if (lex_.peek().type != Token::Ident) lex_.fail("expected variable after '*'");
        return LinearTerm::variable(lookup(lex_.next().text), k);
      }
      return LinearTerm(k);
    }
    if (lex_.peek().type == Token::Ident && !ident("or") && !ident("exists") && !ident("forall"))
      return LinearTerm::variable(lookup(lex_.next().text));
    lex_.fail("expected term");
  }

  FormulaStore& st_;
  Lexer lex_;
  std::vector<std::pair<std::string, VarId>> scopes_;
  std::map<std::string, VarId> free_;
  std::vector<std::string>* free_names_;
};

}  // namespace

std::string to_text(const FormulaStore& st, FormulaId f) {
  std::ostringstream os;
  print_rec(os, st, f, kForm);
  return os.str();
}

FormulaId parse_formula(FormulaStore& st, const std::string& text,
                        std::vector<std::string>* free_names) {
  return Parser(st, text, free_names).parse();
}

}  // namespace presburger
