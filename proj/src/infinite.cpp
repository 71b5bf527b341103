#include "plactic/infinite.hpp"

#include <stdexcept>

namespace plactic::inf {

using fo::MTerm;
using fo::MTermPtr;

namespace {

void collect_letters(const MTerm& t, std::set<int>& out) {
  switch (t.kind) {
    case MTerm::Kind::Var:
      break;
    case MTerm::Kind::Word:
      for (Letter x : t.word) out.insert(x);
      break;
    case MTerm::Kind::Concat:
      collect_letters(*t.lhs, out);
      collect_letters(*t.rhs, out);
      break;
  }
}

MTermPtr relabel_term(const MTermPtr& t, const std::map<int, int>& map) {
  switch (t->kind) {
    case MTerm::Kind::Var:
      return t;
    case MTerm::Kind::Word: {
      Word w;
      w.reserve(t->word.size());
      for (Letter x : t->word) w.push_back(map.at(x));
      return MTerm::make_word(std::move(w));
    }
    case MTerm::Kind::Concat:
      return MTerm::make_concat(relabel_term(t->lhs, map), relabel_term(t->rhs, map));
  }
  throw std::logic_error("unreachable");
}

}  // namespace

std::set<int> support(const fo::EquationSystem& sys) {
  std::set<int> out;
  for (const auto& [l, r] : sys.equations) {
    collect_letters(*l, out);
    collect_letters(*r, out);
  }
  return out;
}

std::pair<SupportReduction, fo::EquationSystem> reduce(const InfEquationSystem& sys) {
  SupportReduction red;
  red.support = support(sys.system);
  if (sys.alphabet == Alphabet::Natural) {
    for (int x : red.support)
      if (x < 1) throw std::invalid_argument("natural systems use letters >= 1 only");
    red.rank = red.support.empty() ? 1 : *red.support.rbegin();
    for (int x : red.support) red.relabel[x] = x;
  } else {
    if (red.support.empty()) {
      red.rank = 1;
    } else {
      int lo = *red.support.begin();
      int hi = *red.support.rbegin();
      red.rank = hi - lo + 1;
      for (int x : red.support) red.relabel[x] = x - lo + 1;
    }
  }
  fo::EquationSystem reduced;
  reduced.equations.reserve(sys.system.equations.size());
  for (const auto& [l, r] : sys.system.equations)
    reduced.equations.push_back({relabel_term(l, red.relabel), relabel_term(r, red.relabel)});
  return {red, reduced};
}

bool decide_diophantine(const InfEquationSystem& sys, const fo::DecideOptions& opts) {
  auto [red, reduced] = reduce(sys);
  bool sat = fo::solve_system(reduced, red.rank, false, opts).first;
  // A constant-free system maps into any single-generator copy, so rank 1
  // already decides it; the rank-2 retry guards the one-sidedness of the
  // projection argument.
  if (!sat && red.support.empty()) sat = fo::solve_system(reduced, 2, false, opts).first;
  return sat;
}

}  // namespace plactic::inf
