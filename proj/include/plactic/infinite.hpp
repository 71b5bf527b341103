#pragma once

#include <map>
#include <set>

#include "plactic/fo.hpp"

// Diophantine problem over the infinite-rank plactic monoids on the naturals
// and on the integers: support computation, the projection onto a finite
// rank, and the reduction to a finite-rank system.

namespace plactic::inf {

enum class Alphabet { Natural, Integer };

struct InfEquationSystem {
  Alphabet alphabet = Alphabet::Natural;
  fo::EquationSystem system;
};

struct SupportReduction {
  std::set<int> support;        // letters occurring in constants
  int rank = 1;                 // target finite rank
  std::map<int, int> relabel;   // injective, order preserving on the support
};

// Letters occurring in any constant word of the system.
std::set<int> support(const fo::EquationSystem& sys);

// Natural alphabet: rank = max(support), letters kept verbatim.  Integer
// alphabet: rank = max - min + 1 with letter z mapped to z - min + 1.  An
// empty support reduces to rank 1.
std::pair<SupportReduction, fo::EquationSystem> reduce(const InfEquationSystem& sys);

// Satisfiability over P(N) resp. P(Z) via the reduction and the finite-rank
// solver.  For constant-free systems a rank-2 retry follows an unsatisfiable
// rank-1 verdict.
bool decide_diophantine(const InfEquationSystem& sys, const fo::DecideOptions& opts = {});

}  // namespace plactic::inf
