#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plactic/tableau.hpp"

// The column alphabet of the Cain-Gray-Malheiro rewriting system: every
// nonempty subset of [n] is a column (its strictly decreasing word), ordered
// by the length-decreasing-lexicographic order.  Normal forms of rank-n
// tableaux are exponent vectors over this alphabet.

namespace plactic {

// A column is the bitset of its letter set; bit (x-1) stands for letter x.
struct Column {
  std::uint32_t mask = 0;

  int size() const { return __builtin_popcount(mask); }
  bool contains(Letter x) const { return mask >> (x - 1) & 1u; }
  Letter bottom_letter() const { return __builtin_ctz(mask) + 1; }
  Letter top_letter() const { return 31 - __builtin_clz(mask) + 1; }
  // The column with its bottom (minimal) letter removed; mask 0 if single.
  Column without_bottom() const { return Column{mask & (mask - 1)}; }

  Word word() const;      // strictly decreasing, read top-to-bottom
  Word letters_ascending() const;  // the same letters in increasing order

  bool operator==(const Column& o) const { return mask == o.mask; }
  bool operator!=(const Column& o) const { return mask != o.mask; }
};

// Length-decreasing-lexicographic order: longer columns first; among equal
// lengths, ascending lexicographic comparison of the decreasing words.
bool column_before(const Column& a, const Column& b);

// a can stand immediately left of b in a tableau: at least as tall, and
// entrywise <= from the bottom.
bool compatible(const Column& a, const Column& b);

struct ColumnTable {
  int rank = 0;
  std::vector<Column> columns;       // sorted by column_before; size 2^rank - 1
  std::vector<int> index_by_mask;    // mask -> index into columns, -1 unused

  int size() const { return static_cast<int>(columns.size()); }
  int index_of(const Column& c) const { return index_by_mask[c.mask]; }
  // Index of the single-letter column {x}: the last rank entries hold them.
  int letter_index(Letter x) const { return size() - rank + x - 1; }
};

// All 2^n - 1 columns in order.  Throws for rank < 1 or rank > 20.
ColumnTable enumerate_columns(int rank);

// For an incompatible pair (a before b), the right-hand side of the rewrite
// rule c_a c_b -> c_gamma c_delta: the columns of P(ab), delta absent when
// P(ab) is a single column.  Throws if (a, b) is compatible.
std::pair<Column, std::optional<Column>> rewrite_rule(const Column& a, const Column& b,
                                                      int rank);

// Point of N^k recording the exponent of each column in a normal form
// c_1^{v_1} ... c_k^{v_k}.
struct ExponentVector {
  int rank = 0;
  std::vector<long long> v;

  long long box_count(const ColumnTable& table) const;
  bool operator==(const ExponentVector& o) const { return rank == o.rank && v == o.v; }
  bool operator!=(const ExponentVector& o) const { return !(*this == o); }
};

// True when no incompatible pair has both exponents nonzero and all entries
// are nonnegative.
bool exponents_valid(const ExponentVector& v, const ColumnTable& table);

// The normal form of w, read off the columns of P(w).
ExponentVector normal_form(const Word& w, int rank);

// Inverse of normal_form on tableau readings.  Throws if the compatibility
// invariant is violated.
Tableau from_exponents(const ExponentVector& v, const ColumnTable& table);

// alpha lists, column by column in table order, the letters of each column's
// row form; beta[i] is the (0-based) index of the column contributing
// alpha[i].  Both have length rank * 2^(rank-1).
std::pair<Word, std::vector<int>> alpha_beta(const ColumnTable& table);

std::string exponents_to_text(const ExponentVector& v);  // e.g. "(1,0,0)"

}  // namespace plactic
