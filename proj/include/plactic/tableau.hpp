#pragma once

#include <cstddef>
#include <string>
#include <vector>

// Semistandard Young tableaux over the alphabet [n] = {1,...,n}, French
// convention (longer rows underneath), together with Schensted row insertion.
// Rows are stored bottom-up: rows()[0] is the longest, bottom row.  All values
// are immutable after construction and every operation is a pure function.

namespace plactic {

using Letter = int;
using Word = std::vector<Letter>;

class Tableau {
 public:
  Tableau() = default;

  // Builds a tableau from rows listed bottom-to-top.  Throws
  // std::invalid_argument if the rows do not form a valid tableau.
  static Tableau from_rows_bottom_up(std::vector<Word> rows);

  // Checks the tableau conditions without constructing: weakly increasing
  // rows, weakly decreasing lengths upward, strictly decreasing columns
  // top-to-bottom.
  static bool rows_are_valid(const std::vector<Word>& rows_bottom_up);

  bool empty() const { return rows_.empty(); }
  std::size_t row_count() const { return rows_.size(); }
  std::size_t box_count() const;
  const Word& row_from_bottom(std::size_t i) const { return rows_[i]; }
  const std::vector<Word>& rows_bottom_up() const { return rows_; }

  // Concatenation of rows top-to-bottom.
  Word row_reading() const;
  // Concatenation of columns left-to-right, each read top-to-bottom.
  Word column_reading() const;

  Letter max_letter() const;  // 0 for the empty tableau

  bool operator==(const Tableau& other) const { return rows_ == other.rows_; }
  bool operator!=(const Tableau& other) const { return rows_ != other.rows_; }

 private:
  std::vector<Word> rows_;  // rows_[0] = bottom row
  friend Tableau schensted_insert(const Tableau&, Letter, int);
};

// Throws std::invalid_argument unless every letter lies in [1, rank].
void check_letters(const Word& w, int rank);

// Row-inserts x into t (Schensted).  Box count grows by exactly one.
Tableau schensted_insert(const Tableau& t, Letter x, int rank);

// P map: left fold of schensted_insert over w.
Tableau p_map(const Word& w, int rank);

// u * v = P(row_reading(u) row_reading(v)).
Tableau multiply(const Tableau& u, const Tableau& v);

// u ~ v  iff  P(u) = P(v).
bool knuth_equal(const Word& u, const Word& v, int rank);

// Rows strictly above the bottom one, as a tableau.
Tableau top_part(const Tableau& t);
// The bottom row (empty word for the empty tableau).
Word bottom_row(const Tableau& t);

// Puts the rows of a top tableau u (no letter 1) on top of the row r.  When
// the combined rows form a tableau, returns it; otherwise returns the empty
// tableau, which doubles as the failure sentinel.  Throws if u contains the
// letter 1 or r is not weakly increasing.
Tableau stitch(const Tableau& u, const Word& r);

bool is_weakly_increasing(const Word& w);

// Text format helpers: words as `[3 2 1]` (ε = `[]`), tableaux as rows
// bottom-to-top, one per line.
std::string word_to_text(const Word& w);
Word word_from_text(const std::string& text);  // throws on malformed input
std::string tableau_to_text(const Tableau& t);

}  // namespace plactic
