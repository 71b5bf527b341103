#include "plactic/tableau.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace plactic {

bool is_weakly_increasing(const Word& w) {
  return std::is_sorted(w.begin(), w.end());
}

bool Tableau::rows_are_valid(const std::vector<Word>& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].empty()) return false;
    if (!is_weakly_increasing(rows[i])) return false;
    for (Letter x : rows[i])
      if (x < 1) return false;
    if (i + 1 < rows.size()) {
      if (rows[i + 1].size() > rows[i].size()) return false;
      for (std::size_t j = 0; j < rows[i + 1].size(); ++j)
        if (rows[i + 1][j] <= rows[i][j]) return false;  // columns strictly decrease downward
    }
  }
  return true;
}

Tableau Tableau::from_rows_bottom_up(std::vector<Word> rows) {
  if (!rows_are_valid(rows)) throw std::invalid_argument("not a valid tableau");
  Tableau t;
  t.rows_ = std::move(rows);
  return t;
}

std::size_t Tableau::box_count() const {
  std::size_t n = 0;
  for (const Word& r : rows_) n += r.size();
  return n;
}

Word Tableau::row_reading() const {
  Word w;
  w.reserve(box_count());
  for (auto it = rows_.rbegin(); it != rows_.rend(); ++it)
    w.insert(w.end(), it->begin(), it->end());
  return w;
}

Word Tableau::column_reading() const {
  Word w;
  w.reserve(box_count());
  if (rows_.empty()) return w;
  for (std::size_t col = 0; col < rows_[0].size(); ++col) {
    std::size_t height = 0;
    while (height < rows_.size() && col < rows_[height].size()) ++height;
    for (std::size_t i = height; i-- > 0;) w.push_back(rows_[i][col]);
  }
  return w;
}

Letter Tableau::max_letter() const {
  Letter m = 0;
  for (const Word& r : rows_)
    for (Letter x : r) m = std::max(m, x);
  return m;
}

void check_letters(const Word& w, int rank) {
  if (rank < 1) throw std::invalid_argument("rank must be >= 1");
  for (Letter x : w)
    if (x < 1 || x > rank)
      throw std::invalid_argument("letter " + std::to_string(x) +
                                  " out of range for rank " + std::to_string(rank));
}

Tableau schensted_insert(const Tableau& t, Letter x, int rank) {
  check_letters({x}, rank);
  Tableau out = t;
  Letter carry = x;
  for (std::size_t i = 0; i < out.rows_.size(); ++i) {
    Word& row = out.rows_[i];
    auto it = std::upper_bound(row.begin(), row.end(), carry);
    if (it == row.end()) {
      row.push_back(carry);
      return out;
    }
    std::swap(*it, carry);  // bump the leftmost letter greater than carry
  }
  out.rows_.push_back({carry});
  return out;
}

Tableau p_map(const Word& w, int rank) {
  check_letters(w, rank);
  Tableau t;
  for (Letter x : w) t = schensted_insert(t, x, rank);
  return t;
}

Tableau multiply(const Tableau& u, const Tableau& v) {
  Tableau t = u;
  int rank = std::max(u.max_letter(), v.max_letter());
  if (rank == 0) rank = 1;
  for (Letter x : v.row_reading()) t = schensted_insert(t, x, rank);
  return t;
}

bool knuth_equal(const Word& u, const Word& v, int rank) {
  return p_map(u, rank) == p_map(v, rank);
}

Tableau top_part(const Tableau& t) {
  if (t.empty()) return Tableau();
  std::vector<Word> rows(t.rows_bottom_up().begin() + 1, t.rows_bottom_up().end());
  return Tableau::from_rows_bottom_up(std::move(rows));
}

Word bottom_row(const Tableau& t) {
  if (t.empty()) return Word();
  return t.row_from_bottom(0);
}

Tableau stitch(const Tableau& u, const Word& r) {
  for (const Word& row : u.rows_bottom_up())
    for (Letter x : row)
      if (x == 1) throw std::invalid_argument("stitch: top tableau contains the letter 1");
  if (!is_weakly_increasing(r)) throw std::invalid_argument("stitch: not a row");
  // An empty bottom row can carry no columns, so the result is empty: the
  // genuine stitch of two empty inputs and the failure sentinel coincide.
  if (r.empty()) return Tableau();
  std::vector<Word> rows;
  rows.push_back(r);
  rows.insert(rows.end(), u.rows_bottom_up().begin(), u.rows_bottom_up().end());
  if (!Tableau::rows_are_valid(rows)) return Tableau();
  return Tableau::from_rows_bottom_up(std::move(rows));
}

std::string word_to_text(const Word& w) {
  std::string s = "[";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(w[i]);
  }
  s += ']';
  return s;
}

Word word_from_text(const std::string& text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i == text.size() || text[i] != '[') throw std::invalid_argument("word must start with '['");
  ++i;
  Word w;
  while (true) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i == text.size()) throw std::invalid_argument("unterminated word literal");
    if (text[i] == ']') {
      ++i;
      break;
    }
    std::size_t j = i;
    if (text[j] == '-') ++j;
    std::size_t digits = j;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == digits) throw std::invalid_argument("expected integer in word literal");
    w.push_back(std::stoi(text.substr(i, j - i)));
    i = j;
  }
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i != text.size()) throw std::invalid_argument("trailing characters after word literal");
  return w;
}

std::string tableau_to_text(const Tableau& t) {
  std::ostringstream os;
  for (const Word& row : t.rows_bottom_up()) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ' ';
      os << row[i];
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace plactic
