#include "plactic/columns.hpp"

#include <algorithm>
#include <stdexcept>

namespace plactic {

Word Column::word() const {
  Word w;
  for (int x = 32; x-- > 0;)
    if (mask >> x & 1u) w.push_back(x + 1);
  return w;
}

Word Column::letters_ascending() const {
  Word w;
  for (int x = 0; x < 32; ++x)
    if (mask >> x & 1u) w.push_back(x + 1);
  return w;
}

bool column_before(const Column& a, const Column& b) {
  if (a.size() != b.size()) return a.size() > b.size();
  return a.word() < b.word();
}

bool compatible(const Column& a, const Column& b) {
  if (a.size() < b.size()) return false;
  Word wa = a.letters_ascending();
  Word wb = b.letters_ascending();
  for (std::size_t i = 0; i < wb.size(); ++i)
    if (wa[i] > wb[i]) return false;  // aligned from the bottom letter upward
  return true;
}

ColumnTable enumerate_columns(int rank) {
  if (rank < 1) throw std::invalid_argument("rank must be >= 1");
  if (rank > 20) throw std::invalid_argument("rank too large for column enumeration");
  ColumnTable table;
  table.rank = rank;
  std::uint32_t total = (1u << rank) - 1;
  table.columns.reserve(total);
  for (std::uint32_t m = 1; m <= total; ++m) table.columns.push_back(Column{m});
  std::sort(table.columns.begin(), table.columns.end(), column_before);
  table.index_by_mask.assign(total + 1, -1);
  for (int i = 0; i < table.size(); ++i) table.index_by_mask[table.columns[i].mask] = i;
  // The order puts the single-letter columns 1..rank at the tail.
  for (Letter x = 1; x <= rank; ++x)
    if (table.columns[table.letter_index(x)].mask != (1u << (x - 1)))
      throw std::logic_error("column order violates single-letter tail invariant");
  return table;
}

std::pair<Column, std::optional<Column>> rewrite_rule(const Column& a, const Column& b,
                                                      int rank) {
  if (compatible(a, b)) throw std::invalid_argument("rewrite_rule: pair is compatible");
  Word w = a.word();
  Word wb = b.word();
  w.insert(w.end(), wb.begin(), wb.end());
  Tableau t = p_map(w, rank);
  // P(ab) has at most two columns: its longest increasing subsequence has
  // length <= 2 because a and b are strictly decreasing.
  Word reading = t.column_reading();
  std::size_t first_len = t.row_count();
  Column gamma{0}, delta{0};
  for (std::size_t i = 0; i < first_len; ++i) gamma.mask |= 1u << (reading[i] - 1);
  for (std::size_t i = first_len; i < reading.size(); ++i) delta.mask |= 1u << (reading[i] - 1);
  if (delta.mask == 0) return {gamma, std::nullopt};
  return {gamma, delta};
}

long long ExponentVector::box_count(const ColumnTable& table) const {
  long long total = 0;
  for (int i = 0; i < table.size(); ++i) total += v[i] * table.columns[i].size();
  return total;
}

bool exponents_valid(const ExponentVector& v, const ColumnTable& table) {
  if (v.rank != table.rank || static_cast<int>(v.v.size()) != table.size()) return false;
  for (long long x : v.v)
    if (x < 0) return false;
  for (int i = 0; i < table.size(); ++i) {
    if (v.v[i] == 0) continue;
    for (int j = i + 1; j < table.size(); ++j)
      if (v.v[j] != 0 && !compatible(table.columns[i], table.columns[j])) return false;
  }
  return true;
}

ExponentVector normal_form(const Word& w, int rank) {
  ColumnTable table = enumerate_columns(rank);
  Tableau t = p_map(w, rank);
  ExponentVector out{rank, std::vector<long long>(table.size(), 0)};
  if (t.empty()) return out;
  const auto& rows = t.rows_bottom_up();
  for (std::size_t col = 0; col < rows[0].size(); ++col) {
    Column c{0};
    for (std::size_t i = 0; i < rows.size() && col < rows[i].size(); ++i)
      c.mask |= 1u << (rows[i][col] - 1);
    ++out.v[table.index_of(c)];
  }
  return out;
}

Tableau from_exponents(const ExponentVector& v, const ColumnTable& table) {
  if (!exponents_valid(v, table))
    throw std::invalid_argument("exponent vector violates the compatibility invariant");
  // Lay the columns side by side in table order; heights weakly decrease.
  std::vector<Word> rows;
  for (int i = 0; i < table.size(); ++i) {
    Word col_letters = table.columns[i].letters_ascending();
    for (long long rep = 0; rep < v.v[i]; ++rep) {
      for (std::size_t h = 0; h < col_letters.size(); ++h) {
        if (rows.size() <= h) rows.emplace_back();
        rows[h].push_back(col_letters[h]);
      }
    }
  }
  if (rows.empty()) return Tableau();
  return Tableau::from_rows_bottom_up(std::move(rows));
}

std::pair<Word, std::vector<int>> alpha_beta(const ColumnTable& table) {
  Word alpha;
  std::vector<int> beta;
  for (int i = 0; i < table.size(); ++i) {
    for (Letter x : table.columns[i].word()) {
      alpha.push_back(x);
      beta.push_back(i);
    }
  }
  return {alpha, beta};
}

std::string exponents_to_text(const ExponentVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v.v[i]);
  }
  s += ')';
  return s;
}

}  // namespace plactic
