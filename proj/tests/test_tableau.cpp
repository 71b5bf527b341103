#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "plactic/tableau.hpp"

using namespace plactic;

namespace {

Tableau rows(std::vector<Word> bottom_up) {
  return Tableau::from_rows_bottom_up(std::move(bottom_up));
}

std::multiset<Letter> letters_of(const Word& w) { return {w.begin(), w.end()}; }

// All words over [n] of length exactly len, in lexicographic order.
void for_each_word(int n, int len, const std::function<void(const Word&)>& fn) {
  Word w(len, 1);
  while (true) {
    fn(w);
    int i = len - 1;
    while (i >= 0 && w[i] == n) w[i--] = 1;
    if (i < 0) return;
    ++w[i];
  }
}

}  // namespace

TEST_CASE("schensted insertion base cases") {
  Tableau empty;
  Tableau one = schensted_insert(empty, 1, 3);
  CHECK(one == rows({{1}}));

  // Inserting 2 into the row 113 bumps the leftmost 3.
  Tableau t = schensted_insert(rows({{1, 1, 3}}), 2, 3);
  CHECK(t == rows({{1, 1, 2}, {3}}));

  // Appending at the end of the bottom row when it stays a row.
  Tableau big = rows({{1, 1, 2, 4, 4}, {2, 3, 3}, {3, 4}});
  CHECK(schensted_insert(big, 4, 4) == rows({{1, 1, 2, 4, 4, 4}, {2, 3, 3}, {3, 4}}));

  CHECK_THROWS_AS(schensted_insert(empty, 5, 3), std::invalid_argument);
  CHECK_THROWS_AS(schensted_insert(empty, 0, 3), std::invalid_argument);
}

TEST_CASE("p_map worked example") {
  CHECK(p_map({}, 3).empty());

  Tableau expected = rows({{1, 1, 2, 2, 2}, {2, 3}, {3}});
  CHECK(p_map({3, 2, 3, 1, 1, 2, 2, 2}, 3) == expected);
  // The column reading of the same tableau maps to the same tableau.
  CHECK(p_map({3, 2, 1, 3, 1, 2, 2, 2}, 3) == expected);
  CHECK(p_map(expected.row_reading(), 3) == expected);
}

TEST_CASE("row and column readings") {
  Tableau t = rows({{1, 1, 2, 2, 2}, {2, 3}, {3}});
  CHECK(t.row_reading() == Word{3, 2, 3, 1, 1, 2, 2, 2});
  CHECK(t.column_reading() == Word{3, 2, 1, 3, 1, 2, 2, 2});

  Tableau u = rows({{1, 1, 2, 4, 4}, {2, 3, 3}, {3, 4}});
  CHECK(u.row_reading() == Word{3, 4, 2, 3, 3, 1, 1, 2, 4, 4});

  Tableau empty;
  CHECK(empty.row_reading().empty());
  CHECK(empty.column_reading().empty());
}

TEST_CASE("multiply") {
  Tableau w = p_map({1, 2, 2}, 2);
  CHECK(multiply(Tableau(), w) == w);
  CHECK(multiply(w, Tableau()) == w);

  // 2 * 1 in rank 2 gives the column 21.
  CHECK(multiply(p_map({2}, 2), p_map({1}, 2)) == rows({{1}, {2}}));
}

TEST_CASE("knuth equality") {
  CHECK(knuth_equal({1, 3, 2}, {3, 1, 2}, 3));  // xzy = zxy
  CHECK(knuth_equal({2, 1, 3}, {2, 3, 1}, 3));  // yxz = yzx
  CHECK_FALSE(knuth_equal({1, 2}, {2, 1}, 2));
}

TEST_CASE("knuth relations hold exhaustively") {
  // xzy = zxy for x <= y < z and yxz = yzx for x < y <= z, letters up to 4.
  for (Letter x = 1; x <= 4; ++x)
    for (Letter y = x; y <= 4; ++y)
      for (Letter z = y + 1; z <= 4; ++z)
        CHECK(knuth_equal({x, z, y}, {z, x, y}, 4));
  for (Letter x = 1; x <= 4; ++x)
    for (Letter y = x + 1; y <= 4; ++y)
      for (Letter z = y; z <= 4; ++z)
        CHECK(knuth_equal({y, x, z}, {y, z, x}, 4));
}

TEST_CASE("weight preservation and homogeneity") {
  for (int n = 1; n <= 4; ++n) {
    for (int len = 0; len <= (n <= 2 ? 6 : 5); ++len) {
      for_each_word(n, len, [&](const Word& w) {
        Tableau t = p_map(w, n);
        CHECK(letters_of(t.row_reading()) == letters_of(w));
        CHECK(t.box_count() == w.size());
      });
    }
  }
  Tableau u = p_map({2, 1, 2}, 3);
  Tableau v = p_map({3, 1}, 3);
  CHECK(multiply(u, v).box_count() == u.box_count() + v.box_count());
}

TEST_CASE("top and bottom decomposition") {
  Tableau t = rows({{1, 1, 2, 4, 4}, {2, 3, 3}, {3, 4}});
  CHECK(top_part(t) == rows({{2, 3, 3}, {3, 4}}));
  CHECK(top_part(t).row_reading() == Word{3, 4, 2, 3, 3});
  CHECK(bottom_row(t) == Word{1, 1, 2, 4, 4});

  Tableau single = rows({{1, 2, 2}});
  CHECK(top_part(single).empty());
  CHECK(bottom_row(single) == Word{1, 2, 2});

  Tableau column21 = rows({{1}, {2}});
  CHECK(top_part(column21) == rows({{2}}));
  CHECK(bottom_row(column21) == Word{1});

  CHECK(top_part(Tableau()).empty());
  CHECK(bottom_row(Tableau()).empty());
}

TEST_CASE("stitch") {
  // The 4-row example: rows bottom-up 22234 / 33 / 4 over the row 11113.
  Tableau u = rows({{2, 2, 2, 3, 4}, {3, 3}, {4}});
  Tableau expected = rows({{1, 1, 1, 1, 3}, {2, 2, 2, 3, 4}, {3, 3}, {4}});
  CHECK(stitch(u, {1, 1, 1, 1, 3}) == expected);

  CHECK(stitch(Tableau(), {1, 2, 2}) == rows({{1, 2, 2}}));
  CHECK(stitch(Tableau(), {}).empty());

  // A 2 cannot sit on a 2.
  CHECK(stitch(rows({{2}}), {2}).empty());

  CHECK_THROWS_AS(stitch(rows({{1, 2}}), {1}), std::invalid_argument);  // contains letter 1
  CHECK_THROWS_AS(stitch(rows({{2}}), {2, 1}), std::invalid_argument);  // not a row
}

TEST_CASE("stitch undoes the top/bottom decomposition") {
  for (int n = 1; n <= 3; ++n) {
    for (int len = 0; len <= 8 - 2 * n; ++len) {
      for_each_word(n, len, [&](const Word& w) {
        Tableau t = p_map(w, n);
        Tableau u = top_part(t);
        bool top_has_one = false;
        for (const Word& r : u.rows_bottom_up())
          for (Letter x : r) top_has_one = top_has_one || x == 1;
        if (!top_has_one) CHECK(stitch(u, bottom_row(t)) == t);
      });
    }
  }
}

TEST_CASE("top-bottom product law") {
  // T(uv) = T(u) T(B(u)v) and B(uv) = B(B(u)v) as plactic elements.
  std::vector<Word> pool = {{},        {1},       {2, 1},    {1, 2, 2}, {3, 1, 2},
                            {2, 2, 3}, {3, 3, 2, 1}, {1, 1, 3}, {2}};
  for (const Word& wu : pool) {
    for (const Word& wv : pool) {
      Tableau u = p_map(wu, 3);
      Tableau v = p_map(wv, 3);
      Tableau uv = multiply(u, v);
      Word bu = bottom_row(u);
      Word bv_word = bu;
      Word vread = v.row_reading();
      bv_word.insert(bv_word.end(), vread.begin(), vread.end());
      Tableau buv = p_map(bv_word, 3);
      CHECK(top_part(uv) == multiply(top_part(u), top_part(buv)));
      Word lhs_bottom = bottom_row(uv);
      Word rhs_bottom = bottom_row(buv);
      CHECK(lhs_bottom == rhs_bottom);
    }
  }
}

TEST_CASE("word text round trip") {
  CHECK(word_to_text({3, 2, 1}) == "[3 2 1]");
  CHECK(word_to_text({}) == "[]");
  CHECK(word_from_text("[3 2 3 1 1 2 2 2]") == Word{3, 2, 3, 1, 1, 2, 2, 2});
  CHECK(word_from_text(" [] ") == Word{});
  CHECK(word_from_text("[-1 3]") == Word{-1, 3});
  CHECK_THROWS_AS(word_from_text("1 2"), std::invalid_argument);
  CHECK_THROWS_AS(word_from_text("[1 2"), std::invalid_argument);
}

TEST_CASE("tableau validation") {
  CHECK_THROWS_AS(rows({{2, 1}}), std::invalid_argument);          // row decreases
  CHECK_THROWS_AS(rows({{1}, {1}}), std::invalid_argument);        // column not strict
  CHECK_THROWS_AS(rows({{1}, {2, 2}}), std::invalid_argument);     // longer row above
  CHECK_THROWS_AS(rows({{}, {1}}), std::invalid_argument);         // empty row
}
