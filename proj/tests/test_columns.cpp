#include <doctest.h>

#include <functional>
#include <stdexcept>

#include "plactic/columns.hpp"

using namespace plactic;

namespace {

Column col(std::initializer_list<Letter> letters) {
  Column c{0};
  for (Letter x : letters) c.mask |= 1u << (x - 1);
  return c;
}

Word column_words(const ColumnTable& t, int i) { return t.columns[i].word(); }

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

// Reduces a word over the column alphabet with the rewriting system, applying
// the leftmost (or rightmost) applicable rule first.  Independent of the
// Schensted path through normal_form.
std::vector<Column> reduce_columns(std::vector<Column> w, int rank, bool leftmost) {
  while (true) {
    int hit = -1;
    for (int i = 0; i + 1 < static_cast<int>(w.size()); ++i) {
      if (!compatible(w[i], w[i + 1])) {
        hit = i;
        if (leftmost) break;
      }
    }
    if (hit < 0) return w;
    auto [gamma, delta] = rewrite_rule(w[hit], w[hit + 1], rank);
    std::vector<Column> next(w.begin(), w.begin() + hit);
    next.push_back(gamma);
    if (delta) next.push_back(*delta);
    next.insert(next.end(), w.begin() + hit + 2, w.end());
    w = std::move(next);
  }
}

}  // namespace

TEST_CASE("column order matches the rank-3 listing") {
  ColumnTable t1 = enumerate_columns(1);
  CHECK(t1.size() == 1);
  CHECK(column_words(t1, 0) == Word{1});

  ColumnTable t2 = enumerate_columns(2);
  REQUIRE(t2.size() == 3);
  CHECK(column_words(t2, 0) == Word{2, 1});
  CHECK(column_words(t2, 1) == Word{1});
  CHECK(column_words(t2, 2) == Word{2});

  ColumnTable t3 = enumerate_columns(3);
  REQUIRE(t3.size() == 7);
  std::vector<Word> expected = {{3, 2, 1}, {2, 1}, {3, 1}, {3, 2}, {1}, {2}, {3}};
  for (int i = 0; i < 7; ++i) CHECK(column_words(t3, i) == expected[i]);

  CHECK_THROWS_AS(enumerate_columns(0), std::invalid_argument);
}

TEST_CASE("compatibility") {
  CHECK_FALSE(compatible(col({3, 2}), col({1})));
  CHECK(compatible(col({2, 1}), col({2})));
  for (int n = 1; n <= 4; ++n) {
    ColumnTable t = enumerate_columns(n);
    for (const Column& a : t.columns) CHECK(compatible(a, a));
  }
}

TEST_CASE("compatible is a partial order refined by the column order") {
  for (int n = 1; n <= 4; ++n) {
    ColumnTable t = enumerate_columns(n);
    for (int i = 0; i < t.size(); ++i) {
      for (int j = 0; j < t.size(); ++j) {
        bool ij = compatible(t.columns[i], t.columns[j]);
        if (ij && i != j) {
          CHECK_FALSE(compatible(t.columns[j], t.columns[i]));  // antisymmetry
          CHECK(i < j);  // compatible(a, b) implies a comes before b
        }
        for (int l = 0; l < t.size(); ++l)
          if (ij && compatible(t.columns[j], t.columns[l]))
            CHECK(compatible(t.columns[i], t.columns[l]));  // transitivity
      }
    }
  }
}

TEST_CASE("rewrite rules of rank 2") {
  int n = 2;
  auto [g1, d1] = rewrite_rule(col({2}), col({1}), n);  // 21 -> t
  CHECK(g1 == col({2, 1}));
  CHECK_FALSE(d1.has_value());

  auto [g2, d2] = rewrite_rule(col({2}), col({2, 1}), n);  // 2t -> t2
  CHECK(g2 == col({2, 1}));
  REQUIRE(d2.has_value());
  CHECK(*d2 == col({2}));

  auto [g3, d3] = rewrite_rule(col({1}), col({2, 1}), n);  // 1t -> t1
  CHECK(g3 == col({2, 1}));
  REQUIRE(d3.has_value());
  CHECK(*d3 == col({1}));

  CHECK_THROWS_AS(rewrite_rule(col({2, 1}), col({2}), n), std::invalid_argument);
}

TEST_CASE("normal forms") {
  ExponentVector zero = normal_form({}, 2);
  CHECK(zero.v == std::vector<long long>{0, 0, 0});

  CHECK(normal_form({2, 1}, 2).v == std::vector<long long>{1, 0, 0});
  CHECK(normal_form({1, 2}, 2).v == std::vector<long long>{0, 1, 1});
}

TEST_CASE("from_exponents") {
  ColumnTable t2 = enumerate_columns(2);
  CHECK(from_exponents({2, {0, 0, 0}}, t2).empty());
  CHECK(from_exponents({2, {1, 0, 0}}, t2) ==
        Tableau::from_rows_bottom_up({{1}, {2}}));

  ColumnTable t3 = enumerate_columns(3);
  CHECK(from_exponents({3, {1, 1, 0, 0, 0, 0, 0}}, t3) ==
        Tableau::from_rows_bottom_up({{1, 1}, {2, 2}, {3}}));

  // Both members of the incompatible pair (32, 1) nonzero.
  CHECK_THROWS_AS(from_exponents({3, {0, 0, 0, 1, 1, 0, 0}}, t3), std::invalid_argument);
}

TEST_CASE("normal_form inverts through from_exponents") {
  for (int n = 1; n <= 3; ++n) {
    ColumnTable table = enumerate_columns(n);
    for (int len = 0; len <= 5; ++len) {
      for_each_word(n, len, [&](const Word& w) {
        ExponentVector v = normal_form(w, n);
        CHECK(exponents_valid(v, table));
        CHECK(from_exponents(v, table) == p_map(w, n));
      });
    }
  }
}

TEST_CASE("rewriting system agrees with Schensted and is locally confluent") {
  for (int n = 1; n <= 3; ++n) {
    ColumnTable table = enumerate_columns(n);
    for (const Column& a : table.columns) {
      for (const Column& b : table.columns) {
        for (const Column& c : table.columns) {
          std::vector<Column> left = reduce_columns({a, b, c}, n, true);
          std::vector<Column> right = reduce_columns({a, b, c}, n, false);
          REQUIRE(left == right);
          // The reduced word is the column decomposition of P(abc).
          Word w = a.word();
          Word wb = b.word(), wc = c.word();
          w.insert(w.end(), wb.begin(), wb.end());
          w.insert(w.end(), wc.begin(), wc.end());
          ExponentVector nf = normal_form(w, n);
          ExponentVector from_rewrite{n, std::vector<long long>(table.size(), 0)};
          for (const Column& cc : left) ++from_rewrite.v[table.index_of(cc)];
          CHECK(nf == from_rewrite);
        }
      }
    }
  }
}

TEST_CASE("alpha and beta sequences") {
  ColumnTable t3 = enumerate_columns(3);
  auto [alpha3, beta3] = alpha_beta(t3);
  CHECK(alpha3 == Word{3, 2, 1, 2, 1, 3, 1, 3, 2, 1, 2, 3});
  CHECK(beta3 == std::vector<int>{0, 0, 0, 1, 1, 2, 2, 3, 3, 4, 5, 6});

  ColumnTable t1 = enumerate_columns(1);
  auto [alpha1, beta1] = alpha_beta(t1);
  CHECK(alpha1 == Word{1});
  CHECK(beta1 == std::vector<int>{0});

  ColumnTable t2 = enumerate_columns(2);
  auto [alpha2, beta2] = alpha_beta(t2);
  CHECK(alpha2 == Word{2, 1, 1, 2});
  CHECK(beta2 == std::vector<int>{0, 0, 1, 2});

  for (int n = 1; n <= 5; ++n) {
    auto [alpha, beta] = alpha_beta(enumerate_columns(n));
    CHECK(alpha.size() == static_cast<std::size_t>(n) << (n - 1));
    CHECK(beta.size() == alpha.size());
  }
}

TEST_CASE("exponent text") {
  CHECK(exponents_to_text({2, {1, 0, 0}}) == "(1,0,0)");
  CHECK(exponents_to_text({1, {7}}) == "(7)");
}
