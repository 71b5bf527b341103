#include "plactic/interpretation.hpp"

#include <stdexcept>

namespace plactic::interp {

using presburger::LinearTerm;

namespace {

LinearTerm var(VarId v) { return LinearTerm::variable(v); }

LinearTerm sum_over(const VarBlock& block, const std::vector<int>& indices) {
  LinearTerm t;
  for (int i : indices) t += var(block[i]);
  return t;
}

VarBlock fresh_block(FormulaStore& st, int k) {
  VarBlock b(k);
  for (int i = 0; i < k; ++i) b[i] = st.fresh_var();
  return b;
}

}  // namespace

Tables make_tables(int rank) {
  Tables t;
  t.rank = rank;
  t.table = enumerate_columns(rank);
  int k = t.k();
  for (int p = 0; p < k; ++p)
    for (int q = p + 1; q < k; ++q)
      if (!compatible(t.table.columns[p], t.table.columns[q])) t.incompatible.push_back({p, q});
  t.bottom_sets.resize(rank);
  t.top_sets.resize(k);
  for (int j = 0; j < k; ++j) {
    const Column& c = t.table.columns[j];
    t.bottom_sets[c.bottom_letter() - 1].push_back(j);
    if (c.size() >= 2) t.top_sets[t.table.index_of(c.without_bottom())].push_back(j);
  }
  std::tie(t.alpha, t.beta) = alpha_beta(t.table);
  if (rank >= 2) {
    ColumnTable lower = enumerate_columns(rank - 1);
    t.embed.resize(lower.size());
    for (int j = 0; j < lower.size(); ++j)
      t.embed[j] = t.table.index_of(Column{lower.columns[j].mask << 1});
  }
  return t;
}

FormulaId build_domain(FormulaStore& st, const Tables& t, const VarBlock& x) {
  std::vector<FormulaId> parts;
  for (VarId v : x) parts.push_back(st.leq0(-var(v)));
  for (const auto& [p, q] : t.incompatible)
    parts.push_back(st.disj(st.eq0(var(x[p])), st.eq0(var(x[q]))));
  return st.conj_all(parts);
}

FormulaId build_equality(FormulaStore& st, const Tables& t, const VarBlock& a,
                         const VarBlock& b) {
  std::vector<FormulaId> parts{build_domain(st, t, a), build_domain(st, t, b)};
  for (int i = 0; i < t.k(); ++i) parts.push_back(st.eq(var(a[i]), var(b[i])));
  return st.conj_all(parts);
}

FormulaId build_bottom(FormulaStore& st, const Tables& t, const VarBlock& a,
                       const VarBlock& out) {
  int k = t.k();
  std::vector<FormulaId> parts;
  for (int i = 0; i < k - t.rank; ++i) parts.push_back(st.eq0(var(out[i])));
  for (Letter x = 1; x <= t.rank; ++x)
    parts.push_back(st.eq(var(out[t.letter_coord(x)]), sum_over(a, t.bottom_sets[x - 1])));
  return st.conj_all(parts);
}

FormulaId build_top(FormulaStore& st, const Tables& t, const VarBlock& a,
                    const VarBlock& out) {
  std::vector<FormulaId> parts;
  for (int i = 0; i < t.k(); ++i)
    parts.push_back(st.eq(var(out[i]), sum_over(a, t.top_sets[i])));
  return st.conj_all(parts);
}

namespace {

// Shared scaffolding of the two insertion graphs: the input is a nonnegative
// row vector, m is nonnegative, and the output is supported on letters only.
void rho_prelude(FormulaStore& st, const Tables& t, VarId m, const VarBlock& r,
                 const VarBlock& out, std::vector<FormulaId>& parts) {
  int k = t.k();
  for (int i = 0; i < k - t.rank; ++i) {
    parts.push_back(st.eq0(var(r[i])));
    parts.push_back(st.eq0(var(out[i])));
  }
  for (Letter x = 1; x <= t.rank; ++x) parts.push_back(st.leq0(-var(r[t.letter_coord(x)])));
  parts.push_back(st.leq0(-var(m)));
}

}  // namespace

FormulaId build_rho_bottom(FormulaStore& st, const Tables& t, Letter x, VarId m,
                           const VarBlock& r, const VarBlock& out) {
  if (x < 1 || x > t.rank) throw std::invalid_argument("letter out of range");
  int n = t.rank;
  auto R = [&](Letter l) { return var(r[t.letter_coord(l)]); };
  auto D = [&](Letter l) { return var(out[t.letter_coord(l)]); };
  std::vector<FormulaId> parts;
  rho_prelude(st, t, m, r, out, parts);
  // Letters below x are untouched; all m copies of x land in the row.
  for (Letter l = 1; l < x; ++l) parts.push_back(st.eq(D(l), R(l)));
  parts.push_back(st.eq(D(x), R(x) + var(m)));
  // Case i: the first i-1 letter groups above x are fully bumped and group i
  // partially; the final case bumps everything above x.
  std::vector<FormulaId> cases;
  LinearTerm prefix;  // sum of R(x+1..x+i-1)
  for (int i = 1; i <= n - x; ++i) {
    LinearTerm full = prefix + R(x + i);
    std::vector<FormulaId> cs;
    cs.push_back(st.leq(prefix, var(m)));
    cs.push_back(st.leq(var(m), full));
    for (int j = 1; j < i; ++j) cs.push_back(st.eq0(D(x + j)));
    cs.push_back(st.eq(D(x + i) + var(m), full));
    for (int j = i + 1; j <= n - x; ++j) cs.push_back(st.eq(D(x + j), R(x + j)));
    cases.push_back(st.conj_all(cs));
    prefix = std::move(full);
  }
  {
    std::vector<FormulaId> cs;
    cs.push_back(st.leq(prefix, var(m)));
    for (int j = 1; j <= n - x; ++j) cs.push_back(st.eq0(D(x + j)));
    cases.push_back(st.conj_all(cs));
  }
  parts.push_back(st.disj_all(cases));
  return st.conj_all(parts);
}

FormulaId build_rho_top(FormulaStore& st, const Tables& t, Letter x, VarId m,
                        const VarBlock& r, const VarBlock& out) {
  if (x < 1 || x > t.rank) throw std::invalid_argument("letter out of range");
  int n = t.rank;
  auto R = [&](Letter l) { return var(r[t.letter_coord(l)]); };
  auto C = [&](Letter l) { return var(out[t.letter_coord(l)]); };
  std::vector<FormulaId> parts;
  rho_prelude(st, t, m, r, out, parts);
  // Nothing at or below x is ever bumped.
  for (Letter l = 1; l <= x; ++l) parts.push_back(st.eq0(C(l)));
  std::vector<FormulaId> cases;
  LinearTerm prefix;
  for (int i = 1; i <= n - x; ++i) {
    LinearTerm full = prefix + R(x + i);
    std::vector<FormulaId> cs;
    cs.push_back(st.leq(prefix, var(m)));
    cs.push_back(st.leq(var(m), full));
    for (int j = 1; j < i; ++j) cs.push_back(st.eq(C(x + j), R(x + j)));
    cs.push_back(st.eq(C(x + i) + prefix, var(m)));
    for (int j = i + 1; j <= n - x; ++j) cs.push_back(st.eq0(C(x + j)));
    cases.push_back(st.conj_all(cs));
    prefix = std::move(full);
  }
  {
    std::vector<FormulaId> cs;
    cs.push_back(st.leq(prefix, var(m)));
    for (int j = 1; j <= n - x; ++j) cs.push_back(st.eq(C(x + j), R(x + j)));
    cases.push_back(st.conj_all(cs));
  }
  parts.push_back(st.disj_all(cases));
  return st.conj_all(parts);
}

FormulaId build_stitch(FormulaStore& st, const Tables& t, const VarBlock& a,
                       const VarBlock& b, const VarBlock& d) {
  int k = t.k();
  int n = t.rank;
  const std::vector<int>& b1 = t.bottom_sets[0];

  // gamma: a is a top tableau, b a row, and every prefix of bottom letters of
  // a fits onto strictly smaller letters of b.
  std::vector<FormulaId> gamma{build_domain(st, t, a), build_domain(st, t, b)};
  for (int i : b1) gamma.push_back(st.eq0(var(a[i])));
  for (int i = 0; i < k - n; ++i) gamma.push_back(st.eq0(var(b[i])));
  LinearTerm used, avail;
  for (Letter l = 2; l <= n; ++l) {
    used += sum_over(a, t.bottom_sets[l - 1]);
    avail += var(b[t.letter_coord(l - 1)]);
    gamma.push_back(st.leq(used, avail));
  }

  // Consumption chain: active coordinates are the top columns on the a side
  // and the letters on the b side; everything else is identically zero.
  std::vector<int> top_coords;
  for (int i = 0; i < k; ++i)
    if (!t.table.columns[i].contains(1)) top_coords.push_back(i);
  std::vector<int> coord_pos(k, -1);
  for (std::size_t p = 0; p < top_coords.size(); ++p) coord_pos[top_coords[p]] = static_cast<int>(p);

  std::vector<VarBlock> a_state(k + 1), b_state(k + 1);
  VarBlock all_state;
  for (int step = 0; step <= k; ++step) {
    a_state[step] = fresh_block(st, static_cast<int>(top_coords.size()));
    b_state[step] = fresh_block(st, n);
    all_state.insert(all_state.end(), a_state[step].begin(), a_state[step].end());
    all_state.insert(all_state.end(), b_state[step].begin(), b_state[step].end());
  }

  std::vector<FormulaId> chain;
  for (std::size_t p = 0; p < top_coords.size(); ++p)
    chain.push_back(st.eq(var(a_state[0][p]), var(a[top_coords[p]])));
  for (Letter l = 1; l <= n; ++l)
    chain.push_back(st.eq(var(b_state[0][l - 1]), var(b[t.letter_coord(l)])));

  for (int i = 0; i < k; ++i) {
    const Column& col = t.table.columns[i];
    Letter bl = col.bottom_letter();
    LinearTerm bot_prev = var(b_state[i][bl - 1]);
    if (col.size() == 1) {
      // A single-letter column consumes a leftover row letter.
      chain.push_back(st.eq(var(d[i]), bot_prev));
      chain.push_back(st.eq(var(b_state[i + 1][bl - 1]) + var(d[i]), bot_prev));
      for (Letter l = 1; l <= n; ++l)
        if (l != bl)
          chain.push_back(st.eq(var(b_state[i + 1][l - 1]), var(b_state[i][l - 1])));
      for (std::size_t p = 0; p < top_coords.size(); ++p)
        chain.push_back(st.eq(var(a_state[i + 1][p]), var(a_state[i][p])));
    } else {
      int it = coord_pos[t.table.index_of(col.without_bottom())];
      LinearTerm top_prev = var(a_state[i][it]);
      FormulaId take_top = st.conj(st.leq(top_prev, bot_prev), st.eq(var(d[i]), top_prev));
      FormulaId take_bot = st.conj(st.leq(bot_prev, top_prev), st.eq(var(d[i]), bot_prev));
      chain.push_back(st.disj(take_top, take_bot));
      chain.push_back(st.eq(var(a_state[i + 1][it]) + var(d[i]), top_prev));
      chain.push_back(st.eq(var(b_state[i + 1][bl - 1]) + var(d[i]), bot_prev));
      for (std::size_t p = 0; p < top_coords.size(); ++p)
        if (static_cast<int>(p) != it)
          chain.push_back(st.eq(var(a_state[i + 1][p]), var(a_state[i][p])));
      for (Letter l = 1; l <= n; ++l)
        if (l != bl)
          chain.push_back(st.eq(var(b_state[i + 1][l - 1]), var(b_state[i][l - 1])));
    }
  }

  FormulaId chain_f = st.exists_block(all_state, st.conj_all(chain));
  return st.conj(st.conj_all(gamma), chain_f);
}

FormulaId build_mu(FormulaStore& st, const Tables& t, const Interpretation& lower,
                   Letter x, VarId m, const VarBlock& a, const VarBlock& b) {
  if (x < 1 || x > t.rank) throw std::invalid_argument("letter out of range");
  if (lower.rank() != t.rank - 1)
    throw std::invalid_argument("build_mu needs the interpretation one rank below");
  int k = t.k();
  VarBlock top_in = fresh_block(st, k);     // T(phi(a))
  VarBlock bottom_in = fresh_block(st, k);  // B(phi(a))
  VarBlock bumped = fresh_block(st, k);     // T(B(phi(a)) x^m)
  VarBlock new_row = fresh_block(st, k);    // B(B(phi(a)) x^m)
  VarBlock top_out = fresh_block(st, k);    // T(phi(a)) * bumped

  std::vector<FormulaId> parts;
  parts.push_back(build_domain(st, t, a));
  parts.push_back(st.leq0(-LinearTerm::variable(m)));
  parts.push_back(build_top(st, t, a, top_in));
  parts.push_back(build_bottom(st, t, a, bottom_in));
  parts.push_back(build_rho_top(st, t, x, m, bottom_in, bumped));
  parts.push_back(build_rho_bottom(st, t, x, m, bottom_in, new_row));

  // Top-tableau product through the letter-shift embedding; coordinates of
  // columns containing the letter 1 vanish.
  for (int i : t.bottom_sets[0]) parts.push_back(st.eq0(var(top_out[i])));
  presburger::Subst map;
  for (int j = 0; j < lower.k(); ++j) {
    map.push_back({lower.a_vars[j], var(top_in[t.embed[j]])});
    map.push_back({lower.b_vars[j], var(bumped[t.embed[j]])});
    map.push_back({lower.c_vars[j], var(top_out[t.embed[j]])});
  }
  parts.push_back(instantiate(st, lower.eta, map));

  parts.push_back(build_stitch(st, t, top_out, new_row, b));

  VarBlock bound;
  for (const VarBlock* blk : {&top_in, &bottom_in, &bumped, &new_row, &top_out})
    bound.insert(bound.end(), blk->begin(), blk->end());
  return st.exists_block(bound, st.conj_all(parts));
}

FormulaId instantiate(FormulaStore& st, FormulaId templ, const presburger::Subst& map) {
  presburger::Subst sorted = map;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return st.substitute(templ, sorted);
}

namespace {

FormulaId explicit_eta_rank1(FormulaStore& st, const Tables& t, const VarBlock& a,
                             const VarBlock& b, const VarBlock& c) {
  std::vector<FormulaId> parts{build_domain(st, t, a), build_domain(st, t, b),
                               build_domain(st, t, c)};
  parts.push_back(st.eq(var(c[0]), var(a[0]) + var(b[0])));
  return st.conj_all(parts);
}

// The two-case multiplication formula for rank 2, with subtractions moved to
// the other side of each equality.
FormulaId explicit_eta_rank2(FormulaStore& st, const Tables& t, const VarBlock& a,
                             const VarBlock& b, const VarBlock& c) {
  std::vector<FormulaId> parts{build_domain(st, t, a), build_domain(st, t, b),
                               build_domain(st, t, c)};
  LinearTerm a1 = var(a[0]), a2 = var(a[1]), a3 = var(a[2]);
  LinearTerm b1 = var(b[0]), b2 = var(b[1]), b3 = var(b[2]);
  LinearTerm c1 = var(c[0]), c2 = var(c[1]), c3 = var(c[2]);
  FormulaId few = st.conj_all(std::vector<FormulaId>{
      st.leq(a3, b2),
      st.eq(c1, a1 + b1 + a3),
      st.eq(c2 + a3, a2 + b2),
      st.eq(c3, b3),
  });
  FormulaId many = st.conj_all(std::vector<FormulaId>{
      st.leq(b2, a3),
      st.eq(c1, a1 + b1 + b2),
      st.eq(c2, a2),
      st.eq(c3 + b2, a3 + b3),
  });
  parts.push_back(st.disj(few, many));
  return st.conj_all(parts);
}

}  // namespace

Interpretation generate(FormulaStore& st, int rank) {
  if (rank < 1) throw std::invalid_argument("rank must be >= 1");
  Interpretation ip;
  ip.tables = make_tables(rank);
  int k = ip.tables.k();
  auto named_block = [&](const char* prefix) {
    VarBlock blk(k);
    for (int i = 0; i < k; ++i) blk[i] = st.fresh_var(prefix + std::to_string(i + 1));
    return blk;
  };

  Interpretation lower;
  if (rank >= 2) lower = generate(st, rank - 1);

  ip.a_vars = named_block("a");
  ip.b_vars = named_block("b");
  ip.c_vars = named_block("c");
  ip.m_var = st.fresh_var("m");
  ip.domain = build_domain(st, ip.tables, ip.a_vars);
  ip.equality = build_equality(st, ip.tables, ip.a_vars, ip.b_vars);

  if (rank >= 2) {
    ip.mu.reserve(rank);
    for (Letter x = 1; x <= rank; ++x)
      ip.mu.push_back(build_mu(st, ip.tables, lower, x, ip.m_var, ip.a_vars, ip.b_vars));
  }

  if (rank == 1) {
    ip.eta = explicit_eta_rank1(st, ip.tables, ip.a_vars, ip.b_vars, ip.c_vars);
  } else if (rank == 2) {
    ip.eta = explicit_eta_rank2(st, ip.tables, ip.a_vars, ip.b_vars, ip.c_vars);
  } else {
    // Chain c^0 = a, c^i = mu_{alpha_i}(b_{beta_i}, c^{i-1}), c^l = c.
    int len = static_cast<int>(ip.tables.alpha.size());
    std::vector<VarBlock> links(len + 1);
    links[0] = ip.a_vars;
    links[len] = ip.c_vars;
    VarBlock bound;
    for (int i = 1; i < len; ++i) {
      links[i] = fresh_block(st, k);
      bound.insert(bound.end(), links[i].begin(), links[i].end());
    }
    std::vector<FormulaId> parts{build_domain(st, ip.tables, ip.a_vars),
                                 build_domain(st, ip.tables, ip.b_vars),
                                 build_domain(st, ip.tables, ip.c_vars)};
    for (int i = 0; i < len; ++i) {
      presburger::Subst map;
      map.push_back({ip.m_var, var(ip.b_vars[ip.tables.beta[i]])});
      for (int j = 0; j < k; ++j) {
        map.push_back({ip.a_vars[j], var(links[i][j])});
        map.push_back({ip.b_vars[j], var(links[i + 1][j])});
      }
      parts.push_back(instantiate(st, ip.mu[ip.tables.alpha[i] - 1], map));
    }
    ip.eta = st.exists_block(bound, st.conj_all(parts));
  }
  return ip;
}

}  // namespace plactic::interp
