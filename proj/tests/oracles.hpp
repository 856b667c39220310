#pragma once

#include <algorithm>
#include <array>
#include <set>
#include <utility>
#include <vector>

#include "tvg/core.hpp"

// Independent oracles. Everything here recomputes expected values from first
// principles -- bare modular arithmetic and sorted plain arrays -- without
// going through the library's Multiset / mset_product / canonical_form
// machinery, so agreement between the two is evidence, not tautology.

namespace oracle {

// Coset table of Z/m by negation: classes {v, m-v} indexed by their minimal
// representative 0, 1, ..., floor(m/2).
inline tvg::Table zmod_coset_table(int m) {
  const int n = m / 2 + 1;
  auto cls = [&](int v) {
    v = ((v % m) + m) % m;
    return std::min(v, (m - v) % m);
  };
  tvg::Table t(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t.set_cell(a, b, tvg::pair_make(cls(a + b), cls(a - b)));
  return t;
}

// (x*y)*z and x*(y*z) as sorted plain arrays.
inline std::array<int, 4> lhs4(const tvg::Table& t, int x, int y, int z) {
  tvg::Pair xy = t.cell(x, y);
  tvg::Pair a = t.cell(xy.lo, z), b = t.cell(xy.hi, z);
  std::array<int, 4> v{a.lo, a.hi, b.lo, b.hi};
  std::sort(v.begin(), v.end());
  return v;
}

inline std::array<int, 4> rhs4(const tvg::Table& t, int x, int y, int z) {
  tvg::Pair yz = t.cell(y, z);
  tvg::Pair a = t.cell(x, yz.lo), b = t.cell(x, yz.hi);
  std::array<int, 4> v{a.lo, a.hi, b.lo, b.hi};
  std::sort(v.begin(), v.end());
  return v;
}

inline bool naive_associative(const tvg::Table& t) {
  const int n = t.order();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (lhs4(t, x, y, z) != rhs4(t, x, y, z)) return false;
  return true;
}

inline bool naive_strong_identity(const tvg::Table& t) {
  for (int x = 0; x < t.order(); ++x) {
    tvg::Pair r = t.cell(x, 0), c = t.cell(0, x);
    if (r.lo != x || r.hi != x || c.lo != x || c.hi != x) return false;
  }
  return true;
}

inline bool naive_involutive(const tvg::Table& t) {
  const int n = t.order();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      tvg::Pair p = t.cell(x, y);
      if ((p.lo == 0 || p.hi == 0) != (x == y)) return false;
    }
  return true;
}

inline bool naive_commutative(const tvg::Table& t) {
  const int n = t.order();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (t.cell(x, y) != t.cell(y, x)) return false;
  return true;
}

inline bool naive_valid(const tvg::Table& t) {
  return naive_strong_identity(t) && naive_involutive(t) && naive_associative(t);
}

// Visits every table whose cells respect the identity row/column, e on the
// diagonal, and no e off the diagonal. No other pruning: a plain odometer
// over the full Cartesian product of cell domains.
template <class Fn>
inline void for_each_admissible(int n, Fn&& fn) {
  std::vector<std::pair<int, int>> cells;
  for (int x = 1; x < n; ++x)
    for (int y = 1; y < n; ++y) cells.emplace_back(x, y);

  std::vector<std::vector<tvg::Pair>> domains;
  for (auto [x, y] : cells) {
    std::vector<tvg::Pair> d;
    if (x == y)
      for (int v = 0; v < n; ++v) d.push_back(tvg::Pair{0, v});
    else
      for (int a = 1; a < n; ++a)
        for (int b = a; b < n; ++b) d.push_back(tvg::Pair{a, b});
    domains.push_back(std::move(d));
  }

  tvg::Table t = tvg::Table::with_identity(n);
  std::vector<size_t> idx(cells.size(), 0);
  while (true) {
    for (size_t i = 0; i < cells.size(); ++i)
      t.set_cell(cells[i].first, cells[i].second, domains[i][idx[i]]);
    fn(static_cast<const tvg::Table&>(t));
    size_t i = 0;
    while (i < idx.size() && ++idx[i] == domains[i].size()) idx[i++] = 0;
    if (i == idx.size()) break;
  }
}

// Lexicographically least relabeling of the raw cell vector over all
// permutations fixing 0. Deliberately re-implemented: does not call the
// library's apply_relabeling or canonical_form.
inline std::vector<int> least_relabeling(const tvg::Table& t) {
  const int n = t.order();
  std::vector<int> perm(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;

  std::vector<int> best;
  do {
    std::vector<int> flat(static_cast<size_t>(n) * n * 2);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        tvg::Pair p = t.cell(x, y);
        int a = perm[static_cast<size_t>(p.lo)], b = perm[static_cast<size_t>(p.hi)];
        if (a > b) std::swap(a, b);
        size_t at = (static_cast<size_t>(perm[static_cast<size_t>(x)]) * n +
                     static_cast<size_t>(perm[static_cast<size_t>(y)])) *
                    2;
        flat[at] = a;
        flat[at + 1] = b;
      }
    if (best.empty() || flat < best) best = std::move(flat);
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return best;
}

struct BruteCounts {
  int raw = 0;           // valid tables, all labelings
  int classes = 0;       // valid tables up to identity-fixing relabeling
  bool all_commutative = true;
};

inline BruteCounts brute_force_counts(int n) {
  BruteCounts out;
  std::set<std::vector<int>> canon;
  for_each_admissible(n, [&](const tvg::Table& t) {
    if (!naive_valid(t)) return;
    ++out.raw;
    if (!naive_commutative(t)) out.all_commutative = false;
    canon.insert(least_relabeling(t));
  });
  out.classes = static_cast<int>(canon.size());
  return out;
}

}  // namespace oracle
