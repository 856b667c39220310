#pragma once

#include <numeric>

#include "tvg/core.hpp"
#include "tvg/io.hpp"

// Coset-by-inversion constructions. From a group G, take the orbits of
// g -> g^-1 and set [a] * [b] = [[ab], [ab^-1]]. For abelian G this always
// yields an involutive two-valued group; for nonabelian G the same formula
// (evaluated on fixed orbit representatives) is merely a candidate table,
// and running the axiom checkers on it is the interesting part.

namespace tvg {

// Direct sum of cyclic groups Z/f1 + ... + Z/fk.
struct AbelianSpec {
  std::vector<int> factors;

  int order() const {
    int p = 1;
    for (int f : factors) p *= f;
    return p;
  }
};

namespace construct_detail {

inline constexpr int max_coset_order = 65536;

// Elements of the direct sum are encoded in mixed radix, first factor most
// significant, so numeric order on codes is lexicographic order on tuples.
inline std::vector<int> decode(int code, const std::vector<int>& factors) {
  std::vector<int> a(factors.size());
  for (size_t i = factors.size(); i-- > 0;) {
    a[i] = code % factors[i];
    code /= factors[i];
  }
  return a;
}

inline int encode(const std::vector<int>& a, const std::vector<int>& factors) {
  int code = 0;
  for (size_t i = 0; i < factors.size(); ++i) code = code * factors[i] + a[i];
  return code;
}

}  // namespace construct_detail

inline Table abelian_coset(const AbelianSpec& spec) {
  using namespace construct_detail;
  if (spec.factors.empty()) throw Error("abelian_coset: factor list must be nonempty");
  for (int f : spec.factors)
    if (f < 1) throw Error("abelian_coset: factors must be >= 1");
  const int total = spec.order();
  if (total > max_coset_order) throw Error("abelian_coset: group too large");

  auto negate = [&](int code) {
    std::vector<int> a = decode(code, spec.factors);
    for (size_t i = 0; i < a.size(); ++i) a[i] = (spec.factors[i] - a[i]) % spec.factors[i];
    return encode(a, spec.factors);
  };
  auto rep = [&](int code) { return std::min(code, negate(code)); };

  // Orbits of a -> -a, indexed by sorted minimal representatives. The orbit
  // of 0 has representative 0, so it lands at index 0 as required.
  std::vector<int> reps;
  for (int a = 0; a < total; ++a)
    if (rep(a) == a) reps.push_back(a);
  std::vector<int> cls(static_cast<size_t>(total));
  for (int a = 0; a < total; ++a) {
    int r = rep(a);
    cls[static_cast<size_t>(a)] =
        static_cast<int>(std::lower_bound(reps.begin(), reps.end(), r) - reps.begin());
  }

  const int n = static_cast<int>(reps.size());
  Table t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<int> a = decode(reps[static_cast<size_t>(i)], spec.factors);
      std::vector<int> b = decode(reps[static_cast<size_t>(j)], spec.factors);
      std::vector<int> sum(a.size()), diff(a.size());
      for (size_t c = 0; c < a.size(); ++c) {
        sum[c] = (a[c] + b[c]) % spec.factors[c];
        diff[c] = (a[c] - b[c] + spec.factors[c]) % spec.factors[c];
      }
      t.set_cell(i, j,
                 pair_make(cls[static_cast<size_t>(encode(sum, spec.factors))],
                           cls[static_cast<size_t>(encode(diff, spec.factors))]));
    }
  return t;
}

// Same construction on an arbitrary group's Cayley table, with products taken
// on the minimal representative of each inversion orbit. No validity promise:
// strong identity and involutivity hold by the shape of the formula, but for
// nonabelian input associativity (and commutativity) can fail, and callers are
// expected to run verify_all on the result.
inline Table group_coset_attempt(const GroupTable& g) {
  const int n = g.n;
  if (n < 1) throw Error("group_coset_attempt: empty group");
  std::vector<Elem> inv(static_cast<size_t>(n), -1);
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y)
      if (g.at(x, y) == identity) {
        inv[static_cast<size_t>(x)] = y;
        break;
      }
    if (inv[static_cast<size_t>(x)] < 0)
      throw Error("group_coset_attempt: element " + std::to_string(x) + " has no inverse");
  }

  auto rep = [&](Elem x) { return std::min(x, inv[static_cast<size_t>(x)]); };
  std::vector<Elem> reps;
  for (Elem x = 0; x < n; ++x)
    if (rep(x) == x) reps.push_back(x);
  std::vector<int> cls(static_cast<size_t>(n));
  for (Elem x = 0; x < n; ++x)
    cls[static_cast<size_t>(x)] =
        static_cast<int>(std::lower_bound(reps.begin(), reps.end(), rep(x)) - reps.begin());

  const int m = static_cast<int>(reps.size());
  Table t(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Elem a = reps[static_cast<size_t>(i)], b = reps[static_cast<size_t>(j)];
      t.set_cell(i, j,
                 pair_make(cls[static_cast<size_t>(g.at(a, b))],
                           cls[static_cast<size_t>(g.at(a, inv[static_cast<size_t>(b)]))]));
    }
  return t;
}

}  // namespace tvg
