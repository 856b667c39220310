#pragma once

#include <array>

#include "tvg/core.hpp"
#include "tvg/powers.hpp"

// Structural identities of involutive two-valued groups, checked instance by
// instance on a concrete table, plus a per-pair classification of how close
// each product pair x*y, y*x is to commuting. On a valid table all of these
// are expected to hold with the census landing entirely in the "equal" class;
// the checkers assert nothing and simply report.

namespace tvg {

// z is in x*y  iff  y is in z*x, for all ordered triples.
inline CheckResult<TripleWitness> check_membership_transfer(const Table& t) {
  const int n = t.order();
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z)
        if (t.cell(x, y).contains(z) != t.cell(z, x).contains(y))
          return CheckResult<TripleWitness>::fail({x, y, z});
  return CheckResult<TripleWitness>::pass();
}

// Every product involving an element of order 2 is a doubled pair:
// ord x = 2 implies x*y = y*x = [z,z] for some z. Vacuously true when the
// table has no order-2 elements.
inline CheckResult<PairWitness> check_order2_doubling(const Table& t) {
  const int n = t.order();
  for (Elem x = 0; x < n; ++x) {
    if (order_of(t, x) != OrderResult{2}) continue;
    for (Elem y = 0; y < n; ++y) {
      Pair p = t.cell(x, y);
      if (!p.doubled() || p != t.cell(y, x)) return CheckResult<PairWitness>::fail({x, y});
    }
  }
  return CheckResult<PairWitness>::pass();
}

struct SandwichWitness {
  Elem x = 0, y = 0;
  Multiset lhs;  // (x*y)*(y*x)
  Multiset rhs;  // [e,e,x^2,x^2] + x*y^2*x
};

// The 8-element multiset identity (x*y)*(y*x) = [e, e, x^2, x^2] + x*(y^2)*x,
// which is what collapsing the middle of x*(y*y)*x produces.
inline CheckResult<SandwichWitness> check_sandwich_identity(const Table& t) {
  const int n = t.order();
  std::vector<Elem> square(static_cast<size_t>(n));
  for (Elem x = 0; x < n; ++x)
    square[static_cast<size_t>(x)] = power_sequence(t, x, 2).terms[2];

  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      Multiset lhs = mset_product(t, Multiset::of_pair(t.cell(x, y)),
                                  Multiset::of_pair(t.cell(y, x)));
      Multiset rhs{identity, identity, square[static_cast<size_t>(x)],
                   square[static_cast<size_t>(x)]};
      rhs += mset_product(t, mset_product(t, Multiset{x}, Multiset{square[static_cast<size_t>(y)]}),
                          Multiset{x});
      if (!(lhs == rhs))
        return CheckResult<SandwichWitness>::fail({x, y, std::move(lhs), std::move(rhs)});
    }
  return CheckResult<SandwichWitness>::pass();
}

// ---------------------------------------------------------------------------
// Pair census. For each ordered pair (x, y) write x*y = [z1, z2] and
// y*x = [w1, w2] and classify, in priority order (the classes overlap at
// degenerate boundaries, so the first match wins):
//
//   equal              the two pairs coincide, x*y = y*x
//   triple_overlap     three of z1, z2, w1, w2 coincide and the fourth differs
//   shared_involution  the pairs share an element of order 2 without being equal
//   other              anything else

enum class PairClass { equal, triple_overlap, shared_involution, other };

struct CommutationCensus {
  int order = 0;
  int equal = 0;
  int triple_overlap = 0;
  int shared_involution = 0;
  int other = 0;
  std::optional<PairWitness> first_equal;
  std::optional<PairWitness> first_triple_overlap;
  std::optional<PairWitness> first_shared_involution;
  std::optional<PairWitness> first_other;

  int total() const { return equal + triple_overlap + shared_involution + other; }
  bool all_equal() const { return triple_overlap == 0 && shared_involution == 0 && other == 0; }
};

namespace identities_detail {

inline PairClass classify_pair(const Table& t, const std::vector<char>& is_order2, Elem x, Elem y) {
  Pair p = t.cell(x, y), q = t.cell(y, x);
  if (p == q) return PairClass::equal;
  // Multiplicity-3 overlap between [z1,z2] and [w1,w2]; multiplicity 4 would
  // mean p == q which is handled above.
  std::array<Elem, 4> all{p.lo, p.hi, q.lo, q.hi};
  for (Elem v : all) {
    int c = 0;
    for (Elem w : all)
      if (w == v) ++c;
    if (c == 3) return PairClass::triple_overlap;
  }
  for (Elem v : {p.lo, p.hi})
    if (q.contains(v) && is_order2[static_cast<size_t>(v)]) return PairClass::shared_involution;
  return PairClass::other;
}

}  // namespace identities_detail

inline CommutationCensus commutation_census(const Table& t) {
  const int n = t.order();
  std::vector<char> is_order2(static_cast<size_t>(n));
  for (Elem x = 0; x < n; ++x) is_order2[static_cast<size_t>(x)] = (order_of(t, x) == OrderResult{2});

  CommutationCensus c;
  c.order = n;
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      switch (identities_detail::classify_pair(t, is_order2, x, y)) {
        case PairClass::equal:
          ++c.equal;
          if (!c.first_equal) c.first_equal = PairWitness{x, y};
          break;
        case PairClass::triple_overlap:
          ++c.triple_overlap;
          if (!c.first_triple_overlap) c.first_triple_overlap = PairWitness{x, y};
          break;
        case PairClass::shared_involution:
          ++c.shared_involution;
          if (!c.first_shared_involution) c.first_shared_involution = PairWitness{x, y};
          break;
        case PairClass::other:
          ++c.other;
          if (!c.first_other) c.first_other = PairWitness{x, y};
          break;
      }
    }
  return c;
}

}  // namespace tvg
