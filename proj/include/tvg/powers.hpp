#pragma once

#include <cstdlib>

#include "tvg/core.hpp"

// Powers of an element: the unique sequence x^0 = e, x^1 = x, x^2, ... with
// x^k * x^m = [x^|k-m|, x^(k+m)]. The sequence is computed by the m = 1
// specialization: x^(k+1) is what remains of the two-element multiset
// x^k * x after removing one copy of x^(k-1). Uniqueness holds on valid
// tables; instead of assuming it, the recurrence verifies the removal is
// possible at every step and raises IllFormedError when it is not.

namespace tvg {

struct IllFormedError : Error {
  Elem base;  // the element whose power sequence broke
  int step;   // first exponent whose term could not be formed
  IllFormedError(Elem base_, int step_, const std::string& msg)
      : Error(msg), base(base_), step(step_) {}
};

struct PowerSeq {
  Elem base = 0;
  std::vector<Elem> terms;  // terms[k] = base^k, length horizon+1

  int horizon() const { return static_cast<int>(terms.size()) - 1; }
};

inline PowerSeq power_sequence(const Table& t, Elem x, int horizon) {
  if (x < 0 || x >= t.order()) throw Error("power_sequence: element out of range");
  if (horizon < 0) horizon = 0;
  PowerSeq seq;
  seq.base = x;
  seq.terms.resize(static_cast<size_t>(horizon) + 1);
  seq.terms[0] = identity;
  if (horizon >= 1) seq.terms[1] = x;
  for (int k = 1; k < horizon; ++k) {
    Pair p = t.cell(seq.terms[static_cast<size_t>(k)], x);
    Elem prev = seq.terms[static_cast<size_t>(k) - 1];
    // Remove one copy of x^(k-1); a doubled pair [a,a] minus a leaves a.
    if (p.lo == prev)
      seq.terms[static_cast<size_t>(k) + 1] = p.hi;
    else if (p.hi == prev)
      seq.terms[static_cast<size_t>(k) + 1] = p.lo;
    else
      throw IllFormedError(x, k + 1,
                           "power sequence of " + std::to_string(x) + " ill-formed at x^" +
                               std::to_string(k + 1) + ": x^" + std::to_string(k) + " * x = " +
                               to_string(p) + " does not contain x^" + std::to_string(k - 1) +
                               " = " + std::to_string(prev));
  }
  return seq;
}

// Order of x: least k > 0 with x^k = e, scanned up to n^2 steps. The bound is
// exact: x^(k+1) is a function of the state (x^(k-1), x^k), a space of size
// n^2, so the sequence is periodic within n^2 steps and either hits e there
// or never does. "Never" is reported as unbounded, not as an error.
struct OrderResult {
  std::optional<int> value;

  bool bounded() const { return value.has_value(); }
  friend bool operator==(const OrderResult&, const OrderResult&) = default;
};

inline OrderResult order_of(const Table& t, Elem x) {
  const int horizon = t.order() * t.order();
  PowerSeq seq = power_sequence(t, x, horizon < 1 ? 1 : horizon);
  for (int k = 1; k <= seq.horizon(); ++k)
    if (seq.terms[static_cast<size_t>(k)] == identity) return OrderResult{k};
  return OrderResult{};
}

struct PowerRelWitness {
  int k = 0, m = 0;
  Pair actual;    // x^k * x^m from the table
  Pair expected;  // [x^|k-m|, x^(k+m)]
};

// Checks x^k * x^m = [x^|k-m|, x^(k+m)] for all k, m >= 0 with k + m <= max_exponent.
inline CheckResult<PowerRelWitness> verify_power_relation(const Table& t, Elem x,
                                                          int max_exponent) {
  PowerSeq seq = power_sequence(t, x, max_exponent);
  for (int k = 0; k <= max_exponent; ++k)
    for (int m = 0; k + m <= max_exponent; ++m) {
      Pair actual = t.cell(seq.terms[static_cast<size_t>(k)], seq.terms[static_cast<size_t>(m)]);
      Pair expected = pair_make(seq.terms[static_cast<size_t>(std::abs(k - m))],
                                seq.terms[static_cast<size_t>(k) + m]);
      if (actual != expected)
        return CheckResult<PowerRelWitness>::fail({k, m, actual, expected});
    }
  return CheckResult<PowerRelWitness>::pass();
}

}  // namespace tvg
