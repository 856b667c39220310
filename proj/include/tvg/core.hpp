#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tvg {

// Carrier elements are dense indices into a finite set; index 0 is always
// the identity e. Keeping the identity pinned at 0 removes a degree of
// freedom from canonical forms and from the file formats.
using Elem = int;
inline constexpr Elem identity = 0;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Pair: an unordered pair with repetition, i.e. a value in Sym^2(X).
// Always normalized so that lo <= hi.

struct Pair {
  Elem lo = 0;
  Elem hi = 0;

  friend auto operator<=>(const Pair&, const Pair&) = default;

  bool contains(Elem x) const { return lo == x || hi == x; }
  bool doubled() const { return lo == hi; }
};

inline Pair pair_make(Elem a, Elem b) { return a <= b ? Pair{a, b} : Pair{b, a}; }

inline std::string to_string(Pair p) {
  return "[" + std::to_string(p.lo) + ", " + std::to_string(p.hi) + "]";
}

// ---------------------------------------------------------------------------
// Multiset: finite multiset of elements, multiplicity-aware, order-free.
// Stored as a sorted (element, count) vector so iteration order and equality
// are deterministic and O(1)-ish updates are cheap at these sizes.

class Multiset {
 public:
  Multiset() = default;
  Multiset(std::initializer_list<Elem> xs) {
    for (Elem x : xs) add(x);
  }

  static Multiset of_pair(Pair p) {
    Multiset m;
    m.add(p.lo);
    m.add(p.hi);
    return m;
  }

  void add(Elem x, int count = 1) {
    if (count <= 0) throw Error("multiset: count must be positive");
    auto it = std::lower_bound(entries_.begin(), entries_.end(), x,
                               [](const auto& e, Elem v) { return e.first < v; });
    if (it != entries_.end() && it->first == x)
      it->second += count;
    else
      entries_.insert(it, {x, count});
    size_ += count;
  }

  // Removes one copy of x; returns false (and leaves the multiset unchanged)
  // if x is not present.
  bool remove_one(Elem x) {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), x,
                               [](const auto& e, Elem v) { return e.first < v; });
    if (it == entries_.end() || it->first != x) return false;
    if (--it->second == 0) entries_.erase(it);
    --size_;
    return true;
  }

  int count(Elem x) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), x,
                               [](const auto& e, Elem v) { return e.first < v; });
    return (it != entries_.end() && it->first == x) ? it->second : 0;
  }

  bool contains(Elem x) const { return count(x) > 0; }
  int size() const { return size_; }
  bool empty() const { return size_ == 0; }

  const std::vector<std::pair<Elem, int>>& entries() const { return entries_; }

  std::vector<Elem> expanded() const {
    std::vector<Elem> out;
    out.reserve(size_);
    for (const auto& [x, c] : entries_)
      for (int i = 0; i < c; ++i) out.push_back(x);
    return out;
  }

  // Multiset union (adds multiplicities).
  Multiset& operator+=(const Multiset& rhs) {
    for (const auto& [x, c] : rhs.entries_) add(x, c);
    return *this;
  }
  friend Multiset operator+(Multiset a, const Multiset& b) {
    a += b;
    return a;
  }

  friend bool operator==(const Multiset&, const Multiset&) = default;

 private:
  std::vector<std::pair<Elem, int>> entries_;  // sorted by element, counts > 0
  int size_ = 0;
};

inline std::string to_string(const Multiset& m) {
  std::string out = "[";
  bool first = true;
  for (Elem x : m.expanded()) {
    if (!first) out += ", ";
    out += std::to_string(x);
    first = false;
  }
  return out + "]";
}

// ---------------------------------------------------------------------------
// Table: an n x n array of Pairs, cell(x, y) = x*y. A Table is just a
// candidate multiplication; whether it satisfies the two-valued group axioms
// is decided separately (see axioms.hpp). Unverified tables are first-class.

class Table {
 public:
  explicit Table(int n) : n_(n), cells_(static_cast<size_t>(n) * n) {
    if (n < 1) throw Error("table order must be >= 1");
  }

  // Table with the identity row and column pre-filled per x*e = e*x = [x,x].
  static Table with_identity(int n) {
    Table t(n);
    for (Elem x = 0; x < n; ++x) {
      t.cells_[static_cast<size_t>(x) * n] = Pair{x, x};
      t.cells_[static_cast<size_t>(x)] = Pair{x, x};
    }
    return t;
  }

  int order() const { return n_; }

  Pair cell(Elem x, Elem y) const { return cells_[static_cast<size_t>(x) * n_ + y]; }

  void set_cell(Elem x, Elem y, Pair p) {
    if (x < 0 || x >= n_ || y < 0 || y >= n_) throw Error("table: cell index out of range");
    if (p.lo < 0 || p.hi < 0 || p.lo >= n_ || p.hi >= n_)
      throw Error("table: pair value out of range");
    cells_[static_cast<size_t>(x) * n_ + y] = pair_make(p.lo, p.hi);
  }

  bool has_names() const { return !names_.empty(); }
  const std::vector<std::string>& names() const { return names_; }

  void set_names(std::vector<std::string> names) {
    if (static_cast<int>(names.size()) != n_)
      throw Error("table: names list must have one entry per element");
    for (const auto& s : names) {
      if (s.empty()) throw Error("table: empty name");
      for (char c : s)
        if (c == '#' || c == ' ' || c == '\t' || c == '\n' || c == '\r')
          throw Error("table: name contains whitespace or '#': " + s);
    }
    for (size_t i = 0; i < names.size(); ++i)
      for (size_t j = i + 1; j < names.size(); ++j)
        if (names[i] == names[j]) throw Error("table: duplicate name: " + names[i]);
    names_ = std::move(names);
  }

  void clear_names() { names_.clear(); }

  // Row-major cell storage; lexicographic comparison of this is the ordering
  // used by canonical forms.
  const std::vector<Pair>& raw_cells() const { return cells_; }

  friend bool operator==(const Table&, const Table&) = default;

 private:
  int n_;
  std::vector<Pair> cells_;
  std::vector<std::string> names_;
};

// The multiplication map itself, range-checked.
inline Pair mul(const Table& t, Elem x, Elem y) {
  if (x < 0 || x >= t.order() || y < 0 || y >= t.order())
    throw Error("mul: element index out of range");
  return t.cell(x, y);
}

// Extends the product to multisets: every factor pair contributes its whole
// two-element product, so |A * B| = 2 |A| |B| and the operation is bilinear
// over multiset union.
inline Multiset mset_product(const Table& t, const Multiset& a, const Multiset& b) {
  Multiset out;
  for (const auto& [x, cx] : a.entries())
    for (const auto& [y, cy] : b.entries()) {
      Pair p = mul(t, x, y);
      out.add(p.lo, cx * cy);
      out.add(p.hi, cx * cy);
    }
  return out;
}

inline std::string element_label(const Table& t, Elem x) {
  if (t.has_names()) return t.names()[static_cast<size_t>(x)];
  return x == identity ? "e" : std::to_string(x);
}

// ---------------------------------------------------------------------------
// Check outcome carrying a witness on failure. A false result always has a
// witness; the witness re-verifies against the table it came from.

template <class Witness>
struct CheckResult {
  bool ok = true;
  std::optional<Witness> witness;

  explicit operator bool() const { return ok; }

  static CheckResult pass() { return {}; }
  static CheckResult fail(Witness w) { return {false, std::move(w)}; }
};

struct PairWitness {
  Elem x = 0, y = 0;
  friend bool operator==(const PairWitness&, const PairWitness&) = default;
};

struct TripleWitness {
  Elem x = 0, y = 0, z = 0;
  friend bool operator==(const TripleWitness&, const TripleWitness&) = default;
};

}  // namespace tvg
