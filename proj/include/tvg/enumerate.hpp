#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <thread>

#include "tvg/axioms.hpp"
#include "tvg/core.hpp"
#include "tvg/identities.hpp"
#include "tvg/io.hpp"
#include "tvg/powers.hpp"

// Exhaustive enumeration of involutive two-valued groups of a given order,
// one representative per isomorphism class. The search backtracks over cell
// assignments whose domains already encode strong identity and involutivity,
// prunes with incremental associativity checks, and rejects non-canonical
// partial tables against all identity-fixing relabelings (orderly
// generation). Commutativity is deliberately NOT imposed anywhere in the
// search; every emitted structure turning out commutative is a finding, not
// an assumption.

namespace tvg {

// ---------------------------------------------------------------------------
// Canonical form: the relabeling (over all permutations fixing the identity)
// whose row-major cell sequence is lexicographically minimal. Names are
// display data and are dropped. Two tables are isomorphic iff their
// canonical forms have equal cells.

inline Table apply_relabeling(const Table& t, const std::vector<Elem>& perm) {
  const int n = t.order();
  Table r(n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      Pair p = t.cell(x, y);
      r.set_cell(perm[static_cast<size_t>(x)], perm[static_cast<size_t>(y)],
                 pair_make(perm[static_cast<size_t>(p.lo)], perm[static_cast<size_t>(p.hi)]));
    }
  return r;
}

inline Table canonical_form(const Table& t) {
  const int n = t.order();
  std::vector<Elem> perm(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
  Table best = apply_relabeling(t, perm);  // identity relabeling, also drops names
  while (std::next_permutation(perm.begin() + 1, perm.end())) {
    Table cand = apply_relabeling(t, perm);
    if (cand.raw_cells() < best.raw_cells()) best = std::move(cand);
  }
  return best;
}

inline bool are_isomorphic(const Table& a, const Table& b) {
  if (a.order() != b.order()) return false;
  return canonical_form(a).raw_cells() == canonical_form(b).raw_cells();
}

// FNV-1a over the canonical serialization; used to name emitted files.
inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::uint64_t canonical_hash(const Table& t) { return fnv1a(serialize_table(canonical_form(t))); }

inline std::string table_filename(const Table& t) {
  std::uint64_t h = fnv1a(serialize_table(t));
  std::string hex(16, '0');
  for (int i = 15; i >= 0; --i) {
    hex[static_cast<size_t>(i)] = "0123456789abcdef"[h & 0xf];
    h >>= 4;
  }
  return hex + ".2vg";
}

// ---------------------------------------------------------------------------
// Search internals

namespace enum_detail {

struct PartialTable {
  int n = 0;
  bool orderly = true;
  std::vector<Pair> cells;     // n*n, row-major
  std::vector<char> assigned;  // n*n
  std::vector<char> triple_ok;  // n^3; associativity instance verified
  std::vector<int> trail;       // verified triple indices, popped on undo
  std::vector<int> slots;       // decision cells: upper triangle (x<=y) then lower
  std::vector<std::vector<Pair>> domains;              // per slot
  std::vector<std::vector<Elem>> perms, inv_perms;     // identity-fixing, id excluded

  void init(int order, bool use_orderly) {
    n = order;
    orderly = use_orderly;
    cells.assign(static_cast<size_t>(n) * n, Pair{});
    assigned.assign(static_cast<size_t>(n) * n, 0);
    triple_ok.assign(static_cast<size_t>(n) * n * n, 0);
    trail.clear();
    slots.clear();
    domains.clear();

    // Strong identity prefill: row and column 0 are forced.
    for (Elem x = 0; x < n; ++x) {
      cells[static_cast<size_t>(x) * n] = Pair{x, x};
      cells[static_cast<size_t>(x)] = Pair{x, x};
      assigned[static_cast<size_t>(x) * n] = 1;
      assigned[static_cast<size_t>(x)] = 1;
    }

    // Involutivity shapes the domains: diagonal cells contain e, off-diagonal
    // cells exclude it. Mirror cells are independent unknowns; nothing here
    // assumes commutativity.
    std::vector<Pair> diag_domain, off_domain;
    for (Elem d = 0; d < n; ++d) diag_domain.push_back(Pair{0, d});
    for (Elem a = 1; a < n; ++a)
      for (Elem b = a; b < n; ++b) off_domain.push_back(Pair{a, b});

    auto add_slot = [&](Elem x, Elem y) {
      slots.push_back(x * n + y);
      domains.push_back(x == y ? diag_domain : off_domain);
    };
    for (Elem x = 1; x < n; ++x)
      for (Elem y = x; y < n; ++y) add_slot(x, y);
    for (Elem x = 2; x < n; ++x)
      for (Elem y = 1; y < x; ++y) add_slot(x, y);

    perms.clear();
    inv_perms.clear();
    if (orderly && n > 2) {
      std::vector<Elem> p(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) p[static_cast<size_t>(i)] = i;
      while (std::next_permutation(p.begin() + 1, p.end())) {
        std::vector<Elem> ip(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) ip[static_cast<size_t>(p[static_cast<size_t>(i)])] = i;
        perms.push_back(p);
        inv_perms.push_back(std::move(ip));
      }
    }
  }

  int slot_count() const { return static_cast<int>(slots.size()); }
  size_t mark() const { return trail.size(); }

  // Assigns slot `depth` and runs the incremental checks. Returns false when
  // the assignment is inconsistent; the caller must call unplace either way.
  bool place(int depth, Pair v) {
    int c = slots[static_cast<size_t>(depth)];
    cells[static_cast<size_t>(c)] = v;
    assigned[static_cast<size_t>(c)] = 1;
    if (!associativity_consistent()) return false;
    if (orderly && !lex_min_prefix()) return false;
    return true;
  }

  void unplace(int depth, size_t m) {
    assigned[static_cast<size_t>(slots[static_cast<size_t>(depth)])] = 0;
    while (trail.size() > m) {
      triple_ok[static_cast<size_t>(trail.back())] = 0;
      trail.pop_back();
    }
  }

  // Checks every not-yet-verified triple whose five relevant cells are all
  // assigned; records the ones that pass so each triple is expanded at most
  // once per search path.
  bool associativity_consistent() {
    const int nn = n * n;
    const int total = nn * n;
    for (int idx = 0; idx < total; ++idx) {
      if (triple_ok[static_cast<size_t>(idx)]) continue;
      const int z = idx % n;
      const int y = (idx / n) % n;
      const int x = idx / nn;
      const int cxy = x * n + y, cyz = y * n + z;
      if (!assigned[static_cast<size_t>(cxy)] || !assigned[static_cast<size_t>(cyz)]) continue;
      const Pair xy = cells[static_cast<size_t>(cxy)];
      const Pair yz = cells[static_cast<size_t>(cyz)];
      const int l1 = xy.lo * n + z, l2 = xy.hi * n + z;
      const int r1 = x * n + yz.lo, r2 = x * n + yz.hi;
      if (!assigned[static_cast<size_t>(l1)] || !assigned[static_cast<size_t>(l2)] ||
          !assigned[static_cast<size_t>(r1)] || !assigned[static_cast<size_t>(r2)])
        continue;
      std::array<Elem, 4> lhs{cells[static_cast<size_t>(l1)].lo, cells[static_cast<size_t>(l1)].hi,
                              cells[static_cast<size_t>(l2)].lo, cells[static_cast<size_t>(l2)].hi};
      std::array<Elem, 4> rhs{cells[static_cast<size_t>(r1)].lo, cells[static_cast<size_t>(r1)].hi,
                              cells[static_cast<size_t>(r2)].lo, cells[static_cast<size_t>(r2)].hi};
      std::sort(lhs.begin(), lhs.end());
      std::sort(rhs.begin(), rhs.end());
      if (lhs != rhs) return false;
      triple_ok[static_cast<size_t>(idx)] = 1;
      trail.push_back(idx);
    }
    return true;
  }

  // Orderly generation: prune once some identity-fixing relabeling of the
  // partial table is certainly lexicographically smaller (row-major cell
  // order). Comparisons stop at the first undetermined position, so a prune
  // here holds for every completion; at a full assignment the test is exact
  // and the survivor is the canonical representative of its class.
  bool lex_min_prefix() const {
    const int nn = n * n;
    for (size_t pi = 0; pi < perms.size(); ++pi) {
      const auto& p = perms[pi];
      const auto& ip = inv_perms[pi];
      for (int c = 0; c < nn; ++c) {
        if (!assigned[static_cast<size_t>(c)]) break;
        const int i = c / n, j = c % n;
        const int src = ip[static_cast<size_t>(i)] * n + ip[static_cast<size_t>(j)];
        if (!assigned[static_cast<size_t>(src)]) break;
        const Pair s = cells[static_cast<size_t>(src)];
        const Pair img = pair_make(p[static_cast<size_t>(s.lo)], p[static_cast<size_t>(s.hi)]);
        const Pair mine = cells[static_cast<size_t>(c)];
        if (img < mine) return false;
        if (mine < img) break;
      }
    }
    return true;
  }
};

template <class Sink>
inline void dfs(PartialTable& pt, int depth, Sink&& sink) {
  if (depth == pt.slot_count()) {
    sink(pt.cells);
    return;
  }
  for (Pair v : pt.domains[static_cast<size_t>(depth)]) {
    size_t m = pt.mark();
    if (pt.place(depth, v)) dfs(pt, depth + 1, sink);
    pt.unplace(depth, m);
  }
}

// Collects the consistent assignments of the first `depth` slots; these are
// the independent subtrees handed to workers.
inline std::vector<std::vector<Pair>> prefixes_at(int n, bool orderly, int depth) {
  PartialTable pt;
  pt.init(n, orderly);
  if (depth > pt.slot_count()) depth = pt.slot_count();
  std::vector<std::vector<Pair>> out;
  if (depth == 0) {
    out.emplace_back();
    return out;
  }

  std::vector<Pair> cur;
  auto rec = [&](auto&& self, int d) -> void {
    if (d == depth) {
      out.push_back(cur);
      return;
    }
    for (Pair v : pt.domains[static_cast<size_t>(d)]) {
      size_t m = pt.mark();
      if (pt.place(d, v)) {
        cur.push_back(v);
        self(self, d + 1);
        cur.pop_back();
      }
      pt.unplace(d, m);
    }
  };
  rec(rec, 0);
  return out;
}

inline std::vector<std::vector<Pair>> solve_prefix(int n, bool orderly,
                                                   const std::vector<Pair>& prefix) {
  PartialTable pt;
  pt.init(n, orderly);
  std::vector<std::vector<Pair>> out;
  bool alive = true;
  for (size_t d = 0; d < prefix.size(); ++d) {
    if (!pt.place(static_cast<int>(d), prefix[d])) {
      alive = false;  // cannot happen for prefixes produced by prefixes_at
      break;
    }
  }
  if (alive)
    dfs(pt, static_cast<int>(prefix.size()), [&](const std::vector<Pair>& cells) { out.push_back(cells); });
  return out;
}

}  // namespace enum_detail

// ---------------------------------------------------------------------------
// Public surface

struct EnumOptions {
  bool raw = false;   // skip orderly pruning and isomorphism dedup: all solutions
  int jobs = 1;       // 0 = hardware concurrency
  int max_order = 6;
};

struct CensusEntry {
  Table table;  // canonical form (raw mode: the solution as found)
  AxiomReport axioms;
  CheckResult<TripleWitness> membership_transfer;
  CheckResult<PairWitness> order2_doubling;
  CheckResult<SandwichWitness> sandwich_identity;
  CommutationCensus pair_census;
  std::vector<std::optional<int>> order_spectrum;  // sorted; nullopt = unbounded
  bool commutative = false;
};

// Runs the full checker battery on a finished table. Used for every emitted
// entry, so the reported flags never depend on the search pruning.
inline CensusEntry make_census_entry(Table table) {
  CensusEntry e{std::move(table), {}, {}, {}, {}, {}, {}, false};
  e.axioms = verify_all(e.table);
  e.membership_transfer = check_membership_transfer(e.table);
  e.order2_doubling = check_order2_doubling(e.table);
  e.sandwich_identity = check_sandwich_identity(e.table);
  e.pair_census = commutation_census(e.table);
  for (Elem x = 0; x < e.table.order(); ++x)
    e.order_spectrum.push_back(order_of(e.table, x).value);
  std::sort(e.order_spectrum.begin(), e.order_spectrum.end(),
            [](const std::optional<int>& a, const std::optional<int>& b) {
              if (a.has_value() != b.has_value()) return a.has_value();  // unbounded last
              return a < b;
            });
  e.commutative = e.axioms.commutative.ok;
  return e;
}

inline std::vector<CensusEntry> enumerate_structures(int n, const EnumOptions& opts = {}) {
  using namespace enum_detail;
  if (n < 1 || n > opts.max_order)
    throw Error("enumerate: order must be in [1, " + std::to_string(opts.max_order) + "]");

  const bool orderly = !opts.raw;
  std::vector<std::vector<Pair>> prefixes = prefixes_at(n, orderly, 2);

  int jobs = opts.jobs;
  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  if (jobs > static_cast<int>(prefixes.size())) jobs = static_cast<int>(prefixes.size());

  // Workers pull prefix indices from a shared counter; results are stored per
  // prefix and merged in prefix order, so the output does not depend on the
  // worker count or scheduling.
  std::vector<std::vector<std::vector<Pair>>> per_prefix(prefixes.size());
  if (jobs <= 1) {
    for (size_t i = 0; i < prefixes.size(); ++i) per_prefix[i] = solve_prefix(n, orderly, prefixes[i]);
  } else {
    std::atomic<size_t> next{0};
    auto work = [&]() {
      for (size_t i; (i = next.fetch_add(1)) < prefixes.size();)
        per_prefix[i] = solve_prefix(n, orderly, prefixes[i]);
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < jobs; ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
  }

  std::vector<Table> tables;
  for (const auto& bucket : per_prefix)
    for (const auto& cells : bucket) {
      Table t(n);
      for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) t.set_cell(x, y, cells[static_cast<size_t>(x) * n + y]);
      tables.push_back(std::move(t));
    }

  if (!opts.raw) {
    // Orderly generation already leaves exactly the canonical representative
    // of each class; canonicalize + dedup anyway as a safety net independent
    // of the pruning logic.
    for (auto& t : tables) t = canonical_form(t);
  }
  std::sort(tables.begin(), tables.end(),
            [](const Table& a, const Table& b) { return a.raw_cells() < b.raw_cells(); });
  if (!opts.raw)
    tables.erase(std::unique(tables.begin(), tables.end(),
                             [](const Table& a, const Table& b) { return a.raw_cells() == b.raw_cells(); }),
                 tables.end());

  std::vector<CensusEntry> entries;
  entries.reserve(tables.size());
  for (auto& t : tables) entries.push_back(make_census_entry(std::move(t)));
  return entries;
}

}  // namespace tvg
