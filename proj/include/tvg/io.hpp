#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "tvg/core.hpp"

// Text formats:
//
//   2vg 1                    grp 1
//   order <n>                order <n>
//   names <t0> ... <tn-1>    names ...          (optional line)
//   <i> <j> : <k> <l>        <i> <j> : <k>      (n^2 data lines, any order)
//
// '#' starts a comment to end of line, blank lines are ignored, data lines
// may appear in any order. Serialization is canonical: LF endings, single
// spaces, data lines in row-major order, so serialize(parse(s)) is a fixed
// point after one round trip.

namespace tvg {

struct ParseError : Error {
  int line;  // 1-based
  int col;   // 1-based
  ParseError(int line_, int col_, const std::string& msg)
      : Error("line " + std::to_string(line_) + ", col " + std::to_string(col_) + ": " + msg),
        line(line_),
        col(col_) {}
};

// Parse succeeded structurally but the cells do not define a group.
// The message carries a concrete witness (a repeated row value, a
// non-associative triple, ...).
struct NotAGroupError : Error {
  using Error::Error;
};

// Single-valued Cayley table of an ordinary finite group, identity at 0.
struct GroupTable {
  int n = 0;
  std::vector<Elem> cells;  // row-major, cells[x*n + y] = x.y
  std::vector<std::string> names;

  Elem at(Elem x, Elem y) const { return cells[static_cast<size_t>(x) * n + y]; }

  friend bool operator==(const GroupTable&, const GroupTable&) = default;
};

namespace io_detail {

inline constexpr int max_table_order = 1024;
inline constexpr int max_group_order = 256;  // keeps the O(n^3) validation scan sane

struct Tok {
  std::string_view s;
  int col;  // 1-based
};

inline bool is_ws(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

// Splits text into significant lines of tokens; comments and blanks skipped.
struct LineReader {
  explicit LineReader(std::string_view t) : text(t) {}

  std::string_view text;
  size_t pos = 0;
  int lineno = 0;  // line of the tokens most recently returned

  bool next(std::vector<Tok>& out) {
    out.clear();
    while (pos <= text.size()) {
      if (pos == text.size() && lineno_scan_done_) return false;
      size_t eol = text.find('\n', pos);
      bool final_segment = false;
      if (eol == std::string_view::npos) {
        eol = text.size();
        lineno_scan_done_ = true;
        final_segment = true;
      }
      std::string_view line = text.substr(pos, eol - pos);
      // The empty tail after the last newline is not a line of its own.
      if (!(final_segment && line.empty())) ++lines_consumed_;
      int this_line = lines_consumed_;
      pos = eol + 1;

      size_t hash = line.find('#');
      if (hash != std::string_view::npos) line = line.substr(0, hash);

      size_t i = 0;
      while (i < line.size()) {
        while (i < line.size() && is_ws(line[i])) ++i;
        size_t start = i;
        while (i < line.size() && !is_ws(line[i])) ++i;
        if (i > start) out.push_back(Tok{line.substr(start, i - start), static_cast<int>(start) + 1});
      }
      if (!out.empty()) {
        lineno = this_line;
        return true;
      }
      if (pos > text.size()) return false;
    }
    return false;
  }

  // Line number to report for end-of-input errors.
  int end_line() const { return lines_consumed_ + 1; }

 private:
  int lines_consumed_ = 0;
  bool lineno_scan_done_ = false;
};

inline int parse_int(const Tok& t, int lineno, const std::string& what) {
  int v = 0;
  const char* first = t.s.data();
  const char* last = t.s.data() + t.s.size();
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || p != last)
    throw ParseError(lineno, t.col, "expected " + what + ", got '" + std::string(t.s) + "'");
  return v;
}

inline int parse_index(const Tok& t, int lineno, int n, const std::string& what) {
  int v = parse_int(t, lineno, what);
  if (v < 0 || v >= n)
    throw ParseError(lineno, t.col,
                     what + " " + std::to_string(v) + " out of range [0, " + std::to_string(n) + ")");
  return v;
}

// Common header handling: magic line, order line, optional names line.
// Returns n; if a names line was present, fills `names`. On return `toks`
// holds the first data line (or is empty at end of input).
inline int parse_header(LineReader& rd, std::vector<Tok>& toks, const char* magic,
                        std::vector<std::string>& names, bool& have_data) {
  if (!rd.next(toks))
    throw ParseError(rd.end_line(), 1, std::string("empty input, expected '") + magic + " 1'");
  if (toks.size() != 2 || toks[0].s != magic || toks[1].s != "1")
    throw ParseError(rd.lineno, toks[0].col, std::string("expected header '") + magic + " 1'");

  if (!rd.next(toks)) throw ParseError(rd.end_line(), 1, "expected 'order <n>'");
  if (toks.size() != 2 || toks[0].s != "order")
    throw ParseError(rd.lineno, toks[0].col, "expected 'order <n>'");
  int n = parse_int(toks[1], rd.lineno, "order");
  if (n < 1) throw ParseError(rd.lineno, toks[1].col, "order must be >= 1");
  if (n > max_table_order)
    throw ParseError(rd.lineno, toks[1].col, "order too large (max " + std::to_string(max_table_order) + ")");

  have_data = rd.next(toks);
  if (have_data && toks[0].s == "names") {
    if (static_cast<int>(toks.size()) != n + 1)
      throw ParseError(rd.lineno, toks[0].col,
                       "names line must carry exactly " + std::to_string(n) + " tokens");
    names.clear();
    for (int i = 1; i <= n; ++i) names.emplace_back(toks[static_cast<size_t>(i)].s);
    for (size_t i = 0; i < names.size(); ++i)
      for (size_t j = i + 1; j < names.size(); ++j)
        if (names[i] == names[j])
          throw ParseError(rd.lineno, toks[i + 1].col, "duplicate name '" + names[i] + "'");
    have_data = rd.next(toks);
  }
  return n;
}

}  // namespace io_detail

// ---------------------------------------------------------------------------
// 2vg format

inline Table parse_table(std::string_view text) {
  using namespace io_detail;
  LineReader rd{text};
  std::vector<Tok> toks;
  std::vector<std::string> names;
  bool have_data = false;
  int n = parse_header(rd, toks, "2vg", names, have_data);

  const size_t total = static_cast<size_t>(n) * n;
  std::vector<Pair> cells(total);
  std::vector<int> seen_line(total, 0);
  size_t filled = 0;

  while (have_data) {
    if (toks.size() != 5 || toks[2].s != ":")
      throw ParseError(rd.lineno, toks[0].col, "expected data line '<i> <j> : <k> <l>'");
    int i = parse_index(toks[0], rd.lineno, n, "row index");
    int j = parse_index(toks[1], rd.lineno, n, "column index");
    int k = parse_index(toks[3], rd.lineno, n, "pair value");
    int l = parse_index(toks[4], rd.lineno, n, "pair value");
    if (k > l)
      throw ParseError(rd.lineno, toks[3].col,
                       "pair must be normalized (k <= l): got " + std::to_string(k) + " " + std::to_string(l));
    size_t idx = static_cast<size_t>(i) * n + j;
    if (seen_line[idx])
      throw ParseError(rd.lineno, toks[0].col,
                       "duplicate cell " + std::to_string(i) + " " + std::to_string(j) +
                           " (first defined on line " + std::to_string(seen_line[idx]) + ")");
    seen_line[idx] = rd.lineno;
    cells[idx] = Pair{k, l};
    ++filled;
    have_data = rd.next(toks);
  }

  if (filled != total)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!seen_line[static_cast<size_t>(i) * n + j])
          throw ParseError(rd.end_line(), 1,
                           "missing cell " + std::to_string(i) + " " + std::to_string(j));

  // The identity row and column are forced by x*e = e*x = [x,x]; a file
  // violating that is rejected here, before any axiom checking.
  for (int x = 0; x < n; ++x) {
    size_t row = static_cast<size_t>(x) * n, col = static_cast<size_t>(x);
    if (cells[row] != Pair{x, x})
      throw ParseError(seen_line[row], 1,
                       "identity cell " + std::to_string(x) + " 0 must be '" + std::to_string(x) +
                           " " + std::to_string(x) + "' (x*e = e*x = [x,x])");
    if (cells[col] != Pair{x, x})
      throw ParseError(seen_line[col], 1,
                       "identity cell 0 " + std::to_string(x) + " must be '" + std::to_string(x) +
                           " " + std::to_string(x) + "' (x*e = e*x = [x,x])");
  }

  Table t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t.set_cell(i, j, cells[static_cast<size_t>(i) * n + j]);
  if (!names.empty()) t.set_names(std::move(names));
  return t;
}

inline std::string serialize_table(const Table& t) {
  const int n = t.order();
  std::string out = "2vg 1\norder " + std::to_string(n) + "\n";
  if (t.has_names()) {
    out += "names";
    for (const auto& s : t.names()) {
      out += ' ';
      out += s;
    }
    out += '\n';
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Pair p = t.cell(i, j);
      out += std::to_string(i) + " " + std::to_string(j) + " : " + std::to_string(p.lo) + " " +
             std::to_string(p.hi) + "\n";
    }
  return out;
}

// ---------------------------------------------------------------------------
// grp format

inline GroupTable parse_group(std::string_view text) {
  using namespace io_detail;
  LineReader rd{text};
  std::vector<Tok> toks;
  std::vector<std::string> names;
  bool have_data = false;
  int n = parse_header(rd, toks, "grp", names, have_data);
  if (n > max_group_order)
    throw ParseError(rd.lineno, 1, "group order too large (max " + std::to_string(max_group_order) + ")");

  const size_t total = static_cast<size_t>(n) * n;
  std::vector<Elem> cells(total, 0);
  std::vector<int> seen_line(total, 0);
  size_t filled = 0;

  while (have_data) {
    if (toks.size() != 4 || toks[2].s != ":")
      throw ParseError(rd.lineno, toks[0].col, "expected data line '<i> <j> : <k>'");
    int i = parse_index(toks[0], rd.lineno, n, "row index");
    int j = parse_index(toks[1], rd.lineno, n, "column index");
    int k = parse_index(toks[3], rd.lineno, n, "product");
    size_t idx = static_cast<size_t>(i) * n + j;
    if (seen_line[idx])
      throw ParseError(rd.lineno, toks[0].col,
                       "duplicate cell " + std::to_string(i) + " " + std::to_string(j) +
                           " (first defined on line " + std::to_string(seen_line[idx]) + ")");
    seen_line[idx] = rd.lineno;
    cells[idx] = k;
    ++filled;
    have_data = rd.next(toks);
  }

  if (filled != total)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!seen_line[static_cast<size_t>(i) * n + j])
          throw ParseError(rd.end_line(), 1,
                           "missing cell " + std::to_string(i) + " " + std::to_string(j));

  GroupTable g{n, std::move(cells), std::move(names)};

  // Group validation: identity at 0, Latin rows/columns, associativity.
  for (int x = 0; x < n; ++x) {
    if (g.at(0, x) != x)
      throw NotAGroupError("identity fails: 0 . " + std::to_string(x) + " = " +
                           std::to_string(g.at(0, x)));
    if (g.at(x, 0) != x)
      throw NotAGroupError("identity fails: " + std::to_string(x) + " . 0 = " +
                           std::to_string(g.at(x, 0)));
  }
  std::vector<int> seen(static_cast<size_t>(n));
  for (int x = 0; x < n; ++x) {
    std::fill(seen.begin(), seen.end(), -1);
    for (int y = 0; y < n; ++y) {
      Elem v = g.at(x, y);
      if (seen[static_cast<size_t>(v)] >= 0)
        throw NotAGroupError("row " + std::to_string(x) + " repeats value " + std::to_string(v) +
                             " (columns " + std::to_string(seen[static_cast<size_t>(v)]) + " and " +
                             std::to_string(y) + "): some element has no inverse");
      seen[static_cast<size_t>(v)] = y;
    }
  }
  for (int y = 0; y < n; ++y) {
    std::fill(seen.begin(), seen.end(), -1);
    for (int x = 0; x < n; ++x) {
      Elem v = g.at(x, y);
      if (seen[static_cast<size_t>(v)] >= 0)
        throw NotAGroupError("column " + std::to_string(y) + " repeats value " + std::to_string(v) +
                             " (rows " + std::to_string(seen[static_cast<size_t>(v)]) + " and " +
                             std::to_string(x) + "): some element has no inverse");
      seen[static_cast<size_t>(v)] = x;
    }
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (g.at(g.at(x, y), z) != g.at(x, g.at(y, z)))
          throw NotAGroupError("associativity fails at (" + std::to_string(x) + ", " +
                               std::to_string(y) + ", " + std::to_string(z) + "): (x.y).z = " +
                               std::to_string(g.at(g.at(x, y), z)) + " but x.(y.z) = " +
                               std::to_string(g.at(x, g.at(y, z))));
  return g;
}

}  // namespace tvg
