#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tvg/axioms.hpp"
#include "tvg/census_json.hpp"
#include "tvg/construct.hpp"
#include "tvg/enumerate.hpp"
#include "tvg/identities.hpp"
#include "tvg/io.hpp"
#include "tvg/powers.hpp"

// Exit codes: 0 all checks pass, 1 a verification failed (witness printed),
// 2 input/parse error, 3 internal invariant breach.

namespace {

constexpr int exit_check_failed = 1;
constexpr int exit_input_error = 2;
constexpr int exit_internal = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tvg::Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw tvg::Error("cannot open " + path + " for writing");
  out << data;
  out.flush();
  if (!out) throw tvg::Error("write failed: " + path);
}

std::string label(const tvg::Table& t, tvg::Elem x) { return tvg::element_label(t, x); }

std::string pair_str(const tvg::Table& t, tvg::Pair p) {
  return "[" + label(t, p.lo) + ", " + label(t, p.hi) + "]";
}

std::string mset_str(const tvg::Table& t, const tvg::Multiset& m) {
  std::string out = "[";
  bool first = true;
  for (tvg::Elem x : m.expanded()) {
    if (!first) out += ", ";
    out += label(t, x);
    first = false;
  }
  return out + "]";
}

std::string census_counts(const tvg::CommutationCensus& c) {
  return "equal=" + std::to_string(c.equal) + " triple_overlap=" + std::to_string(c.triple_overlap) +
         " shared_involution=" + std::to_string(c.shared_involution) +
         " other=" + std::to_string(c.other);
}

void print_axioms_human(std::ostream& os, const tvg::Table& t, const tvg::AxiomReport& r) {
  os << "order " << t.order() << "\n";
  if (r.associative.ok) {
    os << "associativity: ok\n";
  } else {
    const auto& w = *r.associative.witness;
    os << "associativity: FAIL at x=" << label(t, w.x) << " y=" << label(t, w.y)
       << " z=" << label(t, w.z) << ": (x*y)*z = " << mset_str(t, w.lhs)
       << " but x*(y*z) = " << mset_str(t, w.rhs) << "\n";
  }
  if (r.strong_identity.ok) {
    os << "strong identity: ok\n";
  } else {
    tvg::Elem x = *r.strong_identity.witness;
    os << "strong identity: FAIL at x=" << label(t, x) << ": x*e = " << pair_str(t, t.cell(x, 0))
       << ", e*x = " << pair_str(t, t.cell(0, x)) << ", expected [" << label(t, x) << ", "
       << label(t, x) << "]\n";
  }
  if (r.involutive.ok) {
    os << "involutivity: ok\n";
  } else {
    const auto& w = *r.involutive.witness;
    os << "involutivity: FAIL at x=" << label(t, w.x) << " y=" << label(t, w.y)
       << ": x*y = " << pair_str(t, t.cell(w.x, w.y)) << " but e ∈ x*y must hold iff x = y\n";
  }
  if (r.commutative.ok) {
    os << "commutativity: ok\n";
  } else {
    const auto& w = *r.commutative.witness;
    os << "commutativity: FAIL at x=" << label(t, w.x) << " y=" << label(t, w.y)
       << ": x*y = " << pair_str(t, t.cell(w.x, w.y)) << " but y*x = "
       << pair_str(t, t.cell(w.y, w.x)) << "\n";
  }
  os << "verdict: "
     << (r.is_involutive_2vg ? "valid involutive two-valued group"
                             : "not an involutive two-valued group")
     << "\n";
}

int run_verify(const std::string& path, bool json_out) {
  tvg::Table t = tvg::parse_table(read_file(path));
  tvg::AxiomReport r = tvg::verify_all(t);

  tvg::json j;
  if (json_out) {
    j["order"] = t.order();
    j.update(tvg::axiom_report_json(r));
  } else {
    print_axioms_human(std::cout, t, r);
  }

  if (r.is_involutive_2vg) {
    auto mt = tvg::check_membership_transfer(t);
    auto od = tvg::check_order2_doubling(t);
    auto si = tvg::check_sandwich_identity(t);
    auto pc = tvg::commutation_census(t);
    if (json_out) {
      j["membership_transfer"] = mt.ok;
      if (!mt.ok)
        j["membership_transfer_witness"] = {
            {"x", mt.witness->x}, {"y", mt.witness->y}, {"z", mt.witness->z}};
      j["order2_doubling"] = od.ok;
      if (!od.ok) j["order2_doubling_witness"] = {{"x", od.witness->x}, {"y", od.witness->y}};
      j["sandwich_identity"] = si.ok;
      if (!si.ok) j["sandwich_identity_witness"] = {{"x", si.witness->x}, {"y", si.witness->y}};
      j["pair_census"] = tvg::census_json(pc);
    } else {
      if (mt.ok)
        std::cout << "membership transfer: ok\n";
      else
        std::cout << "membership transfer: FAIL at x=" << label(t, mt.witness->x)
                  << " y=" << label(t, mt.witness->y) << " z=" << label(t, mt.witness->z) << "\n";
      if (od.ok)
        std::cout << "order-2 doubling: ok\n";
      else
        std::cout << "order-2 doubling: FAIL at x=" << label(t, od.witness->x)
                  << " y=" << label(t, od.witness->y) << "\n";
      if (si.ok)
        std::cout << "sandwich identity: ok\n";
      else
        std::cout << "sandwich identity: FAIL at x=" << label(t, si.witness->x)
                  << " y=" << label(t, si.witness->y) << "\n";
      std::cout << "pair census: " << census_counts(pc) << "\n";
    }
  }

  if (json_out) std::cout << j.dump() << "\n";
  return r.is_involutive_2vg ? 0 : exit_check_failed;
}

tvg::Elem resolve_element(const tvg::Table& t, const std::string& s) {
  if (t.has_names()) {
    for (int i = 0; i < t.order(); ++i)
      if (t.names()[static_cast<size_t>(i)] == s) return i;
  } else if (s == "e") {
    return tvg::identity;
  }
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec == std::errc{} && p == s.data() + s.size() && v >= 0 && v < t.order()) return v;
  throw tvg::Error("unknown element '" + s + "'");
}

int run_powers(const std::string& path, const std::string& elem_str, int horizon, bool json_out) {
  tvg::Table t = tvg::parse_table(read_file(path));
  tvg::Elem x = resolve_element(t, elem_str);
  tvg::OrderResult ord = tvg::order_of(t, x);

  const int scan = t.order() * t.order();
  int show = horizon;
  if (show < 0) show = ord.bounded() ? *ord.value : scan;
  tvg::PowerSeq seq = tvg::power_sequence(t, x, show);

  if (json_out) {
    tvg::json j;
    j["element"] = x;
    j["label"] = label(t, x);
    tvg::json terms = tvg::json::array();
    for (tvg::Elem e : seq.terms) terms.push_back(e);
    j["terms"] = terms;
    j["order"] = ord.bounded() ? tvg::json(*ord.value) : tvg::json(nullptr);
    std::cout << j.dump() << "\n";
  } else {
    bool first = true;
    for (tvg::Elem e : seq.terms) {
      if (!first) std::cout << ' ';
      std::cout << label(t, e);
      first = false;
    }
    if (ord.bounded())
      std::cout << ", ord = " << *ord.value << "\n";
    else
      std::cout << ", ord = unbounded (no k <= " << scan << " with x^k = e)\n";
  }
  return 0;
}

int run_construct(const std::vector<int>& factors, const std::string& group_path,
                  const std::string& out_path) {
  tvg::Table t = factors.empty()
                     ? tvg::group_coset_attempt(tvg::parse_group(read_file(group_path)))
                     : tvg::abelian_coset({factors});

  std::string text = tvg::serialize_table(t);
  std::ostream* summary = &std::cout;
  if (!out_path.empty()) {
    write_file(out_path, text);
    std::cout << "wrote " << out_path << "\n";
  } else {
    std::cout << text;
    summary = &std::cerr;  // keep stdout parseable as a table
  }

  tvg::AxiomReport r = tvg::verify_all(t);
  print_axioms_human(*summary, t, r);
  return r.is_involutive_2vg ? 0 : exit_check_failed;
}

std::string spectrum_str(const std::vector<std::optional<int>>& spectrum) {
  std::string out;
  bool first = true;
  for (const auto& v : spectrum) {
    if (!first) out += ',';
    out += v ? std::to_string(*v) : std::string("unbounded");
    first = false;
  }
  return out;
}

int run_enumerate(int n, bool count_only, bool raw, const std::string& out_dir, int jobs,
                  bool json_out) {
  tvg::EnumOptions opts;
  opts.raw = raw;
  opts.jobs = jobs;
  std::vector<tvg::CensusEntry> entries = tvg::enumerate_structures(n, opts);

  // The search hands out only tables that passed its own pruning; re-verified
  // axioms failing here would mean the enumerator itself is broken.
  for (const auto& e : entries)
    if (!e.axioms.is_involutive_2vg)
      throw std::logic_error("enumerator emitted a table failing the axioms");

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    for (const auto& e : entries)
      write_file((std::filesystem::path(out_dir) / tvg::table_filename(e.table)).string(),
                 tvg::serialize_table(e.table));
  }

  size_t bad = 0;
  const tvg::CensusEntry* first_bad = nullptr;
  for (const auto& e : entries)
    if (!e.commutative) {
      if (!first_bad) first_bad = &e;
      ++bad;
    }

  std::string verdict;
  if (bad == 0) {
    verdict = "theorem holds for all " + std::to_string(entries.size()) +
              " structures of order " + std::to_string(n);
  } else {
    const auto& w = *first_bad->axioms.commutative.witness;
    verdict = "THEOREM VIOLATION: " + std::to_string(bad) + " of " +
              std::to_string(entries.size()) + " structures of order " + std::to_string(n) +
              " are non-commutative; first witness " + tvg::table_filename(first_bad->table) +
              " at x=" + std::to_string(w.x) + " y=" + std::to_string(w.y);
  }

  if (count_only) {
    std::cout << entries.size() << "\n";
    std::cerr << verdict << "\n";
  } else if (json_out) {
    std::cout << tvg::census_jsonl(entries);
    std::cerr << verdict << "\n";
  } else {
    std::cout << "order " << n << ": " << entries.size()
              << (raw ? " solutions (raw)" : " structures up to isomorphism") << "\n";
    for (const auto& e : entries)
      std::cout << "  " << tvg::table_filename(e.table)
                << "  commutative=" << (e.commutative ? "yes" : "no")
                << "  orders=" << spectrum_str(e.order_spectrum) << "\n";
    std::cout << verdict << "\n";
  }
  return bad == 0 ? 0 : exit_check_failed;
}

int run_census(const std::string& path, bool json_out) {
  tvg::Table t = tvg::parse_table(read_file(path));
  tvg::AxiomReport r = tvg::verify_all(t);

  if (!r.is_involutive_2vg) {
    if (json_out) {
      tvg::json j;
      j["order"] = t.order();
      j.update(tvg::axiom_report_json(r));
      j["pair_census"] = nullptr;
      std::cout << j.dump() << "\n";
    } else {
      print_axioms_human(std::cout, t, r);
      std::cout << "census requires a valid involutive two-valued group\n";
    }
    return exit_check_failed;
  }

  tvg::CommutationCensus c = tvg::commutation_census(t);
  if (json_out) {
    tvg::json j;
    j["order"] = t.order();
    j["pair_census"] = tvg::census_json(c);
    j["all_equal"] = c.all_equal();
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "pair census over " << c.total() << " ordered pairs: " << census_counts(c) << "\n";
    auto note = [&](const char* cls, const std::optional<tvg::PairWitness>& w) {
      if (w)
        std::cout << "first " << cls << " at x=" << label(t, w->x) << " y=" << label(t, w->y)
                  << "\n";
    };
    note("triple_overlap", c.first_triple_overlap);
    note("shared_involution", c.first_shared_involution);
    note("other", c.first_other);
  }
  return c.all_equal() ? 0 : exit_check_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite involutive two-valued groups: axioms, powers, cosets, enumeration"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "check the defining properties of a table file");
  std::string verify_file;
  bool verify_json = false;
  verify->add_option("file", verify_file, "table file (2vg format)")->required();
  verify->add_flag("--json", verify_json, "emit one JSON object instead of text");

  auto* powers = app.add_subcommand("powers", "power sequence and order of an element");
  std::string powers_file, powers_elem;
  int powers_horizon = -1;
  bool powers_json = false;
  powers->add_option("file", powers_file, "table file (2vg format)")->required();
  powers->add_option("element", powers_elem, "element index or name")->required();
  powers->add_option("--horizon", powers_horizon,
                     "print terms through x^horizon (default: through x^ord, or the full n^2 scan)");
  powers->add_flag("--json", powers_json, "emit one JSON object instead of text");

  auto* construct = app.add_subcommand("construct", "coset-by-negation table from an abelian spec or a group file");
  std::vector<int> factors;
  std::string group_file, construct_out;
  auto* fopt = construct->add_option("--factors", factors, "cyclic factor moduli, e.g. 4,2")
                   ->delimiter(',');
  auto* gopt = construct->add_option("--group", group_file, "Cayley table file (grp format)");
  fopt->excludes(gopt);
  gopt->excludes(fopt);
  construct->add_option("-o,--out", construct_out, "output file (default: table to stdout)");

  auto* enumerate = app.add_subcommand("enumerate", "all structures of one order, up to isomorphism");
  int enum_n = 0;
  bool enum_count_only = false, enum_raw = false, enum_json = false;
  std::string enum_out_dir;
  int enum_jobs = 0;
  enumerate->add_option("-n,--order", enum_n, "carrier size")->required();
  enumerate->add_flag("--count-only", enum_count_only, "print only the structure count");
  enumerate->add_flag("--raw", enum_raw, "keep every solution; no isomorphism rejection");
  enumerate->add_option("--out-dir", enum_out_dir, "write each structure to DIR/<hash>.2vg");
  enumerate->add_option("--jobs", enum_jobs, "worker threads, 0 = all cores (output is identical either way)");
  enumerate->add_flag("--json", enum_json, "emit the census as JSON Lines");

  auto* census = app.add_subcommand("census", "classify every ordered pair by commutation pattern");
  std::string census_file;
  bool census_json_flag = false;
  census->add_option("file", census_file, "table file (2vg format)")->required();
  census->add_flag("--json", census_json_flag, "emit one JSON object instead of text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_input_error;
  }

  try {
    if (verify->parsed()) return run_verify(verify_file, verify_json);
    if (powers->parsed()) return run_powers(powers_file, powers_elem, powers_horizon, powers_json);
    if (construct->parsed()) {
      if (factors.empty() == group_file.empty()) {
        std::cerr << "construct: exactly one of --factors and --group is required\n";
        return exit_input_error;
      }
      return run_construct(factors, group_file, construct_out);
    }
    if (enumerate->parsed())
      return run_enumerate(enum_n, enum_count_only, enum_raw, enum_out_dir, enum_jobs, enum_json);
    if (census->parsed()) return run_census(census_file, census_json_flag);
  } catch (const tvg::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input_error;
  } catch (const tvg::NotAGroupError& e) {
    std::cerr << "error: not a group: " << e.what() << "\n";
    return exit_input_error;
  } catch (const tvg::IllFormedError& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return exit_check_failed;
  } catch (const tvg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input_error;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return exit_internal;
  }

  std::cerr << "internal error: no subcommand dispatched\n";
  return exit_internal;
}
