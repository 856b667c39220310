#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "tvg/census_json.hpp"
#include "tvg/construct.hpp"
#include "tvg/enumerate.hpp"
#include "tvg/io.hpp"

// Integration tests driving the installed binary. The binary location and
// the fixture directory come from the build (TVG_CLI_PATH / TVG_DATA_DIR),
// overridable through the TVG_CLI / TVG_DATA environment variables.

namespace fs = std::filesystem;
using namespace tvg;

namespace {

std::string cli_path() {
  if (const char* env = std::getenv("TVG_CLI")) return env;
  return TVG_CLI_PATH;
}

std::string data_dir() {
  if (const char* env = std::getenv("TVG_DATA")) return env;
  return TVG_DATA_DIR;
}

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_raw(const std::string& cmd) {
  RunResult r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

// stdout only
RunResult run(const std::string& args) { return run_raw(cli_path() + " " + args + " 2>/dev/null"); }
// stdout + stderr interleaved
RunResult run_merged(const std::string& args) { return run_raw(cli_path() + " " + args + " 2>&1"); }

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("tvg_cli_test_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
  fs::path file(const std::string& name, const std::string& content) const {
    fs::path p = path / name;
    std::ofstream(p, std::ios::binary) << content;
    return p;
  }
};

}  // namespace

TEST_CASE("cli verify reports a clean table and exits zero") {
  TempDir tmp;
  fs::path f = tmp.file("m5.2vg", serialize_table(abelian_coset({{5}})));

  RunResult r = run("verify " + f.string());
  CHECK(r.code == 0);
  CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("verdict: valid involutive two-valued group"));
  CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("pair census: equal=9 triple_overlap=0"));

  RunResult j = run("verify --json " + f.string());
  CHECK(j.code == 0);
  auto parsed = nlohmann::json::parse(j.out);
  CHECK(parsed["order"] == 3);
  CHECK(parsed["is_involutive_2vg"] == true);
  CHECK(parsed["commutative"] == true);
  CHECK(parsed["membership_transfer"] == true);
  CHECK(parsed["pair_census"]["equal"] == 9);
}

TEST_CASE("cli verify prints a witness and exits one on a broken table") {
  TempDir tmp;
  Table t = group_coset_attempt(parse_group([] {
    std::ifstream in(fs::path(data_dir()) / "s3.grp", std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }()));
  fs::path f = tmp.file("s3_attempt.2vg", serialize_table(t));

  RunResult r = run("verify " + f.string());
  CHECK(r.code == 1);
  CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("associativity: FAIL"));
  CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("not an involutive two-valued group"));
}

TEST_CASE("cli verify exits two on unreadable or malformed input") {
  TempDir tmp;
  fs::path junk = tmp.file("junk.2vg", "this is not a table\n");
  CHECK(run_merged("verify " + junk.string()).code == 2);
  CHECK(run_merged("verify " + (tmp.path / "missing.2vg").string()).code == 2);
}

TEST_CASE("cli powers prints the sequence and the order") {
  TempDir tmp;
  fs::path f3 = tmp.file("m3.2vg", serialize_table(abelian_coset({{3}})));
  fs::path f2 = tmp.file("m2.2vg", serialize_table(abelian_coset({{2}})));

  CHECK(run("powers " + f3.string() + " 1").out == "e 1 1 e, ord = 3\n");
  CHECK(run("powers " + f3.string() + " 0").out == "e e, ord = 1\n");
  CHECK(run("powers " + f2.string() + " 1 --horizon 5").out == "e 1 e 1 e 1, ord = 2\n");

  Table named = abelian_coset({{3}});
  named.set_names({"e", "x"});
  fs::path fn = tmp.file("named.2vg", serialize_table(named));
  CHECK(run("powers " + fn.string() + " x").out == "e x x e, ord = 3\n");

  RunResult j = run("powers --json " + f3.string() + " 1");
  CHECK(j.code == 0);
  auto parsed = nlohmann::json::parse(j.out);
  CHECK(parsed["element"] == 1);
  CHECK(parsed["terms"] == nlohmann::json::array({0, 1, 1, 0}));
  CHECK(parsed["order"] == 3);
}

TEST_CASE("cli powers exits two for unknown elements") {
  TempDir tmp;
  fs::path f = tmp.file("m3.2vg", serialize_table(abelian_coset({{3}})));
  CHECK(run_merged("powers " + f.string() + " 7").code == 2);
  CHECK(run_merged("powers " + f.string() + " zz").code == 2);
}

TEST_CASE("cli construct writes coset tables") {
  TempDir tmp;

  SECTION("factors to stdout") {
    RunResult r = run("construct --factors 5");
    CHECK(r.code == 0);
    CHECK(parse_table(r.out) == abelian_coset({{5}}));
  }
  SECTION("factors to a file") {
    fs::path out = tmp.path / "m12.2vg";
    RunResult r = run("construct --factors 2,6 -o " + out.string());
    CHECK(r.code == 0);
    CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("wrote"));
    std::ifstream in(out, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    CHECK(parse_table(ss.str()) == abelian_coset({{2, 6}}));
  }
  SECTION("group file input") {
    RunResult r = run("construct --group " + (fs::path(data_dir()) / "z4.grp").string());
    CHECK(r.code == 0);
    CHECK(parse_table(r.out) == abelian_coset({{4}}));
  }
  SECTION("nonassociative attempt still writes, summarizes, exits one") {
    fs::path out = tmp.path / "s3.2vg";
    RunResult r = run_merged("construct --group " + (fs::path(data_dir()) / "s3.grp").string() +
                             " -o " + out.string());
    CHECK(r.code == 1);
    CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("associativity: FAIL"));
    CHECK(fs::exists(out));
  }
  SECTION("flag validation") {
    CHECK(run_merged("construct").code == 2);
    CHECK(run_merged("construct --factors 2 --group x.grp").code == 2);
    CHECK(run_merged("construct --factors 0").code == 2);
    CHECK(run_merged("construct --group " + (tmp.path / "nope.grp").string()).code == 2);
  }
}

TEST_CASE("cli enumerate counts, lists, and emits files") {
  TempDir tmp;

  CHECK(run("enumerate -n 1 --count-only").out == "1\n");
  CHECK(run("enumerate -n 2 --count-only").out == "2\n");

  RunResult r = run("enumerate -n 3");
  CHECK(r.code == 0);
  CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("order 3: 2 structures up to isomorphism"));
  CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("theorem holds for all 2 structures of order 3"));

  RunResult j = run("enumerate -n 3 --json");
  CHECK(j.code == 0);
  size_t lines = 0, start = 0, end;
  while ((end = j.out.find('\n', start)) != std::string::npos) {
    auto parsed = nlohmann::json::parse(j.out.substr(start, end - start));
    CHECK(parsed["commutative"] == true);
    CHECK(parsed["order"] == 3);
    ++lines;
    start = end + 1;
  }
  CHECK(lines == 2);

  RunResult files = run("enumerate -n 3 --out-dir " + (tmp.path / "census").string());
  CHECK(files.code == 0);
  size_t written = 0;
  for (const auto& entry : fs::directory_iterator(tmp.path / "census")) {
    ++written;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    Table t = parse_table(ss.str());
    CHECK(serialize_table(t) == ss.str());
    CHECK(table_filename(t) == entry.path().filename().string());
  }
  CHECK(written == 2);
}

TEST_CASE("cli enumerate output does not depend on the worker count") {
  RunResult a = run("enumerate -n 4 --json --jobs 1");
  RunResult b = run("enumerate -n 4 --json --jobs 4");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK_FALSE(a.out.empty());
}

TEST_CASE("cli enumerate rejects bad orders") {
  CHECK(run_merged("enumerate -n 0").code == 2);
  CHECK(run_merged("enumerate -n 99").code == 2);
  CHECK(run_merged("enumerate").code == 2);
}

TEST_CASE("cli census classifies commuting pairs") {
  TempDir tmp;
  fs::path f = tmp.file("m5.2vg", serialize_table(abelian_coset({{5}})));

  RunResult r = run("census " + f.string());
  CHECK(r.code == 0);
  CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring(
                        "pair census over 9 ordered pairs: equal=9 triple_overlap=0"));

  RunResult j = run("census --json " + f.string());
  CHECK(j.code == 0);
  auto parsed = nlohmann::json::parse(j.out);
  CHECK(parsed["pair_census"]["equal"] == 9);
  CHECK(parsed["all_equal"] == true);
}

TEST_CASE("cli census refuses invalid tables with an explanation") {
  TempDir tmp;
  Table t = Table::with_identity(3);
  t.set_cell(1, 1, Pair{1, 1});  // identity missing on the diagonal
  t.set_cell(1, 2, Pair{1, 2});
  t.set_cell(2, 1, Pair{1, 2});
  t.set_cell(2, 2, Pair{0, 2});
  fs::path f = tmp.file("broken.2vg", serialize_table(t));

  RunResult r = run_merged("census " + f.string());
  CHECK(r.code == 1);
  CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("involutivity: FAIL"));
  CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("census requires a valid"));
}

TEST_CASE("cli top-level flag handling") {
  CHECK(run_merged("").code == 2);             // subcommand required
  CHECK(run_merged("frobnicate").code == 2);   // unknown subcommand
  CHECK(run("--help").code == 0);
  CHECK(run("verify --help").code == 0);
}
