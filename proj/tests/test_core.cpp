#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "tvg/core.hpp"

using namespace tvg;

TEST_CASE("pair_make normalizes to lo <= hi") {
  CHECK(pair_make(3, 1) == Pair{1, 3});
  CHECK(pair_make(1, 3) == Pair{1, 3});
  CHECK(pair_make(2, 2) == Pair{2, 2});
  CHECK(pair_make(0, 0).doubled());
  CHECK_FALSE(pair_make(0, 1).doubled());
  CHECK(pair_make(4, 1).contains(4));
  CHECK(pair_make(4, 1).contains(1));
  CHECK_FALSE(pair_make(4, 1).contains(2));
}

TEST_CASE("multiset tracks multiplicities") {
  Multiset m{3, 1, 3};
  CHECK(m.size() == 3);
  CHECK(m.count(3) == 2);
  CHECK(m.count(1) == 1);
  CHECK(m.count(2) == 0);
  CHECK(m.contains(1));
  CHECK_FALSE(m.contains(0));

  m.add(2, 4);
  CHECK(m.size() == 7);
  CHECK(m.count(2) == 4);
  CHECK_THROWS_AS(m.add(5, 0), Error);
  CHECK_THROWS_AS(m.add(5, -2), Error);
}

TEST_CASE("multiset remove_one removes exactly one copy") {
  Multiset m{1, 1, 2};
  REQUIRE(m.remove_one(1));
  CHECK(m.count(1) == 1);
  CHECK(m.size() == 2);
  REQUIRE(m.remove_one(1));
  CHECK(m.count(1) == 0);
  CHECK_FALSE(m.remove_one(1));  // absent: unchanged
  CHECK(m.size() == 1);
  REQUIRE(m.remove_one(2));
  CHECK(m.empty());
}

TEST_CASE("multiset equality is order-free") {
  CHECK(Multiset{1, 2, 1} == Multiset{1, 1, 2});
  CHECK(Multiset{2, 1, 1} == Multiset{1, 2, 1});
  CHECK_FALSE(Multiset{1, 2} == Multiset{1, 2, 2});
  CHECK_FALSE(Multiset{1, 1, 2} == Multiset{1, 2, 2});
  CHECK(Multiset{} == Multiset{});
}

TEST_CASE("multiset union adds multiplicities") {
  Multiset a{0, 1}, b{1, 2};
  Multiset u = a + b;
  CHECK(u == Multiset{0, 1, 1, 2});
  a += b;
  CHECK(a == u);
  CHECK(b == Multiset{1, 2});  // rhs untouched
}

TEST_CASE("multiset expanded lists sorted copies") {
  Multiset m{4, 0, 4, 2};
  CHECK(m.expanded() == std::vector<Elem>{0, 2, 4, 4});
  CHECK(Multiset::of_pair(Pair{3, 3}).expanded() == std::vector<Elem>{3, 3});
  CHECK(to_string(m) == "[0, 2, 4, 4]");
}

TEST_CASE("table with_identity pre-fills row and column 0") {
  Table t = Table::with_identity(4);
  for (Elem x = 0; x < 4; ++x) {
    CHECK(t.cell(x, 0) == Pair{x, x});
    CHECK(t.cell(0, x) == Pair{x, x});
  }
}

TEST_CASE("table rejects invalid construction and cells") {
  CHECK_THROWS_AS(Table(0), Error);
  CHECK_THROWS_AS(Table(-2), Error);

  Table t(3);
  CHECK_THROWS_AS(t.set_cell(3, 0, Pair{0, 0}), Error);
  CHECK_THROWS_AS(t.set_cell(0, -1, Pair{0, 0}), Error);
  CHECK_THROWS_AS(t.set_cell(1, 1, Pair{0, 3}), Error);
  CHECK_THROWS_AS(t.set_cell(1, 1, Pair{-1, 0}), Error);

  t.set_cell(1, 2, Pair{2, 1});  // stored normalized
  CHECK(t.cell(1, 2) == Pair{1, 2});
}

TEST_CASE("table names are validated") {
  Table t(2);
  CHECK_THROWS_AS(t.set_names({"e"}), Error);                // wrong count
  CHECK_THROWS_AS(t.set_names({"e", "e"}), Error);           // duplicate
  CHECK_THROWS_AS(t.set_names({"e", "a b"}), Error);         // whitespace
  CHECK_THROWS_AS(t.set_names({"e", "a#b"}), Error);         // comment char
  CHECK_THROWS_AS(t.set_names({"e", ""}), Error);            // empty
  t.set_names({"e", "x"});
  REQUIRE(t.has_names());
  CHECK(t.names() == std::vector<std::string>{"e", "x"});
  t.clear_names();
  CHECK_FALSE(t.has_names());
}

TEST_CASE("mul range-checks its arguments") {
  Table t = Table::with_identity(2);
  CHECK(mul(t, 1, 0) == Pair{1, 1});
  CHECK_THROWS_AS(mul(t, 2, 0), Error);
  CHECK_THROWS_AS(mul(t, 0, -1), Error);
}

TEST_CASE("mset_product expands every factor pair") {
  Table t = oracle::zmod_coset_table(5);  // cells: (1,1)->[0,2] (1,2)->[1,2] (2,2)->[0,1]

  SECTION("singleton times singleton is the table cell") {
    CHECK(mset_product(t, Multiset{1}, Multiset{1}) == Multiset{0, 2});
  }
  SECTION("size is 2|A||B| with multiplicity") {
    Multiset a{1}, b{1, 2};
    CHECK(mset_product(t, a, b) == Multiset{0, 2, 1, 2});
    CHECK(mset_product(t, a, b).size() == 4);
    Multiset rep{1, 1};
    CHECK(mset_product(t, rep, b).size() == 8);
  }
  SECTION("bilinear over multiset union") {
    Multiset a1{1}, a2{2, 2}, b{1, 2};
    CHECK(mset_product(t, a1 + a2, b) == mset_product(t, a1, b) + mset_product(t, a2, b));
  }
}

TEST_CASE("element_label prefers names") {
  Table t = Table::with_identity(2);
  CHECK(element_label(t, 0) == "e");
  CHECK(element_label(t, 1) == "1");
  t.set_names({"id", "g"});
  CHECK(element_label(t, 0) == "id");
  CHECK(element_label(t, 1) == "g");
}

TEST_CASE("check results carry witnesses only on failure") {
  auto ok = CheckResult<PairWitness>::pass();
  CHECK(ok.ok);
  CHECK(static_cast<bool>(ok));
  CHECK_FALSE(ok.witness.has_value());

  auto bad = CheckResult<PairWitness>::fail({1, 2});
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(static_cast<bool>(bad));
  REQUIRE(bad.witness.has_value());
  CHECK(*bad.witness == PairWitness{1, 2});
}
