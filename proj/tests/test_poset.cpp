#include <doctest.h>

#include "hscale/poset.hpp"

using namespace hscale;

TEST_SUITE("poset") {

TEST_CASE("chain closure infers transitive relations") {
  const auto p = IndexPoset::build({"0", "1", "2"}, {{"0", "1"}, {"1", "2"}});
  CHECK(p.leq("0", "2"));
  CHECK(p.leq("0", "0"));
  CHECK_FALSE(p.leq("2", "0"));
  CHECK(p.is_directed());
  CHECK(p.greatest() == "2");
  CHECK(p.minimum().has_value());
}

TEST_CASE("diamond-top poset is directed") {
  const auto p = IndexPoset::build({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}});
  CHECK(p.is_directed());
  CHECK(p.upper_bound("a", "b") == "c");
  CHECK_FALSE(p.minimum().has_value());
  CHECK(p.minimal_elements() == std::vector<Label>{"a", "b"});
}

TEST_CASE("cycles are rejected") {
  CHECK_THROWS_AS(IndexPoset::build({"a", "b"}, {{"a", "b"}, {"b", "a"}}), CycleError);
}

TEST_CASE("unknown labels and duplicates are rejected") {
  CHECK_THROWS_AS(IndexPoset::build({"a"}, {{"a", "z"}}), UnknownLabel);
  CHECK_THROWS_AS(IndexPoset::build({"a", "a"}, {}), UnknownLabel);
}

TEST_CASE("directedness witness is the first unbounded pair") {
  const auto p = IndexPoset::build({"a", "b"}, {});
  const auto w = p.directedness_witness();
  REQUIRE(w.has_value());
  CHECK(w->first == "a");
  CHECK(w->second == "b");
}

TEST_CASE("upper_bound on a chain and on identical arguments") {
  const auto p = IndexPoset::build({"0", "1", "2"}, {{"0", "1"}, {"1", "2"}});
  CHECK(p.upper_bound("0", "2") == "2");
  CHECK(p.upper_bound("1", "1") == "1");
  CHECK_THROWS_AS(IndexPoset::build({"a", "b"}, {}).upper_bound("a", "b"), NotDirected);
}

TEST_CASE("upper_bound tie-break follows element-list order") {
  // Two incomparable minimal upper bounds c and d; c listed first.
  const auto p = IndexPoset::build({"a", "b", "c", "d"},
                                   {{"a", "c"}, {"b", "c"}, {"a", "d"}, {"b", "d"}});
  CHECK(p.upper_bound("a", "b") == "c");
}

TEST_CASE("upper bounds dominate both arguments") {
  const auto p = IndexPoset::build({"x", "y", "z", "t"},
                                   {{"x", "z"}, {"y", "z"}, {"z", "t"}});
  for (const auto& a : p.elements()) {
    for (const auto& b : p.elements()) {
      const Label u = p.upper_bound(a, b);
      CHECK(p.leq(a, u));
      CHECK(p.leq(b, u));
      CHECK(p.upper_bound(b, a) == u);  // symmetric
    }
  }
}

TEST_CASE("closure is idempotent") {
  const auto p = IndexPoset::build({"0", "1", "2"}, {{"0", "1"}, {"1", "2"}});
  // Rebuild from the closed relation; the order must not change.
  std::vector<std::pair<Label, Label>> closed;
  for (const auto& [a, b] : p.comparable_pairs()) closed.emplace_back(a, b);
  const auto q = IndexPoset::build({"0", "1", "2"}, closed);
  for (const auto& a : p.elements())
    for (const auto& b : p.elements()) CHECK(p.leq(a, b) == q.leq(a, b));
}

TEST_CASE("hasse edges drop transitive shortcuts") {
  const auto p = IndexPoset::build({"0", "1", "2"}, {{"0", "1"}, {"1", "2"}, {"0", "2"}});
  const auto edges = p.hasse_edges();
  CHECK(edges.size() == 2);
}

}  // TEST_SUITE
