#include <doctest.h>

#include <random>
#include <set>

#include "spinecert/error.hpp"
#include "spinecert/format.hpp"
#include "spinecert/reidemeister.hpp"
#include "spinecert/topology.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace spinecert;
namespace fx = spinecert::fixtures;

namespace {

bool has_entry(const ValidationReport& r, const std::string& needle) {
  for (const auto& e : r.entries)
    if (e.find(needle) != std::string::npos) return true;
  return false;
}

int count_by_type(const std::vector<MoveSite>& moves, MoveType t, MoveDirection dir) {
  int n = 0;
  for (const auto& m : moves) n += m.type == t && m.direction == dir;
  return n;
}

}  // namespace

TEST_CASE("crossing slots follow the sign") {
  auto p = make_crossing(1, 10, 11, 20, 21, 1);
  CHECK(p.slots() == std::array<int, 4>{10, 21, 11, 20});
  auto n = make_crossing(2, 10, 11, 20, 21, -1);
  CHECK(n.slots() == std::array<int, 4>{10, 20, 11, 21});

  // a crossing change keeps the rotation and negates the sign
  auto f = p;
  f.flip();
  CHECK(f.sign == -1);
  CHECK(f.under_in == 20);
  auto a = p.slots(), b = f.slots();
  std::set<int> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  CHECK(sa == sb);
  bool rotated = false;
  for (int k = 0; k < 4; ++k) rotated |= (b[k] == a[0] && b[(k + 1) % 4] == a[1] && b[(k + 2) % 4] == a[2]);
  CHECK(rotated);
}

TEST_CASE("fixtures parse and validate") {
  for (auto text : {fx::unknot, fx::trefoil, fx::figure_eight, fx::hopf, fx::split_unlink, fx::whitehead}) {
    Diagram d = parse_link(text);
    CHECK(validate(d).ok());
    CHECK_FALSE(d.is_spine());
  }
  for (auto text : {fx::spine_round, fx::spine_trefoil, fx::spine_standard_2, fx::spine_hopf}) {
    Diagram d = parse_spine(text);
    auto r = validate(d);
    CHECK(r.ok());
    CHECK(r.pieces == 1);
  }
}

TEST_CASE("serialize round-trips") {
  for (auto text : {fx::trefoil, fx::figure_eight, fx::whitehead, fx::spine_trefoil, fx::spine_hopf}) {
    Diagram d = parse_diagram(text);
    std::string s = serialize(d);
    CHECK(serialize(parse_diagram(s)) == s);
    CHECK(parse_diagram(s) == d);
  }
}

TEST_CASE("serialize round-trips after random moves") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    Diagram d = trial % 2 ? testing::random_spine(rng, 10) : testing::random_walk(parse_link(fx::whitehead), rng, 20, 12);
    std::string s = serialize(d);
    CHECK(serialize(parse_diagram(s)) == s);
  }
}

TEST_CASE("validator: Euler characteristic of the trefoil") {
  auto r = validate(parse_link(fx::trefoil));
  CHECK(r.vertices == 3);
  CHECK(r.edges == 6);
  CHECK(r.faces == 5);
  CHECK(r.vertices - r.edges + r.faces == 2);
}

TEST_CASE("validator: an edge used three times") {
  Diagram d = parse_diagram(fx::triple_edge);
  auto r = validate(d);
  REQUIRE_FALSE(r.ok());
  CHECK(has_entry(r, "edge 5 is used 3 times"));
  CHECK(has_entry(r, "edge 2 is used 1 times"));
  CHECK_THROWS_AS(parse_link(fx::triple_edge), DiagramError);
}

TEST_CASE("validator: virtualized crossing is nonplanar") {
  Diagram d = parse_link(fx::trefoil);
  // same passes, opposite rotation
  d.crossings[0] = make_crossing(d.crossings[0].id, d.crossings[0].under_in, d.crossings[0].under_out,
                                 d.crossings[0].over_in, d.crossings[0].over_out, -d.crossings[0].sign);
  auto r = validate(d);
  CHECK_FALSE(r.ok());
  CHECK(has_entry(r, "nonplanar"));
}

TEST_CASE("validator: spine faults") {
  Diagram d = parse_spine(fx::spine_standard_2);
  SUBCASE("wedge repeats an arc") {
    d.wedge = {1, 1};
    CHECK(has_entry(validate(d), "arc 1 meets the wedge 2 times"));
  }
  SUBCASE("missing arc") {
    d.arcs.pop_back();
    CHECK(has_entry(validate(d), "expected 2 arcs, found 1"));
  }
  SUBCASE("edge in two strands") {
    d.arcs[1].edges = {1};
    CHECK_FALSE(validate(d).ok());
  }
}

TEST_CASE("parser reports line and column") {
  auto expect_at = [](std::string_view text, int line, int col) {
    try {
      parse_diagram(text);
      FAIL("no error for: " << text);
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
      CHECK(e.column() == col);
    }
  };
  expect_at("", 1, 1);
  expect_at("knot n=1\n", 1, 1);
  expect_at("link n=1\nloop 1: 1 x\n", 2, 11);
  expect_at("link n=1\nloop 1: 1\nX 1 1 1 1 1 over=e\n", 3, 18);
  expect_at("link n=1\narc 1: 2\n", 2, 1);
  expect_at("spine g=1\nloop 1: 1 side=up\n", 2, 16);
  expect_at("link n=1\nloop 2: 1\n", 2, 6);
  expect_at("link n=1\nloop 1: 0\n", 2, 9);
}

TEST_CASE("comments and blank lines are ignored") {
  Diagram a = parse_link(fx::hopf);
  std::string text = "# hopf\n\n" + std::string(fx::hopf) + "\n# end\n";
  CHECK(parse_link(text) == a);
}

TEST_CASE("parse_spine rejects links and vice versa") {
  CHECK_THROWS_AS(parse_spine(fx::trefoil), DiagramError);
  CHECK_THROWS_AS(parse_link(fx::spine_trefoil), DiagramError);
}

TEST_CASE("writhe") {
  CHECK(writhe(parse_link(fx::trefoil), 1) == 3);
  CHECK(writhe(parse_link(fx::figure_eight), 1) == 0);
  CHECK(writhe(parse_link(fx::hopf), 1) == 0);
  CHECK(writhe(parse_spine(fx::spine_trefoil), 1) == 3);
}

TEST_CASE("normal form and loop sublink") {
  CHECK(is_normal_form(parse_spine(fx::spine_trefoil)));
  Diagram sp = parse_spine(fx::spine_trefoil);
  Diagram sub = loop_sublink(sp);
  CHECK_FALSE(sub.is_spine());
  CHECK(sub.crossings.size() == 3);
  CHECK(validate(sub).ok());
  for (const auto& c : sp.crossings) CHECK(sub.find_crossing(c.id) != nullptr);

  Diagram round = loop_sublink(parse_spine(fx::spine_round));
  CHECK(round.loops.size() == 1);
  CHECK(round.loops[0].edges.size() == 1);
}

TEST_CASE("standard spines and trivial links") {
  for (int g = 1; g <= 5; ++g) {
    Diagram s = standard_spine(g);
    CHECK(validate(s).ok());
    CHECK(s.genus() == g);
    CHECK(s.crossings.empty());
    CHECK(validate(trivial_link(g)).ok());
  }
}

TEST_CASE("R1 insert then remove restores the diagram") {
  Diagram d = parse_link(fx::unknot);
  for (bool left : {true, false})
    for (bool over : {true, false}) {
      MoveSite m;
      m.type = MoveType::r1;
      m.direction = MoveDirection::insert;
      m.edge = 1;
      m.left_side = left;
      m.over_first = over;
      Diagram k = apply_reidemeister(d, m);
      CHECK(validate(k).ok());
      CHECK(k.crossings.size() == 1);
      CHECK(std::abs(writhe(k, 1)) == 1);
      MoveSite r;
      r.type = MoveType::r1;
      r.direction = MoveDirection::remove;
      r.crossing = k.crossings[0].id;
      CHECK(testing::canonical_key(apply_reidemeister(k, r)) == testing::canonical_key(d));
    }
}

TEST_CASE("R2 removal needs a bigon") {
  Diagram h = parse_link(fx::hopf);
  MoveSite m;
  m.type = MoveType::r2;
  m.direction = MoveDirection::remove;
  m.crossing = 1;
  m.other_crossing = 2;
  // the Hopf link's bigons have both crossings with the same strand on top
  CHECK_THROWS_AS(apply_reidemeister(h, m), InapplicableMove);
  CHECK(count_by_type(available_moves(parse_link(fx::trefoil), false), MoveType::r2, MoveDirection::remove) == 0);
}

TEST_CASE("moves offered by available_moves apply and keep planarity") {
  std::mt19937 rng(5);
  int r3_seen = 0;
  for (int trial = 0; trial < 80; ++trial) {
    Diagram d = testing::random_walk(parse_link(trial % 2 ? fx::figure_eight : fx::whitehead), rng, 15, 12);
    for (const auto& m : available_moves(d, d.crossings.size() < 12)) {
      Diagram n;
      try {
        n = apply_reidemeister(d, m);
      } catch (const InapplicableMove&) {
        continue;
      }
      CHECK(validate(n).ok());
      long dc = static_cast<long>(n.crossings.size()) - static_cast<long>(d.crossings.size());
      switch (m.type) {
        case MoveType::r1: CHECK(std::abs(dc) == 1); break;
        case MoveType::r2: CHECK(std::abs(dc) == 2); break;
        case MoveType::r3:
          CHECK(dc == 0);
          ++r3_seen;
          break;
      }
      if (m.type != MoveType::r1)
        for (int c = 1; c <= d.component_count(); ++c) CHECK(writhe(n, c) == writhe(d, c));
    }
  }
  CHECK(r3_seen > 0);
}

TEST_CASE("moves never cross the wedge or attachment vertices") {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    Diagram d = testing::random_spine(rng, 9);
    REQUIRE(validate(d).ok());
    CHECK(d.genus() == static_cast<int>(d.arcs.size()));
    CHECK(d.wedge.size() == d.arcs.size());
  }
}

TEST_CASE("split_edge and remove_crossings") {
  Diagram d = parse_link(fx::trefoil);
  auto ids = split_edge(d, 4, 3);
  CHECK(ids == std::vector<int>{4, 7, 8});
  CHECK(d.loops[0].edges == std::vector<int>{1, 2, 3, 4, 7, 8, 5, 6});
  // pieces are left for the caller to cross
  CHECK_FALSE(validate(d).ok());
  CHECK(d.find_crossing(1)->over_in == 8);

  Diagram t = parse_link(fx::trefoil);
  remove_crossings(t, {1, 2, 3});
  CHECK(t.crossings.empty());
  CHECK(validate(t).ok());
}

TEST_CASE("unknown crossing ids are rejected") {
  CHECK_THROWS_AS(flip_crossing(parse_link(fx::trefoil), 9), PreconditionError);
}

TEST_CASE("split-trivial oracle sanity") {
  CHECK(testing::split_trivial_search(parse_link(fx::unknot)).trivial);
  CHECK(testing::split_trivial_search(parse_link(fx::split_unlink)).trivial);
  CHECK_FALSE(testing::split_trivial_search(parse_link(fx::trefoil), 2, 20000).trivial);
  CHECK_FALSE(testing::split_trivial_search(parse_link(fx::hopf), 2, 20000).trivial);
  Diagram t = flip_crossing(parse_link(fx::trefoil), 2);
  CHECK(testing::split_trivial_search(t).trivial);
}
