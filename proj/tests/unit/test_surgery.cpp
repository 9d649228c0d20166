#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "spinecert/error.hpp"
#include "spinecert/format.hpp"
#include "spinecert/pipeline.hpp"
#include "spinecert/surgery.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace spinecert;
namespace fx = spinecert::fixtures;

namespace {

SurgeryComponent unknotted(int id, long n) {
  SurgeryComponent c;
  c.id = id;
  c.kind = SurgeryKind::full_twist;
  c.site = 1;
  c.framing = one_over(n);
  c.linking = {0};
  c.strands = {{1, 1}, {1, -1}};
  return c;
}

}  // namespace

TEST_CASE("slopes") {
  CHECK(one_over(-1) == Slope{1, -1});
  CHECK(one_over(2).str() == "1/2");
  CHECK(one_over(-3).is_one_over_n());
  CHECK_FALSE((Slope{2, 3}).is_one_over_n());
  CHECK_FALSE((Slope{1, 0}).is_one_over_n());
  CHECK_THROWS_AS(one_over(0), PreconditionError);
  CHECK(std::string(kind_token(SurgeryKind::band_crossing_change)) == "bcc");
  CHECK(std::string(kind_token(SurgeryKind::full_twist)) == "twist");
}

TEST_CASE("band-crossing change between two loops") {
  SurgeryState st(parse_spine(fx::spine_hopf));
  REQUIRE(st.diagram.find_crossing(1)->sign == 1);
  auto c = emit_band_crossing_change(st, 1);
  CHECK(st.diagram.find_crossing(1)->sign == -1);
  CHECK(c.framing == one_over(-1));
  CHECK(c.linking == HomologyClass{0, 0});
  CHECK(c.kind == SurgeryKind::band_crossing_change);
  CHECK(c.strands.size() == 4);
  CHECK(st.twist == std::vector<int>{0, 0});
  CHECK(st.link.components.size() == 1);
  CHECK(clasp_class(c.strands, 2) == HomologyClass{0, 0});
}

TEST_CASE("band-crossing change at a negative self-crossing") {
  Diagram sp = parse_spine(fx::spine_trefoil);
  for (auto& x : sp.crossings) x.flip();  // mirror: all negative
  SurgeryState st(sp);
  auto c = emit_band_crossing_change(st, 2);
  CHECK(st.diagram.find_crossing(2)->sign == 1);
  CHECK(c.framing == one_over(1));
  CHECK(c.linking == HomologyClass{0});
  CHECK(st.twist == std::vector<int>{-1});
}

TEST_CASE("band-crossing change errors") {
  SurgeryState st(parse_spine(fx::spine_hopf));
  CHECK_THROWS_AS(emit_band_crossing_change(st, 7), PreconditionError);
  std::ifstream in(std::string(SPINECERT_DATA_DIR) + "/trefoil_tangled_arc.spine");
  std::stringstream text;
  text << in.rdbuf();
  Diagram tangled = parse_spine(text.str());
  SurgeryState t(tangled);
  int arc_crossing = 0;
  for (const auto& x : tangled.crossings)
    if (loop_of_edge(tangled, x.under_in) == 0 || loop_of_edge(tangled, x.over_in) == 0) arc_crossing = x.id;
  REQUIRE(arc_crossing != 0);
  CHECK_THROWS_AS(emit_band_crossing_change(t, arc_crossing), PreconditionError);
}

TEST_CASE("two changes at one site cancel") {
  std::mt19937 rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    Diagram sp = normalize_arcs(testing::random_spine(rng, 8));
    if (sp.crossings.empty()) continue;
    SurgeryState st(sp);
    int id = sp.crossings[rng() % sp.crossings.size()].id;
    auto a = emit_band_crossing_change(st, id);
    auto b = emit_band_crossing_change(st, id);
    CHECK(st.diagram == sp);
    CHECK(a.framing.q + b.framing.q == 0);
    CHECK(st.twist == std::vector<int>(static_cast<std::size_t>(sp.genus()), 0));
    CHECK(verify_reflexive(st.link).valid);
  }
}

TEST_CASE("full twists") {
  SurgeryState st(parse_spine(fx::spine_trefoil));
  st.twist[0] = 1;
  auto c = emit_full_twist(st, 1, -1);
  CHECK(st.twist[0] == 0);
  CHECK(c.framing == one_over(1));
  CHECK(c.linking == HomologyClass{0});
  CHECK(c.strands == std::vector<EncircledStrand>{{1, 1}, {1, -1}});

  auto d = emit_full_twist(st, 1, 2);
  CHECK(st.twist[0] == 2);
  CHECK(d.framing == one_over(-2));
  CHECK(d.framing.str() == "1/-2");

  CHECK_THROWS_AS(emit_full_twist(st, 1, 0), PreconditionError);
  CHECK_THROWS_AS(emit_full_twist(st, 2, 1), PreconditionError);
  CHECK(st.link.components.size() == 2);
  CHECK(st.link.components[1].id == 2);
}

TEST_CASE("strand classes agree with the clasp diagram") {
  std::mt19937 rng(14);
  for (int t = 0; t < 200; ++t) {
    int g = 1 + static_cast<int>(rng() % 3);
    std::vector<EncircledStrand> s;
    int k = 1 + static_cast<int>(rng() % 4);
    for (int j = 0; j < k; ++j) s.push_back({1 + static_cast<int>(rng() % g), rng() % 2 ? 1 : -1});
    CHECK(strand_class(s, g) == clasp_class(s, g));
  }
  CHECK(strand_class({{1, 1}}, 2) == HomologyClass{1, 0});
  CHECK_THROWS_AS(strand_class({{3, 1}}, 2), PreconditionError);
}

TEST_CASE("blow-down certificates") {
  SUBCASE("empty link") {
    auto cert = verify_reflexive(FramedSurgeryLink{});
    CHECK(cert.valid);
    CHECK(cert.steps.empty());
  }
  SUBCASE("three unknotted components") {
    FramedSurgeryLink L{{unknotted(1, -1), unknotted(2, 1), unknotted(3, 2)}, true};
    auto cert = verify_reflexive(L);
    CHECK(cert.valid);
    REQUIRE(cert.steps.size() == 3);
    for (auto& s : cert.steps) CHECK(s.ok);
    CHECK(cert.steps[2].reason == "unknotted twist circle, slope 1/2, unlinked");
  }
  SUBCASE("non-1/n slope") {
    FramedSurgeryLink L{{unknotted(1, -1), unknotted(2, 1)}, true};
    L.components[1].framing = Slope{2, 3};
    auto cert = verify_reflexive(L);
    CHECK_FALSE(cert.valid);
    CHECK(cert.reason.find("non-1/Z slope 2/3") != std::string::npos);
    CHECK(cert.steps[0].ok);
    CHECK_FALSE(cert.steps[1].ok);
  }
  SUBCASE("missing attestation") {
    FramedSurgeryLink L{{unknotted(1, 1)}, true};
    L.components[0].unlinked = false;
    CHECK(verify_reflexive(L).reason == "component 1: missing unlinked attestation");
    FramedSurgeryLink M{{unknotted(1, 1)}, false};
    CHECK_FALSE(verify_reflexive(M).valid);
  }
}

TEST_CASE("core link counts") {
  SurgeryState st(parse_spine(fx::spine_hopf));
  emit_band_crossing_change(st, 1);
  auto recs = longitude_records(st.link);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].circles.size() == 2);  // one per encircled loop
  auto core = core_link_check(st.link, recs);
  CHECK(core.pass);
  CHECK(core.counts[0].second == std::vector<long>{1, 1});

  auto bad = recs;
  bad[0].circles[0] = {2, 1};  // fabricated: meets the meridian twice
  auto fail = core_link_check(st.link, bad);
  CHECK_FALSE(fail.pass);
  CHECK(fail.counts[0].second[0] != 1);

  CHECK(core_link_check(FramedSurgeryLink{}, {}).pass);
  CHECK_THROWS_AS(core_link_check(st.link, {}), PreconditionError);
}

TEST_CASE("core link counts for slope 1/n") {
  // |p*b - q*a| with a longitude-parallel circle (0, 1) is |p| = 1 for every 1/n
  for (long n : {-3L, -1L, 1L, 2L, 5L}) {
    FramedSurgeryLink L{{unknotted(1, n)}, true};
    CHECK(core_link_check(L, longitude_records(L)).pass);
  }
}

TEST_CASE("tubing against the cell oracle") {
  auto sys = tube_system({0, 0});
  REQUIRE(sys.surfaces.size() == 2);
  for (auto& s : sys.surfaces) CHECK(s.genus == 0);
  auto three = tube_system({3});
  CHECK(three.surfaces[0].chi == -5);
  CHECK(three.surfaces[0].genus == 3);
  auto mixed = tube_system({1, 2});
  CHECK(mixed.surfaces[0].genus == 1);
  CHECK(mixed.surfaces[1].genus == 2);
  CHECK(mixed.surfaces[1].boundary_label == "C_2");
  for (int t = 0; t <= 10; ++t) {
    auto s = tube_system({t}).surfaces[0];
    CHECK(s.chi == testing::tubed_disk_chi_by_cells(t));
    CHECK(s.chi + 2 * s.tubes == 1);
    CHECK(s.boundary == 1);
  }
  CHECK_THROWS_AS(tube_system({1, -1}), PreconditionError);
}
