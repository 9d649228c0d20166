#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "spinecert/bundle.hpp"
#include "spinecert/error.hpp"
#include "spinecert/format.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace spinecert;
namespace fx = spinecert::fixtures;

namespace {

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string l;
  while (std::getline(in, l)) out.push_back(l);
  return out;
}

std::string join_lines(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& l : v) s += l + "\n";
  return s;
}

// one local corruption per line: bump the last digit, else swap a verdict word
std::optional<std::string> corrupt(std::string line) {
  for (auto [a, b] : {std::pair{"=yes", "=no"}, {"=no", "=yes"}, {" pass", " fail"}, {" valid", " invalid"}}) {
    auto p = line.rfind(a);
    if (p != std::string::npos && p + std::string(a).size() == line.size()) return line.replace(p, std::string(a).size(), b);
  }
  for (auto i = line.size(); i-- > 0;)
    if (std::isdigit(static_cast<unsigned char>(line[i]))) {
      line[i] = line[i] == '9' ? '8' : static_cast<char>(line[i] + 1);
      return line;
    }
  return std::nullopt;
}

const std::vector<std::pair<std::string_view, TheoremMode>> kRuns = {
    {fx::spine_trefoil, TheoremMode::part2},
    {fx::spine_hopf, TheoremMode::part1},
    {fx::spine_standard_2, TheoremMode::part1},
};

}  // namespace

TEST_CASE("bundles round-trip and certify") {
  for (auto [text, mode] : kRuns) {
    auto b = run_theorem_main(parse_spine(text), mode);
    std::string s = write_bundle(b);
    auto p = parse_bundle(s);
    CHECK(p.claimed_pass);
    CHECK(write_bundle(p.bundle) == s);
    auto rep = certify_bundle(s);
    CHECK(rep.pass());
    CHECK(rep.checks > 20);
    CHECK(certify_bundle(s, parse_spine(text)).pass());
  }
}

TEST_CASE("bundle layout") {
  std::string s = write_bundle(run_theorem_main(parse_spine(fx::spine_trefoil), TheoremMode::part2));
  auto lines = split_lines(s);
  CHECK(lines.front() == "spinecert bundle mode=part2");
  CHECK(lines.back() == "bundle: pass");
  std::vector<std::string> sections;
  for (const auto& l : lines)
    if (l.front() == '[') sections.push_back(l);
  CHECK(sections == std::vector<std::string>{"[VALIDATION]", "[SURFACES]", "[TRANSCRIPT]", "[SURGERY]", "[HOMOLOGY]",
                                             "[BLOWDOWN]", "[DELTA]", "[ATTESTATION]"});
  CHECK(s.find("surface 1: disks=2 bands=3 chi=-1 genus=1 boundary=1\n") != std::string::npos);
  CHECK(s.find("homology: total=(0) null=yes completely=yes\n") != std::string::npos);
  CHECK(s.find("delta: [[1]] pass\n") != std::string::npos);
}

TEST_CASE("every single-line corruption fails certification") {
  for (auto [text, mode] : kRuns) {
    auto lines = split_lines(write_bundle(run_theorem_main(parse_spine(text), mode)));
    int mutants = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      auto bad = corrupt(lines[i]);
      if (!bad) continue;
      auto copy = lines;
      copy[i] = *bad;
      ++mutants;
      INFO("line " << i + 1 << ": " << lines[i] << " -> " << *bad);
      std::string mutant = join_lines(copy);
      if (certify_bundle(mutant).pass()) {
        // only acceptable when the edit picked another legitimate run
        auto p = parse_bundle(mutant);
        CHECK(write_bundle(run_theorem_main(p.bundle.input, p.bundle.mode, p.bundle.transcript.plan)) == mutant);
      }
    }
    CHECK(mutants > 10);
  }
}

TEST_CASE("dropping or reordering lines fails certification") {
  auto lines = split_lines(write_bundle(run_theorem_main(parse_spine(fx::spine_trefoil), TheoremMode::part2)));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto copy = lines;
    copy.erase(copy.begin() + static_cast<std::ptrdiff_t>(i));
    INFO("dropped line " << i + 1 << ": " << lines[i]);
    CHECK_FALSE(certify_bundle(join_lines(copy)).pass());
  }
}

TEST_CASE("certify against a different input") {
  std::string s = write_bundle(run_theorem_main(parse_spine(fx::spine_hopf), TheoremMode::part1));
  auto rep = certify_bundle(s, parse_spine(fx::spine_trefoil));
  CHECK_FALSE(rep.pass());
  CHECK(rep.failures.front() == "embedded input differs from the given diagram");
}

TEST_CASE("part2 bundle over a shared system is rejected") {
  auto b = run_theorem_main(parse_spine(fx::spine_hopf), TheoremMode::part1);
  b.mode = TheoremMode::part2;
  CHECK_FALSE(certify_bundle(write_bundle(b)).pass());
}

TEST_CASE("parse errors carry line numbers") {
  std::string s = write_bundle(run_theorem_main(parse_spine(fx::spine_round), TheoremMode::part1));
  auto lines = split_lines(s);
  CHECK_THROWS_AS(parse_bundle(""), ParseError);
  auto swapped = lines;
  auto a = std::find(swapped.begin(), swapped.end(), "[SURGERY]");
  auto b = std::find(swapped.begin(), swapped.end(), "[HOMOLOGY]");
  std::iter_swap(a, b);
  try {
    parse_bundle(join_lines(swapped));
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == static_cast<int>(a - swapped.begin()) + 1);
  }
  auto rep = certify_bundle(join_lines(swapped));
  CHECK_FALSE(rep.pass());
  CHECK(rep.failures.front().rfind("malformed bundle", 0) == 0);
  CHECK_THROWS_AS(parse_bundle(s + "extra\n"), ParseError);
}

TEST_CASE("random spines: bundles are deterministic and certify") {
  std::mt19937 rng(41);
  for (int t = 0; t < 25; ++t) {
    Diagram sp = testing::random_spine(rng, 8);
    auto a = write_bundle(run_theorem_main(sp, TheoremMode::part1));
    auto b = write_bundle(run_theorem_main(parse_spine(serialize(sp)), TheoremMode::part1));
    CHECK(a == b);
    CHECK(write_bundle(parse_bundle(a).bundle) == a);
    CHECK(certify_bundle(a).pass());
  }
}

TEST_CASE("subcommand reports read back") {
  SUBCASE("surface") {
    auto sys = spine_seifert_system(parse_spine(fx::spine_hopf));
    auto text = write_surface_report(sys);
    auto r = parse_surface_report(text);
    REQUIRE(r.surfaces.size() == 2);
    CHECK(r.surfaces[1].chi == 0);
    CHECK(r.shared == sys.shared);
  }
  SUBCASE("linking") {
    auto t = linking_table(parse_link(fx::hopf));
    auto text = write_linking_report(t);
    CHECK(text == "linking 1 2: 1\n");
    CHECK(parse_linking_report(text, 2).lk == t.lk);
    CHECK_THROWS_AS(parse_linking_report("", 2), ParseError);
  }
  SUBCASE("validate") {
    auto ok = write_validation_line("a.link", validate(parse_link(fx::trefoil)));
    auto bad = write_validation_line("b.link", validate(parse_diagram(fx::triple_edge)));
    auto recs = parse_validation_report(ok + bad);
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].valid);
    CHECK(recs[0].counts == std::vector<int>{3, 6, 5});
    CHECK_FALSE(recs[1].valid);
    CHECK(recs[1].entries == validate(parse_diagram(fx::triple_edge)).entries);
  }
  SUBCASE("dualize") {
    auto d = heegaard_dualize(parse_spine(fx::spine_trefoil));
    auto p = parse_dualize(write_dualize(d));
    CHECK(p.link == d.run.link);
    CHECK(p.dual_paths == d.dual_paths);
    CHECK(p.delta.counts == d.delta.counts);
    CHECK(p.claimed_pass);
  }
  SUBCASE("certify") {
    CertifyReport rep{{"something broke"}, 7};
    auto back = parse_certify_report(write_certify_report(rep));
    CHECK(back.failures == rep.failures);
    CHECK(back.checks == 7);
    CHECK_THROWS_AS(parse_certify_report("certify: 3 checks, pass\ncertify: FAIL x\n"), ParseError);
  }
}
