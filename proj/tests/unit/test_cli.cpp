#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "spinecert/bundle.hpp"
#include "spinecert/cli.hpp"

using namespace spinecert;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string data(const std::string& name) { return std::string(SPINECERT_DATA_DIR) + "/" + name; }

fs::path scratch_dir() {
  auto p = fs::temp_directory_path() / ("spinecert_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("validate") {
  auto ok = run({"validate", data("trefoil.spine")});
  CHECK(ok.code == cli::kPass);
  CHECK(ok.out.find("valid (") != std::string::npos);

  auto bad = run({"validate", data("triple_edge.link")});
  CHECK(bad.code == cli::kFail);
  CHECK(bad.out.find("edge 5 is used 3 times") != std::string::npos);
  auto recs = parse_validation_report(bad.out);
  REQUIRE(recs.size() == 1);
  CHECK_FALSE(recs[0].valid);

  CHECK(run({"validate", data("missing.spine")}).code == cli::kUsage);
  CHECK(run({"validate"}).code == cli::kUsage);
}

TEST_CASE("validate many files in parallel keeps order") {
  std::vector<std::string> files;
  for (auto n : {"trefoil.spine", "hopf.link", "triple_edge.link", "standard2.spine", "whitehead.link", "round.spine"})
    files.push_back(data(n));
  auto args = files;
  args.insert(args.begin(), "validate");
  auto serial = run(args);
  args.insert(args.begin() + 1, {"--jobs", "4"});
  auto parallel = run(args);
  CHECK(serial.out == parallel.out);
  CHECK(serial.code == cli::kFail);
  auto recs = parse_validation_report(parallel.out);
  REQUIRE(recs.size() == files.size());
  for (std::size_t i = 0; i < files.size(); ++i) CHECK(recs[i].path == files[i]);
  CHECK(run({"validate", "--jobs", "0", files[0]}).code == cli::kUsage);
}

TEST_CASE("parse errors name the position") {
  auto dir = scratch_dir();
  auto p = dir / "broken.spine";
  std::ofstream(p) << "spine g=1\nloop 1: 1 q\n";
  auto r = run({"validate", p.string()});
  CHECK(r.code == cli::kFail);
  CHECK(r.out.find("line 2, column 11") != std::string::npos);
  auto s = run({"surface", p.string()});
  CHECK(s.code == cli::kFail);
  CHECK(s.err.find("2:11") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("surface") {
  auto t = run({"surface", data("trefoil.spine")});
  CHECK(t.code == cli::kPass);
  CHECK(t.out == "surface 1: disks=2 bands=3 chi=-1 genus=1 boundary=1\n");
  auto r = run({"surface", data("round.spine")});
  CHECK(r.out.find("chi=1 genus=0") != std::string::npos);
  auto h = run({"surface", data("hopf.spine")});
  CHECK(h.out.find("shared: loops 1 2") != std::string::npos);
  CHECK(parse_surface_report(h.out).surfaces.size() == 2);
  auto link = run({"surface", data("trefoil.link")});
  CHECK(link.code == cli::kUsage);
  CHECK(link.err.find("link file") != std::string::npos);
}

TEST_CASE("linking") {
  auto h = run({"linking", data("hopf.link")});
  CHECK(h.code == cli::kPass);
  CHECK(h.out == "linking 1 2: 1\n");
  CHECK(run({"linking", data("whitehead.link")}).out == "linking 1 2: 0\n");
  CHECK(parse_linking_report(run({"linking", data("hopf.spine")}).out, 2).at(1, 2) == 1);
  CHECK(run({"linking", data("triple_edge.link")}).code == cli::kFail);
}

TEST_CASE("unknot") {
  auto t = run({"unknot", "--mode", "part2", data("trefoil.spine")});
  CHECK(t.code == cli::kPass);
  auto p = parse_bundle(t.out);
  CHECK_FALSE(p.bundle.link.components.empty());
  CHECK(p.claimed_pass);

  auto s = run({"unknot", data("standard2.spine")});
  CHECK(s.code == cli::kPass);
  CHECK(parse_bundle(s.out).bundle.transcript.moves.empty());

  auto h = run({"unknot", "--mode", "part2", data("hopf.spine")});
  CHECK(h.code == cli::kFail);
  CHECK(h.out.rfind("refusal: ", 0) == 0);

  CHECK(run({"unknot", "--mode", "part3", data("trefoil.spine")}).code == cli::kUsage);
  CHECK(run({"unknot", "--order", "2", data("trefoil.spine")}).code == cli::kUsage);
  CHECK(run({"unknot", "--basepoint", "x", data("trefoil.spine")}).code == cli::kUsage);
  CHECK(run({"unknot", data("hopf.link")}).code == cli::kUsage);

  auto b1 = run({"unknot", "--basepoint", "1", data("trefoil.spine")});
  CHECK(b1.code == cli::kPass);
  CHECK(b1.out.find("plan order=1 basepoints=1") != std::string::npos);
}

TEST_CASE("outputs are byte-deterministic") {
  for (auto args : std::vector<std::vector<std::string>>{
           {"unknot", "--mode", "part2", data("trefoil_tangled_arc.spine")},
           {"unknot", "--order", "2,1", data("hopf.spine")},
           {"dualize", data("trefoil.spine")},
           {"surface", data("hopf.spine")},
       }) {
    auto first = run(args);
    for (int k = 0; k < 5; ++k) CHECK(run(args).out == first.out);
  }
}

TEST_CASE("dualize") {
  auto d = run({"dualize", data("trefoil.spine")});
  CHECK(d.code == cli::kPass);
  auto p = parse_dualize(d.out);
  CHECK(p.delta.pass);
  CHECK(p.claimed_pass);
  auto s = run({"dualize", data("standard2.spine")});
  CHECK(s.out.find("delta: [[1,0],[0,1]] pass") != std::string::npos);
}

TEST_CASE("certify through files") {
  auto dir = scratch_dir();
  auto bundle = (dir / "trefoil.bundle").string();
  CHECK(run({"unknot", "--mode", "part2", "--out", bundle, data("trefoil_tangled_arc.spine")}).code == cli::kPass);
  auto ok = run({"certify", bundle});
  CHECK(ok.code == cli::kPass);
  CHECK(parse_certify_report(ok.out).pass());
  CHECK(run({"certify", "--input", data("trefoil_tangled_arc.spine"), bundle}).code == cli::kPass);
  CHECK(run({"certify", "--input", data("trefoil.spine"), bundle}).code == cli::kFail);

  std::string text = slurp(bundle);
  auto at = text.find("framing=1/");
  REQUIRE(at != std::string::npos);
  text.replace(at, 10, "framing=2/");
  std::ofstream((dir / "bad.bundle"), std::ios::binary) << text;
  auto bad = run({"certify", (dir / "bad.bundle").string()});
  CHECK(bad.code == cli::kFail);
  CHECK(bad.out.find("certify: FAIL") != std::string::npos);
  CHECK_FALSE(parse_certify_report(bad.out).pass());

  CHECK(run({"certify", (dir / "nope.bundle").string()}).code == cli::kUsage);
  CHECK(run({"surface", "--out", (dir / "no/such/dir/x").string(), data("trefoil.spine")}).code == cli::kUsage);
  fs::remove_all(dir);
}

TEST_CASE("help and version") {
  CHECK(run({"--help"}).code == cli::kPass);
  CHECK(run({"--version"}).out == "spinecert 0.1.0\n");
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
}
