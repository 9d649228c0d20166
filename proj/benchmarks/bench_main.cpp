#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>
#include <string>

#include "spinecert/bundle.hpp"
#include "spinecert/format.hpp"
#include "spinecert/homology.hpp"
#include "spinecert/pipeline.hpp"
#include "spinecert/seifert.hpp"

using namespace spinecert;

namespace {

std::string slurp(const char* name) {
  std::ifstream in(std::string(SPINECERT_DATA_DIR) + "/" + name);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

static void BM_ParseValidate(benchmark::State& state) {
  std::string text = serialize(standard_spine(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(validate(parse_spine(text)).ok());
}
BENCHMARK(BM_ParseValidate)->Arg(1)->Arg(4)->Arg(16);

static void BM_ValidateWhitehead(benchmark::State& state) {
  Diagram d = parse_link(slurp("whitehead.link"));
  for (auto _ : state) benchmark::DoNotOptimize(validate(d).ok());
}
BENCHMARK(BM_ValidateWhitehead);

static void BM_SeifertSystem(benchmark::State& state) {
  Diagram sp = parse_spine(slurp("hopf.spine"));
  for (auto _ : state) benchmark::DoNotOptimize(spine_seifert_system(sp).surface.chi);
}
BENCHMARK(BM_SeifertSystem);

static void BM_LinkingTable(benchmark::State& state) {
  Diagram d = parse_link(slurp("whitehead.link"));
  for (auto _ : state) benchmark::DoNotOptimize(linking_table(d).at(1, 2));
}
BENCHMARK(BM_LinkingTable);

static void BM_UnknotTangledArc(benchmark::State& state) {
  Diagram sp = parse_spine(slurp("trefoil_tangled_arc.spine"));
  for (auto _ : state) benchmark::DoNotOptimize(unknot_spine(sp).attestation.pass());
}
BENCHMARK(BM_UnknotTangledArc);

static void BM_Certify(benchmark::State& state) {
  std::string text = write_bundle(run_theorem_main(parse_spine(slurp("trefoil_tangled_arc.spine")), TheoremMode::part2));
  for (auto _ : state) benchmark::DoNotOptimize(certify_bundle(text).pass());
}
BENCHMARK(BM_Certify);
BENCHMARK_MAIN();
