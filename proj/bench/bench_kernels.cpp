#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>
#include <vector>

#include "hpfrac/assembly.hpp"
#include "hpfrac/mesh.hpp"
#include "hpfrac/shifted.hpp"
#include "hpfrac/space.hpp"

using namespace hpfrac;

namespace {

std::shared_ptr<const HpSpace> lshape_space(int p) {
  auto mesh = std::make_shared<const Mesh2D>(
      build_geometric_bl_mesh(make_builtin_domain(BuiltinDomain::lshape), p, p, 0.25));
  return std::make_shared<const HpSpace>(mesh, p);
}

ExecPolicy policy_of(const benchmark::State& state) {
  return state.range(1) ? ExecPolicy::parallel : ExecPolicy::serial;
}

void BM_AssembleOperators(benchmark::State& state) {
  const auto space = lshape_space(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_operators(*space, {}, policy_of(state)));
  state.counters["dofs"] = space->num_free();
}

void BM_ShiftFamily(benchmark::State& state) {
  const PolygonDomain dom = make_builtin_domain(BuiltinDomain::lshape);
  const int p = static_cast<int>(state.range(0));
  std::vector<double> mus, scales;
  for (int i = 0; i < 16; ++i) {
    mus.push_back(std::pow(10.0, -6.0 + 0.5 * i));
    scales.push_back(1.0);
  }
  HpParams prm;
  prm.policy = policy_of(state);
  prm.keep_fields = false;
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_shift_family(dom, [](Point) { return 1.0; }, mus, scales, MeshCase::B, p, prm));
  state.counters["solves"] = static_cast<double>(mus.size());
}

}  // namespace

BENCHMARK(BM_AssembleOperators)->ArgsProduct({{2, 4, 6}, {0, 1}})->ArgNames({"p", "parallel"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ShiftFamily)->ArgsProduct({{2, 4}, {0, 1}})->ArgNames({"p", "parallel"})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
