#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "asfem/asfem.hpp"

using namespace asfem;

namespace {

struct Cases {
  std::vector<Tetrahedron> tets;
  std::vector<Dipole> dipoles;

  Cases() {
    std::mt19937_64 g(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto vec = [&] { return Vec3(u(g), u(g), u(g)); };
    while (tets.size() < 256) {
      const Tetrahedron t{{vec(), vec(), vec(), vec()}};
      const double h = t.diameter();
      if (std::abs(t.signed_volume()) < 0.02 * h * h * h) continue;
      tets.push_back(t.positively_oriented());
      dipoles.push_back({t.centroid() + 2.5 * h * vec().normalized(), vec()});
    }
  }
};

const Cases& cases() {
  static const Cases c;
  return c;
}

// order 0 selects the closed form
void BM_Surface(benchmark::State& state) {
  const auto& c = cases();
  const int order = static_cast<int>(state.range(0));
  std::size_t i = 0;
  for (auto _ : state) {
    const Triangle t = c.tets[i & 255].outward_face(0);
    const Dipole& d = c.dipoles[i & 255];
    benchmark::DoNotOptimize(order == 0 ? surface_source_analytical(t, d) : surface_source_quadrature(t, d, order));
    ++i;
  }
}

void BM_Volume(benchmark::State& state) {
  const auto& c = cases();
  const int order = static_cast<int>(state.range(0));
  const auto sc = ConductivityTensor::iso(1.46);
  std::size_t i = 0;
  for (auto _ : state) {
    const Tetrahedron& t = c.tets[i & 255];
    const Dipole& d = c.dipoles[i & 255];
    benchmark::DoNotOptimize(order == 0 ? volume_source_analytical(t, sc, 0.33, d)
                                        : volume_source_quadrature(t, sc, 0.33, d, order));
    ++i;
  }
}

void BM_Stiffness(benchmark::State& state) {
  const auto& c = cases();
  const auto s = ConductivityTensor::iso(0.33);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(stiffness_element(c.tets[i++ & 255], s));
}

void BM_SphereSolve(benchmark::State& state) {
  const ForwardModel fm(build_layered_sphere_mesh(
      {0.092, 0.086, 0.08, 0.078}, static_cast<int>(state.range(0)),
      {ConductivityTensor::iso(0.33), ConductivityTensor::iso(0.01), ConductivityTensor::iso(1.79),
       ConductivityTensor::iso(0.33)}));
  const Dipole d{Vec3(0.01, 0.02, 0.06), Vec3(1e-8, 0, 0)};
  for (auto _ : state) benchmark::DoNotOptimize(fm.solve(d, SourceScheme::analytical()).potentials);
  state.counters["nodes"] = static_cast<double>(fm.mesh().nodes.size());
}

}  // namespace

BENCHMARK(BM_Surface)->Arg(0)->Arg(2)->Arg(4)->Arg(6);
BENCHMARK(BM_Volume)->Arg(0)->Arg(2)->Arg(4)->Arg(6);
BENCHMARK(BM_Stiffness);
BENCHMARK(BM_SphereSolve)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
