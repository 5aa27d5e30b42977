#include <benchmark/benchmark.h>

#include <cmath>

#include "grim/curve.hpp"
#include "grim/phase_plane.hpp"
#include "grim/quadrature.hpp"
#include "grim/surface.hpp"

using namespace grim;

static void BM_IntegrateOrbit(benchmark::State& state) {
  OdeParams p;
  p.a = 1.0;
  p.z_min = 1e-3;
  p.rel_tol = p.abs_tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) {
    auto r = integrate_orbit({0, 0, 2, 0}, p, Direction::Forward);
    benchmark::DoNotOptimize(r.samples.data());
  }
}
BENCHMARK(BM_IntegrateOrbit)->Arg(8)->Arg(10)->Arg(12);

static void BM_TraceAndClassify(benchmark::State& state) {
  OdeParams p;
  p.a = 1.0;
  p.z_min = 1e-3;
  for (auto _ : state) {
    auto rep = trace_and_classify(2.0, p);
    benchmark::DoNotOptimize(&rep);
  }
}
BENCHMARK(BM_TraceAndClassify);

static void BM_CurvatureFd(benchmark::State& state) {
  const auto prof = hemisphere_profile(0.3, 1.2, static_cast<std::size_t>(state.range(0)));
  const auto mesh = revolve_spherical(prof, 64);
  for (auto _ : state) {
    auto cd = curvature_fd(mesh);
    benchmark::DoNotOptimize(cd.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(mesh.ns * mesh.nt));
}
BENCHMARK(BM_CurvatureFd)->Arg(33)->Arg(129);

static void BM_HalfWidthQuadrature(benchmark::State& state) {
  const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(half_width(1.0, tol));
  }
}
BENCHMARK(BM_HalfWidthQuadrature)->Arg(8)->Arg(12);

static void BM_GraphPdeResidual(benchmark::State& state) {
  const std::size_t nx = static_cast<std::size_t>(state.range(0)), ny = 33;
  std::vector<double> u(nx * ny);
  for (std::size_t ix = 0; ix < nx; ++ix) {
    for (std::size_t iy = 0; iy < ny; ++iy) {
      u[ix * ny + iy] = 1.0 + 0.01 * static_cast<double>(ix + iy);
    }
  }
  for (auto _ : state) {
    auto r = graph_pde_residual(u, nx, ny, {1.0, 0.5}, 0.01);
    benchmark::DoNotOptimize(r.per_vertex.data());
  }
}
BENCHMARK(BM_GraphPdeResidual)->Arg(33)->Arg(129);

BENCHMARK_MAIN();
