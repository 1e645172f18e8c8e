#include <benchmark/benchmark.h>

#include <random>

#include "jnk/freq_engine.hpp"
#include "jnk/model_io.hpp"
#include "jnk/render.hpp"

namespace {

jnk::Matrix random_psd(std::mt19937& rng, std::size_t k) {
  std::normal_distribution<double> n01(0.0, 1.0);
  jnk::Matrix g(k, k);
  for (auto& v : g.data) v = n01(rng);
  jnk::Matrix s(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      double acc = 0.0;
      for (std::size_t t = 0; t < k; ++t) acc += g(i, t) * g(j, t);
      s(i, j) = acc;
    }
  for (std::size_t i = 0; i < k; ++i) s(i, i) += 1e-3;
  return s;
}

jnk::ModelSpec twoway_spec() {
  std::mt19937 rng(42);
  jnk::ModelSpec spec;
  spec.coef_names = {"x", "z", "x:z"};
  spec.coefs = {0.8, 0.5, -0.4};
  spec.covar = random_psd(rng, 3);
  for (auto& v : spec.covar.data) v *= 0.02;
  spec.var_ranges = {{"x", {-3, 3}}, {"z", {-3, 3}}};
  spec.validate();
  return spec;
}

jnk::ModelSpec threeway_spec() {
  std::mt19937 rng(43);
  jnk::ModelSpec spec;
  spec.coef_names = {"x", "z", "w", "x:z", "x:w", "z:w", "x:z:w"};
  spec.coefs = {1.0, 0.5, -0.5, 0.2, -0.1, 0.05, 0.5};
  spec.covar = random_psd(rng, 7);
  for (auto& v : spec.covar.data) v *= 0.02;
  spec.var_ranges = {{"x", {-3, 3}}, {"z", {-3, 3}}, {"w", {-3, 3}}};
  spec.validate();
  return spec;
}

void BM_var_3way(benchmark::State& state) {
  std::mt19937 rng(7);
  auto cov = random_psd(rng, 4);
  double m = 0.3, w = -1.2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(jnk::var_3way(cov, m, w));
    m += 1e-9;
  }
}
BENCHMARK(BM_var_3way);

void BM_jn_table_2way(benchmark::State& state) {
  auto spec = twoway_spec();
  auto cfg = jnk::SignificanceConfig::from_alpha(0.05);
  auto views = jnk::derive_role_views(spec.coef_names, "x", "z");
  auto grid = jnk::build_grid({{"z", {-3.0, 3.0}}}, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(jnk::jn_table_2way(spec, views[0], grid, cfg));
}
BENCHMARK(BM_jn_table_2way)->Arg(50)->Arg(500);

void BM_jnk_grid_3way(benchmark::State& state) {
  auto spec = threeway_spec();
  auto cfg = jnk::SignificanceConfig::from_alpha(0.05);
  auto views = jnk::derive_role_views(spec.coef_names, "x", "z", std::optional<std::string>("w"));
  auto grid = jnk::build_grid({{"z", {-3.0, 3.0}}, {"w", {-3.0, 3.0}}},
                              static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(jnk::jnk_grid_3way(spec, views[0], grid, cfg));
}
BENCHMARK(BM_jnk_grid_3way)->Arg(20)->Arg(50);

void BM_render_heatmap(benchmark::State& state) {
  auto spec = threeway_spec();
  auto cfg = jnk::SignificanceConfig::from_alpha(0.05);
  auto views = jnk::derive_role_views(spec.coef_names, "x", "z", std::optional<std::string>("w"));
  auto grid = jnk::build_grid({{"z", {-3.0, 3.0}}, {"w", {-3.0, 3.0}}},
                              static_cast<std::size_t>(state.range(0)));
  auto table = jnk::jnk_grid_3way(spec, views[0], grid, cfg);
  auto plot = jnk::build_heatmap(table, jnk::StyleConfig{}, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto svg = jnk::render_svg(plot, 640, 480);
    benchmark::DoNotOptimize(svg);
  }
}
BENCHMARK(BM_render_heatmap)->Arg(20)->Arg(50);

}  // namespace

BENCHMARK_MAIN();
