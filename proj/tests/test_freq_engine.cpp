#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "jnk/freq_engine.hpp"
#include "jnk/model_io.hpp"
#include "test_support.hpp"

using namespace jnk;

namespace {

ModelSpec make_2way_spec(double b_x = 0.8, double b_z = 0.5, double b_xz = -0.4) {
  ModelSpec spec;
  spec.coef_names = {"x", "z", "x:z"};
  spec.coefs = {b_x, b_z, b_xz};
  spec.covar = Matrix(3, 3);
  spec.covar(0, 0) = 0.04;
  spec.covar(1, 1) = 0.05;
  spec.covar(2, 2) = 0.02;
  spec.covar(0, 1) = spec.covar(1, 0) = 0.003;
  spec.covar(0, 2) = spec.covar(2, 0) = -0.004;
  spec.covar(1, 2) = spec.covar(2, 1) = 0.001;
  spec.var_ranges = {{"x", {-3, 3}}, {"z", {-3, 3}}};
  spec.validate();
  return spec;
}

ModelSpec make_3way_spec(std::mt19937& rng) {
  ModelSpec spec;
  spec.coef_names = {"(Intercept)", "x", "z", "w", "x:z", "x:w", "z:w", "x:z:w"};
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 8; ++i) spec.coefs.push_back(u(rng));
  spec.covar = test::random_psd(rng, 8, 1e-4);
  spec.var_ranges = {{"x", {-3, 3}}, {"z", {-3, 3}}, {"w", {-2, 2}}};
  spec.validate();
  return spec;
}

}  // namespace

TEST_CASE("build_grid") {
  auto g = build_grid({{"z", {-3.0, 3.0}}}, 3);
  CHECK(g.axis_values[0] == std::vector<double>{-3.0, 0.0, 3.0});

  auto lattice = build_grid({{"a", {0.0, 1.0}}, {"b", {0.0, 1.0}}}, 2);
  CHECK(lattice.axis_values[0] == std::vector<double>{0.0, 1.0});
  CHECK(lattice.axis_values[1] == std::vector<double>{0.0, 1.0});

  CHECK_THROWS(build_grid({{"z", {-3.0, 3.0}}}, 1));
  CHECK_THROWS(build_grid({{"z", {3.0, 3.0}}}, 5));
}

TEST_CASE("grid refinement keeps coincident values bit-identical") {
  auto coarse = build_grid({{"z", {-2.7, 3.1}}}, 11);
  auto fine = build_grid({{"z", {-2.7, 3.1}}}, 21);
  for (int i = 0; i < 11; ++i) CHECK(coarse.axis_values[0][i] == fine.axis_values[0][2 * i]);
}

TEST_CASE("jn_table_2way") {
  auto spec = make_2way_spec();
  auto cfg = SignificanceConfig::from_alpha(0.05);
  auto views = derive_role_views(spec.coef_names, "x", "z");
  auto grid = build_grid({{"z", {-3.0, 3.0}}}, 51);
  auto table = jn_table_2way(spec, views[0], grid, cfg);
  REQUIRE(table.rows.size() == 51);

  SUBCASE("m = 0 row recovers the main effect") {
    const auto& mid = table.rows[25];
    CHECK(mid.mod_vals[0] == 0.0);
    CHECK(mid.theta == spec.coefs[0]);
    CHECK(mid.se == doctest::Approx(std::sqrt(spec.covar(0, 0))).epsilon(1e-15));
  }
  SUBCASE("no moderation means a constant column") {
    auto flat = make_2way_spec(0.8, 0.5, 0.0);
    flat.covar(0, 2) = flat.covar(2, 0) = 0.0;
    flat.covar(2, 2) = 0.0;
    auto t = jn_table_2way(flat, views[0], grid, cfg);
    for (const auto& row : t.rows) CHECK(row.theta == 0.8);
  }
  SUBCASE("significance flips exactly at the analytic boundaries") {
    auto roots = jn_boundaries_2way(spec.coefs[0], spec.coefs[2], spec.covar(0, 0),
                                    spec.covar(0, 2), spec.covar(2, 2), cfg);
    double step = 6.0 / 50.0;
    std::vector<double> flips;
    for (std::size_t i = 1; i < table.rows.size(); ++i)
      if (table.rows[i].significant != table.rows[i - 1].significant)
        flips.push_back(0.5 * (table.rows[i].mod_vals[0] + table.rows[i - 1].mod_vals[0]));
    for (double flip : flips) {
      bool near_root = false;
      for (double r : roots) near_root = near_root || std::abs(flip - r) <= step;
      CHECK(near_root);
    }
  }
  SUBCASE("deterministic") {
    auto again = jn_table_2way(spec, views[0], grid, cfg);
    REQUIRE(again.rows.size() == table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      CHECK(again.rows[i].theta == table.rows[i].theta);
      CHECK(again.rows[i].se == table.rows[i].se);
      CHECK(again.rows[i].p == table.rows[i].p);
    }
  }
}

TEST_CASE("two-way significance pattern has at most 2 flips") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> ub(-2.0, 2.0);
  auto cfg = SignificanceConfig::from_alpha(0.05);
  auto grid = build_grid({{"z", {-10.0, 10.0}}}, 200);
  for (int it = 0; it < 100; ++it) {
    auto spec = make_2way_spec(ub(rng), ub(rng), ub(rng));
    auto s = test::random_psd(rng, 2, 1e-3);
    spec.covar(0, 0) = s(0, 0);
    spec.covar(0, 2) = spec.covar(2, 0) = s(0, 1);
    spec.covar(2, 2) = s(1, 1);
    auto views = derive_role_views(spec.coef_names, "x", "z");
    auto table = jn_table_2way(spec, views[0], grid, cfg);
    int flips = 0;
    for (std::size_t i = 1; i < table.rows.size(); ++i)
      flips += table.rows[i].significant != table.rows[i - 1].significant;
    CHECK(flips <= 2);
  }
}

TEST_CASE("jnk_grid_3way") {
  std::mt19937 rng(42);
  auto spec = make_3way_spec(rng);
  auto cfg = SignificanceConfig::from_alpha(0.05);
  auto views = derive_role_views(spec.coef_names, "x", "z", std::optional<std::string>("w"));
  auto grid = build_grid({{"z", {-3.0, 3.0}}, {"w", {-2.0, 2.0}}}, 9);
  auto table = jnk_grid_3way(spec, views[0], grid, cfg);
  REQUIRE(table.rows.size() == 81);

  SUBCASE("origin cell recovers the main effect") {
    for (const auto& row : table.rows) {
      if (row.mod_vals[0] == 0.0 && row.mod_vals[1] == 0.0) {
        CHECK(row.theta == spec.coefs[1]);
        CHECK(row.se == doctest::Approx(std::sqrt(spec.covar(1, 1))).epsilon(1e-15));
      }
    }
  }
  SUBCASE("rows are lexicographic, first axis outer") {
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
      const auto& a = table.rows[i - 1];
      const auto& b = table.rows[i];
      bool ordered = a.mod_vals[0] < b.mod_vals[0] ||
                     (a.mod_vals[0] == b.mod_vals[0] && a.mod_vals[1] < b.mod_vals[1]);
      CHECK(ordered);
    }
  }
  SUBCASE("every cell's se matches the quadratic-form oracle") {
    const auto& v = views[0];
    std::size_t idx[4] = {v.idx_main, v.idx_two_way[0], v.idx_two_way[1], *v.idx_three_way};
    Matrix cov4(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) cov4(i, j) = spec.covar(idx[i], idx[j]);
    for (const auto& row : table.rows) {
      double m = row.mod_vals[0], w = row.mod_vals[1];
      double weights[4] = {1.0, m, w, m * w};
      CHECK(row.se * row.se ==
            doctest::Approx(quadratic_form_var(cov4, weights)).epsilon(1e-12));
    }
  }
}

TEST_CASE("three-way slice at w = 0 equals the two-way sub-spec") {
  std::mt19937 rng(77);
  auto spec = make_3way_spec(rng);
  // zero out everything involving w so the slice is exactly two-way
  for (std::size_t i : {3, 5, 6, 7}) {
    for (std::size_t j = 0; j < 8; ++j) {
      spec.covar(i, j) = 0.0;
      spec.covar(j, i) = 0.0;
    }
  }
  auto cfg = SignificanceConfig::from_alpha(0.05);
  auto views3 = derive_role_views(spec.coef_names, "x", "z", std::optional<std::string>("w"));
  auto grid3 = build_grid({{"z", {-3.0, 3.0}}, {"w", {-2.0, 2.0}}}, 5);
  auto table3 = jnk_grid_3way(spec, views3[0], grid3, cfg);

  ModelSpec sub;
  sub.coef_names = {"x", "z", "x:z"};
  sub.coefs = {spec.coefs[1], spec.coefs[2], spec.coefs[4]};
  sub.covar = Matrix(3, 3);
  std::size_t pick[3] = {1, 2, 4};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) sub.covar(i, j) = spec.covar(pick[i], pick[j]);
  sub.var_ranges = {{"x", {-3, 3}}, {"z", {-3, 3}}};
  auto views2 = derive_role_views(sub.coef_names, "x", "z");
  auto grid2 = build_grid({{"z", {-3.0, 3.0}}}, 5);
  auto table2 = jn_table_2way(sub, views2[0], grid2, cfg);

  for (const auto& row3 : table3.rows) {
    if (row3.mod_vals[1] != 0.0) continue;
    bool found = false;
    for (const auto& row2 : table2.rows) {
      if (row2.mod_vals[0] == row3.mod_vals[0]) {
        CHECK(row3.theta == doctest::Approx(row2.theta).epsilon(1e-12));
        CHECK(row3.se == doctest::Approx(row2.se).epsilon(1e-12));
        found = true;
      }
    }
    CHECK(found);
  }
}

TEST_CASE("run_freq") {
  auto cfg = SignificanceConfig::from_alpha(0.05);

  SUBCASE("two-way run yields 2 tables and 2 plots") {
    auto spec = make_2way_spec();
    auto result = run_freq(spec, {"x", "z"}, cfg, 50);
    CHECK(result.tables.size() == 2);
    CHECK(result.plot_specs.size() == 2);
    CHECK(result.boundaries.size() == 2);
    CHECK(result.tables[0].focal == "x");
    CHECK(result.tables[1].focal == "z");
  }
  SUBCASE("three-way run at range_size 50 yields 3 tables of 2500 rows") {
    std::mt19937 rng(3);
    auto spec = make_3way_spec(rng);
    auto result = run_freq(spec, {"x", "z", "w"}, cfg, 50);
    REQUIRE(result.tables.size() == 3);
    for (const auto& t : result.tables) CHECK(t.rows.size() == 2500);
    CHECK(result.plot_specs[0].kind == PlotKind::heatmap);
  }
  SUBCASE("role symmetry under argument swap") {
    auto spec = make_2way_spec();
    auto r1 = run_freq(spec, {"x", "z"}, cfg, 21);
    auto r2 = run_freq(spec, {"z", "x"}, cfg, 21);
    REQUIRE(r2.tables.size() == 2);
    CHECK(r2.tables[0].focal == r1.tables[1].focal);
    CHECK(r2.tables[1].focal == r1.tables[0].focal);
    for (std::size_t i = 0; i < r1.tables[0].rows.size(); ++i)
      CHECK(r1.tables[0].rows[i].theta == r2.tables[1].rows[i].theta);
  }
  SUBCASE("explicit ranges win over the spec") {
    auto spec = make_2way_spec();
    auto result = run_freq(spec, {"x", "z"}, cfg, 11, {{"z", {-1.0, 1.0}}});
    CHECK(result.tables[0].rows.front().mod_vals[0] == -1.0);
    CHECK(result.tables[0].rows.back().mod_vals[0] == 1.0);
  }
  SUBCASE("missing range") {
    auto spec = make_2way_spec();
    spec.var_ranges.erase("z");
    CHECK_THROWS_WITH_AS(run_freq(spec, {"x", "z"}, cfg, 11),
                         doctest::Contains("missing range for variable 'z'"), std::runtime_error);
  }
}

TEST_CASE("run_freq_grouped") {
  auto cfg = SignificanceConfig::from_alpha(0.05);
  auto spec = make_2way_spec();
  spec.group_label = "g1";
  auto spec2 = spec;
  spec2.group_label = "g2";
  auto spec3 = spec;
  spec3.group_label = "g3";

  SUBCASE("identical specs give identical results apart from labels") {
    auto results = run_freq_grouped({spec, spec2, spec3}, {"x", "z"}, cfg, 11);
    REQUIRE(results.size() == 3);
    CHECK(*results[0].group_label == "g1");
    CHECK(*results[2].group_label == "g3");
    for (std::size_t i = 0; i < results[0].tables[0].rows.size(); ++i)
      CHECK(results[0].tables[0].rows[i].theta == results[2].tables[0].rows[i].theta);
  }
  SUBCASE("empty list") {
    CHECK_THROWS_WITH_AS(run_freq_grouped({}, {"x", "z"}, cfg, 11), doctest::Contains("no groups"),
                         std::runtime_error);
  }
  SUBCASE("failing group is named") {
    spec2.var_ranges.erase("z");
    CHECK_THROWS_WITH_AS(run_freq_grouped({spec, spec2}, {"x", "z"}, cfg, 11),
                         doctest::Contains("group 'g2'"), std::runtime_error);
  }
  SUBCASE("missing label") {
    spec2.group_label.reset();
    CHECK_THROWS_WITH_AS(run_freq_grouped({spec, spec2}, {"x", "z"}, cfg, 11),
                         doctest::Contains("missing group_label"), std::runtime_error);
  }
}
