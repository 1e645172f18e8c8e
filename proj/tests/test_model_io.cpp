#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "jnk/model_io.hpp"

using namespace jnk;

namespace {

std::string basic_spec_text() {
  return R"({
  "coef_names": ["x", "z", "x:z"],
  "coefs": [1.0, 0.5, -0.25],
  "covar": [[0.04, 0.001, 0.0], [0.001, 0.03, 0.002], [0.0, 0.002, 0.01]],
  "var_ranges": {"x": [-3, 3], "z": [-2, 4]}
})";
}

std::vector<std::string> full_3way_names() {
  return {"(Intercept)", "x", "z", "w", "x:z", "x:w", "z:w", "x:z:w"};
}

}  // namespace

TEST_CASE("load_model_spec round trip") {
  auto spec = model_spec_from_json_text(basic_spec_text());
  CHECK(spec.coef_names == std::vector<std::string>{"x", "z", "x:z"});
  CHECK(spec.coefs[0] == 1.0);
  CHECK(spec.covar(1, 2) == 0.002);
  CHECK(spec.var_ranges.at("z") == std::pair<double, double>{-2.0, 4.0});
  CHECK_FALSE(spec.group_label.has_value());

  auto canonical = serialize_model_spec(spec);
  auto reloaded = model_spec_from_json_text(canonical);
  CHECK(serialize_model_spec(reloaded) == canonical);
}

TEST_CASE("load_model_spec validation errors") {
  SUBCASE("asymmetric covariance") {
    std::string text = R"({"coef_names": ["a", "b"], "coefs": [1, 2],
      "covar": [[1, 0.5], [0.6, 1]], "var_ranges": {"a": [0, 1], "b": [0, 1]}})";
    CHECK_THROWS_WITH_AS(model_spec_from_json_text(text),
                         doctest::Contains("asymmetric covariance"), std::runtime_error);
  }
  SUBCASE("symmetrized within tolerance") {
    std::string text = R"({"coef_names": ["a", "b"], "coefs": [1, 2],
      "covar": [[1, 0.5], [0.5000000001, 1]], "var_ranges": {"a": [0, 1], "b": [0, 1]}})";
    auto spec = model_spec_from_json_text(text);
    CHECK(spec.covar(0, 1) == spec.covar(1, 0));
    CHECK(spec.covar(0, 1) == doctest::Approx(0.50000000005).epsilon(1e-15));
  }
  SUBCASE("dimension mismatch") {
    std::string text = R"({"coef_names": ["a", "b", "c", "d"], "coefs": [1, 2, 3],
      "covar": [[1, 0], [0, 1]], "var_ranges": {}})";
    CHECK_THROWS_WITH_AS(model_spec_from_json_text(text), doctest::Contains("dimension mismatch"),
                         std::runtime_error);
  }
  SUBCASE("negative diagonal") {
    std::string text = R"({"coef_names": ["a"], "coefs": [1],
      "covar": [[-0.1]], "var_ranges": {}})";
    CHECK_THROWS_WITH_AS(model_spec_from_json_text(text),
                         doctest::Contains("negative variance diagonal"), std::runtime_error);
  }
  SUBCASE("bad range") {
    std::string text = R"({"coef_names": ["a"], "coefs": [1],
      "covar": [[0.1]], "var_ranges": {"a": [2, 2]}})";
    CHECK_THROWS_WITH_AS(model_spec_from_json_text(text), doctest::Contains("var_range"),
                         std::runtime_error);
  }
  SUBCASE("not json") {
    CHECK_THROWS_WITH_AS(model_spec_from_json_text("nope{"), doctest::Contains("parse failure"),
                         std::runtime_error);
  }
}

TEST_CASE("posterior csv parsing") {
  SUBCASE("passthrough") {
    std::string csv = "x,z,x:z\n";
    for (int i = 0; i < 10; ++i) csv += "1.5,0.25,-0.125\n";
    auto pdm = posterior_from_csv_text(csv, 0, 1);
    CHECK(pdm.param_names == std::vector<std::string>{"x", "z", "x:z"});
    CHECK(pdm.draws.rows == 10);
    CHECK(pdm.draws(9, 2) == -0.125);
  }
  SUBCASE("burn_in at row count") {
    std::string csv = "a\n";
    for (int i = 0; i < 10; ++i) csv += "1\n";
    CHECK_THROWS_WITH_AS(posterior_from_csv_text(csv, 10, 1), doctest::Contains("burn_in"),
                         std::runtime_error);
  }
  SUBCASE("non-numeric cell") {
    CHECK_THROWS_WITH_AS(posterior_from_csv_text("a,b\n1,oops\n2,3\n", 0, 1),
                         doctest::Contains("non-numeric"), std::runtime_error);
  }
  SUBCASE("empty body") {
    CHECK_THROWS_WITH_AS(posterior_from_csv_text("a,b\n", 0, 1), doctest::Contains("empty body"),
                         std::runtime_error);
  }
}

TEST_CASE("resolve_interaction_name") {
  std::vector<std::string> names = {"x", "z", "x:z"};
  CHECK(resolve_interaction_name(names, "x", "z") == "x:z");
  CHECK(resolve_interaction_name(names, "z", "x") == "x:z");

  std::vector<std::string> reversed = {"x", "z", "z:x"};
  CHECK(resolve_interaction_name(reversed, "x", "z") == "z:x");

  CHECK_THROWS_WITH_AS(resolve_interaction_name({"x", "z"}, "x", "z"),
                       doctest::Contains("interaction term not found"), std::runtime_error);
  CHECK_THROWS_WITH_AS(resolve_interaction_name({"x:z", "z:x"}, "x", "z"),
                       doctest::Contains("ambiguous"), std::runtime_error);

  std::vector<std::string> triple = {"x", "z", "w", "w:x:z"};
  CHECK(resolve_interaction_name(triple, "x", "z", std::optional<std::string>("w")) == "w:x:z");
}

TEST_CASE("derive_role_views two-way") {
  auto views = derive_role_views({"x", "z", "x:z"}, "x", "z");
  REQUIRE(views.size() == 2);
  CHECK(views[0].focal == "x");
  CHECK(views[0].moderators == std::vector<std::string>{"z"});
  CHECK(views[0].idx_main == 0);
  CHECK(views[0].idx_two_way == std::vector<std::size_t>{2});
  CHECK_FALSE(views[0].idx_three_way.has_value());
  CHECK(views[1].focal == "z");
  CHECK(views[1].idx_main == 1);
}

TEST_CASE("derive_role_views three-way index mapping") {
  auto names = full_3way_names();
  auto views = derive_role_views(names, "x", "z", std::optional<std::string>("w"));
  REQUIRE(views.size() == 3);

  // focal w uses main w, pairwise x:w and z:w, triple x:z:w
  const auto& vw = views[2];
  CHECK(vw.focal == "w");
  CHECK(vw.moderators == std::vector<std::string>{"x", "z"});
  CHECK(names[vw.idx_main] == "w");
  CHECK(names[vw.idx_two_way[0]] == "x:w");
  CHECK(names[vw.idx_two_way[1]] == "z:w");
  CHECK(names[*vw.idx_three_way] == "x:z:w");

  // focal x: (x; x:z, x:w; x:z:w)
  CHECK(names[views[0].idx_two_way[0]] == "x:z");
  CHECK(names[views[0].idx_two_way[1]] == "x:w");

  SUBCASE("index coverage across the three views") {
    std::map<std::size_t, int> counts;
    std::set<std::size_t> all;
    for (const auto& v : views) {
      all.insert(v.idx_main);
      ++counts[v.idx_main];
      for (auto i : v.idx_two_way) {
        all.insert(i);
        ++counts[i];
      }
      all.insert(*v.idx_three_way);
      ++counts[*v.idx_three_way];
    }
    CHECK(all.size() == 7);           // every non-intercept term, never the intercept
    CHECK(all.count(0) == 0);
    for (std::size_t i = 4; i <= 6; ++i) CHECK(counts[i] == 2);  // pairwise in 2 views
    CHECK(counts[7] == 3);                                       // triple in all 3
  }

  SUBCASE("invariant to interaction name ordering") {
    std::vector<std::string> shuffled = {"x", "z", "w", "z:x", "w:x", "w:z", "w:z:x", "(Intercept)"};
    auto v2 = derive_role_views(shuffled, "x", "z", std::optional<std::string>("w"));
    REQUIRE(v2.size() == 3);
    CHECK(shuffled[v2[0].idx_two_way[0]] == "z:x");
    CHECK(shuffled[v2[0].idx_two_way[1]] == "w:x");
    CHECK(shuffled[*v2[0].idx_three_way] == "w:z:x");
  }
}

TEST_CASE("derive_role_views errors") {
  CHECK_THROWS_WITH_AS(derive_role_views({"x", "z", "w", "x:z"}, "x", "z",
                                         std::optional<std::string>("w")),
                       doctest::Contains("interaction term not found"), std::runtime_error);
  CHECK_THROWS_WITH_AS(derive_role_views({"z", "x:z"}, "x", "z"),
                       doctest::Contains("parameter not found"), std::runtime_error);
}

TEST_CASE("grouped spec files") {
  std::string grouped = "[" + basic_spec_text() + "," + basic_spec_text() + "]";
  // group labels omitted: loading still works, grouping is checked downstream
  auto j1 = model_spec_from_json_text(basic_spec_text());
  CHECK(j1.coefs.size() == 3);
}
