#include "jnk/freq_engine.hpp"

#include <cmath>
#include <stdexcept>

#include "jnk/model_io.hpp"

namespace jnk {

namespace {

std::pair<double, double> range_for(
    const ModelSpec& spec, const std::map<std::string, std::pair<double, double>>& overrides,
    const std::string& name) {
  if (auto it = overrides.find(name); it != overrides.end()) return it->second;
  if (auto it = spec.var_ranges.find(name); it != spec.var_ranges.end()) return it->second;
  throw std::runtime_error("missing range for variable '" + name + "'");
}

}  // namespace

ModeratorGrid build_grid(const std::vector<std::pair<std::string, std::pair<double, double>>>& axes,
                         int range_size) {
  if (range_size < 2) throw std::invalid_argument("range_size must be >= 2");
  ModeratorGrid grid;
  grid.range_size = range_size;
  for (const auto& [name, range] : axes) {
    auto [lo, hi] = range;
    if (!(lo < hi)) throw std::invalid_argument("invalid range for axis '" + name + "': min must be < max");
    std::vector<double> vals(range_size);
    double span = hi - lo;
    for (int i = 0; i < range_size; ++i)
      vals[i] = lo + span * static_cast<double>(i) / static_cast<double>(range_size - 1);
    vals.front() = lo;
    vals.back() = hi;
    for (int i = 1; i < range_size; ++i)
      if (!(vals[i] > vals[i - 1]))
        throw std::invalid_argument("degenerate grid for axis '" + name + "'");
    grid.axis_names.push_back(name);
    grid.axis_values.push_back(std::move(vals));
  }
  return grid;
}

ParamTable jn_table_2way(const ModelSpec& spec, const FocalView& view, const ModeratorGrid& grid,
                         const SignificanceConfig& config) {
  if (view.order != 2) throw std::invalid_argument("jn_table_2way: view is not two-way");
  if (grid.axis_names.size() != 1 || grid.axis_names[0] != view.moderators[0])
    throw std::invalid_argument("jn_table_2way: grid axis does not match the view moderator");

  const std::size_t i_main = view.idx_main;
  const std::size_t i_int = view.idx_two_way[0];
  const double b_main = spec.coefs[i_main];
  const double b_int = spec.coefs[i_int];
  const double v_main = spec.covar(i_main, i_main);
  const double cov_mi = spec.covar(i_main, i_int);
  const double v_int = spec.covar(i_int, i_int);

  ParamTable table;
  table.focal = view.focal;
  table.moderator_names = view.moderators;
  table.rows.reserve(grid.axis_values[0].size());
  for (double m : grid.axis_values[0]) {
    auto est = z_p(effect_2way(b_main, b_int, m), std::sqrt(var_2way(v_main, cov_mi, v_int, m)),
                   config);
    ParamRow row;
    row.mod_vals[0] = m;
    row.n_mods = 1;
    row.theta = est.theta;
    row.se = est.se;
    row.p = est.p;
    row.significant = est.significant;
    table.rows.push_back(row);
  }
  return table;
}

ParamTable jnk_grid_3way(const ModelSpec& spec, const FocalView& view, const ModeratorGrid& grid,
                         const SignificanceConfig& config) {
  if (view.order != 3) throw std::invalid_argument("jnk_grid_3way: view is not three-way");
  if (grid.axis_names.size() != 2 || grid.axis_names[0] != view.moderators[0] ||
      grid.axis_names[1] != view.moderators[1])
    throw std::invalid_argument("jnk_grid_3way: grid axes do not match the view moderators");

  const std::size_t idx[4] = {view.idx_main, view.idx_two_way[0], view.idx_two_way[1],
                              *view.idx_three_way};
  Matrix cov4(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) cov4(i, j) = spec.covar(idx[i], idx[j]);
  const double b_main = spec.coefs[idx[0]];
  const double b_m = spec.coefs[idx[1]];
  const double b_w = spec.coefs[idx[2]];
  const double b_mw = spec.coefs[idx[3]];

  ParamTable table;
  table.focal = view.focal;
  table.moderator_names = view.moderators;
  table.rows.reserve(grid.axis_values[0].size() * grid.axis_values[1].size());
  for (double m : grid.axis_values[0]) {
    for (double w : grid.axis_values[1]) {
      auto est = z_p(effect_3way(b_main, b_m, b_w, b_mw, m, w), std::sqrt(var_3way(cov4, m, w)),
                     config);
      ParamRow row;
      row.mod_vals = {m, w};
      row.n_mods = 2;
      row.theta = est.theta;
      row.se = est.se;
      row.p = est.p;
      row.significant = est.significant;
      table.rows.push_back(row);
    }
  }
  return table;
}

FreqResult run_freq(const ModelSpec& spec, const std::vector<std::string>& theta_names,
                    const SignificanceConfig& config, int range_size,
                    const std::map<std::string, std::pair<double, double>>& explicit_ranges,
                    const StyleConfig& style) {
  if (theta_names.size() != 2 && theta_names.size() != 3)
    throw std::invalid_argument("run_freq: need 2 or 3 theta names");

  std::optional<std::string> theta_3;
  if (theta_names.size() == 3) theta_3 = theta_names[2];
  auto views = derive_role_views(spec.coef_names, theta_names[0], theta_names[1], theta_3);

  FreqResult result;
  result.group_label = spec.group_label;
  std::string title_suffix = spec.group_label ? " [group " + *spec.group_label + "]" : "";

  for (const auto& view : views) {
    std::vector<std::pair<std::string, std::pair<double, double>>> axes;
    for (const auto& mod : view.moderators)
      axes.emplace_back(mod, range_for(spec, explicit_ranges, mod));
    auto grid = build_grid(axes, range_size);

    if (view.order == 2) {
      auto table = jn_table_2way(spec, view, grid, config);
      auto plot = build_ribbon(table, config, style);
      plot.title = "Conditional effect of " + view.focal + title_suffix;

      const std::size_t i_main = view.idx_main;
      const std::size_t i_int = view.idx_two_way[0];
      auto roots = jn_boundaries_2way(spec.coefs[i_main], spec.coefs[i_int],
                                      spec.covar(i_main, i_main), spec.covar(i_main, i_int),
                                      spec.covar(i_int, i_int), config);
      std::vector<BoundaryRoot> boundary;
      auto [lo, hi] = axes[0].second;
      for (double r : roots) boundary.push_back({r, r >= lo && r <= hi});

      result.tables.push_back(std::move(table));
      result.boundaries.push_back(std::move(boundary));
      result.plot_specs.push_back(std::move(plot));
    } else {
      auto table = jnk_grid_3way(spec, view, grid, config);
      auto plot = build_heatmap(table, style, range_size);
      plot.title = "Conditional effect of " + view.focal + title_suffix;
      result.tables.push_back(std::move(table));
      result.boundaries.emplace_back();
      result.plot_specs.push_back(std::move(plot));
    }
  }
  return result;
}

std::vector<FreqResult> run_freq_grouped(
    const std::vector<ModelSpec>& specs, const std::vector<std::string>& theta_names,
    const SignificanceConfig& config, int range_size,
    const std::map<std::string, std::pair<double, double>>& explicit_ranges,
    const StyleConfig& style) {
  if (specs.empty()) throw std::runtime_error("no groups");
  std::vector<FreqResult> results;
  for (std::size_t g = 0; g < specs.size(); ++g) {
    if (!specs[g].group_label)
      throw std::runtime_error("group " + std::to_string(g + 1) + ": missing group_label");
    try {
      results.push_back(run_freq(specs[g], theta_names, config, range_size, explicit_ranges, style));
    } catch (const std::exception& e) {
      throw std::runtime_error("group '" + *specs[g].group_label + "': " + e.what());
    }
  }
  return results;
}

}  // namespace jnk
