#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jnk/core_math.hpp"
#include "jnk/model_spec.hpp"
#include "jnk/param_table.hpp"
#include "jnk/render.hpp"

namespace jnk {

struct BoundaryRoot {
  double value;
  bool inside_range;
};

//! One frequentist run: a table, a plot spec and (two-way) the analytic JN
//! boundary roots per focal view.
struct FreqResult {
  std::vector<ParamTable> tables;
  std::vector<std::vector<BoundaryRoot>> boundaries;  // empty lists for three-way views
  std::vector<PlotSpec> plot_specs;
  std::optional<std::string> group_label;
};

//! Uniform inclusive lattice over the given axes. range_size >= 2.
ModeratorGrid build_grid(const std::vector<std::pair<std::string, std::pair<double, double>>>& axes,
                         int range_size);

//! Pointwise two-way conditional-effect table over a 1-axis grid.
ParamTable jn_table_2way(const ModelSpec& spec, const FocalView& view, const ModeratorGrid& grid,
                         const SignificanceConfig& config);

//! Three-way conditional-effect lattice (Johnson-Neyman-Krause grid).
ParamTable jnk_grid_3way(const ModelSpec& spec, const FocalView& view, const ModeratorGrid& grid,
                         const SignificanceConfig& config);

//! Full frequentist pipeline: derive views, build grids, evaluate tables,
//! attach boundaries (two-way) and plot specs. explicit_ranges override the
//! spec's var_ranges.
FreqResult run_freq(const ModelSpec& spec, const std::vector<std::string>& theta_names,
                    const SignificanceConfig& config, int range_size,
                    const std::map<std::string, std::pair<double, double>>& explicit_ranges = {},
                    const StyleConfig& style = {});

//! Per-group runs over a list of labeled specs; the first failing group
//! aborts with its label in the message.
std::vector<FreqResult> run_freq_grouped(
    const std::vector<ModelSpec>& specs, const std::vector<std::string>& theta_names,
    const SignificanceConfig& config, int range_size,
    const std::map<std::string, std::pair<double, double>>& explicit_ranges = {},
    const StyleConfig& style = {});

}  // namespace jnk
