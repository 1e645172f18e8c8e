#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jnk/bayes_engine.hpp"
#include "jnk/core_math.hpp"
#include "jnk/param_table.hpp"
#include "jnk/style.hpp"

namespace jnk {

enum class PlotKind { ribbon, heatmap, density_fan };

enum class ValueChannel { theta, post_mean, bayes_p };

struct RibbonPoint {
  double m;
  double theta;
  double lower;
  double upper;
  bool significant;
};

struct HeatmapCell {
  double m;
  double w;
  double value;
  bool hatched;
  std::optional<std::string> label;
};

struct DensityCurve {
  double mod_value;
  std::vector<double> xs;
  std::vector<double> ys;
  bool degenerate = false;
};

//! Declarative plot description; render_svg turns it into bytes.
struct PlotSpec {
  PlotKind kind = PlotKind::ribbon;
  std::string title;
  std::string x_label;
  std::string y_label;
  StyleConfig style;

  std::vector<RibbonPoint> ribbon;

  std::vector<double> axis1;  // heatmap lattice, x axis
  std::vector<double> axis2;  // heatmap lattice, y axis
  std::vector<HeatmapCell> cells;
  bool midpoint_half = false;  // diverging midpoint at 0.5 instead of 0

  std::vector<DensityCurve> curves;

  std::vector<std::string> warnings;
};

//! Ribbon plot for a two-way table: pointwise bands theta -+ z_crit*se,
//! segmented by the significance flag.
PlotSpec build_ribbon(const ParamTable& table, const SignificanceConfig& config,
                      const StyleConfig& style);

//! Crosshatched diverging heatmap from a frequentist three-way table.
PlotSpec build_heatmap(const ParamTable& grid_table, const StyleConfig& style, int range_size);

//! Crosshatched diverging heatmap from a Bayesian grid; channel selects the
//! posterior mean or the Bayesian p value (midpoint 0.5).
PlotSpec build_heatmap(const BayesGrid3Way& grid, ValueChannel channel, const StyleConfig& style,
                       int range_size);

//! Overlapping kernel-density curves of the conditional posterior, one per
//! moderator value, colored along the diverging scale.
PlotSpec build_density_fan(const ConditionalPosterior2Way& cp, const StyleConfig& style);

//! Deterministic standalone SVG 1.1; identical specs yield identical bytes.
std::string render_svg(const PlotSpec& spec, int width_px, int height_px);

//! JSON mirror of the PlotSpec so external tooling can re-render.
std::string plot_spec_to_json(const PlotSpec& spec);

//! Diverging low -> mid -> high interpolation, t in [0,1] with mid at 0.5.
Color diverging_color(const StyleConfig& style, double t);

//! Gaussian kernel density with Silverman bandwidth on 512 points spanning
//! the data -+ 3 bandwidths. Degenerate (zero-spread) input yields a spike.
DensityCurve kernel_density(std::span<const double> draws, double mod_value);

}  // namespace jnk
