#include "jnk/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace jnk {

Color Color::from_hex(const std::string& hex) {
  if (hex.size() != 7 || hex[0] != '#') throw std::invalid_argument("color must be #RRGGBB: " + hex);
  auto nibble = [&](char ch) -> int {
    if (ch >= '0' && ch <= '9') return ch - '0';
    if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
    if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
    throw std::invalid_argument("color must be #RRGGBB: " + hex);
  };
  Color c;
  c.r = static_cast<std::uint8_t>(nibble(hex[1]) * 16 + nibble(hex[2]));
  c.g = static_cast<std::uint8_t>(nibble(hex[3]) * 16 + nibble(hex[4]));
  c.b = static_cast<std::uint8_t>(nibble(hex[5]) * 16 + nibble(hex[6]));
  return c;
}

std::string Color::to_hex() const {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02X%02X%02X", r, g, b);
  return buf;
}

Color lerp(const Color& a, const Color& b, double t) {
  t = std::clamp(t, 0.0, 1.0);
  auto mix = [t](std::uint8_t x, std::uint8_t y) {
    return static_cast<std::uint8_t>(std::lround(x + (static_cast<double>(y) - x) * t));
  };
  return Color{mix(a.r, b.r), mix(a.g, b.g), mix(a.b, b.b)};
}

Color diverging_color(const StyleConfig& style, double t) {
  t = std::clamp(t, 0.0, 1.0);
  if (t <= 0.5) return lerp(style.color_low, style.color_mid, t * 2.0);
  return lerp(style.color_mid, style.color_high, (t - 0.5) * 2.0);
}

namespace {

// Fixed 3-decimal coordinates keep the output byte-stable across platforms.
std::string fmt3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

std::string fmt_tick(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  std::string s = buf;
  if (s == "-0") s = "0";
  return s;
}

std::string fmt2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += ch;
    }
  }
  return out;
}

struct LinMap {
  double lo = 0.0, hi = 1.0, p0 = 0.0, p1 = 1.0;
  double operator()(double v) const { return p0 + (v - lo) / (hi - lo) * (p1 - p0); }
};

struct Frame {
  double left, top, right, bottom;  // pixel edges of the plot area
};

void emit_header(std::ostringstream& svg, int w, int h) {
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w
      << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h << "\" fill=\"#FFFFFF\"/>\n";
}

void emit_title(std::ostringstream& svg, const PlotSpec& spec, int w) {
  if (spec.title.empty()) return;
  svg << "<text x=\"" << fmt3(w / 2.0)
      << "\" y=\"20.000\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
      << xml_escape(spec.title) << "</text>\n";
}

void emit_frame(std::ostringstream& svg, const Frame& f) {
  svg << "<rect x=\"" << fmt3(f.left) << "\" y=\"" << fmt3(f.top) << "\" width=\""
      << fmt3(f.right - f.left) << "\" height=\"" << fmt3(f.bottom - f.top)
      << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
}

void emit_x_tick(std::ostringstream& svg, double px, double y, const std::string& label) {
  svg << "<line x1=\"" << fmt3(px) << "\" y1=\"" << fmt3(y) << "\" x2=\"" << fmt3(px)
      << "\" y2=\"" << fmt3(y + 5.0) << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n"
      << "<text x=\"" << fmt3(px) << "\" y=\"" << fmt3(y + 17.0)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << label
      << "</text>\n";
}

void emit_y_tick(std::ostringstream& svg, double x, double py, const std::string& label) {
  svg << "<line x1=\"" << fmt3(x - 5.0) << "\" y1=\"" << fmt3(py) << "\" x2=\"" << fmt3(x)
      << "\" y2=\"" << fmt3(py) << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n"
      << "<text x=\"" << fmt3(x - 7.0) << "\" y=\"" << fmt3(py + 3.0)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << label
      << "</text>\n";
}

void emit_axis_labels(std::ostringstream& svg, const PlotSpec& spec, const Frame& f, int h) {
  if (!spec.x_label.empty())
    svg << "<text x=\"" << fmt3((f.left + f.right) / 2.0) << "\" y=\"" << fmt3(h - 8.0)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << xml_escape(spec.x_label) << "</text>\n";
  if (!spec.y_label.empty())
    svg << "<text x=\"14.000\" y=\"" << fmt3((f.top + f.bottom) / 2.0)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 14.000 "
        << fmt3((f.top + f.bottom) / 2.0) << ")\">" << xml_escape(spec.y_label) << "</text>\n";
}

void render_ribbon(std::ostringstream& svg, const PlotSpec& spec, const Frame& f) {
  const auto& pts = spec.ribbon;
  double ylo = pts[0].lower, yhi = pts[0].upper;
  for (const auto& p : pts) {
    ylo = std::min(ylo, p.lower);
    yhi = std::max(yhi, p.upper);
  }
  double pad = (yhi - ylo) > 0.0 ? 0.05 * (yhi - ylo) : 1.0;
  ylo -= pad;
  yhi += pad;
  LinMap xm{pts.front().m, pts.back().m, f.left, f.right};
  LinMap ym{ylo, yhi, f.bottom, f.top};

  // Ribbon segments: maximal runs of equal significance, each extended by one
  // point on the right so adjacent segments meet.
  std::size_t i = 0;
  while (i < pts.size()) {
    std::size_t j = i;
    while (j + 1 < pts.size() && pts[j + 1].significant == pts[i].significant) ++j;
    std::size_t end = std::min(j + 1, pts.size() - 1);
    const Color& fill = pts[i].significant ? spec.style.sig_color : spec.style.non_sig_color;
    svg << "<polygon fill=\"" << fill.to_hex() << "\" stroke=\"none\" points=\"";
    for (std::size_t k = i; k <= end; ++k)
      svg << fmt3(xm(pts[k].m)) << "," << fmt3(ym(pts[k].upper)) << " ";
    for (std::size_t k = end + 1; k-- > i;)
      svg << fmt3(xm(pts[k].m)) << "," << fmt3(ym(pts[k].lower)) << (k > i ? " " : "");
    svg << "\"/>\n";
    i = j + 1;
  }

  if (ylo < 0.0 && yhi > 0.0)
    svg << "<line x1=\"" << fmt3(f.left) << "\" y1=\"" << fmt3(ym(0.0)) << "\" x2=\""
        << fmt3(f.right) << "\" y2=\"" << fmt3(ym(0.0))
        << "\" stroke=\"#888888\" stroke-width=\"1\" stroke-dasharray=\"4,3\"/>\n";

  svg << "<polyline fill=\"none\" stroke=\"" << spec.style.line_color.to_hex()
      << "\" stroke-width=\"1.5\" points=\"";
  for (std::size_t k = 0; k < pts.size(); ++k)
    svg << fmt3(xm(pts[k].m)) << "," << fmt3(ym(pts[k].theta)) << (k + 1 < pts.size() ? " " : "");
  svg << "\"/>\n";

  emit_frame(svg, f);
  for (int t = 0; t < 5; ++t) {
    double vx = xm.lo + (xm.hi - xm.lo) * t / 4.0;
    emit_x_tick(svg, xm(vx), f.bottom, fmt_tick(vx));
    double vy = ylo + (yhi - ylo) * t / 4.0;
    emit_y_tick(svg, f.left, ym(vy), fmt_tick(vy));
  }
}

void render_heatmap(std::ostringstream& svg, const PlotSpec& spec, const Frame& f) {
  const std::size_t n1 = spec.axis1.size();
  const std::size_t n2 = spec.axis2.size();
  if (spec.cells.size() != n1 * n2) throw std::runtime_error("heatmap cell count does not match axes");
  const double cw = (f.right - f.left) / static_cast<double>(n1);
  const double ch = (f.bottom - f.top) / static_cast<double>(n2);

  double vmin = spec.cells[0].value, vmax = spec.cells[0].value;
  for (const auto& c : spec.cells) {
    vmin = std::min(vmin, c.value);
    vmax = std::max(vmax, c.value);
  }
  const double mid = spec.midpoint_half ? 0.5 : 0.0;
  vmin = std::min(vmin, mid);
  vmax = std::max(vmax, mid);
  auto to_t = [&](double v) {
    if (v <= mid) return mid > vmin ? 0.5 * (v - vmin) / (mid - vmin) : 0.5;
    return vmax > mid ? 0.5 + 0.5 * (v - mid) / (vmax - mid) : 0.5;
  };

  const double spacing = std::max(spec.style.grid_spacing * cw, 0.5);
  const double stroke = std::max(spec.style.grid_density * cw, 0.25);
  svg << "<defs>\n<pattern id=\"hatch\" patternUnits=\"userSpaceOnUse\" width=\"" << fmt3(spacing)
      << "\" height=\"" << fmt3(spacing) << "\">\n"
      << "<line x1=\"0.000\" y1=\"0.000\" x2=\"" << fmt3(spacing) << "\" y2=\"" << fmt3(spacing)
      << "\" stroke=\"" << spec.style.color_grid.to_hex() << "\" stroke-width=\"" << fmt3(stroke)
      << "\"/>\n"
      << "<line x1=\"0.000\" y1=\"" << fmt3(spacing) << "\" x2=\"" << fmt3(spacing)
      << "\" y2=\"0.000\" stroke=\"" << spec.style.color_grid.to_hex() << "\" stroke-width=\""
      << fmt3(stroke) << "\"/>\n</pattern>\n</defs>\n";

  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      const auto& cell = spec.cells[i * n2 + j];
      double x = f.left + static_cast<double>(i) * cw;
      double y = f.bottom - static_cast<double>(j + 1) * ch;
      Color fill = diverging_color(spec.style, to_t(cell.value));
      svg << "<rect x=\"" << fmt3(x) << "\" y=\"" << fmt3(y) << "\" width=\"" << fmt3(cw)
          << "\" height=\"" << fmt3(ch) << "\" fill=\"" << fill.to_hex() << "\"/>\n";
      if (cell.hatched)
        svg << "<rect x=\"" << fmt3(x) << "\" y=\"" << fmt3(y) << "\" width=\"" << fmt3(cw)
            << "\" height=\"" << fmt3(ch) << "\" fill=\"url(#hatch)\"/>\n";
      if (cell.label)
        svg << "<text x=\"" << fmt3(x + cw / 2.0) << "\" y=\"" << fmt3(y + ch / 2.0 + 3.5)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\" fill=\""
            << spec.style.color_values.to_hex() << "\">" << xml_escape(*cell.label) << "</text>\n";
    }
  }

  emit_frame(svg, f);
  auto tick_indices = [](std::size_t n) {
    std::vector<std::size_t> idx;
    if (n <= 7) {
      for (std::size_t i = 0; i < n; ++i) idx.push_back(i);
    } else {
      for (int t = 0; t < 5; ++t) idx.push_back((n - 1) * t / 4);
    }
    return idx;
  };
  for (std::size_t i : tick_indices(n1))
    emit_x_tick(svg, f.left + (static_cast<double>(i) + 0.5) * cw, f.bottom,
                fmt_tick(spec.axis1[i]));
  for (std::size_t j : tick_indices(n2))
    emit_y_tick(svg, f.left, f.bottom - (static_cast<double>(j) + 0.5) * ch,
                fmt_tick(spec.axis2[j]));
}

void render_density_fan(std::ostringstream& svg, const PlotSpec& spec, const Frame& f) {
  double xlo = spec.curves[0].xs.front(), xhi = spec.curves[0].xs.back();
  double yhi = 0.0;
  for (const auto& c : spec.curves) {
    xlo = std::min(xlo, c.xs.front());
    xhi = std::max(xhi, c.xs.back());
    for (double y : c.ys) yhi = std::max(yhi, y);
  }
  if (!(xhi > xlo)) {
    xlo -= 1.0;
    xhi += 1.0;
  }
  if (yhi <= 0.0) yhi = 1.0;
  LinMap xm{xlo, xhi, f.left, f.right};
  LinMap ym{0.0, yhi * 1.05, f.bottom, f.top};

  double mlo = spec.curves.front().mod_value, mhi = spec.curves.back().mod_value;
  for (const auto& c : spec.curves) {
    mlo = std::min(mlo, c.mod_value);
    mhi = std::max(mhi, c.mod_value);
  }
  for (const auto& c : spec.curves) {
    double t = mhi > mlo ? (c.mod_value - mlo) / (mhi - mlo) : 0.5;
    Color stroke = diverging_color(spec.style, t);
    svg << "<polyline fill=\"none\" stroke=\"" << stroke.to_hex()
        << "\" stroke-width=\"1.5\" points=\"";
    if (c.degenerate) {
      svg << fmt3(xm(c.xs.front())) << "," << fmt3(ym(0.0)) << " " << fmt3(xm(c.xs.front())) << ","
          << fmt3(ym(yhi));
    } else {
      for (std::size_t k = 0; k < c.xs.size(); ++k)
        svg << fmt3(xm(c.xs[k])) << "," << fmt3(ym(c.ys[k])) << (k + 1 < c.xs.size() ? " " : "");
    }
    svg << "\"/>\n";
  }

  emit_frame(svg, f);
  for (int t = 0; t < 5; ++t) {
    double vx = xlo + (xhi - xlo) * t / 4.0;
    emit_x_tick(svg, xm(vx), f.bottom, fmt_tick(vx));
    double vy = yhi * 1.05 * t / 4.0;
    emit_y_tick(svg, f.left, ym(vy), fmt_tick(vy));
  }
}

}  // namespace

PlotSpec build_ribbon(const ParamTable& table, const SignificanceConfig& config,
                      const StyleConfig& style) {
  if (table.moderator_names.size() != 1)
    throw std::invalid_argument("build_ribbon: table is not two-way");
  PlotSpec spec;
  spec.kind = PlotKind::ribbon;
  spec.style = style;
  spec.title = "Conditional effect of " + table.focal;
  spec.x_label = table.moderator_names[0];
  spec.y_label = "conditional effect of " + table.focal;
  for (const auto& row : table.rows) {
    RibbonPoint p;
    p.m = row.mod_vals[0];
    p.theta = row.theta;
    p.lower = row.theta - config.z_crit * row.se;
    p.upper = row.theta + config.z_crit * row.se;
    p.significant = row.significant;
    spec.ribbon.push_back(p);
  }
  return spec;
}

namespace {

PlotSpec heatmap_common(const StyleConfig& style, const std::string& focal,
                        const std::array<std::string, 2>& mods) {
  PlotSpec spec;
  spec.kind = PlotKind::heatmap;
  spec.style = style;
  spec.title = "Conditional effect of " + focal;
  spec.x_label = mods[0];
  spec.y_label = mods[1];
  return spec;
}

}  // namespace

PlotSpec build_heatmap(const ParamTable& grid_table, const StyleConfig& style, int range_size) {
  if (grid_table.moderator_names.size() != 2)
    throw std::invalid_argument("build_heatmap: table is not three-way");
  PlotSpec spec = heatmap_common(
      style, grid_table.focal, {grid_table.moderator_names[0], grid_table.moderator_names[1]});

  for (const auto& row : grid_table.rows) {
    if (spec.axis1.empty() || row.mod_vals[0] != spec.axis1.back())
      spec.axis1.push_back(row.mod_vals[0]);
  }
  std::size_t n2 = grid_table.rows.size() / spec.axis1.size();
  for (std::size_t j = 0; j < n2; ++j) spec.axis2.push_back(grid_table.rows[j].mod_vals[1]);

  const bool label_cells = range_size <= 7;
  for (const auto& row : grid_table.rows) {
    HeatmapCell cell;
    cell.m = row.mod_vals[0];
    cell.w = row.mod_vals[1];
    cell.value = row.theta;
    cell.hatched = style.crosshatch_non_sig ? !row.significant : row.significant;
    if (label_cells) cell.label = fmt2(row.theta);
    spec.cells.push_back(std::move(cell));
  }
  return spec;
}

PlotSpec build_heatmap(const BayesGrid3Way& grid, ValueChannel channel, const StyleConfig& style,
                       int range_size) {
  if (channel == ValueChannel::theta)
    throw std::invalid_argument("build_heatmap: Bayesian grids carry post_mean/bayes_p channels");
  PlotSpec spec = heatmap_common(style, grid.focal, grid.moderator_names);
  if (channel == ValueChannel::bayes_p) {
    spec.title = "Bayesian p-value of " + grid.focal;
    spec.midpoint_half = true;
  } else {
    spec.title = "Conditional posterior mean of " + grid.focal;
  }
  spec.axis1 = grid.axis1;
  spec.axis2 = grid.axis2;
  const bool label_cells = range_size <= 7;
  const std::size_t n2 = grid.axis2.size();
  for (std::size_t i = 0; i < grid.axis1.size(); ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      const auto& cs = grid.cells[i * n2 + j];
      HeatmapCell cell;
      cell.m = grid.axis1[i];
      cell.w = grid.axis2[j];
      cell.value = channel == ValueChannel::bayes_p ? cs.bayes_p : cs.post_mean;
      bool nonsig = grid.nonsig_mask[i * n2 + j];
      cell.hatched = style.crosshatch_non_sig ? nonsig : !nonsig;
      if (label_cells) cell.label = fmt2(cell.value);
      spec.cells.push_back(std::move(cell));
    }
  }
  return spec;
}

DensityCurve kernel_density(std::span<const double> draws, double mod_value) {
  if (draws.empty()) throw std::runtime_error("empty plot data");
  DensityCurve curve;
  curve.mod_value = mod_value;
  const std::size_t n = draws.size();

  double mean = 0.0;
  for (double v : draws) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : draws) ss += (v - mean) * (v - mean);
  double sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;

  std::vector<double> sorted(draws.begin(), draws.end());
  std::sort(sorted.begin(), sorted.end());
  auto quantile = [&](double p) {
    double idx = p * static_cast<double>(n - 1);
    std::size_t lo = static_cast<std::size_t>(idx);
    std::size_t hi = std::min(lo + 1, n - 1);
    double frac = idx - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
  };
  double iqr = quantile(0.75) - quantile(0.25);

  double sigma = std::min(sd, iqr / 1.34);
  if (sigma <= 0.0) sigma = sd;  // zero IQR but positive spread
  double bw = 0.9 * sigma * std::pow(static_cast<double>(n), -0.2);
  if (!(bw > 0.0)) {
    curve.degenerate = true;
    curve.xs = {sorted.front(), sorted.front()};
    curve.ys = {0.0, 1.0};
    return curve;
  }

  constexpr int kPoints = 512;
  double lo = sorted.front() - 3.0 * bw;
  double hi = sorted.back() + 3.0 * bw;
  curve.xs.resize(kPoints);
  curve.ys.resize(kPoints);
  const double norm = 1.0 / (static_cast<double>(n) * bw * std::sqrt(2.0 * M_PI));
  for (int k = 0; k < kPoints; ++k) {
    double x = lo + (hi - lo) * static_cast<double>(k) / (kPoints - 1);
    double acc = 0.0;
    for (double v : draws) {
      double u = (x - v) / bw;
      acc += std::exp(-0.5 * u * u);
    }
    curve.xs[k] = x;
    curve.ys[k] = norm * acc;
  }
  return curve;
}

PlotSpec build_density_fan(const ConditionalPosterior2Way& cp, const StyleConfig& style) {
  if (cp.mod_values.empty()) throw std::invalid_argument("build_density_fan: no moderator values");
  PlotSpec spec;
  spec.kind = PlotKind::density_fan;
  spec.style = style;
  spec.title = "Conditional posterior of " + cp.focal;
  spec.x_label = "conditional effect of " + cp.focal;
  spec.y_label = "density";

  std::vector<std::size_t> keep;
  const std::size_t n = cp.mod_values.size();
  if (n > 37) {
    for (int i = 0; i < 37; ++i)
      keep.push_back(static_cast<std::size_t>(
          std::lround(static_cast<double>(i) * static_cast<double>(n - 1) / 36.0)));
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    spec.warnings.push_back("density fan thinned to " + std::to_string(keep.size()) +
                            " moderator values");
  } else {
    for (std::size_t i = 0; i < n; ++i) keep.push_back(i);
  }
  if (keep.size() > 13)
    spec.warnings.push_back("density fan has " + std::to_string(keep.size()) +
                            " curves and may be hard to read");

  bool any_degenerate = false;
  for (std::size_t i : keep) {
    auto curve = kernel_density(cp.draws[i], cp.mod_values[i]);
    any_degenerate = any_degenerate || curve.degenerate;
    spec.curves.push_back(std::move(curve));
  }
  if (any_degenerate)
    spec.warnings.push_back("degenerate (constant) conditional posterior drawn as a spike");
  return spec;
}

std::string render_svg(const PlotSpec& spec, int width_px, int height_px) {
  if (width_px <= 0 || height_px <= 0) throw std::invalid_argument("invalid plot dimensions");
  bool empty = (spec.kind == PlotKind::ribbon && spec.ribbon.empty()) ||
               (spec.kind == PlotKind::heatmap && spec.cells.empty()) ||
               (spec.kind == PlotKind::density_fan && spec.curves.empty());
  if (empty) throw std::runtime_error("empty plot data");

  Frame f{62.0, 34.0, static_cast<double>(width_px) - 18.0,
          static_cast<double>(height_px) - 48.0};
  std::ostringstream svg;
  emit_header(svg, width_px, height_px);
  emit_title(svg, spec, width_px);
  switch (spec.kind) {
    case PlotKind::ribbon: render_ribbon(svg, spec, f); break;
    case PlotKind::heatmap: render_heatmap(svg, spec, f); break;
    case PlotKind::density_fan: render_density_fan(svg, spec, f); break;
  }
  emit_axis_labels(svg, spec, f, height_px);
  svg << "</svg>\n";
  return svg.str();
}

std::string plot_spec_to_json(const PlotSpec& spec) {
  nlohmann::json j;
  switch (spec.kind) {
    case PlotKind::ribbon: j["kind"] = "ribbon"; break;
    case PlotKind::heatmap: j["kind"] = "heatmap"; break;
    case PlotKind::density_fan: j["kind"] = "density_fan"; break;
  }
  j["title"] = spec.title;
  j["x_label"] = spec.x_label;
  j["y_label"] = spec.y_label;
  j["style"] = {{"sig_color", spec.style.sig_color.to_hex()},
                {"non_sig_color", spec.style.non_sig_color.to_hex()},
                {"line_color", spec.style.line_color.to_hex()},
                {"color_low", spec.style.color_low.to_hex()},
                {"color_mid", spec.style.color_mid.to_hex()},
                {"color_high", spec.style.color_high.to_hex()},
                {"color_grid", spec.style.color_grid.to_hex()},
                {"grid_density", spec.style.grid_density},
                {"grid_spacing", spec.style.grid_spacing},
                {"color_values", spec.style.color_values.to_hex()},
                {"crosshatch_non_sig", spec.style.crosshatch_non_sig}};
  if (spec.kind == PlotKind::ribbon) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : spec.ribbon)
      pts.push_back({{"m", p.m},
                     {"theta", p.theta},
                     {"lower", p.lower},
                     {"upper", p.upper},
                     {"significant", p.significant}});
    j["ribbon"] = pts;
  } else if (spec.kind == PlotKind::heatmap) {
    j["axis1"] = spec.axis1;
    j["axis2"] = spec.axis2;
    j["midpoint_half"] = spec.midpoint_half;
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : spec.cells) {
      nlohmann::json cell = {{"m", c.m}, {"w", c.w}, {"value", c.value}, {"hatched", c.hatched}};
      if (c.label) cell["label"] = *c.label;
      cells.push_back(cell);
    }
    j["cells"] = cells;
  } else {
    nlohmann::json curves = nlohmann::json::array();
    for (const auto& c : spec.curves)
      curves.push_back({{"mod_value", c.mod_value},
                        {"xs", c.xs},
                        {"ys", c.ys},
                        {"degenerate", c.degenerate}});
    j["curves"] = curves;
  }
  if (!spec.warnings.empty()) j["warnings"] = spec.warnings;
  return j.dump(2) + "\n";
}

}  // namespace jnk
