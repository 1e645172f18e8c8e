#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jnk/bayes_engine.hpp"
#include "jnk/freq_engine.hpp"
#include "jnk/model_io.hpp"
#include "jnk/render.hpp"

namespace fs = std::filesystem;
using namespace jnk;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;
  std::string theta1, theta2, theta3;
  std::string theta1_vals, theta2_vals, theta3_vals;
  double alpha = 0.05;
  int range_size = 50;
  std::string thresholds = "0.05,0.95";
  std::size_t burn_in = 0;
  std::size_t thin = 1;
  bool grouped = false;
  std::string out = ".";
  int width = 800;
  int height = 600;

  std::string sig_color, non_sig_color, line_color;
  std::string color_low, color_mid, color_high, color_grid, color_values;
  double grid_density = 0.01;
  double grid_spacing = 0.1;
  bool crosshatch_non_sig = true;
};

std::vector<double> parse_vals(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  try {
    if (text.find(':') != std::string::npos) {
      double lo, hi;
      int count;
      char extra;
      if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &lo, &hi, &count, &extra) != 3 || count < 2 ||
          !(lo < hi))
        throw UsageError(flag + ": expected min:max:count with min < max and count >= 2");
      for (int i = 0; i < count; ++i)
        out.push_back(lo + (hi - lo) * static_cast<double>(i) / (count - 1));
      return out;
    }
    std::istringstream in(text);
    std::string cell;
    while (std::getline(in, cell, ',')) {
      std::size_t pos = 0;
      out.push_back(std::stod(cell, &pos));
      if (pos != cell.size()) throw std::invalid_argument(cell);
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError(flag + ": malformed value list '" + text + "'");
  }
  if (out.empty()) throw UsageError(flag + ": empty value list");
  return out;
}

std::pair<double, double> parse_thresholds(const std::string& text) {
  double t1, t2;
  char extra;
  if (std::sscanf(text.c_str(), "%lf,%lf%c", &t1, &t2, &extra) != 2 ||
      !(t1 > 0.0 && t1 < 1.0 && t2 > 0.0 && t2 < 1.0 && t1 < t2))
    throw UsageError("--thresholds: expected t1,t2 with 0 < t1 < t2 < 1");
  return {t1, t2};
}

StyleConfig make_style(const Options& opt) {
  StyleConfig style;
  auto set = [](Color& dst, const std::string& hex) {
    if (!hex.empty()) dst = Color::from_hex(hex);
  };
  try {
    set(style.sig_color, opt.sig_color);
    set(style.non_sig_color, opt.non_sig_color);
    set(style.line_color, opt.line_color);
    set(style.color_low, opt.color_low);
    set(style.color_mid, opt.color_mid);
    set(style.color_high, opt.color_high);
    set(style.color_grid, opt.color_grid);
    set(style.color_values, opt.color_values);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  style.grid_density = opt.grid_density;
  style.grid_spacing = opt.grid_spacing;
  style.crosshatch_non_sig = opt.crosshatch_non_sig;
  return style;
}

std::string sanitize(const std::string& name) {
  std::string out;
  for (char ch : name) {
    char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    out += (std::islower(static_cast<unsigned char>(lower)) ||
            std::isdigit(static_cast<unsigned char>(lower)))
               ? lower
               : '_';
  }
  return out.empty() ? "unnamed" : out;
}

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Content is assembled in memory and written in one shot; a failed view
// leaves no partial file behind.
void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) {
    out.close();
    fs::remove(path);
    throw std::runtime_error("write failed for " + path.string());
  }
}

std::string freq_table_csv(const ParamTable& table) {
  std::ostringstream csv;
  csv << (table.moderator_names.size() == 2 ? "mod_val_1,mod_val_2" : "mod_val_1")
      << ",theta,se,p,significant\n";
  for (const auto& row : table.rows) {
    csv << g17(row.mod_vals[0]);
    if (row.n_mods == 2) csv << "," << g17(row.mod_vals[1]);
    csv << "," << g17(row.theta) << "," << g17(row.se) << "," << g17(row.p) << ","
        << (row.significant ? "true" : "false") << "\n";
  }
  return csv.str();
}

void emit_warnings(const PlotSpec& plot) {
  for (const auto& w : plot.warnings) std::cerr << "warning: " << w << "\n";
}

void run_freq_mode(const Options& opt, bool three_way) {
  auto config = SignificanceConfig::from_alpha(opt.alpha);
  auto style = make_style(opt);
  std::vector<std::string> thetas = {opt.theta1, opt.theta2};
  if (three_way) thetas.push_back(opt.theta3);

  std::map<std::string, std::pair<double, double>> overrides;
  auto add_override = [&](const std::string& theta, const std::string& vals,
                          const std::string& flag) {
    if (vals.empty()) return;
    auto v = parse_vals(vals, flag);
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    if (!(*lo < *hi)) throw UsageError(flag + ": values span an empty range");
    overrides[theta] = {*lo, *hi};
  };
  add_override(opt.theta1, opt.theta1_vals, "--theta1-vals");
  add_override(opt.theta2, opt.theta2_vals, "--theta2-vals");
  if (three_way) add_override(opt.theta3, opt.theta3_vals, "--theta3-vals");

  auto specs = load_model_specs(opt.input);
  std::vector<FreqResult> results;
  if (opt.grouped) {
    results = run_freq_grouped(specs, thetas, config, opt.range_size, overrides, style);
  } else {
    if (specs.size() != 1)
      throw std::runtime_error("input holds " + std::to_string(specs.size()) +
                               " specs; use --grouped for grouped files");
    results.push_back(run_freq(specs[0], thetas, config, opt.range_size, overrides, style));
  }

  for (const auto& result : results) {
    fs::path dir = opt.out;
    std::string prefix;
    if (opt.grouped) {
      dir /= sanitize(*result.group_label);
      prefix = *result.group_label + " / ";
    }
    fs::create_directories(dir);
    for (std::size_t v = 0; v < result.tables.size(); ++v) {
      const auto& table = result.tables[v];
      std::string stem = sanitize(table.focal);
      std::string csv = freq_table_csv(table);
      std::string svg = render_svg(result.plot_specs[v], opt.width, opt.height);
      write_file(dir / (stem + "_table.csv"), csv);
      write_file(dir / (stem + "_plot.svg"), svg);
      emit_warnings(result.plot_specs[v]);

      if (!three_way) {
        std::ostringstream line;
        line << prefix << table.focal << ": JN boundaries:";
        if (result.boundaries[v].empty()) {
          line << " none";
        } else {
          for (const auto& root : result.boundaries[v]) {
            line << " " << g17(root.value);
            if (!root.inside_range) line << " (outside range)";
          }
        }
        std::cout << line.str() << "\n";
      } else {
        std::size_t sig = 0;
        for (const auto& row : table.rows) sig += row.significant ? 1 : 0;
        std::cout << prefix << table.focal << ": significant cells: " << sig << "/"
                  << table.rows.size() << "\n";
      }
    }
  }
}

std::string bayes2_csv(const ConditionalPosterior2Way& cp, std::pair<double, double> thresholds) {
  std::ostringstream csv;
  csv << "mod_val_1,post_mean,post_sd,bayes_p,nonsignificant\n";
  for (std::size_t i = 0; i < cp.mod_values.size(); ++i) {
    const auto& s = cp.summaries[i];
    csv << g17(cp.mod_values[i]) << "," << g17(s.post_mean) << "," << g17(s.post_sd) << ","
        << g17(s.bayes_p) << "," << (bayes_nonsignificant(s.bayes_p, thresholds) ? "true" : "false")
        << "\n";
  }
  return csv.str();
}

std::string bayes3_csv(const BayesGrid3Way& grid) {
  std::ostringstream csv;
  csv << "mod_val_1,mod_val_2,post_mean,post_sd,bayes_p,nonsignificant\n";
  const std::size_t n2 = grid.axis2.size();
  for (std::size_t i = 0; i < grid.axis1.size(); ++i)
    for (std::size_t j = 0; j < n2; ++j) {
      const auto& s = grid.cells[i * n2 + j];
      csv << g17(grid.axis1[i]) << "," << g17(grid.axis2[j]) << "," << g17(s.post_mean) << ","
          << g17(s.post_sd) << "," << g17(s.bayes_p) << ","
          << (grid.nonsig_mask[i * n2 + j] ? "true" : "false") << "\n";
    }
  return csv.str();
}

std::vector<std::pair<std::string, PosteriorDrawMatrix>> load_bayes_groups(const Options& opt) {
  std::vector<std::pair<std::string, PosteriorDrawMatrix>> groups;
  if (!fs::is_directory(opt.input))
    throw std::runtime_error("--grouped Bayesian runs expect --input to be a directory of CSVs");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(opt.input))
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& file : files)
    groups.emplace_back(file.stem().string(), load_posterior_csv(file.string(), opt.burn_in, opt.thin));
  if (groups.empty()) throw std::runtime_error("no groups");
  return groups;
}

void run_bayes2_mode(const Options& opt) {
  auto style = make_style(opt);
  auto thresholds = parse_thresholds(opt.thresholds);
  auto t1_vals = parse_vals(opt.theta1_vals, "--theta1-vals");
  auto t2_vals = parse_vals(opt.theta2_vals, "--theta2-vals");

  std::vector<std::pair<std::string, std::array<ConditionalPosterior2Way, 2>>> runs;
  if (opt.grouped) {
    runs = run_bayes_grouped_2way(load_bayes_groups(opt), opt.theta1, opt.theta2, t1_vals, t2_vals);
  } else {
    auto pdm = load_posterior_csv(opt.input, opt.burn_in, opt.thin);
    auto retained = preprocess_draws(pdm);
    runs.emplace_back("", conditional_posterior_2way(retained, pdm.param_names, opt.theta1,
                                                     opt.theta2, t1_vals, t2_vals));
  }

  for (const auto& [label, views] : runs) {
    fs::path dir = opt.out;
    std::string prefix;
    if (opt.grouped) {
      dir /= sanitize(label);
      prefix = label + " / ";
    }
    fs::create_directories(dir);
    for (const auto& cp : views) {
      std::string stem = sanitize(cp.focal);
      auto plot = build_density_fan(cp, style);
      std::string csv = bayes2_csv(cp, thresholds);
      std::string svg = render_svg(plot, opt.width, opt.height);
      write_file(dir / (stem + "_table.csv"), csv);
      write_file(dir / (stem + "_plot.svg"), svg);
      emit_warnings(plot);
      std::size_t nonsig = 0;
      for (const auto& s : cp.summaries) nonsig += bayes_nonsignificant(s.bayes_p, thresholds);
      std::cout << prefix << cp.focal << ": nonsignificant at " << nonsig << "/"
                << cp.mod_values.size() << " moderator values\n";
    }
  }
}

void run_bayes3_mode(const Options& opt) {
  auto style = make_style(opt);
  auto thresholds = parse_thresholds(opt.thresholds);
  std::array<std::vector<double>, 3> vals = {parse_vals(opt.theta1_vals, "--theta1-vals"),
                                             parse_vals(opt.theta2_vals, "--theta2-vals"),
                                             parse_vals(opt.theta3_vals, "--theta3-vals")};

  std::vector<std::pair<std::string, std::array<BayesGrid3Way, 3>>> runs;
  if (opt.grouped) {
    runs = run_bayes_grouped_3way(load_bayes_groups(opt), opt.theta1, opt.theta2, opt.theta3, vals,
                                  thresholds);
  } else {
    auto pdm = load_posterior_csv(opt.input, opt.burn_in, opt.thin);
    auto retained = preprocess_draws(pdm);
    runs.emplace_back("", conditional_posterior_3way(retained, pdm.param_names, opt.theta1,
                                                     opt.theta2, opt.theta3, vals, thresholds));
  }

  for (const auto& [label, grids] : runs) {
    fs::path dir = opt.out;
    std::string prefix;
    if (opt.grouped) {
      dir /= sanitize(label);
      prefix = label + " / ";
    }
    fs::create_directories(dir);
    for (const auto& grid : grids) {
      std::string stem = sanitize(grid.focal);
      int label_size = static_cast<int>(std::max(grid.axis1.size(), grid.axis2.size()));
      auto mean_plot = build_heatmap(grid, ValueChannel::post_mean, style, label_size);
      auto p_plot = build_heatmap(grid, ValueChannel::bayes_p, style, label_size);
      write_file(dir / (stem + "_table.csv"), bayes3_csv(grid));
      write_file(dir / (stem + "_plot.svg"), render_svg(mean_plot, opt.width, opt.height));
      write_file(dir / (stem + "_bayesp_plot.svg"), render_svg(p_plot, opt.width, opt.height));
      std::size_t nonsig = 0;
      for (bool b : grid.nonsig_mask) nonsig += b ? 1 : 0;
      std::cout << prefix << grid.focal << ": nonsignificant cells: " << nonsig << "/"
                << grid.nonsig_mask.size() << "\n";
    }
  }
}

void add_common(CLI::App* sub, Options& opt, bool needs_theta3) {
  sub->add_option("--input", opt.input, "model spec JSON or posterior CSV")->required();
  sub->add_option("--theta1", opt.theta1, "first interaction variable")->required();
  sub->add_option("--theta2", opt.theta2, "second interaction variable")->required();
  if (needs_theta3)
    sub->add_option("--theta3", opt.theta3, "third interaction variable")->required();
  sub->add_option("--theta1-vals", opt.theta1_vals, "comma list or min:max:count");
  sub->add_option("--theta2-vals", opt.theta2_vals, "comma list or min:max:count");
  if (needs_theta3) sub->add_option("--theta3-vals", opt.theta3_vals, "comma list or min:max:count");
  sub->add_option("--alpha", opt.alpha, "significance level (default 0.05)");
  sub->add_option("--range-size", opt.range_size, "grid points per axis (default 50)");
  sub->add_option("--thresholds", opt.thresholds, "Bayesian nonsignificance interval t1,t2");
  sub->add_option("--burn-in", opt.burn_in, "posterior burn-in iterations");
  sub->add_option("--thin", opt.thin, "posterior thinning step");
  sub->add_flag("--grouped", opt.grouped, "per-group run over a grouped input");
  sub->add_option("--out", opt.out, "output directory")->required();
  sub->add_option("--width", opt.width, "plot width in px (default 800)");
  sub->add_option("--height", opt.height, "plot height in px (default 600)");

  sub->add_option("--sig-color", opt.sig_color, "hex color for significant ribbon fill");
  sub->add_option("--non-sig-color", opt.non_sig_color, "hex color for non-significant fill");
  sub->add_option("--line-color", opt.line_color, "hex color for the estimate line");
  sub->add_option("--color-low", opt.color_low, "diverging scale low color");
  sub->add_option("--color-mid", opt.color_mid, "diverging scale midpoint color");
  sub->add_option("--color-high", opt.color_high, "diverging scale high color");
  sub->add_option("--color-grid", opt.color_grid, "crosshatch line color");
  sub->add_option("--grid-density", opt.grid_density, "crosshatch stroke width (cell units)");
  sub->add_option("--grid-spacing", opt.grid_spacing, "crosshatch line gap (cell units)");
  sub->add_option("--color-values", opt.color_values, "cell label text color");
  sub->add_option("--crosshatch-non-sig", opt.crosshatch_non_sig,
                  "hatch the non-significant region (default true)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Johnson-Neyman significance regions and three-way interaction heatmaps"};
  app.require_subcommand(1);
  Options opt;
  auto* freq2 = app.add_subcommand("freq2", "two-way frequentist analysis");
  auto* freq3 = app.add_subcommand("freq3", "three-way frequentist analysis");
  auto* bayes2 = app.add_subcommand("bayes2", "two-way Bayesian analysis");
  auto* bayes3 = app.add_subcommand("bayes3", "three-way Bayesian analysis");
  add_common(freq2, opt, false);
  add_common(freq3, opt, true);
  add_common(bayes2, opt, false);
  add_common(bayes3, opt, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!(opt.alpha > 0.0 && opt.alpha < 1.0)) throw UsageError("--alpha must be in (0,1)");
    if (opt.range_size < 2) throw UsageError("--range-size must be >= 2");
    if (opt.thin < 1) throw UsageError("--thin must be >= 1");
    if (opt.width <= 0 || opt.height <= 0) throw UsageError("--width/--height must be positive");
    parse_thresholds(opt.thresholds);
    bool is_bayes = bayes2->parsed() || bayes3->parsed();
    if (is_bayes) {
      if (opt.theta1_vals.empty() || opt.theta2_vals.empty() ||
          (bayes3->parsed() && opt.theta3_vals.empty()))
        throw UsageError("Bayesian runs require explicit --thetaK-vals for every theta");
      parse_vals(opt.theta1_vals, "--theta1-vals");
      parse_vals(opt.theta2_vals, "--theta2-vals");
      if (bayes3->parsed()) parse_vals(opt.theta3_vals, "--theta3-vals");
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (freq2->parsed()) run_freq_mode(opt, false);
    else if (freq3->parsed()) run_freq_mode(opt, true);
    else if (bayes2->parsed()) run_bayes2_mode(opt);
    else run_bayes3_mode(opt);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
