#include "jnk/bayes_engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jnk/model_io.hpp"

namespace jnk {

namespace {

std::size_t column_of(const std::vector<std::string>& names, const std::string& name) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw std::runtime_error("parameter not found: " + name);
  return static_cast<std::size_t>(it - names.begin());
}

ConditionalSummary summarize(std::span<const double> draws) {
  ConditionalSummary s;
  double sum = 0.0;
  std::size_t pos = 0;
  for (double v : draws) {
    sum += v;
    if (v > 0.0) ++pos;
  }
  const double n = static_cast<double>(draws.size());
  s.post_mean = sum / n;
  double ss = 0.0;
  for (double v : draws) {
    double d = v - s.post_mean;
    ss += d * d;
  }
  s.post_sd = std::sqrt(ss / n);
  s.bayes_p = static_cast<double>(pos) / n;
  return s;
}

void check_thresholds(std::pair<double, double> t) {
  if (!(t.first > 0.0 && t.first < 1.0 && t.second > 0.0 && t.second < 1.0 && t.first < t.second))
    throw std::runtime_error("invalid thresholds: need 0 < t1 < t2 < 1");
}

}  // namespace

Matrix preprocess_draws(const PosteriorDrawMatrix& pdm) {
  pdm.validate();
  std::vector<std::size_t> keep;
  for (std::size_t r = pdm.burn_in; r < pdm.draws.rows; r += pdm.thin) keep.push_back(r);
  if (keep.size() < 2) throw std::runtime_error("fewer than 2 draws remain after burn-in/thinning");
  Matrix out(keep.size(), pdm.draws.cols);
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < pdm.draws.cols; ++j) out(i, j) = pdm.draws(keep[i], j);
  return out;
}

double bayes_p(std::span<const double> draws) {
  if (draws.empty()) throw std::runtime_error("empty draw vector");
  std::size_t pos = 0;
  for (double v : draws)
    if (v > 0.0) ++pos;
  return static_cast<double>(pos) / static_cast<double>(draws.size());
}

bool bayes_nonsignificant(double p, std::pair<double, double> thresholds) {
  return p >= thresholds.first && p <= thresholds.second;
}

std::array<ConditionalPosterior2Way, 2> conditional_posterior_2way(
    const Matrix& draws, const std::vector<std::string>& names, const std::string& theta_1,
    const std::string& theta_2, const std::vector<double>& theta_1_vals,
    const std::vector<double>& theta_2_vals) {
  if (theta_1_vals.empty() || theta_2_vals.empty())
    throw std::runtime_error("moderator values must be supplied for Bayesian runs");
  const std::size_t c1 = column_of(names, theta_1);
  const std::size_t c2 = column_of(names, theta_2);
  const std::size_t ci = column_of(names, resolve_interaction_name(names, theta_1, theta_2));

  auto one_view = [&](const std::string& focal, std::size_t c_main, const std::string& mod,
                      const std::vector<double>& vals) {
    ConditionalPosterior2Way cp;
    cp.focal = focal;
    cp.moderator = mod;
    cp.mod_values = vals;
    for (double v : vals) {
      std::vector<double> cond(draws.rows);
      for (std::size_t s = 0; s < draws.rows; ++s) cond[s] = draws(s, c_main) + draws(s, ci) * v;
      cp.summaries.push_back(summarize(cond));
      cp.draws.push_back(std::move(cond));
    }
    return cp;
  };

  return {one_view(theta_1, c1, theta_2, theta_2_vals),
          one_view(theta_2, c2, theta_1, theta_1_vals)};
}

std::array<BayesGrid3Way, 3> conditional_posterior_3way(
    const Matrix& draws, const std::vector<std::string>& names, const std::string& theta_1,
    const std::string& theta_2, const std::string& theta_3,
    const std::array<std::vector<double>, 3>& theta_vals, std::pair<double, double> thresholds) {
  check_thresholds(thresholds);
  for (const auto& vals : theta_vals)
    if (vals.empty()) throw std::runtime_error("moderator values must be supplied for Bayesian runs");

  const std::array<std::string, 3> thetas = {theta_1, theta_2, theta_3};
  const std::size_t c_triple =
      column_of(names, resolve_interaction_name(names, theta_1, theta_2, theta_3));

  std::array<BayesGrid3Way, 3> out;
  for (std::size_t k = 0; k < 3; ++k) {
    const std::string& focal = thetas[k];
    std::array<std::string, 2> mods;
    std::array<const std::vector<double>*, 2> mod_vals;
    std::size_t slot = 0;
    for (std::size_t j = 0; j < 3; ++j) {
      if (j == k) continue;
      mods[slot] = thetas[j];
      mod_vals[slot] = &theta_vals[j];
      ++slot;
    }
    const std::size_t c_main = column_of(names, focal);
    const std::size_t c_m = column_of(names, resolve_interaction_name(names, focal, mods[0]));
    const std::size_t c_w = column_of(names, resolve_interaction_name(names, focal, mods[1]));

    BayesGrid3Way grid;
    grid.focal = focal;
    grid.moderator_names = mods;
    grid.axis1 = *mod_vals[0];
    grid.axis2 = *mod_vals[1];
    std::vector<double> cond(draws.rows);
    for (double m : grid.axis1) {
      for (double w : grid.axis2) {
        for (std::size_t s = 0; s < draws.rows; ++s)
          cond[s] = draws(s, c_main) + draws(s, c_m) * m + draws(s, c_w) * w +
                    draws(s, c_triple) * m * w;
        auto summary = summarize(cond);
        grid.nonsig_mask.push_back(bayes_nonsignificant(summary.bayes_p, thresholds));
        grid.cells.push_back(summary);
      }
    }
    out[k] = std::move(grid);
  }
  return out;
}

std::vector<std::pair<std::string, std::array<ConditionalPosterior2Way, 2>>>
run_bayes_grouped_2way(const std::vector<std::pair<std::string, PosteriorDrawMatrix>>& groups,
                       const std::string& theta_1, const std::string& theta_2,
                       const std::vector<double>& theta_1_vals,
                       const std::vector<double>& theta_2_vals) {
  if (groups.empty()) throw std::runtime_error("no groups");
  std::vector<std::pair<std::string, std::array<ConditionalPosterior2Way, 2>>> out;
  for (const auto& [label, pdm] : groups) {
    try {
      auto retained = preprocess_draws(pdm);
      out.emplace_back(label, conditional_posterior_2way(retained, pdm.param_names, theta_1,
                                                         theta_2, theta_1_vals, theta_2_vals));
    } catch (const std::exception& e) {
      throw std::runtime_error("group '" + label + "': " + e.what());
    }
  }
  return out;
}

std::vector<std::pair<std::string, std::array<BayesGrid3Way, 3>>> run_bayes_grouped_3way(
    const std::vector<std::pair<std::string, PosteriorDrawMatrix>>& groups,
    const std::string& theta_1, const std::string& theta_2, const std::string& theta_3,
    const std::array<std::vector<double>, 3>& theta_vals, std::pair<double, double> thresholds) {
  if (groups.empty()) throw std::runtime_error("no groups");
  std::vector<std::pair<std::string, std::array<BayesGrid3Way, 3>>> out;
  for (const auto& [label, pdm] : groups) {
    try {
      auto retained = preprocess_draws(pdm);
      out.emplace_back(label, conditional_posterior_3way(retained, pdm.param_names, theta_1,
                                                         theta_2, theta_3, theta_vals, thresholds));
    } catch (const std::exception& e) {
      throw std::runtime_error("group '" + label + "': " + e.what());
    }
  }
  return out;
}

}  // namespace jnk
