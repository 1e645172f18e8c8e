#pragma once

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jnk/matrix.hpp"
#include "jnk/model_spec.hpp"

namespace jnk {

//! Drops burn-in rows, keeps every thin-th retained row. Throws if fewer
//! than 2 rows remain.
Matrix preprocess_draws(const PosteriorDrawMatrix& pdm);

//! Pr(theta > 0) estimated as the fraction of strictly positive draws.
double bayes_p(std::span<const double> draws);

struct ConditionalSummary {
  double post_mean = 0.0;
  double post_sd = 0.0;  // divisor n
  double bayes_p = 0.0;
};

//! Conditional posterior of one focal effect across moderator values,
//! with the per-value draw vectors kept for density plotting.
struct ConditionalPosterior2Way {
  std::string focal;
  std::string moderator;
  std::vector<double> mod_values;
  std::vector<std::vector<double>> draws;  // one vector per moderator value
  std::vector<ConditionalSummary> summaries;
};

//! Computes both focal-role views of a two-way Bayesian analysis. The focal
//! theta_1 view is evaluated at theta_2_vals and vice versa. Draws must
//! already be preprocessed.
std::array<ConditionalPosterior2Way, 2> conditional_posterior_2way(
    const Matrix& draws, const std::vector<std::string>& names, const std::string& theta_1,
    const std::string& theta_2, const std::vector<double>& theta_1_vals,
    const std::vector<double>& theta_2_vals);

//! Posterior summaries over a two-dimensional moderator lattice for one
//! focal view. Cells are lexicographic, first axis outer.
struct BayesGrid3Way {
  std::string focal;
  std::array<std::string, 2> moderator_names;
  std::vector<double> axis1;
  std::vector<double> axis2;
  std::vector<ConditionalSummary> cells;
  std::vector<bool> nonsig_mask;  // bayes_p inside [t1, t2], closed
};

//! All three focal-role views of a three-way Bayesian analysis. Value lists
//! are per theta variable, in theta order; the view with focal theta_k uses
//! the other two lists as its lattice axes.
std::array<BayesGrid3Way, 3> conditional_posterior_3way(
    const Matrix& draws, const std::vector<std::string>& names, const std::string& theta_1,
    const std::string& theta_2, const std::string& theta_3,
    const std::array<std::vector<double>, 3>& theta_vals, std::pair<double, double> thresholds);

//! Closed-interval membership test against the non-significance thresholds.
bool bayes_nonsignificant(double p, std::pair<double, double> thresholds);

std::vector<std::pair<std::string, std::array<ConditionalPosterior2Way, 2>>>
run_bayes_grouped_2way(const std::vector<std::pair<std::string, PosteriorDrawMatrix>>& groups,
                       const std::string& theta_1, const std::string& theta_2,
                       const std::vector<double>& theta_1_vals,
                       const std::vector<double>& theta_2_vals);

std::vector<std::pair<std::string, std::array<BayesGrid3Way, 3>>> run_bayes_grouped_3way(
    const std::vector<std::pair<std::string, PosteriorDrawMatrix>>& groups,
    const std::string& theta_1, const std::string& theta_2, const std::string& theta_3,
    const std::array<std::vector<double>, 3>& theta_vals, std::pair<double, double> thresholds);

}  // namespace jnk
