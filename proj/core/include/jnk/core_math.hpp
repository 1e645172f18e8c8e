#pragma once

#include <span>
#include <vector>

#include "jnk/matrix.hpp"

namespace jnk {

//! Standard normal CDF, accurate to better than 1e-14 over the useful range.
double normal_cdf(double x);

//! Inverse standard normal CDF (quantile), p in (0,1). Accurate to ~1e-14.
double normal_quantile(double p);

struct SignificanceConfig {
  double alpha;
  double z_crit;

  //! Builds a config with z_crit = Phi^{-1}(1 - alpha/2). Throws on alpha outside (0,1).
  static SignificanceConfig from_alpha(double alpha);
};

struct ConditionalEstimate {
  double theta;
  double se;
  double z;
  double p;
  bool significant;
};

//! Conditional effect of the focal predictor at moderator value m (two-way).
double effect_2way(double b_main, double b_int, double m);

//! Delta-method variance of the two-way conditional effect.
//! Throws if the result is negative (non-PSD covariance sub-matrix).
double var_2way(double v_main, double cov_main_int, double v_int, double m);

//! Conditional effect of the focal predictor at (m, w) (three-way).
double effect_3way(double b_main, double b_m, double b_w, double b_mw, double m, double w);

//! Multivariate delta-method variance of the three-way conditional effect.
//! cov4 is the 4x4 covariance over (main, m-term, w-term, mw-term).
//! Throws if the result is negative.
double var_3way(const Matrix& cov4, double m, double w);

//! Var(w' beta) = w' Sigma w by direct double summation. Independent oracle
//! for the closed-form variance expansions.
double quadratic_form_var(const Matrix& cov, std::span<const double> weights);

//! z statistic, two-sided p value and significance flag for a conditional
//! estimate. se == 0 degenerates to p = 0 (theta != 0) or p = 1 (theta == 0).
ConditionalEstimate z_p(double theta, double se, const SignificanceConfig& config);

//! Moderator values at which the two-sided p value equals alpha, found
//! analytically as roots of (b_main + b_int m)^2 = z_crit^2 Var(m).
//! Returns 0, 1 or 2 roots sorted ascending; near-equal roots are merged.
std::vector<double> jn_boundaries_2way(double b_main, double b_int, double v_main,
                                       double cov_mi, double v_int,
                                       const SignificanceConfig& config);

//! Full three-way linear predictor (intercept included). Test oracle.
double linear_predictor_3way(std::span<const double, 8> coefs, double x, double m, double w);

}  // namespace jnk
