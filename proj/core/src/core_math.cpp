#include "jnk/core_math.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace jnk {

namespace {
constexpr double kSqrt2 = 1.4142135623730950488016887242097;
constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993438;

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

// Rational approximation for the normal quantile (Acklam), later refined.
double quantile_seed(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  if (p < plow) {
    double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - plow) {
    double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  double q = p - 0.5;
  double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}
}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_quantile: p outside (0,1)");
  double x = quantile_seed(p);
  // Two Newton steps against the erfc-based CDF pin the result to ~1e-15.
  for (int i = 0; i < 2; ++i) {
    double err = normal_cdf(x) - p;
    x -= err / normal_pdf(x);
  }
  return x;
}

SignificanceConfig SignificanceConfig::from_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must be in (0,1)");
  return SignificanceConfig{alpha, normal_quantile(1.0 - alpha / 2.0)};
}

double effect_2way(double b_main, double b_int, double m) { return b_main + b_int * m; }

double var_2way(double v_main, double cov_main_int, double v_int, double m) {
  double v = v_main + 2.0 * m * cov_main_int + m * m * v_int;
  if (v < 0.0) {
    std::ostringstream msg;
    msg << "invalid covariance sub-matrix at m = " << m;
    throw std::runtime_error(msg.str());
  }
  return v;
}

double effect_3way(double b_main, double b_m, double b_w, double b_mw, double m, double w) {
  return b_main + b_m * m + b_w * w + b_mw * m * w;
}

double var_3way(const Matrix& cov4, double m, double w) {
  if (cov4.rows != 4 || cov4.cols != 4)
    throw std::invalid_argument("var_3way: covariance must be 4x4");
  double mw = m * w;
  double v = cov4(0, 0) + m * m * cov4(1, 1) + w * w * cov4(2, 2) + mw * mw * cov4(3, 3) +
             2.0 * m * cov4(0, 1) + 2.0 * w * cov4(0, 2) + 2.0 * mw * cov4(0, 3) +
             2.0 * mw * cov4(1, 2) + 2.0 * m * m * w * cov4(1, 3) + 2.0 * m * w * w * cov4(2, 3);
  if (v < 0.0) {
    std::ostringstream msg;
    msg << "invalid covariance sub-matrix at (m, w) = (" << m << ", " << w << ")";
    throw std::runtime_error(msg.str());
  }
  return v;
}

double quadratic_form_var(const Matrix& cov, std::span<const double> weights) {
  if (cov.rows != cov.cols || cov.rows != weights.size())
    throw std::invalid_argument("quadratic_form_var: dimension mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < cov.rows; ++i)
    for (std::size_t j = 0; j < cov.cols; ++j) acc += weights[i] * weights[j] * cov(i, j);
  return acc;
}

ConditionalEstimate z_p(double theta, double se, const SignificanceConfig& config) {
  if (se < 0.0) throw std::invalid_argument("z_p: negative standard error");
  ConditionalEstimate est{};
  est.theta = theta;
  est.se = se;
  if (se == 0.0) {
    if (theta == 0.0) {
      est.z = 0.0;
      est.p = 1.0;
      est.significant = false;
    } else {
      est.z = theta > 0.0 ? std::numeric_limits<double>::infinity()
                          : -std::numeric_limits<double>::infinity();
      est.p = 0.0;
      est.significant = true;
    }
    return est;
  }
  est.z = theta / se;
  est.p = std::erfc(std::abs(est.z) / kSqrt2);  // == 2 * (1 - Phi(|z|))
  est.significant = est.p < config.alpha;
  return est;
}

std::vector<double> jn_boundaries_2way(double b_main, double b_int, double v_main, double cov_mi,
                                       double v_int, const SignificanceConfig& config) {
  const double z2 = config.z_crit * config.z_crit;
  const double qa = b_int * b_int - z2 * v_int;
  const double qb = 2.0 * (b_main * b_int - z2 * cov_mi);
  const double qc = b_main * b_main - z2 * v_main;

  const double a_cut = 1e-12 * std::max({std::abs(qb), std::abs(qc), 1.0});
  if (std::abs(qa) < a_cut) {
    if (std::abs(qb) < 1e-12 * std::max(std::abs(qc), 1.0)) return {};  // constant, no crossing
    return {-qc / qb};
  }

  double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0) return {};
  double sd = std::sqrt(disc);
  double q = -0.5 * (qb + (qb >= 0.0 ? sd : -sd));
  double r1, r2;
  if (q != 0.0) {
    r1 = q / qa;
    r2 = qc / q;
  } else {
    r1 = 0.0;
    r2 = 0.0;
  }
  if (r1 > r2) std::swap(r1, r2);
  if (std::abs(r2 - r1) < 1e-10) return {r1};
  return {r1, r2};
}

double linear_predictor_3way(std::span<const double, 8> c, double x, double m, double w) {
  return c[0] + c[1] * x + c[2] * m + c[3] * w + c[4] * x * m + c[5] * x * w + c[6] * m * w +
         c[7] * x * m * w;
}

}  // namespace jnk
