#include "aqsgd/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace aqsgd {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kSqrt2Pi = 2.5066282746310005024;
constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_params(const NormalParams& p) {
  if (!(p.sigma > 0.0) || !std::isfinite(p.sigma) || !std::isfinite(p.mu)) {
    throw std::invalid_argument("normal params: mu must be finite and sigma > 0");
  }
}

// Scaled complementary error function for x >= 5, via the asymptotic series
// erfcx(x) = 1/(x sqrt(pi)) * sum_k (-1)^k (2k-1)!! / (2x^2)^k. Only used for
// stabilized tail differences, where the series reaches ~1e-15 relative.
double erfcx_large(double x) {
  const double inv2x2 = 1.0 / (2.0 * x * x);
  double term = 1.0;
  double sum = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 40; ++k) {
    term *= -(2.0 * k - 1.0) * inv2x2;
    if (std::abs(term) >= prev) break;  // asymptotic series: stop at smallest term
    sum += term;
    prev = std::abs(term);
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum / (x * 1.7724538509055160273);  // sqrt(pi)
}

// Q(zl) - Q(zh) for 8 <= zl <= zh, where Q is the standard normal upper tail.
double upper_tail_diff(double zl, double zh) {
  const double a = zl * kInvSqrt2;
  const double b = zh * kInvSqrt2;
  const double ratio = std::exp((a - b) * (a + b));  // e^{a^2-b^2} <= 1
  const double inner = erfcx_large(a) - ratio * erfcx_large(b);
  return 0.5 * std::exp(-a * a) * inner;
}

}  // namespace

double normal_pdf(double x, const NormalParams& p) {
  check_params(p);
  const double z = (x - p.mu) / p.sigma;
  return std::exp(-0.5 * z * z) / (p.sigma * kSqrt2Pi);
}

double normal_cdf(double x, const NormalParams& p) {
  check_params(p);
  const double z = (x - p.mu) / p.sigma;
  return 0.5 * std::erfc(-z * kInvSqrt2);
}

double normal_cdf_diff(double lo, double hi, const NormalParams& p) {
  check_params(p);
  if (lo > hi) return -normal_cdf_diff(hi, lo, p);
  const double zl = (lo - p.mu) / p.sigma;
  const double zh = (hi - p.mu) / p.sigma;
  if (zl >= 8.0) return upper_tail_diff(zl, zh);
  if (zh <= -8.0) return upper_tail_diff(-zh, -zl);
  if (zl >= 0.0) return 0.5 * (std::erfc(zl * kInvSqrt2) - std::erfc(zh * kInvSqrt2));
  if (zh <= 0.0) return 0.5 * (std::erfc(-zh * kInvSqrt2) - std::erfc(-zl * kInvSqrt2));
  return 0.5 * std::erf(zh * kInvSqrt2) + 0.5 * std::erf(-zl * kInvSqrt2);
}

double normal_inv_cdf(double y, const NormalParams& p) {
  check_params(p);
  if (!(y > 0.0 && y < 1.0)) {
    throw std::domain_error("normal_inv_cdf: y must be in (0,1)");
  }

  // Acklam's rational approximation for the standard normal quantile
  // (|relative error| < 1.15e-9), then one Halley step against erfc.
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
  constexpr double p_low = 0.02425;

  double x;
  if (y < p_low) {
    const double q = std::sqrt(-2.0 * std::log(y));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (y <= 1.0 - p_low) {
    const double q = y - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-y));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  const double e = 0.5 * std::erfc(-x * kInvSqrt2) - y;
  const double u = e * kSqrt2Pi * std::exp(0.5 * x * x);
  if (std::isfinite(u)) x -= u / (1.0 + 0.5 * x * u);

  return p.mu + p.sigma * x;
}

TruncatedNormal::TruncatedNormal(NormalParams params, double lo, double hi)
    : params_(params), lo_(lo), hi_(hi) {
  check_params(params_);
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("truncated normal: need finite lo < hi");
  }
  mass_ = normal_cdf_diff(lo_, hi_, params_);
  cdf_lo_ = normal_cdf(lo_, params_);
  if (!(mass_ >= 1e-300)) {
    throw std::domain_error("truncated normal: degenerate (interval mass underflows)");
  }
}

double TruncatedNormal::pdf(double x) const {
  if (x < lo_ || x > hi_) return 0.0;
  return normal_pdf(x, params_) / mass_;
}

double TruncatedNormal::cdf(double x) const {
  if (x <= lo_) return 0.0;
  if (x >= hi_) return 1.0;
  return std::clamp(normal_cdf_diff(lo_, x, params_) / mass_, 0.0, 1.0);
}

double TruncatedNormal::inv_cdf(double y) const {
  if (!(y >= 0.0 && y <= 1.0)) throw std::domain_error("trunc_inv_cdf: y must be in [0,1]");
  if (y == 0.0) return lo_;
  if (y == 1.0) return hi_;
  const double parent_y = mass_ * y + cdf_lo_;
  if (!(parent_y > 0.0 && parent_y < 1.0)) {
    return parent_y <= 0.0 ? lo_ : hi_;  // saturated parent CDF
  }
  return std::clamp(normal_inv_cdf(parent_y, params_), lo_, hi_);
}

double TruncatedNormal::partial_expectation(double a, double c) const {
  a = std::max(a, lo_);
  c = std::min(c, hi_);
  if (!(a < c)) return 0.0;
  const double dF = normal_cdf_diff(a, c, params_) / mass_;
  const double s2 = params_.sigma * params_.sigma;
  return params_.mu * dF - s2 * (pdf(c) - pdf(a));
}

double TruncatedNormal::partial_second_moment(double a, double c) const {
  a = std::max(a, lo_);
  c = std::min(c, hi_);
  if (!(a < c)) return 0.0;
  const double dF = normal_cdf_diff(a, c, params_) / mass_;
  const double s2 = params_.sigma * params_.sigma;
  const double mu = params_.mu;
  return (mu * mu + s2) * dF - s2 * ((c + mu) * pdf(c) - (a + mu) * pdf(a));
}

MixtureModel::MixtureModel(std::vector<TruncatedNormal> components, std::vector<double> weights)
    : components_(std::move(components)), weights_(std::move(weights)) {
  if (components_.empty()) throw std::invalid_argument("mixture: needs at least one component");
  if (components_.size() != weights_.size()) {
    throw std::invalid_argument("mixture: component/weight count mismatch");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("mixture: weights must be >= 0");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("mixture: weights must sum to 1 (within 1e-12)");
  }
  for (double& w : weights_) w /= total;
  for (const auto& comp : components_) {
    if (comp.lo() != components_.front().lo() || comp.hi() != components_.front().hi()) {
      throw std::invalid_argument("mixture: component supports must be identical");
    }
  }
}

MixtureModel MixtureModel::single(TruncatedNormal component) {
  std::vector<TruncatedNormal> comps;
  comps.push_back(std::move(component));
  return MixtureModel(std::move(comps), {1.0});
}

double MixtureModel::pdf(double x) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < components_.size(); ++i) acc += weights_[i] * components_[i].pdf(x);
  return acc;
}

double MixtureModel::cdf(double x) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < components_.size(); ++i) acc += weights_[i] * components_[i].cdf(x);
  return acc;
}

double MixtureModel::inv_cdf(double y) const {
  if (!(y >= 0.0 && y <= 1.0)) throw std::domain_error("mixture inv_cdf: y must be in [0,1]");
  double a = lo();
  double c = hi();
  if (y == 0.0) return a;
  if (y == 1.0) return c;
  for (int it = 0; it < 200 && c - a > 1e-15 * (hi() - lo()); ++it) {
    const double m = 0.5 * (a + c);
    (cdf(m) < y ? a : c) = m;
  }
  return 0.5 * (a + c);
}

double MixtureModel::partial_expectation(double a, double c) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    acc += weights_[i] * components_[i].partial_expectation(a, c);
  }
  return acc;
}

double MixtureModel::partial_second_moment(double a, double c) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    acc += weights_[i] * components_[i].partial_second_moment(a, c);
  }
  return acc;
}

TruncatedNormal fit_truncated_normal(std::span<const double> samples, double lo, double hi) {
  if (samples.size() < 2) {
    throw std::invalid_argument("fit_truncated_normal: need at least 2 samples");
  }
  double mean = 0.0;
  for (double x : samples) {
    if (!(x >= lo && x <= hi)) {
      throw std::invalid_argument("fit_truncated_normal: sample outside [lo,hi]");
    }
    mean += x;
  }
  mean /= static_cast<double>(samples.size());
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  const double sigma = std::max(std::sqrt(ss / static_cast<double>(samples.size() - 1)), 1e-8);
  return TruncatedNormal({mean, sigma}, lo, hi);
}

}  // namespace aqsgd
