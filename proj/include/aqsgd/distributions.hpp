#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace aqsgd {

// Parameters of the parent (untruncated) normal.
struct NormalParams {
  double mu = 0.0;
  double sigma = 1.0;  // > 0
};

double normal_pdf(double x, const NormalParams& p);
double normal_cdf(double x, const NormalParams& p);
// Inverse CDF. Rational approximation refined by one Halley step against
// normal_cdf, so round trips hold to ~1e-15. Throws std::domain_error for
// y outside (0,1).
double normal_inv_cdf(double y, const NormalParams& p);
// F(hi) - F(lo), evaluated via scaled-erfc tails when both endpoints sit
// beyond 8 sigma on the same side (plain CDF differences cancel there).
double normal_cdf_diff(double lo, double hi, const NormalParams& p);

// Normal restricted to [lo,hi] and renormalized. cdf(lo)=0, cdf(hi)=1.
// Construction throws if the truncated mass underflows (< 1e-300).
class TruncatedNormal {
 public:
  TruncatedNormal(NormalParams params, double lo, double hi);

  const NormalParams& params() const { return params_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }

  double pdf(double x) const;
  double cdf(double x) const;
  double inv_cdf(double y) const;  // y in [0,1]

  // \int_a^c r dF and \int_a^c r^2 dF in closed form (arguments clamped to
  // the support).
  double partial_expectation(double a, double c) const;
  double partial_second_moment(double a, double c) const;
  double mean() const { return partial_expectation(lo_, hi_); }

 private:
  NormalParams params_;
  double lo_;
  double hi_;
  double mass_;    // parent-normal probability of [lo,hi]
  double cdf_lo_;  // parent-normal CDF at lo
};

// Weighted sum of truncated normals sharing one support; supplies the
// weighted CDF the norm-adjusted solvers integrate against.
class MixtureModel {
 public:
  MixtureModel(std::vector<TruncatedNormal> components, std::vector<double> weights);
  static MixtureModel single(TruncatedNormal component);

  std::size_t size() const { return components_.size(); }
  const TruncatedNormal& component(std::size_t i) const { return components_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  double lo() const { return components_.front().lo(); }
  double hi() const { return components_.front().hi(); }

  double pdf(double x) const;
  double cdf(double x) const;
  double inv_cdf(double y) const;  // bisection on the weighted CDF
  double partial_expectation(double a, double c) const;
  double partial_second_moment(double a, double c) const;

 private:
  std::vector<TruncatedNormal> components_;
  std::vector<double> weights_;
};

// Moment-matching fit: parent mu/sigma taken as the sample mean and sample
// standard deviation (n-1) of the observed normalized coordinates. The
// estimator is deliberately simple; it is an approximation, not an MLE.
// Requires >= 2 samples inside [lo,hi]; sigma is floored at 1e-8.
TruncatedNormal fit_truncated_normal(std::span<const double> samples, double lo, double hi);

}  // namespace aqsgd
