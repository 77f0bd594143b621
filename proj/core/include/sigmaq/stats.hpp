#pragma once

#include <functional>
#include <vector>

namespace sigmaq {

/// Kolmogorov-Smirnov statistic sup |F_n - F| against a continuous CDF.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);
/// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b);
/// Asymptotic critical value of the two-sample statistic at level alpha
/// (one-sample: pass m = 0).
double ks_critical(double alpha, std::size_t n, std::size_t m = 0);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
};

Moments moments(const std::vector<double>& v);

/// Least-squares fit y = b x without intercept; the standard error is the
/// heteroscedasticity-robust (sandwich) one.
struct SlopeFit {
  double slope = 0.0;
  double std_error = 0.0;
};

SlopeFit slope_through_origin(const std::vector<double>& x, const std::vector<double>& y);

/// Empirical quantile (linear interpolation between order statistics).
double quantile(std::vector<double> v, double p);

/// Composite Simpson rule with `intervals` (rounded up to even) panels.
double simpson(const std::function<double(double)>& f, double a, double b, int intervals = 2000);

}  // namespace sigmaq
