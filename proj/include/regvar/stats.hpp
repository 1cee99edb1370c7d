#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace regvar {

// Compensated running sum.
class KahanSum {
  public:
    void add(double x) {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

  private:
    double s_ = 0, c_ = 0;
};

// Quantile by the midpoint-interpolating rank rule used throughout the
// experiment reports: median averages the two central order statistics for
// even sizes; general q uses the nearest-rank ceil(q*n) order statistic.
double median(std::vector<double> v);
double quantile(std::vector<double> v, double q);

struct WilsonInterval {
    double lo, hi;
};
WilsonInterval wilson_interval(long successes, long trials, double z = 1.96);

// Two-sided Kolmogorov-Smirnov distance between a sample and a CDF
// (handles atoms; the sup runs over both sides of every jump).
double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf);

// Ordinary least squares slope of y against x with the standard error of the
// slope estimate (homoskedastic formula).
struct SlopeFit {
    double slope, stderr_slope, intercept;
};
SlopeFit ols_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace regvar
