#include "regvar/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace regvar {

double median(std::vector<double> v) {
    if (v.empty()) throw std::domain_error("median of empty sample");
    std::sort(v.begin(), v.end());
    size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double quantile(std::vector<double> v, double q) {
    if (v.empty()) throw std::domain_error("quantile of empty sample");
    if (!(q > 0 && q <= 1)) throw std::domain_error("quantile level must be in (0,1]");
    std::sort(v.begin(), v.end());
    size_t rank = static_cast<size_t>(std::ceil(q * static_cast<double>(v.size())));
    if (rank == 0) rank = 1;
    return v[rank - 1];
}

WilsonInterval wilson_interval(long successes, long trials, double z) {
    if (trials <= 0) throw std::domain_error("wilson interval needs trials > 0");
    double n = static_cast<double>(trials);
    double p = static_cast<double>(successes) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2 * n)) / denom;
    double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw std::domain_error("ks distance of empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0;
    size_t i = 0;
    while (i < sample.size()) {
        size_t j = i;
        while (j + 1 < sample.size() && sample[j + 1] == sample[i]) ++j;
        double F = cdf(sample[i]);
        double below = static_cast<double>(i) / n;      // empirical mass strictly left
        double above = static_cast<double>(j + 1) / n;  // empirical CDF at the atom
        d = std::max(d, std::fabs(above - F));
        d = std::max(d, std::fabs(F - below));
        i = j + 1;
    }
    return d;
}

SlopeFit ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 3)
        throw std::domain_error("slope fit needs >= 3 paired points");
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0) throw std::domain_error("slope fit with degenerate x");
    double slope = sxy / sxx;
    double intercept = my - slope * mx;
    double sse = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        double r = y[i] - intercept - slope * x[i];
        sse += r * r;
    }
    double se = std::sqrt(sse / (n - 2) / sxx);
    return {slope, se, intercept};
}

}  // namespace regvar
