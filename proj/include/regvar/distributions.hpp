#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "regvar/rng.hpp"
#include "regvar/series_classifier.hpp"
#include "regvar/svf.hpp"

namespace regvar {

namespace detail {
struct HeavyTailTable;  // numeric CDF machinery for the density-defined law
}

// Marginal laws with exact tails, inverse-CDF sampling hooks, and far-field
// tail decompositions for moment classification.
class DistributionSpec {
  public:
    enum class Kind {
        Rademacher,       // +-1 with probability 1/2 each
        CenteredUniform,  // uniform on [-1, 1]
        StdNormal,
        StPetersburg,     // P(X = 2^n) = 2^-n, n >= 1
        HeavyTailLogDensity,  // density b / (|x|^(a+1) log2^(1-a/g)(|x|+2) log2^2(log2(|x|+2))), |x|>1
        ParetoTail,       // symmetric, P(|X| > t) = t^-a for t >= 1
        UserTable,        // finite discrete law
    };

    static DistributionSpec rademacher();
    static DistributionSpec centered_uniform();
    static DistributionSpec std_normal();
    static DistributionSpec st_petersburg();
    static DistributionSpec heavy_tail_log_density(double alpha, double gamma);
    static DistributionSpec pareto_tail(double alpha);
    static DistributionSpec user_table(std::vector<double> values, std::vector<double> probs);

    // Parses "rademacher", "uniform", "normal", "stpetersburg",
    // "example1:<alpha>,<gamma>", "pareto:<alpha>".
    static DistributionSpec parse(const std::string& text);

    Kind kind() const { return kind_; }
    std::string describe() const;

    double sample(Prng& rng) const;
    double tail_prob(double t) const;  // P(|X| > t), t >= 0
    double cdf(double x) const;        // P(X <= x)
    double quantile(double u) const;   // left-continuous inverse CDF, u in (0,1)
    // quantile(1 - v) computed without forming 1 - v; accurate for tiny v.
    double quantile_complement(double v) const;

    // log2 P(|X| > 2^u); asymptotic closed form in the far field, exact for
    // lattice and polynomial tails. -inf beyond bounded support.
    double tail_log2(double u) const;

    bool bounded_support() const;
    double abs_support_min() const;  // essential infimum of |X|
    // E X: 0 for the centered laws, +inf for St. Petersburg, NaN when the
    // mean does not exist.
    double mean() const;

    // Normalization constant of the density-defined law (test hook).
    double heavy_tail_norm() const;

    double param_alpha() const { return alpha_; }
    double param_gamma() const { return gamma_; }

  private:
    DistributionSpec(Kind k) : kind_(k) {}

    Kind kind_;
    double alpha_ = 0, gamma_ = 0;
    std::vector<double> values_, probs_, cumprobs_;
    std::shared_ptr<const detail::HeavyTailTable> table_;
};

// The composite moment functional E |X|^alpha L^alpha(|X| + A).
struct MomentSpec {
    double alpha = 1;
    SlowVaryFn L;
    double shiftA = 0;

    std::string describe() const;
};

enum class MomentVerdict { Finite, Infinite, Inconclusive };

struct MomentClassification {
    MomentVerdict verdict = MomentVerdict::Inconclusive;
    // Truncated expectation plus a geometric remainder extrapolation;
    // meaningful when the verdict is Finite, a diagnostic otherwise.
    double value = std::numeric_limits<double>::quiet_NaN();
    double truncated = 0;  // plain truncated sum/integral diagnostic
    SeriesClassification series;
};

MomentClassification moment_value(const DistributionSpec& dist, const MomentSpec& m);

const char* to_string(MomentVerdict v);

}  // namespace regvar
