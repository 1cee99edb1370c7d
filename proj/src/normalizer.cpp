#include "regvar/normalizer.hpp"

#include <algorithm>
#include <cmath>

#include "regvar/quadrature.hpp"
#include "regvar/stats.hpp"

namespace regvar {

NormalizingSeq::NormalizingSeq(double alpha, ConjugateEval ltilde, double provenanceA)
    : alpha_(alpha), ltilde_(std::move(ltilde)) {
    if (!(alpha >= 1.0 && alpha < 2.0))
        throw hypothesis_error("normalizing sequence requires alpha in [1, 2)");
    if (!(provenanceA > 0)) throw std::domain_error("domain start A must be positive");
    double fromA = std::ceil(std::pow(provenanceA, alpha));
    double fromTilde = std::ceil(std::pow(ltilde_.domainLow(), alpha));
    start_ = static_cast<std::int64_t>(std::max({1.0, fromA, fromTilde}));
}

double NormalizingSeq::b(std::int64_t n) const {
    if (n < start_)
        throw std::domain_error("index " + std::to_string(n) + " below sequence start " +
                                std::to_string(start_));
    double x = std::pow(static_cast<double>(n), 1.0 / alpha_);
    return x * ltilde_.eval(x);
}

double NormalizingSeq::log2_b_at_log2(double u) const {
    double v = u / alpha_;
    return v + ltilde_.log2_eval_log2(v);
}

KaramataTailSum karamata_tail_sum(double p, double q, const SlowVaryFn& L, std::int64_t n,
                                  std::int64_t horizon) {
    if (!(p > 1.0)) throw std::domain_error("karamata tail sum requires p > 1");
    if (n < 1) throw std::domain_error("n must be >= 1");
    if (static_cast<double>(n) < L.domainLow())
        throw std::domain_error("n below the domain of L");
    if (horizon <= 0) horizon = std::min<std::int64_t>(10000 * n, 1000000000);
    if (horizon <= n) throw std::domain_error("horizon must exceed n");

    KahanSum sum;
    for (std::int64_t k = n; k <= horizon; ++k) {
        double x = static_cast<double>(k);
        sum.add(std::pow(L.eval(x), q) / std::pow(x, p));
    }
    // Integral-test remainder with midpoint correction: the summand is
    // eventually monotone, so the integral from horizon + 1/2 tracks the
    // discarded terms to second order.
    double remainder = integrate_tail(
        [&](double x) { return std::pow(L.eval(x), q) / std::pow(x, p); },
        static_cast<double>(horizon) + 0.5, 1e-9);

    double numericSum = sum.value() + remainder;
    double asymptotic = std::pow(L.eval(static_cast<double>(n)), q) /
                        ((p - 1.0) * std::pow(static_cast<double>(n), p - 1.0));
    return {numericSum, asymptotic, numericSum / asymptotic};
}

}  // namespace regvar
