#include "regvar/series_classifier.hpp"

#include <cmath>
#include <limits>

namespace regvar {

namespace {

// Evaluation windows per level, chosen as deep as double range allows:
// level m evaluates H1 at u = 2^(2^(...)) nested m-1 times.
struct Window {
    double a, b;
};
constexpr Window kWindows[4] = {
    {1.7179869184e10, 3.4359738368e10},  // level 1: u in {2^34, 2^35}
    {512.0, 1000.0},                     // level 2: k, H1 arg up to 2^1000
    {8.0, 9.9},                          // level 3: m, H1 arg up to 2^(2^9.9)
    {2.8, 3.25},                         // level 4: r, H1 arg up to 2^(2^(2^3.25))
};

}  // namespace

SeriesClassification classify_dyadic_series(const std::function<double(double)>& H1,
                                            double delta) {
    SeriesClassification out;

    // H_m computed by unwinding the recursion H_{m+1}(k) = k + H_m(2^k).
    auto H = [&](int level, double arg) {
        double acc = 0;
        double a = arg;
        for (int m = level; m >= 2; --m) {
            acc += a;
            a = std::exp2(a);
        }
        return acc + H1(a);
    };

    for (int level = 1; level <= 4; ++level) {
        const Window& w = kWindows[level - 1];
        double ha = H(level, w.a);
        double hb = H(level, w.b);
        if (std::isnan(ha) || std::isnan(hb)) {
            out.verdict = SeriesVerdict::Inconclusive;
            out.depth = level;
            return out;
        }
        // Vanishing summand (bounded support or super-fast decay).
        if (std::isinf(ha) && ha < 0 && !(std::isinf(hb) && hb > 0)) {
            out.verdict = SeriesVerdict::Convergent;
            out.depth = level;
            return out;
        }
        double slope = (hb - ha) / (w.b - w.a);
        out.slopes.push_back({level, w.a, slope});
        if (std::isnan(slope)) {
            out.verdict = SeriesVerdict::Inconclusive;
            out.depth = level;
            return out;
        }
        if (slope < -delta) {
            out.verdict = SeriesVerdict::Convergent;
            out.depth = level;
            return out;
        }
        if (slope > delta) {
            out.verdict = SeriesVerdict::Divergent;
            out.depth = level;
            return out;
        }
    }
    out.verdict = SeriesVerdict::Inconclusive;
    out.depth = 4;
    return out;
}

}  // namespace regvar
