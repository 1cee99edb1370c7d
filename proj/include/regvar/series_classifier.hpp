#pragma once

// Convergence classification for series whose summand is regularly varying
// up to iterated-log corrections. With H1(u) = log2(n * a_n) at n = 2^u, the
// series sum a_n behaves like sum_j 2^(H1(j)) over dyadic blocks; a strictly
// negative far-field slope of H1 means geometric block decay (convergent), a
// positive slope divergence, and a near-zero slope pushes the same question
// one log level down via H_{m+1}(k) = k + H_m(2^k). Boundary cases that
// survive four levels are reported as inconclusive rather than guessed.

#include <functional>
#include <vector>

namespace regvar {

enum class SeriesVerdict { Convergent, Divergent, Inconclusive };

struct SeriesClassification {
    SeriesVerdict verdict = SeriesVerdict::Inconclusive;
    int depth = 0;  // level at which the verdict was reached
    struct LevelSlope {
        int level;
        double at;      // left end of the evaluation window
        double slope;   // per-unit slope across the window
    };
    std::vector<LevelSlope> slopes;
};

SeriesClassification classify_dyadic_series(const std::function<double(double)>& H1,
                                            double delta = 0.05);

}  // namespace regvar
