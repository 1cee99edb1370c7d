#pragma once

#include <cstdint>

#include "regvar/conjugate.hpp"
#include "regvar/svf.hpp"

namespace regvar {

// The normalizing sequence b_n = n^(1/alpha) * Lt(n^(1/alpha)).
class NormalizingSeq {
  public:
    // provenanceA: left domain endpoint A of the L the conjugate came from;
    // the sequence starts at ceil(A^alpha), clipped to where Lt is defined.
    NormalizingSeq(double alpha, ConjugateEval ltilde, double provenanceA);

    double alpha() const { return alpha_; }
    std::int64_t startIndex() const { return start_; }
    const ConjugateEval& ltilde() const { return ltilde_; }

    double b(std::int64_t n) const;
    double log2_b_at_log2(double u) const;  // log2(b_n) at n = 2^u

  private:
    double alpha_;
    ConjugateEval ltilde_;
    std::int64_t start_;
};

struct KaramataTailSum {
    double numericSum;   // sum_{k=n}^{horizon} L^q(k)/k^p plus integral-test remainder
    double asymptotic;   // L^q(n) / ((p-1) n^(p-1))
    double ratio;        // numericSum / asymptotic
};

// horizon = 0 selects the default 10^4 * n (capped at 10^9).
KaramataTailSum karamata_tail_sum(double p, double q, const SlowVaryFn& L, std::int64_t n,
                                  std::int64_t horizon = 0);

}  // namespace regvar
