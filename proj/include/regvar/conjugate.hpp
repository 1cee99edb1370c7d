#pragma once

// De Bruijn conjugates of slowly varying functions. The defining relations
//   L(x) * Lt(x L(x)) -> 1   and   Lt(x) * L(x Lt(x)) -> 1
// hold in the limit; verification is a residual check on a geometric grid
// with a declared evaluation point and tolerance.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "regvar/svf.hpp"

namespace regvar {

// Solves f(s) = t for the asymptotically inverse point s on the monotone
// tail of f(x) = x^(alpha*beta) * L^alpha(x^beta): bracketing by doubling
// from the monotone threshold, then bisection. |f(s) - t| <= tol * t.
double asymptotic_inverse(double alpha, double beta, const SlowVaryFn& L, double t,
                          double tol, int* iterations = nullptr);

// Same computation carried out entirely in w = log2(x): returns log2(s)
// given log2(t). Usable at astronomically large arguments.
double asymptotic_inverse_log2(double alpha, double beta, const SlowVaryFn& L, double log2_t,
                               double tol, int* iterations = nullptr);

// Numeric de Bruijn conjugate: Lt(x) = s/x where s L(s) = x. Memoizes by
// exact input value; safe for concurrent lookup.
class NumericConjugate {
  public:
    explicit NumericConjugate(SlowVaryFn L, double tol = 1e-9);

    double eval(double x) const;
    double log2_eval_log2(double u) const;  // log2(Lt(2^u))
    double domainLow() const { return domain_low_; }
    const SlowVaryFn& base() const { return base_; }
    double tol() const { return tol_; }

  private:
    SlowVaryFn base_;
    double tol_;
    double domain_low_;  // smallest x = f(monotone threshold) the inverse reaches
    mutable std::mutex mu_;
    mutable std::map<double, double> memo_;  // keyed by log2(x)
};

// Uniform evaluator over a symbolic conjugate or a numeric one.
class ConjugateEval {
  public:
    static ConjugateEval symbolic(SlowVaryFn f);
    static ConjugateEval numeric(SlowVaryFn base, double tol = 1e-9);

    double eval(double x) const;
    double log2_eval_log2(double u) const;
    double eval_log2(double u) const { return std::exp2(log2_eval_log2(u)); }
    double domainLow() const;
    bool is_symbolic() const;
    const SlowVaryFn* symbolic_fn() const;  // nullptr when numeric
    std::string describe() const;

  private:
    std::variant<SlowVaryFn, std::shared_ptr<const NumericConjugate>> impl_;
};

// Reciprocal rule for the recognized class: pure products of powers of
// (possibly shifted, guarded) iterated logs and constants. Empty when the
// expression falls outside the class (identity atoms present).
std::optional<SlowVaryFn> conjugate_symbolic(const SlowVaryFn& L);

// max over grid of |(L(lambda0 x)/L(x) - 1) * log2(L(x))|; smallness
// justifies the reciprocal conjugate.
double bojanic_seneta_deviation(const SlowVaryFn& L, double lambda0, const GeoGrid& grid);

struct ConjugacyReport {
    struct Row {
        double x, dev1, dev2;  // dev1: |L(x) Lt(xL(x)) - 1|, dev2: |Lt(x) L(xLt(x)) - 1|
    };
    std::vector<Row> rows;
    double tol = 0.05;
    bool pass = false;  // both deviations at the last grid point within tol
};

ConjugacyReport verify_conjugacy(const SlowVaryFn& L, const ConjugateEval& tilde,
                                 const GeoGrid& grid, double tol);

struct ConjugatePair {
    SlowVaryFn L;
    ConjugateEval tilde;
    ConjugacyReport report;
};

// Symbolic conjugate when the class rule applies (the report still
// cross-checks), numeric fallback otherwise.
ConjugatePair make_conjugate_pair(const SlowVaryFn& L, double verifyTol = 0.05,
                                  bool forceNumeric = false);

}  // namespace regvar
