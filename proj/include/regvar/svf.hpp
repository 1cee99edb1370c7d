#pragma once

// Slowly varying functions as closed-form expressions: a positive constant
// times a product of real powers of atoms, where an atom is either the
// identity x (negative-control only, not slowly varying) or an iterated
// base-2 logarithm log2(log2(...(g + x))) with a guard constant g, and every
// atom may carry an argument shift x -> x + A.
//
// Text grammar (one token, no whitespace):
//   expr   := term ('*' term)*
//   term   := 'c:' NUM | atom suffix*
//   atom   := 'x' | 'log'...'log' [NUM]     (guard NUM defaults to 0)
//   suffix := '^' NUM                       (real power)
//           | '@+' NUM                      (argument shift)
// Examples: "c:3", "log", "log^-0.5", "loglog4" = log2(log2(4+x)),
//           "log^-1*loglog4^-1.1", "log^-0.333@+2", "x^0.1".

#include <cstdint>
#include <string>
#include <vector>

#include "regvar/errors.hpp"

namespace regvar {

// log2(2^u + add), computed without forming 2^u when u is large.
double log2_plus(double u, double add);

// Geometric evaluation grid: points start * ratio^i for i in [0, count).
struct GeoGrid {
    double start = 2.0;
    double ratio = 2.0;
    int count = 10;

    double at(int i) const;
    static GeoGrid pow2(int expLow, int expHigh, double ratio = 2.0);
};

class SlowVaryFn {
  public:
    enum class Atom { X, Log };

    struct Factor {
        Atom atom = Atom::Log;
        int depth = 1;       // number of nested log2 applications (Log only)
        double guard = 0;    // innermost argument is guard + x (Log only)
        double shift = 0;    // argument shift: atom evaluated at x + shift
        double power = 1;

        bool operator==(const Factor&) const = default;
    };

    SlowVaryFn();  // constant 1

    static SlowVaryFn constant(double c);
    static SlowVaryFn log2x(int depth = 1, double guard = 0);
    static SlowVaryFn identity();

    SlowVaryFn pow(double p) const;
    SlowVaryFn reciprocal() const { return pow(-1.0); }
    SlowVaryFn shifted(double a) const;
    friend SlowVaryFn operator*(const SlowVaryFn& lhs, const SlowVaryFn& rhs);

    static SlowVaryFn parse(const std::string& text);
    std::string str() const;

    // Left end of the validity domain: the function is strictly positive and
    // finite on [domainLow, inf).
    double domainLow() const { return domain_low_; }

    double eval(double x) const;

    // log2(L(2^u)), computed without forming 2^u; valid for u up to ~1e300.
    double log2_eval_log2(double u) const;
    double eval_log2(double u) const;

    // True when every factor is an iterated-log power (no identity atoms);
    // such functions admit the reciprocal as de Bruijn conjugate.
    bool pure_log_class() const;

    double coeff() const { return coeff_; }
    const std::vector<Factor>& factors() const { return factors_; }

    bool operator==(const SlowVaryFn&) const;

  private:
    SlowVaryFn(double coeff, std::vector<Factor> factors);
    void normalize();
    void compute_domain();

    double coeff_ = 1.0;
    std::vector<Factor> factors_;
    double domain_low_ = 1.0;
};

// max over grid of |L(lambda*x)/L(x) - 1|; tends to 0 for slowly varying L
// as the grid moves right.
double slow_variation_deviation(const SlowVaryFn& L, double lambda, const GeoGrid& grid);

// Numeric x*L'(x)/L(x) by central differences with step h = x * 1e-6.
double log_derivative_ratio(const SlowVaryFn& L, double x);

enum class Direction { Increasing, Decreasing };

// Smallest scanned grid point B such that x^p * L(x) (Increasing) or
// x^-p * L(x) (Decreasing) is monotone on all sampled pairs in [B, gridEnd].
// Throws numeric_error when no grid point qualifies.
double monotone_threshold(const SlowVaryFn& L, double p, Direction dir, const GeoGrid& scan);

}  // namespace regvar
