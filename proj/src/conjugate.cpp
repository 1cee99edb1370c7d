#include "regvar/conjugate.hpp"

#include <cmath>

namespace regvar {

namespace {

// log2-space view of f(x) = x^(alpha beta) L^alpha(x^beta).
double f_log2(double alpha, double beta, const SlowVaryFn& L, double w) {
    return alpha * beta * w + alpha * L.log2_eval_log2(beta * w);
}

// Smallest w on a fixed scan beyond which f_log2 is nondecreasing.
double monotone_start_w(double alpha, double beta, const SlowVaryFn& L) {
    const double wDom = std::max(std::log2(L.domainLow()) / beta, 0.001);
    const double wEnd = 64.0;
    const double step = 0.25;
    int count = static_cast<int>((wEnd - wDom) / step) + 2;
    std::vector<double> vals(count);
    for (int i = 0; i < count; ++i) vals[i] = f_log2(alpha, beta, L, wDom + i * step);
    int firstGood = 0;
    for (int i = count - 2; i >= 0; --i) {
        if (vals[i + 1] < vals[i] - 1e-13 * std::max(1.0, std::fabs(vals[i]))) {
            firstGood = i + 1;
            break;
        }
    }
    if (firstGood >= count - 1)
        throw numeric_error("no monotone tail found for the inverse bracket");
    return wDom + firstGood * step;
}

}  // namespace

double asymptotic_inverse_log2(double alpha, double beta, const SlowVaryFn& L, double log2_t,
                               double tol, int* iterations) {
    if (!(alpha > 0) || !(beta > 0)) throw std::domain_error("alpha, beta must be positive");
    if (!(tol > 0)) throw std::domain_error("tol must be positive");
    const double tau = log2_t;
    const double eps = std::log2(1.0 + tol);  // |f(s)-t| <= tol*t in log2 space

    double lo = monotone_start_w(alpha, beta, L);
    double flo = f_log2(alpha, beta, L, lo);
    if (flo > tau + eps)
        throw numeric_error("bracket failure: target below the monotone range of f");

    double gap = 1.0;
    double hi = lo + gap;
    while (f_log2(alpha, beta, L, hi) < tau) {
        gap *= 2;
        hi = lo + gap;
        if (gap > 1e306) throw numeric_error("bracket failure: doubling exhausted");
    }

    int iter = 0;
    double mid = 0.5 * (lo + hi);
    while (true) {
        mid = 0.5 * (lo + hi);
        double fm = f_log2(alpha, beta, L, mid);
        ++iter;
        if (std::fabs(fm - tau) <= eps) break;
        if (iter > 250) throw numeric_error("bisection did not converge");
        if (fm < tau)
            lo = mid;
        else
            hi = mid;
    }
    if (iterations) *iterations = iter;
    return mid;
}

double asymptotic_inverse(double alpha, double beta, const SlowVaryFn& L, double t,
                          double tol, int* iterations) {
    if (!(t > 0)) throw std::domain_error("target t must be positive");
    return std::exp2(asymptotic_inverse_log2(alpha, beta, L, std::log2(t), tol, iterations));
}

// ---------------------------------------------------------------------------

NumericConjugate::NumericConjugate(SlowVaryFn L, double tol) : base_(std::move(L)), tol_(tol) {
    if (!(tol_ > 0)) throw std::domain_error("tol must be positive");
    double w0 = monotone_start_w(1.0, 1.0, base_);
    domain_low_ = std::exp2(f_log2(1.0, 1.0, base_, w0));
}

double NumericConjugate::log2_eval_log2(double u) const {
    if (!(u >= std::log2(domain_low_) - 1e-9))
        throw std::domain_error("numeric conjugate asked below its domain");
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = memo_.find(u);
        if (it != memo_.end()) return it->second;
    }
    // Solve w + log2 L(2^w) = u for d = w - u. The fixed point
    // d <- -log2 L(2^(u+d)) contracts beyond the monotone threshold and, by
    // working in the increment d, keeps full precision at any magnitude of u
    // (bisection in w cannot: past u ~ 2^52 the ulp of w exceeds the answer).
    double r;
    double d = 0;
    bool converged = false;
    try {
        d = -base_.log2_eval_log2(u);
        for (int it = 0; it < 200; ++it) {
            double dn = -base_.log2_eval_log2(u + d);
            if (std::fabs(dn - d) <= 1e-12 * (1.0 + std::fabs(dn))) {
                d = dn;
                converged = true;
                break;
            }
            d = dn;
        }
    } catch (const std::exception&) {
        converged = false;  // wandered outside the domain; bisect instead
    }
    if (converged) {
        r = d;
    } else if (u <= 1e15) {
        r = asymptotic_inverse_log2(1.0, 1.0, base_, u, tol_) - u;
    } else {
        throw numeric_error("numeric conjugate iteration did not converge");
    }
    {
        std::lock_guard<std::mutex> lock(mu_);
        memo_.emplace(u, r);
    }
    return r;
}

double NumericConjugate::eval(double x) const {
    if (!(x > 0)) throw std::domain_error("conjugate argument must be positive");
    return std::exp2(log2_eval_log2(std::log2(x)));
}

// ---------------------------------------------------------------------------

ConjugateEval ConjugateEval::symbolic(SlowVaryFn f) {
    ConjugateEval e;
    e.impl_ = std::move(f);
    return e;
}

ConjugateEval ConjugateEval::numeric(SlowVaryFn base, double tol) {
    ConjugateEval e;
    e.impl_ = std::make_shared<const NumericConjugate>(std::move(base), tol);
    return e;
}

double ConjugateEval::eval(double x) const {
    if (auto* f = std::get_if<SlowVaryFn>(&impl_)) return f->eval(x);
    return std::get<std::shared_ptr<const NumericConjugate>>(impl_)->eval(x);
}

double ConjugateEval::log2_eval_log2(double u) const {
    if (auto* f = std::get_if<SlowVaryFn>(&impl_)) return f->log2_eval_log2(u);
    return std::get<std::shared_ptr<const NumericConjugate>>(impl_)->log2_eval_log2(u);
}

double ConjugateEval::domainLow() const {
    if (auto* f = std::get_if<SlowVaryFn>(&impl_)) return f->domainLow();
    return std::get<std::shared_ptr<const NumericConjugate>>(impl_)->domainLow();
}

bool ConjugateEval::is_symbolic() const { return std::holds_alternative<SlowVaryFn>(impl_); }

const SlowVaryFn* ConjugateEval::symbolic_fn() const { return std::get_if<SlowVaryFn>(&impl_); }

std::string ConjugateEval::describe() const {
    if (auto* f = std::get_if<SlowVaryFn>(&impl_)) return f->str();
    const auto& n = std::get<std::shared_ptr<const NumericConjugate>>(impl_);
    return "numeric-conjugate(" + n->base().str() + ")";
}

// ---------------------------------------------------------------------------

std::optional<SlowVaryFn> conjugate_symbolic(const SlowVaryFn& L) {
    if (!L.pure_log_class()) return std::nullopt;
    return L.reciprocal();
}

double bojanic_seneta_deviation(const SlowVaryFn& L, double lambda0, const GeoGrid& grid) {
    if (!(lambda0 > 1)) throw std::domain_error("lambda0 must exceed 1");
    double maxDev = 0;
    for (int i = 0; i < grid.count; ++i) {
        double x = grid.at(i);
        double lx = L.eval(x);
        double dev = std::fabs((L.eval(lambda0 * x) / lx - 1.0) * std::log2(lx));
        maxDev = std::max(maxDev, dev);
    }
    return maxDev;
}

ConjugacyReport verify_conjugacy(const SlowVaryFn& L, const ConjugateEval& tilde,
                                 const GeoGrid& grid, double tol) {
    ConjugacyReport rep;
    rep.tol = tol;
    for (int i = 0; i < grid.count; ++i) {
        double x = grid.at(i);
        double u = std::log2(x);
        // log2-space composition keeps huge intermediate arguments in range
        double lLx = L.log2_eval_log2(u);                       // log2 L(x)
        double dev1 = std::fabs(std::exp2(lLx + tilde.log2_eval_log2(u + lLx)) - 1.0);
        double lTx = tilde.log2_eval_log2(u);                   // log2 Lt(x)
        double dev2 = std::fabs(std::exp2(lTx + L.log2_eval_log2(u + lTx)) - 1.0);
        rep.rows.push_back({x, dev1, dev2});
    }
    const auto& last = rep.rows.back();
    rep.pass = last.dev1 <= tol && last.dev2 <= tol;
    return rep;
}

ConjugatePair make_conjugate_pair(const SlowVaryFn& L, double verifyTol, bool forceNumeric) {
    std::optional<SlowVaryFn> sym = forceNumeric ? std::nullopt : conjugate_symbolic(L);
    ConjugateEval tilde = sym ? ConjugateEval::symbolic(*sym) : ConjugateEval::numeric(L);
    GeoGrid grid = GeoGrid::pow2(20, 40, 1024.0);  // x in {2^20, 2^30, 2^40}
    return ConjugatePair{L, tilde, verify_conjugacy(L, tilde, grid, verifyTol)};
}

}  // namespace regvar
