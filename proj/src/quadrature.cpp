#include "regvar/quadrature.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "regvar/errors.hpp"
#include "regvar/stats.hpp"

namespace regvar {

namespace {

// G7/K15 nodes and weights on [-1,1]: {|node|, Gauss weight, Kronrod weight}.
constexpr double kNW[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0,               0.204432940075298},
    {0.586087235467691, 0.0,               0.169004726639267},
    {0.864864423359769, 0.0,               0.104790010322250},
    {0.991455371120813, 0.0,               0.022935322010529},
};

double g7k15(const std::function<double(double)>& f, double a, double b, double& err) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double y0 = f(mid);
    double g7 = kNW[0][1] * y0;
    double k15 = kNW[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        double dx = half * kNW[i][0];
        double yi = f(mid + dx) + f(mid - dx);
        g7 += kNW[i][1] * yi;
        k15 += kNW[i][2] * yi;
    }
    g7 *= half;
    k15 *= half;
    err = std::fabs(g7 - k15);
    err = 200.0 * err * std::sqrt(200.0 * err);
    return k15;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double relTol, double absTol) {
    constexpr int kMaxPanels = 4000;
    std::vector<std::pair<double, double>> stack{{a, b}};
    KahanSum sum;
    double total = 0;
    int panels = 0;
    while (!stack.empty()) {
        auto [lo, hi] = stack.back();
        stack.pop_back();
        double err;
        double s = g7k15(f, lo, hi, err);
        if (err <= std::max(relTol * std::fabs(total + s), absTol) || hi - lo < 1e-14 * std::fabs(hi)) {
            sum.add(s);
            total = sum.value();
            continue;
        }
        if (++panels > kMaxPanels)
            throw numeric_error("adaptive quadrature: panel budget exhausted");
        double mid = 0.5 * (lo + hi);
        stack.emplace_back(lo, mid);
        stack.emplace_back(mid, hi);
    }
    return sum.value();
}

double integrate_tail(const std::function<double(double)>& f, double x0, double relTol) {
    constexpr double kLn2 = 0.69314718055994530942;
    // x = x0 * 2^s, dx = x ln2 ds; unit panels in s.
    auto g = [&](double s) {
        double x = x0 * std::exp2(s);
        return f(x) * x * kLn2;
    };
    KahanSum sum;
    for (int s = 0; s < 1100; ++s) {
        double piece = integrate(g, s, s + 1.0, relTol * 0.1, 1e-300);
        sum.add(piece);
        if (s > 2 && std::fabs(piece) <= relTol * 0.01 * std::fabs(sum.value())) return sum.value();
    }
    throw numeric_error("tail quadrature did not converge (integrand decays too slowly)");
}

}  // namespace regvar
