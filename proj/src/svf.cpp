#include "regvar/svf.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <tuple>

namespace regvar {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

// Shortest decimal string that parses back to exactly the same double.
std::string fmt_double(double v) {
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

// log2(x + add) without forming 2^u when x = 2^u is huge; u = log2(x).
double log2_shifted_arg(double u, double add) {
    if (add == 0.0) return u;
    if (u <= 62.0) return std::log2(std::exp2(u) + add);
    return u + std::log1p(add * std::exp2(-u)) / kLn2;
}

std::tuple<int, double, double, double> factor_key(const SlowVaryFn::Factor& f) {
    return {f.atom == SlowVaryFn::Atom::X ? 0 : f.depth, f.guard, f.shift, f.power};
}

}  // namespace

double GeoGrid::at(int i) const { return start * std::pow(ratio, i); }

GeoGrid GeoGrid::pow2(int expLow, int expHigh, double ratio) {
    GeoGrid g;
    g.start = std::exp2(expLow);
    g.ratio = ratio;
    g.count = static_cast<int>((expHigh - expLow) / std::log2(ratio)) + 1;
    return g;
}

SlowVaryFn::SlowVaryFn() { compute_domain(); }

SlowVaryFn::SlowVaryFn(double coeff, std::vector<Factor> factors)
    : coeff_(coeff), factors_(std::move(factors)) {
    normalize();
}

SlowVaryFn SlowVaryFn::constant(double c) {
    if (!(c > 0) || !std::isfinite(c))
        throw std::domain_error("constant factor must be positive and finite");
    return SlowVaryFn(c, {});
}

SlowVaryFn SlowVaryFn::log2x(int depth, double guard) {
    if (depth < 1) throw std::domain_error("log depth must be >= 1");
    if (guard < 0) throw std::domain_error("log guard must be >= 0");
    Factor f;
    f.atom = Atom::Log;
    f.depth = depth;
    f.guard = guard;
    return SlowVaryFn(1.0, {f});
}

SlowVaryFn SlowVaryFn::identity() {
    Factor f;
    f.atom = Atom::X;
    f.depth = 0;
    f.guard = 0;
    return SlowVaryFn(1.0, {f});
}

SlowVaryFn SlowVaryFn::pow(double p) const {
    if (!std::isfinite(p)) throw std::domain_error("power must be finite");
    std::vector<Factor> fs = factors_;
    for (auto& f : fs) f.power *= p;
    return SlowVaryFn(std::pow(coeff_, p), std::move(fs));
}

SlowVaryFn SlowVaryFn::shifted(double a) const {
    if (a < 0 || !std::isfinite(a)) throw std::domain_error("shift must be >= 0 and finite");
    std::vector<Factor> fs = factors_;
    for (auto& f : fs) f.shift += a;
    return SlowVaryFn(coeff_, std::move(fs));
}

SlowVaryFn operator*(const SlowVaryFn& lhs, const SlowVaryFn& rhs) {
    std::vector<SlowVaryFn::Factor> fs = lhs.factors_;
    fs.insert(fs.end(), rhs.factors_.begin(), rhs.factors_.end());
    return SlowVaryFn(lhs.coeff_ * rhs.coeff_, std::move(fs));
}

void SlowVaryFn::normalize() {
    if (!(coeff_ > 0) || !std::isfinite(coeff_))
        throw std::domain_error("coefficient must be positive and finite");
    std::sort(factors_.begin(), factors_.end(), [](const Factor& a, const Factor& b) {
        return factor_key(a) < factor_key(b);
    });
    std::vector<Factor> merged;
    for (const auto& f : factors_) {
        if (f.power == 0) continue;
        if (!merged.empty()) {
            Factor& m = merged.back();
            if (m.atom == f.atom && m.depth == f.depth && m.guard == f.guard &&
                m.shift == f.shift) {
                m.power += f.power;
                if (m.power == 0) merged.pop_back();
                continue;
            }
        }
        merged.push_back(f);
    }
    factors_ = std::move(merged);
    compute_domain();
}

void SlowVaryFn::compute_domain() {
    double low = 1.0;
    for (const auto& f : factors_) {
        if (f.atom == Atom::X) {
            low = std::max(low, 1.0 - f.shift);
            continue;
        }
        // Require the iterated-log value to be at least 0.25 at the domain
        // edge so negative powers stay bounded: unwind value >= 0.25 through
        // d log2 layers into a floor for g + x + shift.
        double t = 0.25;
        for (int k = 0; k < f.depth; ++k) t = std::exp2(t);
        low = std::max(low, t - f.guard - f.shift);
    }
    domain_low_ = low;
}

double SlowVaryFn::eval(double x) const {
    if (!(x >= domain_low_))
        throw std::domain_error("argument " + fmt_double(x) + " below domain start " +
                                fmt_double(domain_low_));
    double v = coeff_;
    for (const auto& f : factors_) {
        double base = x + f.shift;
        if (f.atom == Atom::Log) {
            base += f.guard;
            for (int k = 0; k < f.depth; ++k) base = std::log2(base);
        }
        v *= std::pow(base, f.power);
    }
    if (!std::isfinite(v) || v <= 0)
        throw numeric_error("expression overflow or non-positive value at x = " + fmt_double(x));
    return v;
}

double SlowVaryFn::log2_eval_log2(double u) const {
    double r = std::log2(coeff_);
    for (const auto& f : factors_) {
        double argLog2 = log2_shifted_arg(u, f.shift);
        if (f.atom == Atom::X) {
            r += f.power * argLog2;
            continue;
        }
        double v = log2_shifted_arg(argLog2, f.guard);  // log2(guard + x + shift)
        for (int k = 1; k < f.depth; ++k) {
            if (!(v > 0)) throw std::domain_error("iterated log not positive at 2^u, u = " + fmt_double(u));
            v = std::log2(v);
        }
        if (!(v > 0)) throw std::domain_error("log value not positive at 2^u, u = " + fmt_double(u));
        r += f.power * std::log2(v);
    }
    if (std::isnan(r)) throw numeric_error("log-space evaluation failed at u = " + fmt_double(u));
    return r;
}

double SlowVaryFn::eval_log2(double u) const { return std::exp2(log2_eval_log2(u)); }

bool SlowVaryFn::pure_log_class() const {
    for (const auto& f : factors_)
        if (f.atom == Atom::X) return false;
    return true;
}

bool SlowVaryFn::operator==(const SlowVaryFn& o) const {
    return coeff_ == o.coeff_ && factors_ == o.factors_;
}

// ---------------------------------------------------------------------------
// parse / print

namespace {

double parse_number(const std::string& s, size_t& pos) {
    const char* begin = s.c_str() + pos;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) throw std::domain_error("expected a number at '" + s.substr(pos) + "'");
    pos += static_cast<size_t>(end - begin);
    return v;
}

}  // namespace

SlowVaryFn SlowVaryFn::parse(const std::string& text) {
    if (text.empty()) throw std::domain_error("empty expression");
    SlowVaryFn result = SlowVaryFn::constant(1.0);
    size_t pos = 0;
    while (true) {
        // one term
        if (text.compare(pos, 2, "c:") == 0) {
            pos += 2;
            double c = parse_number(text, pos);
            SlowVaryFn term = SlowVaryFn::constant(c);
            // allow suffixes on constants; they fold away
            while (pos < text.size() && (text[pos] == '^' || text.compare(pos, 2, "@+") == 0)) {
                if (text[pos] == '^') {
                    ++pos;
                    term = term.pow(parse_number(text, pos));
                } else {
                    pos += 2;
                    parse_number(text, pos);
                }
            }
            result = result * term;
        } else {
            SlowVaryFn term;
            if (pos < text.size() && text[pos] == 'x') {
                ++pos;
                term = SlowVaryFn::identity();
            } else if (text.compare(pos, 3, "log") == 0) {
                int depth = 0;
                while (text.compare(pos, 3, "log") == 0) {
                    ++depth;
                    pos += 3;
                }
                double guard = 0;
                if (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) ||
                                          text[pos] == '.'))
                    guard = parse_number(text, pos);
                term = SlowVaryFn::log2x(depth, guard);
            } else {
                throw std::domain_error("cannot parse expression at '" + text.substr(pos) + "'");
            }
            while (pos < text.size() && (text[pos] == '^' || text.compare(pos, 2, "@+") == 0)) {
                if (text[pos] == '^') {
                    ++pos;
                    term = term.pow(parse_number(text, pos));
                } else {
                    pos += 2;
                    term = term.shifted(parse_number(text, pos));
                }
            }
            result = result * term;
        }
        if (pos == text.size()) break;
        if (text[pos] != '*')
            throw std::domain_error("unexpected character '" + text.substr(pos, 1) + "' in expression");
        ++pos;
    }
    return result;
}

std::string SlowVaryFn::str() const {
    std::string out;
    if (coeff_ != 1.0 || factors_.empty()) out = "c:" + fmt_double(coeff_);
    for (const auto& f : factors_) {
        if (!out.empty()) out += "*";
        if (f.atom == Atom::X) {
            out += "x";
        } else {
            for (int k = 0; k < f.depth; ++k) out += "log";
            if (f.guard != 0) out += fmt_double(f.guard);
        }
        if (f.power != 1) out += "^" + fmt_double(f.power);
        if (f.shift != 0) out += "@+" + fmt_double(f.shift);
    }
    return out;
}

// ---------------------------------------------------------------------------
// operations

double slow_variation_deviation(const SlowVaryFn& L, double lambda, const GeoGrid& grid) {
    if (!(lambda > 0)) throw std::domain_error("lambda must be positive");
    double maxDev = 0;
    for (int i = 0; i < grid.count; ++i) {
        double x = grid.at(i);
        double dev = std::fabs(L.eval(lambda * x) / L.eval(x) - 1.0);
        maxDev = std::max(maxDev, dev);
    }
    return maxDev;
}

double log_derivative_ratio(const SlowVaryFn& L, double x) {
    double h = x * 1e-6;
    if (x + h == x) throw numeric_error("finite-difference step underflow at x = " + std::to_string(x));
    if (x - h < L.domainLow())
        throw std::domain_error("x too close to domain start for central differences");
    double deriv = (L.eval(x + h) - L.eval(x - h)) / (2 * h);
    return x * deriv / L.eval(x);
}

double monotone_threshold(const SlowVaryFn& L, double p, Direction dir, const GeoGrid& scan) {
    if (!(p > 0)) throw std::domain_error("p must be positive");
    if (scan.count < 2) throw std::domain_error("scan grid needs at least two points");
    const double sign = dir == Direction::Increasing ? 1.0 : -1.0;
    std::vector<double> t(scan.count);
    for (int i = 0; i < scan.count; ++i) {
        double x = scan.at(i);
        t[i] = sign * p * std::log2(x) + std::log2(L.eval(x));
    }
    // Walk from the right; find the last violating pair. Increasing mode
    // requires t nondecreasing, decreasing mode t nonincreasing (same test
    // after the sign flip above). Tiny slack absorbs rounding.
    int firstGood = 0;
    for (int i = scan.count - 2; i >= 0; --i) {
        double slack = 1e-12 * std::max(1.0, std::fabs(t[i]));
        if (t[i + 1] < t[i] - slack) {
            firstGood = i + 1;
            break;
        }
    }
    if (firstGood >= scan.count - 1)
        throw numeric_error("no monotone threshold found on scanned range (grid too short or misspecified function)");
    return scan.at(firstGood);
}

}  // namespace regvar
