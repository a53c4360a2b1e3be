#include "qcircle/bowen.hpp"

#include "qcircle/errors.hpp"
#include "qcircle/pressure.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace qcircle::bowen {

namespace {

// Slack for the monotonicity check; pressure_ratio is accurate to a few
// ulps of log Delta_n.
constexpr double kMonotoneSlack = 1e-12;

struct Bracket {
    double lo, hi, f_lo, f_hi;
};

template <class F>
Bracket find_bracket(const F& f, unsigned n) {
    for (const auto& [lo, hi] : {std::pair{0.5, 2.0}, std::pair{0.25, 4.0}}) {
        const double f_lo = f(lo);
        const double f_hi = f(hi);
        if (f_lo > 0.0 && f_hi < 0.0) {
            return {lo, hi, f_lo, f_hi};
        }
    }
    std::ostringstream os;
    os << "pressure_ratio has no sign change on [0.25, 4] at n = " << n;
    throw BracketFailure(os.str());
}

template <class F>
double bisect(const F& f, Bracket b, double tol, unsigned n) {
    while (b.hi - b.lo > tol) {
        const double mid = 0.5 * (b.lo + b.hi);
        if (mid <= b.lo || mid >= b.hi) {
            break;
        }
        const double f_mid = f(mid);
        if (f_mid > b.f_lo + kMonotoneSlack || f_mid < b.f_hi - kMonotoneSlack) {
            std::ostringstream os;
            os.precision(17);
            os << "pressure_ratio is not decreasing in s at n = " << n << ", s = " << mid;
            throw NonMonotone(os.str());
        }
        if (f_mid > 0.0) {
            b.lo = mid;
            b.f_lo = f_mid;
        } else {
            b.hi = mid;
            b.f_hi = f_mid;
        }
    }
    return 0.5 * (b.lo + b.hi);
}

} // namespace

std::pair<double, bool> aitken_extrapolate(const std::vector<double>& values, double tol) {
    if (values.empty()) {
        throw InvalidArgument("aitken_extrapolate needs at least one value");
    }
    const double last = values.back();
    if (values.size() < 3) {
        return {last, false};
    }
    const double a = values[values.size() - 3];
    const double b = values[values.size() - 2];
    const double d1 = b - a;
    const double d2 = last - b;
    const double dd = d2 - d1;
    // Already flat at the bisection resolution: nothing to extrapolate.
    if (std::abs(d2) <= 8.0 * tol || dd == 0.0) {
        return {last, false};
    }
    // Only accelerate sequences that contract geometrically.
    const double rate = d2 / d1;
    if (!std::isfinite(rate) || std::abs(rate) >= 0.9) {
        return {last, false};
    }
    const double s = last - d2 * d2 / dd;
    if (!std::isfinite(s)) {
        return {last, false};
    }
    return {s, true};
}

DimensionReport solve_dimension(const Parameter& c, const SolveOptions& options) {
    if (options.n_max < kMinDepth || options.n_max > kMaxDepth) {
        throw InvalidArgument("n_max must be in [4, 24], got " + std::to_string(options.n_max));
    }
    if (!(options.tol > 0.0) || !std::isfinite(options.tol)) {
        throw InvalidArgument("tol must be positive");
    }

    DimensionReport report;
    report.c = c.value();
    report.tolerance = options.tol;
    report.bracket = {std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};

    std::vector<double> roots;
    for (unsigned n = kMinDepth; n <= options.n_max; ++n) {
        const pressure::BirkhoffLevels levels(c, n, options.threads);
        auto f = [&](double s) { return levels.ratio(s); };
        const Bracket initial = find_bracket(f, n);
        report.bracket.first = std::min(report.bracket.first, initial.lo);
        report.bracket.second = std::max(report.bracket.second, initial.hi);
        const double root = bisect(f, initial, options.tol, n);
        roots.push_back(root);
        report.roots_by_n.push_back({n, root});
    }

    const auto [s_star, extrapolated] = aitken_extrapolate(roots, options.tol);
    report.s_star = s_star;
    report.extrapolated = extrapolated;
    report.ruelle_value = ruelle_asymptotic(c);
    report.residual = std::abs(report.s_star - report.ruelle_value);
    try {
        report.beta = beta_quadratic(c);
    } catch (const NoRealRoot&) {
        report.beta = std::numeric_limits<double>::quiet_NaN();
    }
    return report;
}

double ruelle_asymptotic(const Parameter& c) {
    return 1.0 + std::norm(c.value()) / (4.0 * std::numbers::ln2);
}

double beta_quadratic(const Parameter& c) {
    const double q = std::norm(c.value()) / 4.0;
    if (q == 0.0) {
        return 0.0;
    }
    const double ln2 = std::numbers::ln2;
    // (ln2 - 2q)^2 - 4q^2 factored to avoid cancellation.
    const double disc = ln2 * (ln2 - 4.0 * q);
    if (disc < 0.0) {
        throw NoRealRoot("beta quadratic has no real root for |c|^2 > log 2");
    }
    // The roots multiply to 1; the small one is 2q over the large numerator.
    return 2.0 * q / ((ln2 - 2.0 * q) + std::sqrt(disc));
}

Bounds large_c_bounds(Complex c) {
    const double m = std::abs(c);
    if (!(m > large_c_threshold())) {
        std::ostringstream os;
        os << "|c| = " << m << " is not above (5+2*sqrt(6))/4 = " << large_c_threshold()
           << "; use the quasi-circle solver for small |c|";
        throw OutOfRange(os.str());
    }
    const double root = std::sqrt(2.0 * m);
    const double two_ln2 = 2.0 * std::numbers::ln2;
    return {two_ln2 / std::log(4.0 * (m + root)), two_ln2 / std::log(4.0 * (m - root))};
}

} // namespace qcircle::bowen
