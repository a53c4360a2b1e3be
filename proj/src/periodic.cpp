#include "qcircle/pressure.hpp"

#include "qcircle/reduction.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace qcircle::pressure {

namespace {

constexpr double kStepTolerance = 1e-13;

} // namespace

std::vector<PeriodicPoint> periodic_points(const Parameter& c, unsigned n) {
    if (n < 1 || n > kMaxPeriod) {
        throw InvalidArgument("period must be in [1, 16], got " + std::to_string(n));
    }
    const Complex alpha = dynamics::fixed_point_alpha(c);
    const Complex axis = alpha - c.value();

    std::vector<PeriodicPoint> points;
    points.reserve(std::size_t{1} << n);
    std::vector<Complex> orbit(n);

    const std::uint64_t all_ones = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t index = 0; index <= all_ones; ++index) {
        const DyadicWord word(index, n);
        if (index == all_ones && index != 0) {
            // 1^n codes alpha a second time (0.111... = 1.000... on the
            // circle); its iterates spiral into alpha across the cut and
            // never settle, so it is resolved to alpha directly.
            points.push_back(PeriodicPoint{word, alpha, std::vector<Complex>(n, alpha), true});
            continue;
        }
        Complex z = alpha;
        bool converged = false;
        for (int iter = 0; iter < kMaxFixedPointIterations && !converged; ++iter) {
            const Complex previous = z;
            // g_{eps_n} first; the value after g_{eps_j} is f^(j-1) of the limit.
            for (unsigned j = n; j >= 1; --j) {
                z = dynamics::inverse_branch_about(c, z, word.bit(j), axis);
                orbit[j - 1] = z;
            }
            converged = std::abs(z - previous) < kStepTolerance;
        }
        if (!converged) {
            throw NoConvergence("periodic point for word " + word.str() + " did not converge in "
                                + std::to_string(kMaxFixedPointIterations) + " iterations");
        }
        points.push_back(PeriodicPoint{word, z, orbit, false});
    }
    return points;
}

double pressure_periodic(const Parameter& c, double s, unsigned n) {
    if (!std::isfinite(s)) {
        throw InvalidArgument("s must be finite");
    }
    const auto points = periodic_points(c, n);
    std::vector<double> sums(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        double sum = 0.0;
        for (const Complex& z : points[i].orbit) {
            sum = sum + std::log(2.0 * std::abs(z));
        }
        sums[i] = sum;
    }
    const auto [lo, hi] = std::minmax_element(sums.begin(), sums.end());
    const double shift = s >= 0.0 ? -s * *lo : -s * *hi;
    const double total = reduction::pairwise_sum(
        0, n, [&](std::uint64_t i) { return std::exp(-s * sums[i] - shift); });
    return (shift + std::log(total)) / static_cast<double>(n);
}

} // namespace qcircle::pressure
