#include "qcircle/boxdim.hpp"

#include "qcircle/errors.hpp"
#include "qcircle/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <utility>

namespace qcircle::boxdim {

PointCloud sample_julia(const Parameter& c, std::size_t count, std::size_t burn_in, std::uint64_t seed) {
    if (count < 1) {
        throw InvalidArgument("sample count must be at least 1");
    }
    if (c.modulus() > 2.0) {
        throw RegimeError("inverse-iteration sampling requires |c| <= 2");
    }
    PointCloud cloud;
    cloud.c = c.value();
    cloud.count = count;
    cloud.seed = seed;
    cloud.points.reserve(count);

    std::mt19937_64 rng(seed);
    Complex z = dynamics::fixed_point_alpha(c);
    for (std::size_t i = 0; i < burn_in + count; ++i) {
        const int bit = static_cast<int>(rng() >> 63);
        z = dynamics::inverse_branch(c, z, bit);
        if (i >= burn_in) {
            cloud.points.push_back(z);
        }
    }
    return cloud;
}

bool bounded_orbit(const Parameter& c, Complex z, int iterations) {
    const double radius = std::max(2.0, c.modulus());
    for (int k = 0; k <= iterations; ++k) {
        if (!(std::abs(z) <= radius)) {
            return false;
        }
        z = dynamics::apply(c, z);
    }
    return true;
}

std::size_t count_boxes(std::span<const Complex> points, double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw InvalidArgument("box scale must be positive and finite");
    }
    std::vector<std::pair<std::int64_t, std::int64_t>> cells;
    cells.reserve(points.size());
    for (const Complex& z : points) {
        cells.emplace_back(static_cast<std::int64_t>(std::floor(z.real() / delta)),
                           static_cast<std::int64_t>(std::floor(z.imag() / delta)));
    }
    std::sort(cells.begin(), cells.end());
    return static_cast<std::size_t>(std::unique(cells.begin(), cells.end()) - cells.begin());
}

BoxCountEstimate box_dimension(std::span<const Complex> points, std::vector<double> scales, unsigned threads) {
    if (points.empty()) {
        throw InvalidArgument("box counting needs a non-empty cloud");
    }
    if (scales.size() < 2) {
        throw InvalidArgument("box counting needs at least two scales");
    }
    std::sort(scales.begin(), scales.end(), std::greater<>());
    if (std::adjacent_find(scales.begin(), scales.end()) != scales.end()) {
        throw InvalidArgument("box scales must be distinct");
    }

    BoxCountEstimate est;
    est.scales = scales;
    est.counts.resize(scales.size());
    reduction::run_tasks(scales.size(), threads,
                         [&](std::size_t i) { est.counts[i] = count_boxes(points, scales[i]); });

    if (std::all_of(est.counts.begin(), est.counts.end(), [](std::size_t n) { return n == 1; })) {
        throw DegenerateFit("all points fall in a single box at every scale");
    }

    const double m = static_cast<double>(scales.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < scales.size(); ++i) {
        sx += -std::log(scales[i]);
        sy += std::log(static_cast<double>(est.counts[i]));
    }
    const double mx = sx / m;
    const double my = sy / m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < scales.size(); ++i) {
        const double dx = -std::log(scales[i]) - mx;
        const double dy = std::log(static_cast<double>(est.counts[i])) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    est.slope = sxy / sxx;
    est.intercept = my - est.slope * mx;
    est.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return est;
}

std::vector<double> dyadic_scales(int first, int last) {
    std::vector<double> scales;
    for (int k = first; k <= last; ++k) {
        scales.push_back(std::ldexp(1.0, -k));
    }
    return scales;
}

} // namespace qcircle::boxdim
