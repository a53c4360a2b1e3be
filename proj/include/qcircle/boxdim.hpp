#pragma once

#include "qcircle/dynamics.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qcircle::boxdim {

/// Identifier of the generator behind sample_julia.
inline constexpr const char* kPrngId = "mt19937_64";

struct PointCloud {
    std::vector<Complex> points;
    Complex c;
    std::size_t count = 0;
    std::uint64_t seed = 0;
    std::string prng = kPrngId;
};

/// Random inverse iteration from alpha: each step applies the inverse branch
/// selected by the top bit of the next mt19937_64 output. The first
/// `burn_in` iterates are dropped. Requires |c| <= 2 and count >= 1.
PointCloud sample_julia(const Parameter& c, std::size_t count, std::size_t burn_in, std::uint64_t seed);

/// Forward-orbit boundedness proxy for Julia membership: |f^k(z)| <= R for
/// k <= iterations with R = max(2, |c|).
bool bounded_orbit(const Parameter& c, Complex z, int iterations);

struct BoxCountEstimate {
    std::vector<double> scales;
    std::vector<std::size_t> counts;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Number of occupied cells of the grid {[i*delta, (i+1)*delta) x [j*delta, (j+1)*delta)}.
std::size_t count_boxes(std::span<const Complex> points, double delta);

/// Counts occupied origin-anchored delta-boxes at each scale and fits
/// log N = slope * log(1/delta) + intercept by least squares. Scales are
/// reported in decreasing order. Throws DegenerateFit when every scale sees
/// a single box, InvalidArgument on fewer than two scales or an empty cloud.
BoxCountEstimate box_dimension(std::span<const Complex> points, std::vector<double> scales,
                               unsigned threads = 1);

/// delta = 2^-k for k = first..last.
std::vector<double> dyadic_scales(int first, int last);

} // namespace qcircle::boxdim
