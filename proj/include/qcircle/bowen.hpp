#pragma once

#include "qcircle/dynamics.hpp"

#include <utility>
#include <vector>

namespace qcircle::bowen {

struct RootEstimate {
    unsigned n = 0;
    double s = 0.0;
};

struct DimensionReport {
    Complex c;
    std::vector<RootEstimate> roots_by_n;
    /// Aitken extrapolation of the last three roots, or the last root.
    double s_star = 0.0;
    bool extrapolated = false;
    /// NaN when the beta quadratic has no real root.
    double beta = 0.0;
    double ruelle_value = 0.0;
    /// |s_star - ruelle_value|.
    double residual = 0.0;
    std::pair<double, double> bracket{0.5, 2.0};
    double tolerance = 0.0;
};

struct SolveOptions {
    unsigned n_max = 16;
    double tol = 1e-12;
    unsigned threads = 1;
};

/// Smallest and largest n_max accepted by solve_dimension.
inline constexpr unsigned kMinDepth = 4;
inline constexpr unsigned kMaxDepth = 24;

/// For n = 4..n_max, bisects s -> pressure_ratio(c, s, n) to width `tol`,
/// then extrapolates the roots.
/// Throws BracketFailure when no sign change exists on [0.25, 4] and
/// NonMonotone when a midpoint value falls outside its bracket values.
DimensionReport solve_dimension(const Parameter& c, const SolveOptions& options);

/// Aitken delta-squared on the last three values; falls back to the last
/// value when the sequence is already flat at `tol` or not geometric.
/// Second member reports whether extrapolation was applied.
std::pair<double, bool> aitken_extrapolate(const std::vector<double>& values, double tol);

/// 1 + |c|^2 / (4 log 2).
double ruelle_asymptotic(const Parameter& c);

/// Smaller positive root of (|c|^2/4)(1 + beta)^2 - beta log 2 = 0; 0 at c = 0.
/// Throws NoRealRoot when |c|^2 > log 2.
double beta_quadratic(const Parameter& c);

struct Bounds {
    double lower = 0.0;
    double upper = 0.0;
};

/// 2 log 2 / log(4(|c| +- sqrt(2|c|))). Throws OutOfRange unless
/// |c| > (5 + 2 sqrt 6) / 4.
Bounds large_c_bounds(Complex c);

} // namespace qcircle::bowen
