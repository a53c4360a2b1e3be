#pragma once

#include "qcircle/coding.hpp"
#include "qcircle/dyadic.hpp"
#include "qcircle/dynamics.hpp"

#include <optional>
#include <span>
#include <vector>

namespace qcircle::pressure {

/// One row of a pressure table.
struct PressureSample {
    unsigned n = 0;
    double s = 0.0;
    /// Natural log of Delta_n(c, s).
    double log_delta = 0.0;
    /// log_delta / n.
    double p_raw = 0.0;
    /// log Delta_n - log Delta_{n-1}; absent for n = 1.
    std::optional<double> p_ratio;
};

/// Sum over the prefixes p of `word` of log 2|xi(c, p)|; this is
/// -S_n(phi)(xi(word)) for phi = -log|f'|.
double birkhoff_logsum(const Parameter& c, const DyadicWord& word);

/// log Delta_k(c, s) for k = 1..n (element k-1), from one pair of tree
/// traversals. Each depth uses its own max shift and the fixed pairwise
/// reduction, so the result is identical for every thread count.
std::vector<double> log_delta_profile(const Parameter& c, double s, unsigned n, unsigned threads = 1);

/// log Delta_n(c, s) where
/// Delta_n = sum_{eps in {0,1}^n} exp(-s * birkhoff_logsum(eps)).
double delta_n(const Parameter& c, double s, unsigned n, unsigned threads = 1);

/// delta_n / n.
double pressure_raw(const Parameter& c, double s, unsigned n, unsigned threads = 1);

/// log Delta_n - log Delta_{n-1}; n >= 2.
double pressure_ratio(const Parameter& c, double s, unsigned n, unsigned threads = 1);

/// Rows k = 1..n of the pressure table.
std::vector<PressureSample> pressure_samples(const Parameter& c, double s, unsigned n, unsigned threads = 1);

/// Cached Birkhoff sums at depths n-1 and n (lexicographic word order), for
/// repeated evaluation at many s. log_delta(s) equals delta_n(c, s, n) bit
/// for bit.
class BirkhoffLevels {
public:
    static constexpr unsigned kMaxDepth = 24;

    /// 2 <= n <= kMaxDepth.
    BirkhoffLevels(const Parameter& c, unsigned n, unsigned threads = 1);

    unsigned depth() const noexcept { return n_; }
    std::span<const double> leaf_sums() const noexcept { return leaves_; }
    std::span<const double> parent_sums() const noexcept { return parents_; }

    double log_delta(double s) const;
    double log_delta_parent(double s) const;
    double ratio(double s) const { return log_delta(s) - log_delta_parent(s); }

private:
    unsigned n_;
    unsigned threads_;
    std::vector<double> leaves_;
    std::vector<double> parents_;
    double leaf_min_, leaf_max_, parent_min_, parent_max_;
};

// ---------------------------------------------------------------------------
// Periodic points

inline constexpr unsigned kMaxPeriod = 16;
inline constexpr int kMaxFixedPointIterations = 10000;

struct PeriodicPoint {
    DyadicWord word;
    Complex z;
    /// z, f(z), ..., f^(n-1)(z).
    std::vector<Complex> orbit;
    /// True for the all-ones word, which codes alpha a second time
    /// (binary-expansion identification at the cut).
    bool collision = false;
};

/// For every word, the limit of iterating g_{eps_1} o ... o g_{eps_n} from
/// alpha, with the branches cut along the ray through alpha - c. Returned in
/// lexicographic word order; the all-ones word is reported as alpha with
/// collision set. 1 <= n <= 16.
/// Throws NoConvergence when a word has no limit within 10^4 iterations.
std::vector<PeriodicPoint> periodic_points(const Parameter& c, unsigned n);

/// (1/n) log sum_{periodic points} exp(-s sum_k log 2|f^k z|).
double pressure_periodic(const Parameter& c, double s, unsigned n);

} // namespace qcircle::pressure
