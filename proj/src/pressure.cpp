#include "qcircle/pressure.hpp"

#include "qcircle/reduction.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace qcircle::pressure {

namespace {

using coding::TreeNode;

struct Frame {
    TreeNode node;
    double logsum = 0.0;
    std::uint64_t index = 0;
};

std::array<Frame, 2> child_frames(const Parameter& c, const Frame& f) {
    std::array<TreeNode, 2> kids;
    try {
        kids = coding::children(c, f.node);
    } catch (const Error& e) {
        coding::detail::rethrow_with_word(e, f.index, f.node.depth);
    }
    const double term = std::log(2.0 * std::abs(kids[0].xi));
    return {Frame{kids[0], f.logsum + term, f.index << 1},
            Frame{kids[1], f.logsum + term, (f.index << 1) | 1u}};
}

Frame root_frame(const Parameter& c) {
    return Frame{coding::tree_root(c), 0.0, 0};
}

// Frames at depth `top`, lexicographic; also records extrema of every
// shallower depth into lo/hi.
void collect_top(const Parameter& c, const Frame& f, unsigned top, std::vector<Frame>& out,
                 std::vector<double>& lo, std::vector<double>& hi) {
    const unsigned d = f.node.depth;
    if (d == top) {
        out.push_back(f);
        return;
    }
    lo[d] = std::min(lo[d], f.logsum);
    hi[d] = std::max(hi[d], f.logsum);
    const auto kids = child_frames(c, f);
    collect_top(c, kids[0], top, out, lo, hi);
    collect_top(c, kids[1], top, out, lo, hi);
}

class ExtremaWalker {
public:
    ExtremaWalker(const Parameter& c, unsigned n)
        : c_(c), n_(n), lo(n + 1, std::numeric_limits<double>::infinity()),
          hi(n + 1, -std::numeric_limits<double>::infinity()) {}

    void walk(const Frame& f) {
        const unsigned d = f.node.depth;
        lo[d] = std::min(lo[d], f.logsum);
        hi[d] = std::max(hi[d], f.logsum);
        if (d == n_) {
            return;
        }
        const auto kids = child_frames(c_, f);
        walk(kids[0]);
        walk(kids[1]);
    }

private:
    Parameter c_;
    unsigned n_;

public:
    std::vector<double> lo;
    std::vector<double> hi;
};

// Per-depth sums of exp(-s*S - shift[d]) over a subtree, combined child by
// child so that every depth is reduced in the balanced pairwise shape.
class SumWalker {
public:
    SumWalker(const Parameter& c, unsigned n, double s, const std::vector<double>& shift)
        : c_(c), n_(n), s_(s), shift_(shift), scratch_(2 * (n + 2) * (n + 1)) {}

    void walk(const Frame& f, double* out) {
        const unsigned d = f.node.depth;
        out[d] = std::exp(-s_ * f.logsum - shift_[d]);
        if (d == n_) {
            return;
        }
        const auto kids = child_frames(c_, f);
        double* a = buffer(d + 1, 0);
        double* b = buffer(d + 1, 1);
        walk(kids[0], a);
        walk(kids[1], b);
        for (unsigned k = d + 1; k <= n_; ++k) {
            out[k] = a[k] + b[k];
        }
    }

private:
    double* buffer(unsigned depth, unsigned which) {
        return scratch_.data() + (2 * depth + which) * (n_ + 1);
    }

    Parameter c_;
    unsigned n_;
    double s_;
    const std::vector<double>& shift_;
    std::vector<double> scratch_;
};

// Recombines the per-subtree sums below depth `top` along the same tree.
void combine_top(const Parameter& c, const Frame& f, unsigned top, unsigned n, double s,
                 const std::vector<double>& shift, const std::vector<std::vector<double>>& parts,
                 std::size_t& next, double* out) {
    const unsigned d = f.node.depth;
    if (d == top) {
        const auto& part = parts[next++];
        for (unsigned k = d; k <= n; ++k) {
            out[k] = part[k];
        }
        return;
    }
    out[d] = std::exp(-s * f.logsum - shift[d]);
    const auto kids = child_frames(c, f);
    std::vector<double> a(n + 1), b(n + 1);
    combine_top(c, kids[0], top, n, s, shift, parts, next, a.data());
    combine_top(c, kids[1], top, n, s, shift, parts, next, b.data());
    for (unsigned k = d + 1; k <= n; ++k) {
        out[k] = a[k] + b[k];
    }
}

double shift_for(double s, double lo, double hi) {
    return s >= 0.0 ? -s * lo : -s * hi;
}

void check_s(double s) {
    if (!std::isfinite(s)) {
        throw InvalidArgument("s must be finite");
    }
}

// Leaf and parent Birkhoff sums below one top frame.
class LevelWalker {
public:
    LevelWalker(const Parameter& c, unsigned n, std::vector<double>& leaves, std::vector<double>& parents)
        : c_(c), n_(n), leaves_(leaves), parents_(parents) {}

    void walk(const Frame& f) {
        const unsigned d = f.node.depth;
        if (d == n_) {
            leaves_[f.index] = f.logsum;
            return;
        }
        if (d == n_ - 1) {
            parents_[f.index] = f.logsum;
        }
        const auto kids = child_frames(c_, f);
        walk(kids[0]);
        walk(kids[1]);
    }

private:
    Parameter c_;
    unsigned n_;
    std::vector<double>& leaves_;
    std::vector<double>& parents_;
};

} // namespace

double birkhoff_logsum(const Parameter& c, const DyadicWord& word) {
    const auto chain = coding::prefix_xi(c, word);
    double sum = 0.0;
    for (const Complex& z : chain) {
        sum = sum + std::log(2.0 * std::abs(z));
    }
    return sum;
}

std::vector<double> log_delta_profile(const Parameter& c, double s, unsigned n, unsigned threads) {
    coding::detail::check_depth(n);
    check_s(s);
    const unsigned top = std::min(reduction::split_depth(threads), n);

    std::vector<double> lo(n + 1, std::numeric_limits<double>::infinity());
    std::vector<double> hi(n + 1, -std::numeric_limits<double>::infinity());
    std::vector<Frame> frames;
    collect_top(c, root_frame(c), top, frames, lo, hi);

    std::vector<ExtremaWalker> extrema(frames.size(), ExtremaWalker(c, n));
    reduction::run_tasks(frames.size(), threads, [&](std::size_t i) { extrema[i].walk(frames[i]); });
    for (const auto& e : extrema) {
        for (unsigned d = 0; d <= n; ++d) {
            lo[d] = std::min(lo[d], e.lo[d]);
            hi[d] = std::max(hi[d], e.hi[d]);
        }
    }
    std::vector<double> shift(n + 1);
    for (unsigned d = 0; d <= n; ++d) {
        shift[d] = shift_for(s, lo[d], hi[d]);
    }

    std::vector<std::vector<double>> parts(frames.size(), std::vector<double>(n + 1));
    reduction::run_tasks(frames.size(), threads, [&](std::size_t i) {
        SumWalker walker(c, n, s, shift);
        walker.walk(frames[i], parts[i].data());
    });

    std::vector<double> sums(n + 1);
    std::size_t next = 0;
    combine_top(c, root_frame(c), top, n, s, shift, parts, next, sums.data());

    std::vector<double> profile(n);
    for (unsigned k = 1; k <= n; ++k) {
        profile[k - 1] = shift[k] + std::log(sums[k]);
    }
    return profile;
}

double delta_n(const Parameter& c, double s, unsigned n, unsigned threads) {
    return log_delta_profile(c, s, n, threads).back();
}

double pressure_raw(const Parameter& c, double s, unsigned n, unsigned threads) {
    return delta_n(c, s, n, threads) / static_cast<double>(n);
}

double pressure_ratio(const Parameter& c, double s, unsigned n, unsigned threads) {
    if (n < 2) {
        throw InvalidArgument("pressure_ratio needs n >= 2");
    }
    const auto profile = log_delta_profile(c, s, n, threads);
    return profile[n - 1] - profile[n - 2];
}

std::vector<PressureSample> pressure_samples(const Parameter& c, double s, unsigned n, unsigned threads) {
    const auto profile = log_delta_profile(c, s, n, threads);
    std::vector<PressureSample> rows;
    rows.reserve(n);
    for (unsigned k = 1; k <= n; ++k) {
        PressureSample row;
        row.n = k;
        row.s = s;
        row.log_delta = profile[k - 1];
        row.p_raw = row.log_delta / static_cast<double>(k);
        if (k >= 2) {
            row.p_ratio = profile[k - 1] - profile[k - 2];
        }
        rows.push_back(row);
    }
    return rows;
}

BirkhoffLevels::BirkhoffLevels(const Parameter& c, unsigned n, unsigned threads)
    : n_(n), threads_(std::max(1u, threads)) {
    if (n < 2 || n > kMaxDepth) {
        throw InvalidArgument("BirkhoffLevels depth must be in [2, 24], got " + std::to_string(n));
    }
    leaves_.resize(std::size_t{1} << n);
    parents_.resize(std::size_t{1} << (n - 1));

    const unsigned top = std::min(reduction::split_depth(threads_), n - 1);
    std::vector<double> lo(n + 1, std::numeric_limits<double>::infinity());
    std::vector<double> hi(n + 1, -std::numeric_limits<double>::infinity());
    std::vector<Frame> frames;
    collect_top(c, root_frame(c), top, frames, lo, hi);
    reduction::run_tasks(frames.size(), threads_, [&](std::size_t i) {
        LevelWalker walker(c, n, leaves_, parents_);
        walker.walk(frames[i]);
    });

    const auto [lmin, lmax] = std::minmax_element(leaves_.begin(), leaves_.end());
    const auto [pmin, pmax] = std::minmax_element(parents_.begin(), parents_.end());
    leaf_min_ = *lmin;
    leaf_max_ = *lmax;
    parent_min_ = *pmin;
    parent_max_ = *pmax;
}

double BirkhoffLevels::log_delta(double s) const {
    check_s(s);
    const double shift = shift_for(s, leaf_min_, leaf_max_);
    const double sum = reduction::parallel_pairwise_sum(
        n_, threads_, [&](std::uint64_t i) { return std::exp(-s * leaves_[i] - shift); });
    return shift + std::log(sum);
}

double BirkhoffLevels::log_delta_parent(double s) const {
    check_s(s);
    const double shift = shift_for(s, parent_min_, parent_max_);
    const double sum = reduction::parallel_pairwise_sum(
        n_ - 1, threads_, [&](std::uint64_t i) { return std::exp(-s * parents_[i] - shift); });
    return shift + std::log(sum);
}

} // namespace qcircle::pressure
