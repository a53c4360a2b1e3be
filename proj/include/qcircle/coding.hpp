#pragma once

// Dyadic coding of the preimage tree of alpha.
//
// A word eps_1 ... eps_n names the point xi(eps) with f^n(xi(eps)) = alpha;
// eps_1 selects the innermost square root and f^k(xi(eps)) = xi(eps|_{n-k}).
// Branches follow the nested-radical convention: the child with bit b of a
// node with phase exponent Q' is the square root of (xi' - c) closest to
// exp(i*pi*(b + Q'/2)), so that xi(eps) = exp(i*pi*Q(eps) + r(eps)) holds
// with principal logarithms in r.

#include "qcircle/dyadic.hpp"
#include "qcircle/dynamics.hpp"
#include "qcircle/errors.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qcircle::coding {

/// Depth guard for exhaustive enumeration.
inline constexpr unsigned kMaxEnumerationDepth = 30;

/// One node of the preimage tree. The root (depth 0) is alpha; a node at
/// depth d >= 1 has Q = q_numerator / 2^(d-1).
struct TreeNode {
    Complex xi;
    std::int64_t q_numerator = 0;
    unsigned depth = 0;

    DyadicRational q() const;
};

TreeNode tree_root(const Parameter& c);

/// Both children of `parent`; children[1].xi == -children[0].xi exactly.
/// Throws CriticalCollision when parent.xi == c.
std::array<TreeNode, 2> children(const Parameter& c, const TreeNode& parent);

/// Q(eps) = eps_n + eps_{n-1}/2 + ... + eps_1/2^(n-1), exact; in [0, 2).
DyadicRational q_exponent(const DyadicWord& word);

/// exp(i*pi*q). Exact at multiples of 1/2.
Complex phase(const DyadicRational& q);

/// u(eps) = exp(-i*pi*Q(eps)).
Complex u_phase(const DyadicWord& word);

/// u(eps)^(2^power), evaluated as the exact phase of -2^power * Q(eps).
Complex u_power(const DyadicWord& word, unsigned power);

/// xi(eps) by n inverse-branch steps from alpha, innermost bit first.
Complex xi(const Parameter& c, const DyadicWord& word);

/// xi of every prefix: element k-1 is xi(eps|_k).
std::vector<Complex> prefix_xi(const Parameter& c, const DyadicWord& word);

/// r of every prefix given the xi chain: r(eps_1) = log(alpha - c)/2 and
/// r(eps) = r(eps|_{n-1})/2 + log(1 - c/xi(eps|_{n-1}))/2, principal logs.
/// Throws LogBranchViolation when a log argument leaves Re > 0.
std::vector<Complex> r_chain(const Parameter& c, std::span<const Complex> prefix_xi);

Complex r_log(const Parameter& c, const DyadicWord& word);

/// Partial sum  sum_{k=1}^{n} (1 - 2^-k) u^(2^k).
Complex phi_series(Complex u, unsigned n);

struct PreimagePoint {
    DyadicWord word;
    Complex xi;
    DyadicRational q;
    Complex r;
};

PreimagePoint preimage_point(const Parameter& c, const DyadicWord& word);

/// What a visitor sees at each leaf of enumerate_leaves.
struct LeafVisit {
    DyadicWord word;
    /// Element k-1 is xi(eps|_k), k = 1..n.
    std::span<const Complex> prefix_xi;
    /// Element k-1 is sum_{j<=k} log 2|xi(eps|_j)|.
    std::span<const double> prefix_logsum;
    /// Q(word) * 2^(n-1).
    std::int64_t q_numerator;

    Complex xi() const { return prefix_xi.back(); }
    double birkhoff_logsum() const { return prefix_logsum.back(); }
};

namespace detail {

void check_depth(unsigned n);
[[noreturn]] void rethrow_with_word(const Error& e, std::uint64_t index, unsigned depth);

template <class Visitor>
class LeafWalker {
public:
    LeafWalker(const Parameter& c, unsigned n, Visitor& visit)
        : c_(c), n_(n), visit_(visit), xi_(n), logsum_(n) {}

    /// Records `node` (depth >= 1) in the prefix slots without descending.
    void fill(const TreeNode& node, double log_term) {
        const unsigned d = node.depth;
        xi_[d - 1] = node.xi;
        logsum_[d - 1] = (d > 1 ? logsum_[d - 2] : 0.0) + log_term;
    }

    // Slots for depths below node.depth must already be filled.
    void descend(const TreeNode& node, double log_term, std::uint64_t index) {
        fill(node, log_term);
        const unsigned d = node.depth;
        if (d == n_) {
            visit_(LeafVisit{DyadicWord(index, n_), xi_, logsum_, node.q_numerator});
            return;
        }
        std::array<TreeNode, 2> kids;
        try {
            kids = children(c_, node);
        } catch (const Error& e) {
            rethrow_with_word(e, index, d);
        }
        const double term = std::log(2.0 * std::abs(kids[0].xi));
        descend(kids[0], term, index << 1);
        descend(kids[1], term, (index << 1) | 1u);
    }

private:
    Parameter c_;
    unsigned n_;
    Visitor& visit_;
    std::vector<Complex> xi_;
    std::vector<double> logsum_;
};

} // namespace detail

/// Depth-first visit of all 2^n words in lexicographic order, carrying the
/// prefix chain incrementally (O(n) memory). 1 <= n <= 30.
template <class Visitor>
void enumerate_leaves(const Parameter& c, unsigned n, Visitor&& visit) {
    detail::check_depth(n);
    detail::LeafWalker<std::remove_reference_t<Visitor>> walker(c, n, visit);
    const auto kids = children(c, tree_root(c));
    const double term = std::log(2.0 * std::abs(kids[0].xi));
    walker.descend(kids[0], term, 0);
    walker.descend(kids[1], term, 1);
}

/// Leaves below the depth-`prefix.length()` node named by `prefix`; used to
/// partition enumeration across workers.
template <class Visitor>
void enumerate_subtree(const Parameter& c, unsigned n, const DyadicWord& prefix, Visitor&& visit) {
    detail::check_depth(n);
    if (prefix.length() > n) {
        throw InvalidArgument("subtree prefix longer than enumeration depth");
    }
    detail::LeafWalker<std::remove_reference_t<Visitor>> walker(c, n, visit);
    TreeNode node = tree_root(c);
    for (unsigned k = 1; k <= prefix.length(); ++k) {
        std::array<TreeNode, 2> kids;
        try {
            kids = children(c, node);
        } catch (const Error& e) {
            detail::rethrow_with_word(e, prefix.index() >> (prefix.length() - k + 1), k - 1);
        }
        node = kids[static_cast<std::size_t>(prefix.bit(k))];
        const double term = std::log(2.0 * std::abs(node.xi));
        if (k < prefix.length()) {
            walker.fill(node, term);
        } else {
            walker.descend(node, term, prefix.index());
        }
    }
}

// ---------------------------------------------------------------------------
// Identity suite

struct IdentityCheck {
    std::string name;
    double max_residual = 0.0;
    double bound = 0.0;

    bool passed() const { return max_residual <= bound; }
};

struct IdentityReport {
    Complex c;
    unsigned n = 0;
    std::vector<IdentityCheck> checks;

    bool all_passed() const;
};

/// Largest n accepted by verify_identities.
inline constexpr unsigned kMaxIdentityDepth = 12;

/// Evaluates the algebraic identities of the coding at depth n:
///   phase_halving   2Q(eps) == Q(eps|_{n-1}) (mod 2), exact
///   cancellation    |sum_eps u^(2^r)| for 1 <= r <= n-1
///   orthogonality   |sum_eps Re(c u^(2^r)) Re(c u^(2^l))|, 1 <= r < l <= n-1
///   re_squared      sum_eps Re(c u^(2^r))^2 against its two-case closed form
///   consistency     |xi - exp(i pi Q + r)| over all words
IdentityReport verify_identities(const Parameter& c, unsigned n);

} // namespace qcircle::coding
