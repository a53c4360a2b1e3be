#include "qcircle/coding.hpp"

#include <algorithm>

namespace qcircle::coding {

namespace {

// Distance of a dyadic value from 0 modulo 2, as a double.
double distance_mod2(const DyadicRational& q) {
    const double r = q.mod2().to_double();
    return std::min(r, 2.0 - r);
}

IdentityCheck phase_halving(unsigned n) {
    IdentityCheck check{"phase_halving", 0.0, 0.0};
    for (unsigned len = 2; len <= n; ++len) {
        for (std::uint64_t i = 0; i < (std::uint64_t{1} << len); ++i) {
            const DyadicWord word(i, len);
            const DyadicRational defect = q_exponent(word).twice() - q_exponent(word.prefix(len - 1));
            check.max_residual = std::max(check.max_residual, distance_mod2(defect));
        }
    }
    return check;
}

} // namespace

bool IdentityReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& k) { return k.passed(); });
}

IdentityReport verify_identities(const Parameter& c, unsigned n) {
    if (n < 1 || n > kMaxIdentityDepth) {
        throw InvalidArgument("identity suite depth must be in [1, 12], got " + std::to_string(n));
    }
    const Complex cv = c.value();
    const double c2 = std::norm(cv);
    const double leaves = std::ldexp(1.0, static_cast<int>(n));
    const std::uint64_t count = std::uint64_t{1} << n;

    IdentityReport report{cv, n, {}};
    report.checks.push_back(phase_halving(n));

    // powers[w * (n + 1) + r] = u(w)^(2^r), r = 0..n
    std::vector<Complex> powers(count * (n + 1));
    for (std::uint64_t i = 0; i < count; ++i) {
        const DyadicWord word(i, n);
        for (unsigned r = 0; r <= n; ++r) {
            powers[i * (n + 1) + r] = u_power(word, r);
        }
    }
    auto re_cu = [&](std::uint64_t i, unsigned r) { return (cv * powers[i * (n + 1) + r]).real(); };

    IdentityCheck cancellation{"cancellation", 0.0, 1e-12 * leaves};
    for (unsigned r = 1; r + 1 <= n; ++r) {
        Complex sum{0.0, 0.0};
        for (std::uint64_t i = 0; i < count; ++i) {
            sum += powers[i * (n + 1) + r];
        }
        cancellation.max_residual = std::max(cancellation.max_residual, std::abs(sum));
    }
    report.checks.push_back(cancellation);

    IdentityCheck orthogonality{"orthogonality", 0.0, 1e-12 * leaves * c2};
    for (unsigned r = 1; r + 1 <= n; ++r) {
        for (unsigned l = r + 1; l + 1 <= n; ++l) {
            double sum = 0.0;
            for (std::uint64_t i = 0; i < count; ++i) {
                sum += re_cu(i, r) * re_cu(i, l);
            }
            orthogonality.max_residual = std::max(orthogonality.max_residual, std::abs(sum));
        }
    }
    report.checks.push_back(orthogonality);

    IdentityCheck re_squared{"re_squared", 0.0, 1e-12 * leaves * c2};
    for (unsigned r = 1; r <= n; ++r) {
        double sum = 0.0;
        for (std::uint64_t i = 0; i < count; ++i) {
            const double x = re_cu(i, r);
            sum += x * x;
        }
        const double expected = r + 1 < n ? 0.5 * leaves * c2 : 0.5 * leaves * (c2 + (cv * cv).real());
        re_squared.max_residual = std::max(re_squared.max_residual, std::abs(sum - expected));
    }
    report.checks.push_back(re_squared);

    IdentityCheck consistency{"consistency", 0.0, 1e-9};
    enumerate_leaves(c, n, [&](const LeafVisit& leaf) {
        const auto r = r_chain(c, leaf.prefix_xi);
        for (unsigned k = 1; k <= n; ++k) {
            const Complex model = phase(q_exponent(leaf.word.prefix(k))) * std::exp(r[k - 1]);
            consistency.max_residual = std::max(consistency.max_residual, std::abs(leaf.prefix_xi[k - 1] - model));
        }
    });
    report.checks.push_back(consistency);

    return report;
}

} // namespace qcircle::coding
