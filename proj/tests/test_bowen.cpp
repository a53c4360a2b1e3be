#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcircle/bowen.hpp"
#include "qcircle/errors.hpp"
#include "qcircle/pressure.hpp"

#include <cmath>
#include <cstring>
#include <numbers>

using namespace qcircle;
using namespace qcircle::bowen;

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kRuelleSlope = 1.0 / (4.0 * std::numbers::ln2);

// Smaller root of q(1+b)^2 - b ln2 = 0 by the textbook formula in long double.
long double beta_oracle(long double q) {
    const long double ln2 = std::log(2.0L);
    const long double b = 2.0L * q - ln2;
    const long double disc = b * b - 4.0L * q * q;
    return (-b - std::sqrt(disc)) / (2.0L * q);
}

} // namespace

TEST_CASE("circle: s_star is exactly 1") {
    for (unsigned n_max : {4u, 8u, 12u}) {
        const auto report = solve_dimension(Parameter::quasi_circle(0.0), {n_max, 1e-12, 1});
        CHECK(std::abs(report.s_star - 1.0) <= 1e-10);
        CHECK(report.roots_by_n.size() == n_max - 3);
        CHECK(report.residual == std::abs(report.s_star - 1.0));
        CHECK(report.beta == 0.0);
    }
}

TEST_CASE("c = 0.05 follows the Ruelle slope within 10%") {
    const auto report = solve_dimension(Parameter::quasi_circle(0.05), {18, 1e-12, 4});
    const double ratio = (report.s_star - 1.0) / 0.0025;
    MESSAGE("s_star = " << report.s_star << ", ratio = " << ratio);
    CHECK(std::abs(ratio - kRuelleSlope) <= 0.1 * kRuelleSlope);
    CHECK(report.residual < 1e-3);
}

TEST_CASE("report invariants on a grid") {
    for (const Complex cv : {Complex(0.1, 0.0), Complex(-0.1, 0.0), Complex(0.0, 0.2), Complex(0.12, -0.12),
                             Complex(-0.2, 0.0), Complex(0.2, 0.0)}) {
        const Parameter c = Parameter::quasi_circle(cv);
        const auto report = solve_dimension(c, {12, 1e-12, 2});
        for (const auto& r : report.roots_by_n) {
            CHECK(r.s >= report.bracket.first);
            CHECK(r.s <= report.bracket.second);
            // bisection leaves the root within tol of a sign change
            const pressure::BirkhoffLevels levels(c, r.n);
            CHECK(levels.ratio(r.s - 1e-9) > 0.0);
            CHECK(levels.ratio(r.s + 1e-9) < 0.0);
        }
        CHECK(report.s_star >= 1.0 - 1e-9);
        CHECK(report.ruelle_value == 1.0 + std::norm(cv) / (4.0 * kLn2));
        CHECK(report.tolerance == 1e-12);
    }
}

TEST_CASE("initial bracket holds for |c| <= 0.2, n in [4, 16]") {
    for (const Complex cv : {Complex(0.2, 0.0), Complex(-0.2, 0.0), Complex(0.0, 0.2), Complex(0.1414, 0.1414)}) {
        const Parameter c = Parameter::quasi_circle(cv);
        for (unsigned n : {4u, 8u, 12u, 16u}) {
            CHECK(pressure::pressure_ratio(c, 0.5, n) > 0.0);
            CHECK(pressure::pressure_ratio(c, 2.0, n) < 0.0);
        }
    }
}

TEST_CASE("conjugate parameters give identical roots") {
    const Parameter c = Parameter::quasi_circle({0.06, 0.11});
    const auto a = solve_dimension(c, {14, 1e-12, 1});
    const auto b = solve_dimension(c.conj(), {14, 1e-12, 3});
    REQUIRE(a.roots_by_n.size() == b.roots_by_n.size());
    for (std::size_t i = 0; i < a.roots_by_n.size(); ++i) {
        CHECK(std::memcmp(&a.roots_by_n[i].s, &b.roots_by_n[i].s, sizeof(double)) == 0);
    }
    CHECK(std::memcmp(&a.s_star, &b.s_star, sizeof(double)) == 0);
}

TEST_CASE("solver guards") {
    const Parameter c = Parameter::quasi_circle(0.1);
    CHECK_THROWS_AS(solve_dimension(c, {3, 1e-12, 1}), InvalidArgument);
    CHECK_THROWS_AS(solve_dimension(c, {25, 1e-12, 1}), InvalidArgument);
    CHECK_THROWS_AS(solve_dimension(c, {8, 0.0, 1}), InvalidArgument);
    CHECK_THROWS_AS(solve_dimension(c, {8, -1.0, 1}), InvalidArgument);
}

TEST_CASE("aitken extrapolation") {
    // s_n = 1 + 0.5^n is extrapolated exactly.
    std::vector<double> geometric;
    for (int n = 4; n <= 12; ++n) {
        geometric.push_back(1.0 + std::ldexp(1.0, -n));
    }
    const auto [s, used] = aitken_extrapolate(geometric, 1e-12);
    CHECK(used);
    CHECK(std::abs(s - 1.0) < 1e-15);

    const auto [flat, flat_used] = aitken_extrapolate({1.25, 1.25, 1.25}, 1e-12);
    CHECK_FALSE(flat_used);
    CHECK(flat == 1.25);

    const auto [short_seq, short_used] = aitken_extrapolate({2.0, 1.5}, 1e-12);
    CHECK_FALSE(short_used);
    CHECK(short_seq == 1.5);

    // Not contracting: fall back to the last value.
    const auto [diverging, div_used] = aitken_extrapolate({1.0, 2.0, 4.0}, 1e-12);
    CHECK_FALSE(div_used);
    CHECK(diverging == 4.0);
    CHECK_THROWS_AS(aitken_extrapolate({}, 1e-12), InvalidArgument);
}

TEST_CASE("ruelle asymptotic") {
    CHECK(ruelle_asymptotic(Parameter::quasi_circle(0.0)) == 1.0);
    CHECK(ruelle_asymptotic(Parameter::quasi_circle(0.1)) == doctest::Approx(1.00360674).epsilon(1e-8));
    CHECK(ruelle_asymptotic(Parameter::forced({0.0, 0.25})) == doctest::Approx(1.02254).epsilon(1e-5));
}

TEST_CASE("beta quadratic") {
    CHECK(beta_quadratic(Parameter::quasi_circle(0.0)) == 0.0);

    const double b = beta_quadratic(Parameter::quasi_circle(0.1));
    CHECK(b > 0.01 * kRuelleSlope);
    CHECK(b < 0.0037);
    CHECK(b == doctest::Approx(static_cast<double>(beta_oracle(0.0025L))).epsilon(1e-13));

    for (const Complex cv : {Complex(0.2, 0.0), Complex(0.0, -0.2), Complex(0.001, 0.0)}) {
        const double q = std::norm(cv) / 4.0;
        const double beta = beta_quadratic(Parameter::quasi_circle(cv));
        CHECK(std::abs(q * (1.0 + beta) * (1.0 + beta) - beta * kLn2) <= 1e-14);
    }
    // |c|^2 > log 2 has no real root.
    CHECK_THROWS_AS(beta_quadratic(Parameter::forced(0.9)), NoRealRoot);
}

TEST_CASE("large-c bounds") {
    CHECK_THROWS_AS(large_c_bounds(1.0), OutOfRange);
    CHECK_THROWS_AS(large_c_bounds(2.47), OutOfRange);

    const auto b = large_c_bounds(5.0);
    CHECK(b.lower == doctest::Approx(2 * kLn2 / std::log(4 * (5 + std::sqrt(10.0)))).epsilon(1e-15));
    CHECK(b.upper == doctest::Approx(2 * kLn2 / std::log(4 * (5 - std::sqrt(10.0)))).epsilon(1e-15));
    const double asymptotic = 2 * kLn2 / std::log(20.0);
    CHECK(b.lower < asymptotic);
    CHECK(asymptotic < b.upper);

    const auto neg = large_c_bounds(-5.0);
    CHECK(neg.lower == b.lower);
    CHECK(neg.upper == b.upper);

    const auto far = large_c_bounds(1e12);
    CHECK(far.lower < far.upper);
    CHECK(far.upper < 0.05);
}
