#pragma once

#include <complex>

namespace qcircle {

using Complex = std::complex<double>;

enum class Regime { quasi_circle, large_c, forced };

const char* to_string(Regime regime);

/// Upper bound on |c| accepted by the quasi-circle solvers without --force.
inline constexpr double kQuasiCircleRadius = 0.20;

/// (5 + 2*sqrt(6)) / 4, the lower bound on |c| for the large-|c| bounds.
double large_c_threshold();

/// The constant c of f(z) = z^2 + c, tagged with the regime it was validated
/// against. Construction is the only place the regime guard is checked.
class Parameter {
public:
    /// Throws RegimeError when |c| > kQuasiCircleRadius or c is not finite.
    static Parameter quasi_circle(Complex c);
    /// Throws RegimeError unless |c| > large_c_threshold().
    static Parameter large_c(Complex c);
    /// Skips the modulus guard; c must still be finite.
    static Parameter forced(Complex c);
    /// quasi_circle(c), or forced(c) when `force` is set.
    static Parameter make(Complex c, bool force);

    Complex value() const noexcept { return c_; }
    Regime regime() const noexcept { return regime_; }
    double modulus() const noexcept { return std::abs(c_); }

    /// Same regime, conjugated constant.
    Parameter conj() const noexcept { return Parameter(std::conj(c_), regime_); }

private:
    Parameter(Complex c, Regime regime) : c_(c), regime_(regime) {}

    Complex c_;
    Regime regime_;
};

namespace dynamics {

/// z^2 + c.
Complex apply(const Parameter& c, Complex z);

/// |f'(z)| = 2|z|.
double derivative_modulus(Complex z);

/// alpha = (1 + sqrt(1 - 4c)) / 2 with the principal root, so alpha -> 1 as
/// c -> 0. Conjugation-exact: alpha(conj c) == conj(alpha(c)) bitwise.
Complex fixed_point_alpha(const Parameter& c);

/// True at the parabolic parameter c = 1/4 where the two fixed points merge.
bool is_parabolic(const Parameter& c);

/// Solutions of f(w) = eta. bit 0 is the principal root of eta - c
/// (argument in (-pi/2, pi/2]), bit 1 its exact negation.
/// Throws CriticalCollision when |eta - c| < 1e-300.
Complex inverse_branch(const Parameter& c, Complex eta, int bit);

/// Inverse branches with the square-root cut rotated onto the ray through
/// `axis`: bit 0 returns the root whose argument lies in
/// [arg(axis)/2, arg(axis)/2 + pi), bit 1 its negation. With axis = alpha - c
/// the two images meet at +alpha and -alpha, which makes the pair a Markov
/// coding of J.
Complex inverse_branch_about(const Parameter& c, Complex eta, int bit, Complex axis);

} // namespace dynamics
} // namespace qcircle
