#include "qcircle/dynamics.hpp"

#include "qcircle/errors.hpp"

#include <cmath>
#include <sstream>

namespace qcircle {

namespace {

bool finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

std::string describe(Complex c) {
    std::ostringstream os;
    os.precision(17);
    os << c.real() << (std::signbit(c.imag()) ? "" : "+") << c.imag() << "i";
    return os.str();
}

void require_finite(Complex c) {
    if (!finite(c)) {
        throw RegimeError("parameter c must be finite, got " + describe(c));
    }
}

// Principal square root with a signed-zero imaginary part folded to +0, so
// the argument of the result is always in (-pi/2, pi/2].
Complex principal_sqrt(Complex z) {
    if (z.imag() == 0.0) {
        z.imag(0.0);
    }
    return std::sqrt(z);
}

} // namespace

const char* to_string(Regime regime) {
    switch (regime) {
    case Regime::quasi_circle: return "quasi_circle";
    case Regime::large_c: return "large_c";
    case Regime::forced: return "forced";
    }
    return "unknown";
}

double large_c_threshold() {
    return (5.0 + 2.0 * std::sqrt(6.0)) / 4.0;
}

Parameter Parameter::quasi_circle(Complex c) {
    require_finite(c);
    if (std::abs(c) > kQuasiCircleRadius) {
        std::ostringstream os;
        os << "|c| = " << std::abs(c) << " exceeds the quasi-circle guard "
           << kQuasiCircleRadius << " (use --force to override)";
        throw RegimeError(os.str());
    }
    return Parameter(c, Regime::quasi_circle);
}

Parameter Parameter::large_c(Complex c) {
    require_finite(c);
    if (!(std::abs(c) > large_c_threshold())) {
        std::ostringstream os;
        os << "|c| = " << std::abs(c) << " must exceed (5+2*sqrt(6))/4 = "
           << large_c_threshold();
        throw RegimeError(os.str());
    }
    return Parameter(c, Regime::large_c);
}

Parameter Parameter::forced(Complex c) {
    require_finite(c);
    return Parameter(c, Regime::forced);
}

Parameter Parameter::make(Complex c, bool force) {
    return force ? forced(c) : quasi_circle(c);
}

namespace dynamics {

Complex apply(const Parameter& c, Complex z) {
    return z * z + c.value();
}

double derivative_modulus(Complex z) {
    return 2.0 * std::abs(z);
}

Complex fixed_point_alpha(const Parameter& c) {
    const Complex cv = c.value();
    // Built componentwise so that conj(c) produces the exactly conjugated
    // discriminant, signed zeros included.
    const Complex disc(1.0 - 4.0 * cv.real(), -4.0 * cv.imag());
    const Complex root = std::sqrt(disc);
    return Complex(0.5 * (1.0 + root.real()), 0.5 * root.imag());
}

bool is_parabolic(const Parameter& c) {
    return c.value() == Complex(0.25, 0.0);
}

Complex inverse_branch(const Parameter& c, Complex eta, int bit) {
    if (bit != 0 && bit != 1) {
        throw InvalidArgument("branch bit must be 0 or 1");
    }
    const Complex d = eta - c.value();
    if (std::abs(d) < 1e-300) {
        throw CriticalCollision("inverse branches collide at the critical value (eta = c)");
    }
    const Complex w = principal_sqrt(d);
    return bit == 0 ? w : -w;
}

Complex inverse_branch_about(const Parameter& c, Complex eta, int bit, Complex axis) {
    Complex w = inverse_branch(c, eta, 0);
    const Complex half_axis = std::sqrt(axis / std::abs(axis));
    const Complex t = w * std::conj(half_axis);
    const bool in_range = t.imag() > 0.0 || (t.imag() == 0.0 && t.real() > 0.0);
    if (!in_range) {
        w = -w;
    }
    return bit == 0 ? w : -w;
}

} // namespace dynamics
} // namespace qcircle
