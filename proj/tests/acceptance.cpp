// Acceptance run: one PASS/FAIL line per criterion, with timings.
// Exit status is the number of failed criteria.

#include "oracles.hpp"
#include "qcircle/bowen.hpp"
#include "qcircle/boxdim.hpp"
#include "qcircle/cli.hpp"
#include "qcircle/coding.hpp"
#include "qcircle/errors.hpp"
#include "qcircle/pressure.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

using namespace qcircle;

namespace {

constexpr double kRuelleSlope = 1.0 / (4.0 * std::numbers::ln2);

struct Verdict {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, const std::function<Verdict()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!v.pass) {
        ++failures;
    }
    std::printf("[%s] %d %s (%.2fs): %s\n", v.pass ? "PASS" : "FAIL", id, name, secs, v.detail.c_str());
    std::fflush(stdout);
}

std::string last_line(const std::string& text) {
    std::string t = text;
    while (!t.empty() && t.back() == '\n') {
        t.pop_back();
    }
    return t.substr(t.rfind('\n') + 1);
}

std::vector<double> csv_numbers(const std::string& line) {
    std::vector<double> out;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) {
        out.push_back(f.empty() ? std::nan("") : std::stod(f));
    }
    return out;
}

double timed_s_star(Complex c, bool forced, double& seconds) {
    const auto start = std::chrono::steady_clock::now();
    const Parameter p = forced ? Parameter::forced(c) : Parameter::quasi_circle(c);
    const double s = bowen::solve_dimension(p, {18, 1e-12, 4}).s_star;
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return s;
}

} // namespace

int main() {
    std::ostringstream fmt;
    fmt.precision(10);

    criterion(1, "circle baseline", [] {
        std::ostringstream out, err;
        const auto start = std::chrono::steady_clock::now();
        const int code = cli::run({"dim", "--c", "0+0i", "--n-max", "12"}, out, err);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const double s_star = csv_numbers(last_line(out.str())).at(2);
        std::ostringstream d;
        d.precision(17);
        d << "exit " << code << ", s_star = " << s_star << ", |s_star-1| = " << std::abs(s_star - 1.0)
          << ", runtime " << secs << " s";
        return Verdict{code == 0 && std::abs(s_star - 1.0) <= 1e-10 && secs < 1.0, d.str()};
    });

    double s_real_005 = std::nan("");
    criterion(2, "Ruelle ratio reproduction", [&] {
        const double moduli[] = {0.1, 0.05, 0.025};
        const double lo[] = {0.33, 0.34, 0.345};
        const double hi[] = {0.40, 0.38, 0.375};
        std::ostringstream d;
        d.precision(6);
        bool ok = true;
        double previous_gap = INFINITY;
        for (int i = 0; i < 3; ++i) {
            double secs = 0.0;
            const double s = timed_s_star(moduli[i], false, secs);
            if (i == 1) {
                s_real_005 = s;
            }
            const double ratio = (s - 1.0) / (moduli[i] * moduli[i]);
            const double gap = std::abs(ratio - kRuelleSlope);
            const bool in_band = ratio >= lo[i] && ratio <= hi[i];
            const bool approaching = gap < previous_gap;
            ok = ok && in_band && approaching && secs <= 120.0;
            previous_gap = gap;
            d << "c=+" << moduli[i] << ": ratio " << ratio << " band [" << lo[i] << "," << hi[i] << "] "
              << (in_band ? "in" : "OUT") << (approaching ? "" : " not-approaching") << " (" << secs << "s); ";
        }
        // The negative real axis, for information.
        for (double m : moduli) {
            double secs = 0.0;
            const double s = timed_s_star(-m, false, secs);
            d << "c=-" << m << ": ratio " << (s - 1.0) / (m * m) << "; ";
        }
        d << "target " << kRuelleSlope;
        return Verdict{ok, d.str()};
    });

    criterion(3, "argument insensitivity", [&] {
        double secs = 0.0;
        const double real_s = std::isnan(s_real_005) ? timed_s_star(0.05, false, secs) : s_real_005;
        const double imag_s = timed_s_star({0.0, 0.05}, false, secs);
        const double diff = std::abs(real_s - imag_s);
        std::ostringstream d;
        d.precision(10);
        d << "s_star(0.05) = " << real_s << ", s_star(0.05i) = " << imag_s << ", diff " << diff << " (bound 2e-4)";
        return Verdict{diff <= 2e-4, d.str()};
    });

    criterion(4, "identity suite", [] {
        std::ostringstream out, err;
        const auto start = std::chrono::steady_clock::now();
        const int code = cli::run({"identities", "--c", "0.1+0i", "--n", "10"}, out, err);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const auto report = coding::verify_identities(Parameter::quasi_circle(0.1), 10);
        std::ostringstream d;
        d.precision(3);
        for (const auto& check : report.checks) {
            d << check.name << " " << check.max_residual << "<=" << check.bound << "; ";
        }
        d << "exit " << code << ", runtime " << secs << " s";
        return Verdict{code == 0 && report.all_passed() && secs < 10.0, d.str()};
    });

    criterion(5, "estimator cross-check", [] {
        const Parameter c = Parameter::quasi_circle({0.0, 0.1});
        const double s_star = bowen::solve_dimension(c, {18, 1e-12, 4}).s_star;
        const double periodic = pressure::pressure_periodic(c, s_star, 14);
        const double raw = pressure::pressure_raw(c, s_star, 14);
        const double gap = std::abs(periodic - raw);
        std::ostringstream d;
        d.precision(6);
        d << "s_star " << s_star << ", periodic " << periodic << ", raw " << raw << ", gap " << gap
          << " (bound 1e-3)";
        return Verdict{gap <= 1e-3, d.str()};
    });

    criterion(6, "box-count agreement", [] {
        const auto start = std::chrono::steady_clock::now();
        const Parameter c = Parameter::forced({0.0, 0.25});
        const double s_star = bowen::solve_dimension(c, {18, 1e-12, 4}).s_star;
        const auto scales = boxdim::dyadic_scales(4, 11);
        const auto cloud = boxdim::sample_julia(c, 1000000, 1000, 1);
        const double slope = boxdim::box_dimension(cloud.points, scales, 4).slope;
        const auto circle = boxdim::sample_julia(Parameter::quasi_circle(0.0), 1000000, 1000, 1);
        const double circle_slope = boxdim::box_dimension(circle.points, scales, 4).slope;
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream d;
        d.precision(6);
        d << "c=0.25i: slope " << slope << " vs s_star " << s_star << " (|diff| " << std::abs(slope - s_star)
          << " <= 0.05); c=0: slope " << circle_slope << " (1 +- 0.03); runtime " << secs << " s";
        return Verdict{std::abs(slope - s_star) <= 0.05 && std::abs(circle_slope - 1.0) <= 0.03 && secs <= 60.0,
                       d.str()};
    });

    criterion(7, "large-|c| bounds", [] {
        const auto b = bowen::large_c_bounds(-5.0);
        const double asymptotic = 2.0 * std::numbers::ln2 / std::log(20.0);
        bool out_of_range = false;
        try {
            bowen::large_c_bounds(1.0);
        } catch (const OutOfRange&) {
            out_of_range = true;
        }
        std::ostringstream d;
        d.precision(10);
        d << "lower " << b.lower << " < " << asymptotic << " < upper " << b.upper << "; |c|=1 "
          << (out_of_range ? "OutOfRange" : "accepted");
        return Verdict{b.lower < asymptotic && asymptotic < b.upper && out_of_range, d.str()};
    });

    criterion(8, "determinism", [] {
        const Parameter c = Parameter::quasi_circle({0.07, 0.03});
        const double one = pressure::delta_n(c, 1.002, 16, 1);
        bool same = true;
        std::string reference;
        for (const char* t : {"1", "2", "4", "8"}) {
            const double v = pressure::delta_n(c, 1.002, 16, static_cast<unsigned>(std::stoi(t)));
            same = same && std::memcmp(&v, &one, sizeof v) == 0;
            std::ostringstream out, err;
            cli::run({"pressure", "--c", "0.07+0.03i", "--s", "1.002", "--n", "16", "--threads", t}, out, err);
            if (reference.empty()) {
                reference = out.str();
            }
            same = same && out.str() == reference && !reference.empty();
        }
        return Verdict{same, "log delta_16 = " + cli::format_real(one) + " for threads 1,2,4,8 (library and CLI bytes)"};
    });

    criterion(9, "brute-force equivalence", [] {
        const Complex grid[] = {{0.0, 0.0}, {0.05, 0.0}, {0.0, 0.1}, {-0.1, 0.05}, {0.15, -0.1}};
        double worst = 0.0;
        for (const Complex cv : grid) {
            const Parameter c = Parameter::quasi_circle(cv);
            for (double s : {0.5, 1.0, 1.5}) {
                for (unsigned n = 1; n <= 10; ++n) {
                    const long double naive = oracle::delta_naive(cv, s, n);
                    const long double fast = std::exp(static_cast<long double>(pressure::delta_n(c, s, n)));
                    worst = std::max(worst, static_cast<double>(std::abs((fast - naive) / naive)));
                }
            }
        }
        std::ostringstream d;
        d.precision(3);
        d << "max relative difference " << worst << " (bound 1e-12) over 5 parameters, s in {0.5,1,1.5}, n <= 10";
        return Verdict{worst <= 1e-12, d.str()};
    });

    std::printf("%d criteria failed\n", failures);
    return failures;
}
