#pragma once

#include "qcircle/dynamics.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qcircle::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
    kOk = 0,
    kInvalidInput = 1,
    kNoConvergence = 2,
    kIdentityFailure = 3,
};

/// Parsed command line. Every field is echoed in the JSON `meta.config`.
struct RunConfig {
    std::string command;
    std::string c_text = "0+0i";
    Complex c{0.0, 0.0};
    unsigned n_max = 16;
    unsigned n = 10;
    double s = 1.0;
    double tol = 1e-12;
    std::uint64_t seed = 0;
    std::size_t count = 100000;
    std::size_t burn_in = 1000;
    std::string scales_text;
    std::vector<double> scales;
    std::string moduli_text;
    std::vector<double> moduli;
    unsigned args = 4;
    std::string format = "csv";
    std::string out_path;
    bool force = false;
    unsigned threads = 1;
};

/// `a+bi` / `a-bi` with decimal reals and no spaces (e.g. `0.05+0i`,
/// `-1.12+0.222i`); a bare real is also accepted. Throws InvalidArgument.
Complex parse_complex(std::string_view text);

/// Comma-separated reals. Throws InvalidArgument.
std::vector<double> parse_real_list(std::string_view text);

/// Shortest decimal that parses back to exactly `x`; "nan", "inf", "-inf"
/// for non-finite values.
std::string format_real(double x);

/// Runs one command. `args` excludes the program name. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qcircle::cli
