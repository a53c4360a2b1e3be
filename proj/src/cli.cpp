#include "qcircle/cli.hpp"

#include "qcircle/bowen.hpp"
#include "qcircle/boxdim.hpp"
#include "qcircle/coding.hpp"
#include "qcircle/errors.hpp"
#include "qcircle/pressure.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <regex>
#include <sstream>
#include <variant>

namespace qcircle::cli {

namespace {

using json = nlohmann::ordered_json;

double parse_real(std::string_view text) {
    const char* first = text.data();
    const char* last = first + text.size();
    if (first != last && *first == '+') {
        ++first;
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (first == last || ec != std::errc{} || ptr != last) {
        throw InvalidArgument("not a real number: '" + std::string(text) + "'");
    }
    return value;
}

using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

Cell real(double x) { return Cell{x}; }
Cell integer(std::int64_t x) { return Cell{x}; }
Cell text(std::string s) { return Cell{std::move(s)}; }

std::string cell_text(const Cell& cell) {
    if (const auto* d = std::get_if<double>(&cell)) {
        return format_real(*d);
    }
    if (const auto* i = std::get_if<std::int64_t>(&cell)) {
        return std::to_string(*i);
    }
    if (const auto* s = std::get_if<std::string>(&cell)) {
        return *s;
    }
    return "";
}

// JSON has no NaN; non-finite reals go out as their CSV spelling.
json cell_json(const Cell& cell) {
    if (const auto* d = std::get_if<double>(&cell)) {
        return std::isfinite(*d) ? json(*d) : json(format_real(*d));
    }
    if (const auto* i = std::get_if<std::int64_t>(&cell)) {
        return json(*i);
    }
    if (const auto* s = std::get_if<std::string>(&cell)) {
        return json(*s);
    }
    return json(nullptr);
}

void write_csv(std::ostream& os, const std::vector<Table>& tables) {
    for (std::size_t t = 0; t < tables.size(); ++t) {
        if (t > 0) {
            os << '\n';
        }
        const Table& table = tables[t];
        for (std::size_t j = 0; j < table.columns.size(); ++j) {
            os << (j ? "," : "") << table.columns[j];
        }
        os << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t j = 0; j < row.size(); ++j) {
                os << (j ? "," : "") << cell_text(row[j]);
            }
            os << '\n';
        }
    }
}

json config_json(const RunConfig& cfg) {
    json c;
    c["command"] = cfg.command;
    c["c"] = cfg.c_text;
    c["c_re"] = cfg.c.real();
    c["c_im"] = cfg.c.imag();
    c["n_max"] = cfg.n_max;
    c["n"] = cfg.n;
    c["s"] = cfg.s;
    c["tol"] = cfg.tol;
    c["seed"] = cfg.seed;
    c["count"] = cfg.count;
    c["burn_in"] = cfg.burn_in;
    c["scales"] = cfg.scales;
    c["moduli"] = cfg.moduli;
    c["args"] = cfg.args;
    c["format"] = cfg.format;
    c["out"] = cfg.out_path.empty() ? json(nullptr) : json(cfg.out_path);
    c["force"] = cfg.force;
    c["threads"] = cfg.threads;
    return c;
}

void write_json(std::ostream& os, const std::vector<Table>& tables, const RunConfig& cfg, double wall_seconds) {
    json doc;
    doc["meta"] = {
        {"version", kVersion},
        {"seed", cfg.seed},
        {"threads", cfg.threads},
        {"wall_time_s", wall_seconds},
        {"prng", boxdim::kPrngId},
        {"config", config_json(cfg)},
    };
    for (const Table& table : tables) {
        json rows = json::array();
        for (const auto& row : table.rows) {
            json obj = json::object();
            for (std::size_t j = 0; j < row.size(); ++j) {
                obj[table.columns[j]] = cell_json(row[j]);
            }
            rows.push_back(std::move(obj));
        }
        doc[table.name] = std::move(rows);
    }
    os << doc.dump(2) << '\n';
}

struct Outcome {
    std::vector<Table> tables;
    int code = kOk;
};

void require_depth(unsigned n, unsigned lo, unsigned hi, const char* flag) {
    if (n < lo || n > hi) {
        throw InvalidArgument(std::string(flag) + " must be in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                              "], got " + std::to_string(n));
    }
}

bowen::SolveOptions solve_options(const RunConfig& cfg) {
    require_depth(cfg.n_max, bowen::kMinDepth, bowen::kMaxDepth, "--n-max");
    if (!(cfg.tol > 0.0) || !std::isfinite(cfg.tol)) {
        throw InvalidArgument("--tol must be positive");
    }
    return {cfg.n_max, cfg.tol, cfg.threads};
}

Outcome cmd_dim(const RunConfig& cfg) {
    const Parameter c = Parameter::make(cfg.c, cfg.force);
    const auto report = bowen::solve_dimension(c, solve_options(cfg));
    Table roots{"roots", {"n", "s_n"}, {}};
    for (const auto& r : report.roots_by_n) {
        roots.rows.push_back({integer(r.n), real(r.s)});
    }
    Table summary{"summary", {"c_re", "c_im", "s_star", "beta", "ruelle", "residual"}, {}};
    summary.rows.push_back({real(cfg.c.real()), real(cfg.c.imag()), real(report.s_star), real(report.beta),
                            real(report.ruelle_value), real(report.residual)});
    return {{roots, summary}, kOk};
}

Outcome cmd_sweep(const RunConfig& cfg, std::ostream& err) {
    if (cfg.moduli.empty()) {
        throw InvalidArgument("sweep needs --moduli");
    }
    if (cfg.args < 1) {
        throw InvalidArgument("--args must be at least 1");
    }
    for (double m : cfg.moduli) {
        if (!(m >= 0.0) || !std::isfinite(m)) {
            throw InvalidArgument("moduli must be non-negative reals");
        }
        if (!cfg.force && m > kQuasiCircleRadius) {
            throw RegimeError("modulus " + format_real(m) +
                              " is outside the quasi-circle regime |c| <= 0.2 (use --force)");
        }
    }
    const auto options = solve_options(cfg);

    const double nan = std::numeric_limits<double>::quiet_NaN();
    Table table{"sweep", {"modulus", "argument", "s_star", "ruelle", "ratio"}, {}};
    int code = kOk;
    for (double m : cfg.moduli) {
        for (unsigned j = 0; j < cfg.args; ++j) {
            const double arg = 2.0 * std::numbers::pi * j / cfg.args;
            const Complex value = j == 0 ? Complex(m, 0.0) : std::polar(m, arg);
            double s_star = nan;
            double ruelle = nan;
            try {
                const Parameter c = Parameter::make(value, cfg.force);
                ruelle = bowen::ruelle_asymptotic(c);
                s_star = bowen::solve_dimension(c, options).s_star;
            } catch (const Error& e) {
                err << "sweep: row |c|=" << format_real(m) << " arg=" << format_real(arg)
                    << " failed: " << e.what() << '\n';
                code = kNoConvergence;
            }
            const double ratio = m > 0.0 ? (s_star - 1.0) / (m * m) : nan;
            table.rows.push_back({real(m), real(arg), real(s_star), real(ruelle), real(ratio)});
        }
    }
    return {{table}, code};
}

Outcome cmd_pressure(const RunConfig& cfg) {
    const Parameter c = Parameter::make(cfg.c, cfg.force);
    require_depth(cfg.n, 1, coding::kMaxEnumerationDepth, "--n");
    if (!std::isfinite(cfg.s)) {
        throw InvalidArgument("--s must be finite");
    }
    Table table{"pressure", {"n", "s", "log_delta", "p_raw", "p_ratio"}, {}};
    for (const auto& row : pressure::pressure_samples(c, cfg.s, cfg.n, cfg.threads)) {
        table.rows.push_back({integer(row.n), real(row.s), real(row.log_delta), real(row.p_raw),
                              row.p_ratio ? real(*row.p_ratio) : Cell{}});
    }
    return {{table}, kOk};
}

Outcome cmd_identities(const RunConfig& cfg) {
    const Parameter c = Parameter::make(cfg.c, cfg.force);
    require_depth(cfg.n, 2, coding::kMaxIdentityDepth, "identities --n");
    const auto report = coding::verify_identities(c, cfg.n);
    Table table{"identities", {"identity", "max_residual", "bound", "pass"}, {}};
    for (const auto& check : report.checks) {
        table.rows.push_back(
            {text(check.name), real(check.max_residual), real(check.bound), integer(check.passed() ? 1 : 0)});
    }
    return {{table}, report.all_passed() ? kOk : kIdentityFailure};
}

// Inverse iteration is well defined for any |c| <= 2 (checked by the
// sampler), so the quasi-circle guard does not apply here.
Outcome cmd_sample(const RunConfig& cfg) {
    const Parameter c = Parameter::forced(cfg.c);
    const auto cloud = boxdim::sample_julia(c, cfg.count, cfg.burn_in, cfg.seed);
    Table table{"points", {"re", "im"}, {}};
    table.rows.reserve(cloud.points.size());
    for (const Complex& z : cloud.points) {
        table.rows.push_back({real(z.real()), real(z.imag())});
    }
    return {{table}, kOk};
}

Outcome cmd_boxdim(const RunConfig& cfg) {
    const Parameter c = Parameter::forced(cfg.c);
    const auto scales = cfg.scales.empty() ? boxdim::dyadic_scales(4, 11) : cfg.scales;
    const auto cloud = boxdim::sample_julia(c, cfg.count, cfg.burn_in, cfg.seed);
    const auto est = boxdim::box_dimension(cloud.points, scales, cfg.threads);
    Table counts{"counts", {"delta", "count"}, {}};
    for (std::size_t i = 0; i < est.scales.size(); ++i) {
        counts.rows.push_back({real(est.scales[i]), integer(static_cast<std::int64_t>(est.counts[i]))});
    }
    Table summary{"summary", {"slope", "intercept", "r_squared"}, {}};
    summary.rows.push_back({real(est.slope), real(est.intercept), real(est.r_squared)});
    return {{counts, summary}, kOk};
}

Outcome cmd_bounds(const RunConfig& cfg) {
    const auto b = bowen::large_c_bounds(cfg.c);
    Table table{"bounds", {"lower", "upper"}, {}};
    table.rows.push_back({real(b.lower), real(b.upper)});
    return {{table}, kOk};
}

Outcome dispatch(const RunConfig& cfg, std::ostream& err) {
    if (cfg.command == "dim") return cmd_dim(cfg);
    if (cfg.command == "sweep") return cmd_sweep(cfg, err);
    if (cfg.command == "pressure") return cmd_pressure(cfg);
    if (cfg.command == "identities") return cmd_identities(cfg);
    if (cfg.command == "sample") return cmd_sample(cfg);
    if (cfg.command == "boxdim") return cmd_boxdim(cfg);
    if (cfg.command == "bounds") return cmd_bounds(cfg);
    throw InvalidArgument("unknown command '" + cfg.command + "'");
}

// Options shared by every subcommand.
void add_common(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out_path, "Output file (default stdout)");
    sub->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
}

void add_c(CLI::App* sub, RunConfig& cfg, bool required) {
    auto* opt = sub->add_option("--c", cfg.c_text, "Parameter, e.g. 0.05+0i or -1.12+0.222i");
    if (required) {
        opt->required();
    }
    sub->add_flag("--force", cfg.force, "Allow c outside the quasi-circle regime");
}

} // namespace

Complex parse_complex(std::string_view input) {
    static const std::regex pattern(R"(^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)(?:([+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i)?$)");
    const std::string s(input);
    std::smatch m;
    if (!std::regex_match(s, m, pattern)) {
        throw InvalidArgument("bad complex literal '" + s + "': expected a+bi or a-bi, e.g. 0.05+0i");
    }
    const double re = parse_real(m.str(1));
    const double im = m[2].matched ? parse_real(m.str(2)) : 0.0;
    if (!std::isfinite(re) || !std::isfinite(im)) {
        throw InvalidArgument("complex literal '" + s + "' is not finite");
    }
    return {re, im};
}

std::vector<double> parse_real_list(std::string_view input) {
    std::vector<double> values;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = input.find(',', start);
        const auto piece = input.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        values.push_back(parse_real(piece));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return values;
}

std::string format_real(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Hausdorff dimension of quadratic Julia sets", "qcdim"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    auto* dim = app.add_subcommand("dim", "Solve for the dimension at one parameter");
    add_c(dim, cfg, true);
    dim->add_option("--n-max", cfg.n_max, "Deepest tree level");
    dim->add_option("--tol", cfg.tol, "Bisection width");

    auto* sweep = app.add_subcommand("sweep", "Solve over a grid of moduli and arguments");
    sweep->add_option("--moduli", cfg.moduli_text, "Comma list of |c|")->required();
    sweep->add_option("--args", cfg.args, "Equally spaced arguments per modulus");
    sweep->add_option("--n-max", cfg.n_max, "Deepest tree level");
    sweep->add_option("--tol", cfg.tol, "Bisection width");
    sweep->add_flag("--force", cfg.force, "Allow moduli outside the quasi-circle regime");

    auto* pressure = app.add_subcommand("pressure", "Pressure table for k = 1..n");
    add_c(pressure, cfg, true);
    pressure->add_option("--n", cfg.n, "Depth");
    pressure->add_option("--s", cfg.s, "Exponent");

    auto* identities = app.add_subcommand("identities", "Run the coding identity suite");
    add_c(identities, cfg, true);
    identities->add_option("--n", cfg.n, "Depth (at most 12)");

    std::size_t sample_count = 100000;
    auto* sample = app.add_subcommand("sample", "Inverse-iteration point cloud");
    add_c(sample, cfg, true);
    sample->add_option("--count", sample_count, "Points kept");
    sample->add_option("--burn-in", cfg.burn_in, "Points dropped first");
    sample->add_option("--seed", cfg.seed, "Generator seed");

    std::size_t boxdim_count = 1000000;
    auto* box = app.add_subcommand("boxdim", "Box-counting dimension of a sampled cloud");
    add_c(box, cfg, true);
    box->add_option("--count", boxdim_count, "Points kept");
    box->add_option("--burn-in", cfg.burn_in, "Points dropped first");
    box->add_option("--seed", cfg.seed, "Generator seed");
    box->add_option("--scales", cfg.scales_text, "Comma list of box sizes (default 2^-4..2^-11)");

    auto* bounds = app.add_subcommand("bounds", "Dimension bounds for large |c|");
    bounds->add_option("--c", cfg.c_text, "Parameter")->required();

    for (auto* sub : {dim, sweep, pressure, identities, sample, box, bounds}) {
        add_common(sub, cfg);
    }

    std::vector<const char*> argv{"qcdim"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kInvalidInput;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        cfg.command = app.get_subcommands().front()->get_name();
        cfg.count = cfg.command == "boxdim" ? boxdim_count : sample_count;
        cfg.c = parse_complex(cfg.c_text);
        if (!cfg.scales_text.empty()) {
            cfg.scales = parse_real_list(cfg.scales_text);
        }
        if (!cfg.moduli_text.empty()) {
            cfg.moduli = parse_real_list(cfg.moduli_text);
        }

        std::ofstream file;
        if (!cfg.out_path.empty()) {
            file.open(cfg.out_path, std::ios::binary | std::ios::trunc);
            if (!file) {
                throw InvalidArgument("cannot open output file '" + cfg.out_path + "'");
            }
        }

        const Outcome result = dispatch(cfg, err);
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostream& sink = cfg.out_path.empty() ? out : file;
        if (cfg.format == "json") {
            write_json(sink, result.tables, cfg, wall);
        } else {
            write_csv(sink, result.tables);
        }
        sink.flush();
        if (!sink) {
            err << "qcdim: write failed\n";
            return kInvalidInput;
        }
        if (result.code == kIdentityFailure) {
            err << "qcdim: identity residual above its bound\n";
        }
        return result.code;
    } catch (const InvalidArgument& e) {
        err << "qcdim: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const Error& e) {
        err << "qcdim: " << e.what() << '\n';
        return kNoConvergence;
    }
}

} // namespace qcircle::cli
