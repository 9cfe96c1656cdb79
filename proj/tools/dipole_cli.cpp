// Command-line front end: critical-coupling tables, eigenvalue queries and
// sweeps, analytic bounds, truncation studies, and angular profiles, emitted
// as CSV/TSV/JSON. Output is buffered and written all-or-nothing so failed
// runs never leave partial files.
//
// Exit codes: 0 success, 2 argument error, 3 solver non-convergence,
// 4 internal invariant violation.

#include "dipole/bounds.hpp"
#include "dipole/profile.hpp"
#include "dipole/solve.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

namespace {

constexpr const char* kVersion = "1.0.0";

using dipole::BoundsReport;
using dipole::CriticalResult;
using dipole::LambdaResult;
using dipole::ProfileSamples;

// ---------------------------------------------------------------------------
// Report model: named columns, rows of typed cells, one writer per format.

using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Report {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    nlohmann::json meta;
};

std::string format_double(double value, std::optional<int> round_digits)
{
    if (round_digits) {
        char buffer[64];
        std::snprintf(buffer, sizeof buffer, "%.*f", *round_digits, value);
        return buffer;
    }
    // Shortest representation that round-trips.
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, result.ptr);
}

double rounded(double value, std::optional<int> round_digits)
{
    if (!round_digits)
        return value;
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*f", *round_digits, value);
    return std::strtod(buffer, nullptr);
}

std::string render_delimited(const Report& report, char delimiter,
                             std::optional<int> round_digits)
{
    std::ostringstream out;
    for (std::size_t c = 0; c < report.columns.size(); ++c) {
        if (c > 0)
            out << delimiter;
        out << report.columns[c];
    }
    out << '\n';
    for (const auto& row : report.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0)
                out << delimiter;
            if (std::holds_alternative<std::int64_t>(row[c]))
                out << std::get<std::int64_t>(row[c]);
            else if (std::holds_alternative<double>(row[c]))
                out << format_double(std::get<double>(row[c]), round_digits);
            else if (std::holds_alternative<std::string>(row[c]))
                out << std::get<std::string>(row[c]);
            // monostate renders as an empty field
        }
        out << '\n';
    }
    return out.str();
}

std::string render_json(const Report& report, std::optional<int> round_digits)
{
    nlohmann::json doc;
    doc["meta"] = report.meta;
    doc["meta"]["version"] = kVersion;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows) {
        nlohmann::json object;
        for (std::size_t c = 0; c < row.size(); ++c) {
            const std::string& key = report.columns[c];
            if (std::holds_alternative<std::int64_t>(row[c]))
                object[key] = std::get<std::int64_t>(row[c]);
            else if (std::holds_alternative<double>(row[c]))
                object[key] = rounded(std::get<double>(row[c]), round_digits);
            else if (std::holds_alternative<std::string>(row[c]))
                object[key] = std::get<std::string>(row[c]);
            else
                object[key] = nullptr;
        }
        rows.push_back(std::move(object));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

std::string render(const Report& report, const std::string& format,
                   std::optional<int> round_digits)
{
    if (format == "csv")
        return render_delimited(report, ',', round_digits);
    if (format == "tsv")
        return render_delimited(report, '\t', round_digits);
    return render_json(report, round_digits);
}

// ---------------------------------------------------------------------------
// Worker pool: rows are computed concurrently but stored by index, so the
// emitted order (and the bytes) never depend on scheduling.

unsigned worker_count()
{
    unsigned configured = 0;
    if (const char* env = std::getenv("CRITICAL_DIPOLE_THREADS")) {
        const unsigned long parsed = std::strtoul(env, nullptr, 10);
        configured = static_cast<unsigned>(parsed);
    }
    if (configured == 0)
        configured = std::max(1u, std::thread::hardware_concurrency());
    return configured;
}

template <typename Body>
void parallel_for(std::size_t count, const Body& body)
{
    const unsigned workers = std::min<std::size_t>(worker_count(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> cursor{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = cursor.fetch_add(1);
                if (i >= count)
                    return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error)
                        first_error = std::current_exception();
                    cursor.store(count);
                    return;
                }
            }
        });
    }
    for (auto& thread : pool)
        thread.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

// ---------------------------------------------------------------------------
// Option plumbing shared across subcommands.

struct CommonOptions {
    Eigen::Index m = 0; // 0 = auto: max(32, n)
    double tol = 1e-13;
    std::string format = "csv";
    std::optional<int> round_digits;
    std::string output;
};

// Default truncation: 32 is fully converged through n ~ 60 but falls short
// of double precision beyond n ~ 100, so the automatic choice grows with
// the dimension. An explicit -m always wins.
Eigen::Index resolve_m(const CommonOptions& options, int n)
{
    if (options.m > 0)
        return options.m;
    return std::max<Eigen::Index>(32, n);
}

void add_common(CLI::App* cmd, CommonOptions& options)
{
    cmd->add_option("--truncation,-m", options.m, "Matrix truncation size (default: max(32, n))")
        ->check(CLI::Range(static_cast<Eigen::Index>(2), static_cast<Eigen::Index>(4096)));
    cmd->add_option("--tol", options.tol, "Eigenvalue tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--format", options.format, "Output format")
        ->check(CLI::IsMember({"csv", "json", "tsv"}));
    cmd->add_option("--round", options.round_digits, "Round floating columns to K decimals")
        ->check(CLI::Range(0, 17));
    cmd->add_option("--output", options.output, "Write to file instead of stdout");
}

struct IntRange {
    int lo = 0;
    int hi = 0;
};

IntRange parse_int_range(const std::string& text)
{
    const auto split = text.find("..");
    IntRange range;
    if (split == std::string::npos) {
        range.lo = range.hi = std::stoi(text);
        return range;
    }
    range.lo = std::stoi(text.substr(0, split));
    range.hi = std::stoi(text.substr(split + 2));
    if (range.hi < range.lo)
        throw CLI::ValidationError("range", "range must be nondecreasing: " + text);
    return range;
}

std::pair<double, double> parse_real_range(const std::string& text)
{
    const auto split = text.find("..");
    if (split == std::string::npos)
        throw CLI::ValidationError("range", "expected A..B, got: " + text);
    const double lo = std::stod(text.substr(0, split));
    const double hi = std::stod(text.substr(split + 2));
    return {lo, hi};
}

std::vector<Eigen::Index> parse_m_list(const std::string& text)
{
    std::vector<Eigen::Index> values;
    if (text.find("..") != std::string::npos) {
        const IntRange range = parse_int_range(text);
        for (int m = range.lo; m <= range.hi; ++m)
            values.push_back(m);
        return values;
    }
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ','))
        values.push_back(std::stoll(item));
    return values;
}

void emit(const std::string& text, const std::string& output_path)
{
    if (output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(output_path, std::ios::binary);
    if (!file)
        throw std::runtime_error("cannot open output file: " + output_path);
    file << text;
}

// ---------------------------------------------------------------------------
// Subcommand bodies.

Report make_table_report(const IntRange& dims, const CommonOptions& options)
{
    Report report;
    report.columns = {"n", "lower_bound", "gamma_c", "upper_bound",
                      "hardy_floor", "truncation_m", "converged_delta"};
    report.meta = {{"command", "table"}, {"tol", options.tol}};
    if (options.m > 0)
        report.meta["m"] = options.m;
    else
        report.meta["m"] = "auto";
    const std::size_t count = static_cast<std::size_t>(dims.hi - dims.lo + 1);
    report.rows.resize(count);
    parallel_for(count, [&](std::size_t i) {
        const int n = dims.lo + static_cast<int>(i);
        const Eigen::Index m = resolve_m(options, n);
        const BoundsReport bounds = dipole::gamma_c_bounds(n);
        const CriticalResult critical = dipole::critical_gamma_via_k(n, m, options.tol);
        const CriticalResult previous = dipole::critical_gamma_via_k(n, m - 1, options.tol);
        report.rows[i] = {std::int64_t{n},
                          bounds.gamma_lower,
                          critical.gamma_c,
                          bounds.gamma_upper,
                          bounds.hardy_floor,
                          std::int64_t{m},
                          std::abs(critical.gamma_c - previous.gamma_c)};
    });
    return report;
}

Report make_lambda_report(int n, double gamma, const CommonOptions& options)
{
    const Eigen::Index m = resolve_m(options, n);
    const LambdaResult result = dipole::lambda_min(n, gamma, m, options.tol);
    double fh = 0.0; // exact at zero coupling: the sphere average of cos vanishes
    if (gamma > 0.0) {
        const Eigen::VectorXd& d = result.vector;
        for (Eigen::Index l = 1; l < m; ++l)
            fh += 2.0 * dipole::offdiag_a(static_cast<int>(l), n) * d[l - 1] * d[l];
    }

    Report report;
    report.columns = {"n", "gamma", "m", "lambda", "lower", "upper", "fh_derivative"};
    const Eigen::Index head = std::min<Eigen::Index>(8, m);
    for (Eigen::Index i = 0; i < head; ++i)
        report.columns.push_back("d" + std::to_string(i));
    report.meta = {{"command", "lambda"}, {"m", m}, {"tol", options.tol}};

    std::vector<Cell> row = {std::int64_t{n},     gamma,
                             std::int64_t{m},     result.lambda,
                             result.sandwich.lower,   result.sandwich.upper,
                             fh};
    for (Eigen::Index i = 0; i < head; ++i)
        row.push_back(result.vector[i]);
    report.rows.push_back(std::move(row));
    return report;
}

Report make_scan_report(int n, double gamma_lo, double gamma_hi, int steps,
                        const CommonOptions& options)
{
    const Eigen::Index m = resolve_m(options, n);
    Report report;
    report.columns = {"gamma", "lambda", "lower", "upper"};
    report.meta = {{"command", "scan"}, {"m", m}, {"tol", options.tol}, {"n", n}};
    report.rows.resize(static_cast<std::size_t>(steps));
    parallel_for(static_cast<std::size_t>(steps), [&](std::size_t i) {
        const double gamma = gamma_lo
            + (gamma_hi - gamma_lo) * static_cast<double>(i) / (steps - 1.0);
        const LambdaResult result = dipole::lambda_min(n, gamma, m, options.tol);
        report.rows[i] = {gamma, result.lambda, result.sandwich.lower,
                          result.sandwich.upper};
    });
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        if (!(std::get<double>(report.rows[i][1]) < std::get<double>(report.rows[i - 1][1])))
            throw std::logic_error("scan: lambda failed to decrease strictly");
    }
    return report;
}

Report make_bounds_report(int n, const CommonOptions& options)
{
    const BoundsReport bounds = dipole::gamma_c_bounds(n);
    Report report;
    report.columns = {"n", "gamma_lower", "gamma_upper", "hardy_floor"};
    report.meta = {{"command", "bounds"}, {"m", resolve_m(options, n)}, {"tol", options.tol}};
    report.rows.push_back({std::int64_t{n}, bounds.gamma_lower, bounds.gamma_upper,
                           bounds.hardy_floor});
    return report;
}

Report make_convergence_report(int n, const std::vector<Eigen::Index>& ms,
                               const CommonOptions& options)
{
    const auto rows = dipole::convergence_study(n, ms, options.tol);
    Report report;
    report.columns = {"m", "gamma_c", "delta"};
    report.meta = {{"command", "convergence"}, {"n", n}, {"tol", options.tol}};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        Cell delta = std::monostate{};
        if (i > 0)
            delta = rows[i].delta;
        report.rows.push_back({std::int64_t{rows[i].m}, rows[i].gamma_c, delta});
    }
    return report;
}

Report make_profile_report(int n, double gamma, int grid, const CommonOptions& options)
{
    const Eigen::Index m = resolve_m(options, n);
    const ProfileSamples samples = dipole::reconstruct_psi(n, gamma, m, grid);
    Report report;
    report.columns = {"theta", "psi"};
    report.meta = {{"command", "profile"},          {"n", n},
                   {"gamma", gamma},                {"m", m},
                   {"tol", options.tol},            {"grid", grid},
                   {"lambda", samples.lambda},      {"weighted_norm", samples.weighted_norm},
                   {"ode_residual_linf", samples.ode_residual_linf}};
    for (Eigen::Index i = 0; i < samples.theta.size(); ++i)
        report.rows.push_back({samples.theta[i], samples.psi[i]});
    return report;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Critical dipole couplings and angular spectra for n >= 3"};
    app.require_subcommand(1);

    CommonOptions table_options, lambda_options, scan_options, bounds_options,
        convergence_options, profile_options;
    std::string dims_text = "3..10";
    int dim = 3;
    double gamma = 0.0;
    std::string gamma_range_text;
    int steps = 10;
    std::string m_list_text = "2..32";
    int grid = 64;

    CLI::App* table = app.add_subcommand("table", "Critical couplings with analytic bounds");
    table->add_option("--dims", dims_text, "Dimension range A..B");
    add_common(table, table_options);

    CLI::App* lambda_cmd = app.add_subcommand("lambda", "Lowest angular eigenvalue at one coupling");
    lambda_cmd->add_option("--dim,-n", dim, "Space dimension")->required()->check(CLI::Range(3, 200));
    lambda_cmd->add_option("--gamma", gamma, "Dipole coupling")->required()
        ->check(CLI::NonNegativeNumber);
    add_common(lambda_cmd, lambda_options);

    CLI::App* scan = app.add_subcommand("scan", "Eigenvalue curve over a coupling range");
    int scan_dim = 3;
    scan->add_option("--dim,-n", scan_dim, "Space dimension")->required()->check(CLI::Range(3, 200));
    scan->add_option("--gamma-range", gamma_range_text, "Coupling range A..B")->required();
    scan->add_option("--steps", steps, "Number of samples")->check(CLI::Range(2, 1000000));
    add_common(scan, scan_options);

    CLI::App* bounds = app.add_subcommand("bounds", "Analytic critical-coupling bounds");
    int bounds_dim = 3;
    bounds->add_option("--dim,-n", bounds_dim, "Space dimension")->required()
        ->check(CLI::Range(3, 200));
    add_common(bounds, bounds_options);

    CLI::App* convergence = app.add_subcommand("convergence", "Truncation convergence study");
    int convergence_dim = 3;
    convergence->add_option("--dim,-n", convergence_dim, "Space dimension")->required()
        ->check(CLI::Range(3, 200));
    convergence->add_option("--m-list", m_list_text, "Truncations, A..B or comma list");
    add_common(convergence, convergence_options);

    CLI::App* profile = app.add_subcommand("profile", "Angular ground-state profile");
    int profile_dim = 3;
    double profile_gamma = 0.0;
    profile->add_option("--dim,-n", profile_dim, "Space dimension")->required()
        ->check(CLI::Range(3, 200));
    profile->add_option("--gamma", profile_gamma, "Dipole coupling")->required()
        ->check(CLI::NonNegativeNumber);
    profile->add_option("--grid", grid, "Number of theta samples")->check(CLI::Range(16, 1000000));
    add_common(profile, profile_options);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Report report;
        const CommonOptions* options = nullptr;
        if (table->parsed()) {
            const IntRange dims = parse_int_range(dims_text);
            if (dims.lo < 3 || dims.hi > 200)
                throw CLI::ValidationError("--dims", "dimensions must lie in [3, 200]");
            report = make_table_report(dims, table_options);
            options = &table_options;
        } else if (lambda_cmd->parsed()) {
            report = make_lambda_report(dim, gamma, lambda_options);
            options = &lambda_options;
        } else if (scan->parsed()) {
            const auto [lo, hi] = parse_real_range(gamma_range_text);
            if (!(lo >= 0.0) || !(hi > lo))
                throw CLI::ValidationError("--gamma-range", "need 0 <= A < B");
            report = make_scan_report(scan_dim, lo, hi, steps, scan_options);
            options = &scan_options;
        } else if (bounds->parsed()) {
            report = make_bounds_report(bounds_dim, bounds_options);
            options = &bounds_options;
        } else if (convergence->parsed()) {
            report = make_convergence_report(convergence_dim, parse_m_list(m_list_text),
                                             convergence_options);
            options = &convergence_options;
        } else {
            report = make_profile_report(profile_dim, profile_gamma, grid, profile_options);
            options = &profile_options;
        }
        emit(render(report, options->format, options->round_digits), options->output);
        return 0;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const dipole::NonConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const dipole::BracketFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
