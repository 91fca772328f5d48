#pragma once

// Workflows behind the `phasegrover` command line: run, trajectory, sweep,
// verify. Each cmd_* function writes its artifact and returns the process
// exit code; the non-cmd functions return data and throw on error.

#include "phasegrover/collapsed.hpp"
#include "phasegrover/oracle.hpp"
#include "phasegrover/statevector.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace phasegrover::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitIoOrParse = 1,
    kExitInfeasible = 2,
    kExitVerifyFailed = 3,
};

enum class Engine { statevector, collapsed, both };
enum class OutputFormat { csv, json };

Engine parse_engine(std::string_view text);
std::string_view engine_name(Engine e);
OutputFormat parse_format(std::string_view text);

// Radians as a decimal number or a pi literal: "pi", "pi/2", "2pi", "3*pi/4", "-pi/3".
double parse_phase(std::string_view text);

// 17 significant digits, C locale.
std::string format_double(double x);

struct RunConfig {
    std::optional<std::string> oracle_path;
    std::optional<std::uint64_t> n;
    std::optional<std::uint64_t> t;
    Placement placement = Placement::first;
    std::uint64_t seed = 0;

    Engine engine = Engine::both;
    double tolerance = kAmplitudeTolerance;
    std::optional<std::string> output_path;
    OutputFormat format = OutputFormat::csv;
    unsigned threads = 1;

    // trajectory
    double beta = std::numbers::pi;
    double gamma = std::numbers::pi;
    std::uint64_t steps = 10;
    // sweep
    std::uint64_t grid = 101;
    // verify
    std::uint64_t max_n = 64;
    std::optional<double> verify_tolerance;

    // Throws InvalidArgument when tolerance <= 0 or the oracle source is missing.
    void validate() const;
};

// Overlays keys from a JSON object onto `config`. Keys: oracle, n, t,
// placement, seed, engine, tol, out, format, threads, beta, gamma, steps,
// grid, max_n. Unknown keys throw ParseError.
void apply_config_json(RunConfig& config, std::string_view text);

OracleSpec resolve_oracle(const RunConfig& config);

Parallelism parallelism(const RunConfig& config);

// PhasePair from arbitrary finite radians; values outside [0, 2pi] are
// reduced by periodicity.
PhasePair phases_from(double beta, double gamma);

struct RunReport {
    std::uint64_t n = 0;
    std::uint64_t t = 0;
    Engine engine = Engine::both;
    double gamma = 0.0;
    double success_probability = 0.0;
    std::uint64_t oracle_queries = 0;
    // Largest amplitude difference between the engines (0 unless engine = both).
    double engine_deviation = 0.0;
};

// Single-query search on the configured oracle. Throws InfeasibleSingleQuery,
// EngineMismatch, or the oracle/parse errors.
RunReport run_single_query(const RunConfig& config);

struct TrajectoryRow {
    std::uint64_t step = 0;
    Complex k;
    Complex l;
    double success_probability = 0.0;
    std::optional<double> closed_form_deviation;
};

std::vector<TrajectoryRow> trajectory_rows(const RunConfig& config);

struct SweepGrid {
    std::uint64_t beta_steps = 101;
    std::uint64_t gamma_steps = 101;
};

struct SweepPoint {
    double beta = 0.0;
    double gamma = 0.0;
    double abs_l1 = 0.0;
    double p_success = 0.0;
};

struct SweepResult {
    std::uint64_t n = 0;
    std::uint64_t t = 0;
    SweepGrid grid;
    std::vector<SweepPoint> points; // beta-major
    std::size_t argmin = 0;
};

// |l_1| and success probability over the grid, evaluated in parallel with
// rows kept in beta-major order. The argmin breaks ties (within 1e-12)
// toward the earliest point, which selects the principal branch.
SweepResult sweep(std::uint64_t n, std::uint64_t t, SweepGrid grid, unsigned threads = 1);

std::string format_sweep(const SweepResult& result, OutputFormat format);
std::string format_trajectory(const std::vector<TrajectoryRow>& rows, OutputFormat format);
std::string format_run(const RunReport& report, OutputFormat format);

struct SuiteResult {
    std::string name;
    std::uint64_t checks = 0;
    std::uint64_t failures = 0;
    double max_error = 0.0;
    double tolerance = 0.0;
};

// Cross-engine, unitarity, single-query and pi closed-form suites for N up to
// max_n. `tolerance` overrides every suite's default threshold.
std::vector<SuiteResult> run_verify(std::uint64_t max_n, std::optional<double> tolerance,
                                    unsigned threads = 1, std::uint64_t seed = 20240601);

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_trajectory(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

// Full command line, argv[0] included.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace phasegrover::cli
