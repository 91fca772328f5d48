#include "phasegrover/cli.hpp"

#include "phasegrover/errors.hpp"
#include "phasegrover/reduction.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

namespace phasegrover::cli {

using nlohmann::json;

Engine parse_engine(std::string_view text) {
    if (text == "statevector") return Engine::statevector;
    if (text == "collapsed") return Engine::collapsed;
    if (text == "both") return Engine::both;
    throw ParseError("unknown engine '" + std::string(text) + "' (expected statevector, collapsed or both)");
}

std::string_view engine_name(Engine e) {
    switch (e) {
    case Engine::statevector: return "statevector";
    case Engine::collapsed: return "collapsed";
    case Engine::both: return "both";
    }
    return "?";
}

OutputFormat parse_format(std::string_view text) {
    if (text == "csv") return OutputFormat::csv;
    if (text == "json") return OutputFormat::json;
    throw ParseError("unknown format '" + std::string(text) + "' (expected csv or json)");
}

namespace {

double parse_number(std::string_view text) {
    const std::string s(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ParseError("cannot parse '" + s + "' as a number");
    }
    if (used != s.size() || !std::isfinite(v)) {
        throw ParseError("cannot parse '" + s + "' as a number");
    }
    return v;
}

} // namespace

double parse_phase(std::string_view text) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    if (s.empty()) {
        throw ParseError("empty phase");
    }
    const auto pi_at = s.find("pi");
    if (pi_at == std::string::npos) {
        return parse_number(s);
    }
    // [sign][coef][*]pi[/den]
    std::string coef = s.substr(0, pi_at);
    std::string rest = s.substr(pi_at + 2);
    if (!coef.empty() && coef.back() == '*') {
        coef.pop_back();
    }
    double factor = 1.0;
    if (coef == "-") {
        factor = -1.0;
    } else if (coef == "+") {
        factor = 1.0;
    } else if (!coef.empty()) {
        factor = parse_number(coef);
    }
    double value = factor * std::numbers::pi;
    if (!rest.empty()) {
        if (rest.front() != '/' || rest.size() < 2) {
            throw ParseError("cannot parse phase '" + std::string(text) + "'");
        }
        const double den = parse_number(rest.substr(1));
        if (den == 0.0) {
            throw ParseError("phase denominator is zero");
        }
        value /= den;
    }
    return value;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void RunConfig::validate() const {
    if (!(tolerance > 0.0)) {
        throw InvalidArgument("tolerance must be positive");
    }
    if (verify_tolerance && !(*verify_tolerance > 0.0)) {
        throw InvalidArgument("tolerance must be positive");
    }
    if (threads < 1) {
        throw InvalidArgument("threads must be >= 1");
    }
}

void apply_config_json(RunConfig& config, std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed config: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("config must be a JSON object");
    }
    auto count = [](const json& v, const std::string& key) {
        if (!v.is_number_unsigned()) {
            throw ParseError("config key '" + key + "' must be a non-negative integer");
        }
        return v.get<std::uint64_t>();
    };
    auto str = [](const json& v, const std::string& key) {
        if (!v.is_string()) {
            throw ParseError("config key '" + key + "' must be a string");
        }
        return v.get<std::string>();
    };
    auto phase = [&](const json& v, const std::string& key) {
        if (v.is_number()) return v.get<double>();
        return parse_phase(str(v, key));
    };
    for (const auto& [key, v] : doc.items()) {
        if (key == "oracle") config.oracle_path = str(v, key);
        else if (key == "n") config.n = count(v, key);
        else if (key == "t") config.t = count(v, key);
        else if (key == "placement") config.placement = parse_placement(str(v, key));
        else if (key == "seed") config.seed = count(v, key);
        else if (key == "engine") config.engine = parse_engine(str(v, key));
        else if (key == "tol") {
            if (!v.is_number()) throw ParseError("config key 'tol' must be a number");
            config.tolerance = v.get<double>();
            config.verify_tolerance = config.tolerance;
        }
        else if (key == "out") config.output_path = str(v, key);
        else if (key == "format") config.format = parse_format(str(v, key));
        else if (key == "threads") config.threads = static_cast<unsigned>(count(v, key));
        else if (key == "beta") config.beta = phase(v, key);
        else if (key == "gamma") config.gamma = phase(v, key);
        else if (key == "steps") config.steps = count(v, key);
        else if (key == "grid") config.grid = count(v, key);
        else if (key == "max_n") config.max_n = count(v, key);
        else throw ParseError("unknown config key '" + key + "'");
    }
}

OracleSpec resolve_oracle(const RunConfig& config) {
    if (config.oracle_path) {
        if (config.n || config.t) {
            throw InvalidArgument("give either --oracle or --n/--t, not both");
        }
        return load_oracle_file(*config.oracle_path).oracle;
    }
    if (!config.n || !config.t) {
        throw InvalidArgument("an oracle is required: --oracle PATH or --n N --t T");
    }
    return generate_oracle(*config.n, *config.t, PlacementRule{config.placement, config.seed});
}

Parallelism parallelism(const RunConfig& config) { return {config.threads}; }

PhasePair phases_from(double beta, double gamma) {
    const auto reduce = [](double p) {
        return (p >= 0.0 && p <= kTwoPi) ? p : PhasePair::wrapped(p, 0.0).beta();
    };
    return {reduce(beta), reduce(gamma)};
}

RunReport run_single_query(const RunConfig& config) {
    config.validate();
    const OracleSpec oracle = resolve_oracle(config);
    const std::uint64_t n = oracle.n_total();
    const std::uint64_t t = oracle.n_marked();
    if (t == 0) {
        throw InvalidCount("the oracle marks no index; nothing to search for");
    }

    RunReport report;
    report.n = n;
    report.t = t;
    report.engine = config.engine;

    std::optional<CollapsedState> collapsed_final;
    if (config.engine != Engine::statevector) {
        report.gamma = single_query_phase(n, t);
        collapsed_final = single_step_from_uniform(n, t, PhasePair::matched(report.gamma));
        report.success_probability = collapsed_success_probability(*collapsed_final);
        report.oracle_queries = 1; // one collapsed Grover step
    }
    if (config.engine != Engine::collapsed) {
        SearchResult result = single_query_search(oracle, parallelism(config));
        report.gamma = result.gamma;
        report.oracle_queries = result.oracle_queries;
        if (collapsed_final) {
            const CollapsedState read = collapse(result.final_state, oracle, config.tolerance);
            report.engine_deviation = amplitude_distance(read, *collapsed_final);
            const double dp = std::abs(result.report.success_probability - report.success_probability);
            if (!(report.engine_deviation <= config.tolerance) || !(dp <= config.tolerance)) {
                throw EngineMismatch("statevector and collapsed engines disagree by " +
                                     format_double(std::max(report.engine_deviation, dp)));
            }
        }
        report.success_probability = result.report.success_probability;
    }
    if (!(std::abs(report.success_probability - 1.0) <= std::max(config.tolerance, kProbabilityClamp))) {
        throw VerificationFailed("success probability " + format_double(report.success_probability) +
                                 " is not 1");
    }
    return report;
}

std::vector<TrajectoryRow> trajectory_rows(const RunConfig& config) {
    config.validate();
    const OracleSpec oracle = resolve_oracle(config);
    const std::uint64_t n = oracle.n_total();
    const std::uint64_t t = oracle.n_marked();
    const PhasePair phases = phases_from(config.beta, config.gamma);
    const bool pi_phase = phases.beta() == std::numbers::pi && phases.gamma() == std::numbers::pi &&
                          t >= 1 && t + 1 <= n;

    std::vector<TrajectoryRow> rows;
    rows.reserve(config.steps + 1);

    const CollapsedState start = CollapsedState::uniform(n, t);
    std::vector<TrajectoryRecord> records;
    if (config.engine != Engine::statevector) {
        records = collapsed_trajectory(start, phases, config.steps);
    }
    if (config.engine != Engine::collapsed) {
        const Parallelism par = parallelism(config);
        const auto full = SubspaceSpec::full(n);
        StateVector sv = uniform_state(n);
        std::vector<TrajectoryRecord> dense;
        dense.reserve(config.steps + 1);
        for (std::uint64_t j = 0;; ++j) {
            const CollapsedState read = collapse(sv, oracle, kNormTolerance);
            dense.push_back({j, read, success_probability(sv, oracle)});
            if (!records.empty()) {
                const double gap = amplitude_distance(read, records[j].state);
                if (!(gap <= config.tolerance)) {
                    throw EngineMismatch("engines disagree at step " + std::to_string(j) + " by " +
                                         format_double(gap));
                }
            }
            if (j == config.steps) break;
            sv = apply_grover(std::move(sv), oracle, phases, full, nullptr, par);
        }
        if (records.empty()) {
            records = std::move(dense);
        }
    }

    for (const auto& r : records) {
        TrajectoryRow row{r.step, r.state.k, r.state.l, r.success_probability, std::nullopt};
        if (pi_phase) {
            row.closed_form_deviation = amplitude_distance(r.state, pi_phase_trajectory(n, t, r.step));
        }
        rows.push_back(row);
    }
    return rows;
}

SweepResult sweep(std::uint64_t n, std::uint64_t t, SweepGrid grid, unsigned threads) {
    if (grid.beta_steps < 2 || grid.gamma_steps < 2) {
        throw InvalidArgument("sweep grid needs at least 2 points per axis");
    }
    if (n < 1 || t < 1 || t > n) {
        throw InvalidCount("sweep needs 1 <= t <= N");
    }
    SweepResult result;
    result.n = n;
    result.t = t;
    result.grid = grid;
    result.points.resize(grid.beta_steps * grid.gamma_steps);
    parallel_for(grid.beta_steps, threads, 1, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const double beta = grid_phase(i, grid.beta_steps);
            for (std::size_t j = 0; j < grid.gamma_steps; ++j) {
                const double gamma = grid_phase(j, grid.gamma_steps);
                const PhasePair phases{beta, gamma};
                const CollapsedState s = single_step_from_uniform(n, t, phases);
                result.points[i * grid.gamma_steps + j] = {
                    beta, gamma, std::abs(unmarked_residual(n, t, phases)), collapsed_success_probability(s)};
            }
        }
    });
    std::size_t best = 0;
    for (std::size_t p = 1; p < result.points.size(); ++p) {
        if (result.points[p].abs_l1 < result.points[best].abs_l1 - 1e-12) {
            best = p;
        }
    }
    result.argmin = best;
    return result;
}

namespace {

json cjson(Complex z) { return json::array({z.real(), z.imag()}); }

} // namespace

std::string format_sweep(const SweepResult& result, OutputFormat format) {
    const SweepPoint& best = result.points.at(result.argmin);
    if (format == OutputFormat::json) {
        json rows = json::array();
        for (const auto& p : result.points) {
            rows.push_back({{"beta", p.beta}, {"gamma", p.gamma}, {"abs_l1", p.abs_l1}, {"p_success", p.p_success}});
        }
        json doc = {{"n", result.n},
                    {"t", result.t},
                    {"beta_steps", result.grid.beta_steps},
                    {"gamma_steps", result.grid.gamma_steps},
                    {"rows", rows},
                    {"argmin", {{"beta", best.beta}, {"gamma", best.gamma}, {"abs_l1", best.abs_l1}}}};
        return doc.dump() + "\n";
    }
    std::string out = "beta,gamma,abs_l1,p_success\n";
    for (const auto& p : result.points) {
        out += format_double(p.beta) + ',' + format_double(p.gamma) + ',' + format_double(p.abs_l1) + ',' +
               format_double(p.p_success) + '\n';
    }
    out += "# argmin beta=" + format_double(best.beta) + " gamma=" + format_double(best.gamma) +
           " abs_l1=" + format_double(best.abs_l1) + '\n';
    return out;
}

std::string format_trajectory(const std::vector<TrajectoryRow>& rows, OutputFormat format) {
    const bool closed = !rows.empty() && rows.front().closed_form_deviation.has_value();
    if (format == OutputFormat::json) {
        json arr = json::array();
        for (const auto& r : rows) {
            json o = {{"j", r.step}, {"k", cjson(r.k)}, {"l", cjson(r.l)}, {"success_probability", r.success_probability}};
            if (r.closed_form_deviation) o["closed_form_deviation"] = *r.closed_form_deviation;
            arr.push_back(o);
        }
        return arr.dump() + "\n";
    }
    std::string out = "j,re_k,im_k,re_l,im_l,success_probability";
    out += closed ? ",closed_form_deviation\n" : "\n";
    for (const auto& r : rows) {
        out += std::to_string(r.step) + ',' + format_double(r.k.real()) + ',' + format_double(r.k.imag()) + ',' +
               format_double(r.l.real()) + ',' + format_double(r.l.imag()) + ',' +
               format_double(r.success_probability);
        if (closed) out += ',' + format_double(r.closed_form_deviation.value_or(0.0));
        out += '\n';
    }
    return out;
}

std::string format_run(const RunReport& r, OutputFormat format) {
    if (format == OutputFormat::json) {
        json doc = {{"n", r.n},
                    {"t", r.t},
                    {"engine", std::string(engine_name(r.engine))},
                    {"gamma", r.gamma},
                    {"success_probability", r.success_probability},
                    {"queries", r.oracle_queries},
                    {"engine_deviation", r.engine_deviation}};
        return doc.dump() + "\n";
    }
    return "n,t,engine,gamma,success_probability,queries,engine_deviation\n" + std::to_string(r.n) + ',' +
           std::to_string(r.t) + ',' + std::string(engine_name(r.engine)) + ',' + format_double(r.gamma) + ',' +
           format_double(r.success_probability) + ',' + std::to_string(r.oracle_queries) + ',' +
           format_double(r.engine_deviation) + '\n';
}

// ---------------------------------------------------------------------------
// verify

namespace {

double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

std::uint64_t uniform_int(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
    return lo + rng() % (hi - lo + 1);
}

double random_phase(std::mt19937_64& rng) { return kTwoPi * unit_uniform(rng); }

struct Tally {
    SuiteResult result;
    void record(double error) {
        ++result.checks;
        result.max_error = std::max(result.max_error, error);
        if (!(error <= result.tolerance)) {
            ++result.failures;
        }
    }
};

CollapsedState random_collapsed(std::mt19937_64& rng, std::uint64_t n, std::uint64_t t) {
    Complex k{unit_uniform(rng) - 0.5, unit_uniform(rng) - 0.5};
    Complex l{unit_uniform(rng) - 0.5, unit_uniform(rng) - 0.5};
    if (t == n) l = {};
    if (t == 0) k = {};
    const double norm = std::sqrt(static_cast<double>(t) * std::norm(k) + static_cast<double>(n - t) * std::norm(l));
    return CollapsedState::make(n, t, k / norm, l / norm);
}

StateVector random_state(std::mt19937_64& rng, std::uint64_t n) {
    std::vector<Complex> amps(n);
    double norm = 0.0;
    for (auto& a : amps) {
        a = {unit_uniform(rng) - 0.5, unit_uniform(rng) - 0.5};
        norm += std::norm(a);
    }
    for (auto& a : amps) a /= std::sqrt(norm);
    return StateVector(std::move(amps));
}

} // namespace

std::vector<SuiteResult> run_verify(std::uint64_t max_n, std::optional<double> tolerance, unsigned threads,
                                    std::uint64_t seed) {
    if (max_n < 4) {
        throw InvalidArgument("verify needs max_N >= 4");
    }
    const Parallelism par{threads};
    std::mt19937_64 rng(seed);
    auto tol = [&](double fallback) { return tolerance.value_or(fallback); };

    Tally cross{{"cross-engine", 0, 0, 0.0, tol(1e-11)}};
    for (std::uint64_t n = 1; n <= max_n; ++n) {
        for (int rep = 0; rep < 3; ++rep) {
            const std::uint64_t t = uniform_int(rng, 0, n);
            const OracleSpec oracle = generate_oracle(n, t, PlacementRule::random(rng()));
            const PhasePair phases{random_phase(rng), random_phase(rng)};
            const std::uint64_t steps = uniform_int(rng, 1, 20);
            CollapsedState c = random_collapsed(rng, n, t);
            StateVector sv = embed(c, oracle);
            for (std::uint64_t j = 0; j < steps; ++j) {
                c = grover_step_collapsed(c, phases);
                sv = apply_grover(std::move(sv), oracle, phases, nullptr, par);
                try {
                    cross.record(amplitude_distance(collapse(sv, oracle, kNormTolerance), c));
                } catch (const NotCollapsible&) {
                    cross.record(std::numeric_limits<double>::infinity());
                }
            }
        }
    }

    Tally unitary{{"unitarity", 0, 0, 0.0, tol(1e-12)}};
    for (std::uint64_t n = 1; n <= max_n; ++n) {
        for (int rep = 0; rep < 3; ++rep) {
            const StateVector s = random_state(rng, n);
            const OracleSpec oracle = generate_oracle(n, uniform_int(rng, 0, n), PlacementRule::random(rng()));
            const std::uint64_t m = uniform_int(rng, 1, n);
            const OracleSpec subset = generate_oracle(n, m, PlacementRule::random(rng()));
            const SubspaceSpec subspace =
                SubspaceSpec::of(n, std::vector<std::uint64_t>(subset.marked().begin(), subset.marked().end()));
            const PhasePair phases{random_phase(rng), random_phase(rng)};
            const double before = s.norm_squared();
            unitary.record(std::abs(apply_conditional_phase(s, oracle, phases.gamma(), nullptr, par).norm_squared() - before));
            unitary.record(std::abs(apply_diffusion(s, subspace, phases.beta(), par).norm_squared() - before));
            unitary.record(std::abs(apply_grover(s, oracle, phases, subspace, nullptr, par).norm_squared() - before));
        }
    }

    Tally single{{"single-query", 0, 0, 0.0, tol(1e-10)}};
    for (std::uint64_t n = 4; n <= max_n; ++n) {
        for (std::uint64_t t = (n + 3) / 4; t <= n; ++t) {
            const double gamma = single_query_phase(n, t);
            const CollapsedState one = single_step_from_uniform(n, t, PhasePair::matched(gamma));
            const Complex expected_k = (std::polar(1.0, gamma) - 1.0) / std::sqrt(static_cast<double>(n));
            single.record(std::abs(unmarked_residual(n, t, PhasePair::matched(gamma))));
            single.record(std::abs(one.k - expected_k));
            single.record(std::abs(collapsed_success_probability(one) - 1.0));
            const SearchResult r = single_query_search(generate_oracle(n, t, PlacementRule::random(rng())), par);
            single.record(std::abs(r.report.success_probability - 1.0));
            single.record(r.oracle_queries == 1 ? 0.0 : std::numeric_limits<double>::infinity());
        }
    }

    Tally closed{{"pi-closed-form", 0, 0, 0.0, tol(1e-9)}};
    const PhasePair pi = PhasePair::matched(std::numbers::pi);
    for (std::uint64_t n = 2; n <= max_n; ++n) {
        for (std::uint64_t t = 1; t < n; ++t) {
            CollapsedState c = CollapsedState::uniform(n, t);
            for (std::uint64_t j = 0; j <= 50; ++j) {
                closed.record(amplitude_distance(c, pi_phase_trajectory(n, t, j)));
                c = grover_step_collapsed(c, pi);
            }
        }
    }

    return {cross.result, unitary.result, single.result, closed.result};
}

// ---------------------------------------------------------------------------
// commands

namespace {

void emit(const RunConfig& config, const std::string& payload, std::ostream& out) {
    if (config.output_path) {
        std::ofstream file(*config.output_path, std::ios::binary);
        if (!file) {
            throw IoError("cannot open output file '" + *config.output_path + "'");
        }
        file << payload;
        if (!file) {
            throw IoError("failed writing '" + *config.output_path + "'");
        }
        return;
    }
    out << payload;
}

template <class Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const InfeasibleSingleQuery& e) {
        err << "infeasible: " << e.what() << "; one-query search needs at least N/4 marked indices\n";
        return kExitInfeasible;
    } catch (const VerificationFailed& e) {
        err << "verification failed: " << e.what() << '\n';
        return kExitVerifyFailed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitIoOrParse;
    }
}

std::uint64_t sweep_count(const std::optional<std::uint64_t>& v, const char* what) {
    if (!v) {
        throw InvalidArgument(std::string("sweep needs --") + what);
    }
    return *v;
}

} // namespace

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        emit(config, format_run(run_single_query(config), config.format), out);
        return kExitOk;
    });
}

int cmd_trajectory(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        emit(config, format_trajectory(trajectory_rows(config), config.format), out);
        return kExitOk;
    });
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        config.validate();
        std::uint64_t n = 0, t = 0;
        if (config.oracle_path) {
            const OracleSpec o = resolve_oracle(config);
            n = o.n_total();
            t = o.n_marked();
        } else {
            n = sweep_count(config.n, "n");
            t = sweep_count(config.t, "t");
        }
        const SweepResult result = sweep(n, t, {config.grid, config.grid}, config.threads);
        emit(config, format_sweep(result, config.format), out);
        return kExitOk;
    });
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        config.validate();
        const auto suites = run_verify(config.max_n, config.verify_tolerance, config.threads);
        std::uint64_t failures = 0;
        std::string table;
        if (config.format == OutputFormat::json) {
            json arr = json::array();
            for (const auto& s : suites) {
                arr.push_back({{"suite", s.name},
                               {"checks", s.checks},
                               {"failures", s.failures},
                               {"max_error", s.max_error},
                               {"tolerance", s.tolerance}});
                failures += s.failures;
            }
            table = json{{"max_n", config.max_n}, {"suites", arr}, {"passed", failures == 0}}.dump() + "\n";
        } else {
            table = "suite,checks,passed,failed,max_error,tolerance,status\n";
            for (const auto& s : suites) {
                table += s.name + ',' + std::to_string(s.checks) + ',' + std::to_string(s.checks - s.failures) + ',' +
                         std::to_string(s.failures) + ',' + format_double(s.max_error) + ',' +
                         format_double(s.tolerance) + ',' + (s.failures == 0 ? "PASS" : "FAIL") + '\n';
                failures += s.failures;
            }
        }
        emit(config, table, out);
        return failures == 0 ? kExitOk : kExitVerifyFailed;
    });
}

// ---------------------------------------------------------------------------
// argument parsing

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Generalized-phase Grover search simulator"};
    app.require_subcommand(1);

    struct Flags {
        std::string config, oracle, placement, engine, beta, gamma, out, format;
        std::uint64_t n = 0, t = 0, seed = 0, steps = 0, grid = 0, max_n = 0;
        double tol = 0.0;
        unsigned threads = 0;
    } f;

    std::vector<CLI::Option*> opts;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", f.config, "JSON config file (flags take precedence)");
        sub->add_option("--oracle", f.oracle, "Oracle JSON file");
        sub->add_option("--n", f.n, "Search space size N");
        sub->add_option("--t", f.t, "Number of marked indices");
        sub->add_option("--placement", f.placement, "first | last | random");
        sub->add_option("--seed", f.seed, "Seed for random placement");
        sub->add_option("--engine", f.engine, "statevector | collapsed | both");
        sub->add_option("--tol", f.tol, "Comparison tolerance");
        sub->add_option("--out", f.out, "Output path (default stdout)");
        sub->add_option("--format", f.format, "csv | json");
        sub->add_option("--threads", f.threads, "Worker threads (default $PHASEGROVER_THREADS or 1)");
    };
    CLI::App* run = app.add_subcommand("run", "Single-query search");
    CLI::App* traj = app.add_subcommand("trajectory", "Per-step amplitudes under repeated Grover steps");
    CLI::App* swp = app.add_subcommand("sweep", "|l_1| over a (beta, gamma) grid");
    CLI::App* ver = app.add_subcommand("verify", "Run the self-check suites");
    for (CLI::App* sub : {run, traj, swp, ver}) {
        add_common(sub);
    }
    for (CLI::App* sub : {traj, swp}) {
        sub->add_option("--beta", f.beta, "Diffusion phase (radians or pi literal)");
        sub->add_option("--gamma", f.gamma, "Oracle phase (radians or pi literal)");
    }
    traj->add_option("--steps", f.steps, "Number of Grover steps");
    swp->add_option("--grid", f.grid, "Grid points per axis");
    ver->add_option("--max-n", f.max_n, "Largest N checked");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        std::stringstream o, e2;
        const int code = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return code == 0 ? kExitOk : kExitIoOrParse;
    }

    CLI::App* sub = app.get_subcommands().front();
    auto given = [&](const char* name) { return sub->get_option_no_throw(name) && sub->count(name) > 0; };

    RunConfig config;
    config.threads = default_thread_count();
    const int status = guarded(err, [&] {
        if (given("--config")) {
            std::ifstream in(f.config, std::ios::binary);
            if (!in) throw IoError("cannot open config file '" + f.config + "'");
            std::ostringstream buf;
            buf << in.rdbuf();
            apply_config_json(config, buf.str());
        }
        if (given("--oracle")) config.oracle_path = f.oracle;
        if (given("--n")) config.n = f.n;
        if (given("--t")) config.t = f.t;
        if (given("--placement")) config.placement = parse_placement(f.placement);
        if (given("--seed")) config.seed = f.seed;
        if (given("--engine")) config.engine = parse_engine(f.engine);
        if (given("--tol")) {
            config.tolerance = f.tol;
            config.verify_tolerance = f.tol;
        }
        if (given("--out")) config.output_path = f.out;
        if (given("--format")) config.format = parse_format(f.format);
        if (given("--threads")) config.threads = f.threads;
        if (given("--beta")) config.beta = parse_phase(f.beta);
        if (given("--gamma")) config.gamma = parse_phase(f.gamma);
        if (given("--steps")) config.steps = f.steps;
        if (given("--grid")) config.grid = f.grid;
        if (given("--max-n")) config.max_n = f.max_n;
        config.validate();
        return kExitOk;
    });
    if (status != kExitOk) {
        return status;
    }

    if (sub == run) return cmd_run(config, out, err);
    if (sub == traj) return cmd_trajectory(config, out, err);
    if (sub == swp) return cmd_sweep(config, out, err);
    return cmd_verify(config, out, err);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    for (const auto& a : args) argv.push_back(a.c_str());
    argv.push_back(nullptr);
    return run_cli(static_cast<int>(args.size()), argv.data(), out, err);
}

} // namespace phasegrover::cli
