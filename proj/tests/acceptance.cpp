// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include "phasegrover/cli.hpp"
#include "phasegrover/collapsed.hpp"
#include "phasegrover/errors.hpp"
#include "phasegrover/oracle.hpp"
#include "phasegrover/statevector.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace phasegrover;
namespace pc = phasegrover::cli;
using nlohmann::json;

namespace {

constexpr double pi = std::numbers::pi;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

struct Verdict {
    bool pass;
    std::string detail;
};

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

// 1. Single-query certainty for every N in 4..256, ceil(N/4) <= t <= N.
Verdict single_query_certainty() {
    const auto start = Clock::now();
    std::uint64_t runs = 0, bad = 0;
    double worst = 0.0;
    for (std::uint64_t n = 4; n <= 256; ++n) {
        for (std::uint64_t t = (n + 3) / 4; t <= n; ++t) {
            if (1.0 - double(n) / (2.0 * double(t)) < -1.0) continue;
            pc::RunConfig c;
            c.n = n;
            c.t = t;
            c.placement = Placement::random;
            c.seed = n * 1000 + t;
            c.engine = pc::Engine::both;
            c.format = pc::OutputFormat::json;
            std::ostringstream out, err;
            const int code = pc::cmd_run(c, out, err);
            ++runs;
            if (code != pc::kExitOk) {
                ++bad;
                continue;
            }
            const json doc = json::parse(out.str());
            const double dp = std::abs(doc["success_probability"].get<double>() - 1.0);
            worst = std::max(worst, dp);
            if (!(dp <= 1e-9) || doc["queries"].get<std::uint64_t>() != 1) ++bad;
        }
    }
    const double secs = seconds_since(start);
    return {bad == 0 && secs < 10.0, std::to_string(runs) + " runs, " + std::to_string(bad) +
                                         " failures, max |p-1| = " + num(worst) + ", " + num(secs) +
                                         " s (limit 10 s, tol 1e-9, queries == 1)"};
}

// 2. gamma = pi for (4,1), pi/2 for (2,1), pi/3 for (N,N).
Verdict special_cases() {
    auto gamma_of = [](std::uint64_t n, std::uint64_t t) {
        pc::RunConfig c;
        c.n = n;
        c.t = t;
        return pc::run_single_query(c).gamma;
    };
    double worst = std::abs(gamma_of(4, 1) - pi);
    worst = std::max(worst, std::abs(gamma_of(2, 1) - pi / 2));
    for (std::uint64_t n = 1; n <= 256; ++n) {
        worst = std::max(worst, std::abs(gamma_of(n, n) - pi / 3));
    }
    return {worst <= 1e-12, "max |gamma - expected| = " + num(worst) + " over (4,1), (2,1), (N,N) N<=256 (tol 1e-12)"};
}

// 3. Converse: min |l_1| > 0 on a 401x401 grid for N = 64, t < 16.
// Frozen from tests/oracles/grid_residual.py; equal to (64 - 4t) / 512.
constexpr std::array<double, 15> kFrozenResidual64 = {
    0.1171875, 0.109375, 0.1015625, 0.09375, 0.0859375, 0.078125, 0.0703125, 0.0625,
    0.0546875, 0.046875, 0.0390625, 0.03125, 0.0234375, 0.015625, 0.0078125,
};

Verdict converse_infeasibility() {
    const auto start = Clock::now();
    bool ok = true;
    double smallest = 1.0, drift = 0.0;
    for (std::uint64_t t = 1; t <= 15; ++t) {
        const double m = min_unmarked_residual(64, t, 401);
        smallest = std::min(smallest, m);
        drift = std::max(drift, std::abs(m - kFrozenResidual64[t - 1]));
        ok = ok && m > 0.0 && std::abs(m - kFrozenResidual64[t - 1]) <= 1e-6;
    }
    const double secs = seconds_since(start);
    return {ok && secs < 30.0, "smallest minimum " + num(smallest) + ", max drift from frozen " + num(drift) +
                                   " (tol 1e-6), " + num(secs) + " s (limit 30 s)"};
}

// 4. Recurrence: collapsed and statevector engines agree step by step.
Verdict recurrence_equivalence() {
    const auto start = Clock::now();
    std::mt19937_64 rng(4096);
    double worst = 0.0;
    std::uint64_t comparisons = 0;
    bool collapsible = true;
    for (int rep = 0; rep < 1000; ++rep) {
        const std::uint64_t n = 1 + rng() % 4096;
        const std::uint64_t t = rng() % (n + 1);
        const OracleSpec oracle = generate_oracle(n, t, PlacementRule::random(rng()));
        const PhasePair phases{kTwoPi * uniform01(rng), kTwoPi * uniform01(rng)};
        const std::uint64_t steps = 1 + rng() % 20;

        CollapsedState c = CollapsedState::uniform(n, t);
        if (rep % 2 == 1) {
            Complex k{uniform01(rng) - 0.5, uniform01(rng) - 0.5};
            Complex l{uniform01(rng) - 0.5, uniform01(rng) - 0.5};
            if (t == 0) k = {};
            if (t == n) l = {};
            const double norm = std::sqrt(double(t) * std::norm(k) + double(n - t) * std::norm(l));
            c = CollapsedState::make(n, t, k / norm, l / norm);
        }
        StateVector sv = embed(c, oracle);
        for (std::uint64_t j = 0; j < steps; ++j) {
            c = grover_step_collapsed(c, phases);
            sv = apply_grover(std::move(sv), oracle, phases);
            try {
                worst = std::max(worst, amplitude_distance(collapse(sv, oracle, 1e-9), c));
            } catch (const NotCollapsible&) {
                collapsible = false;
            }
            ++comparisons;
        }
    }
    const double secs = seconds_since(start);
    return {collapsible && worst <= 1e-11 && secs < 60.0,
            "1000 instances, " + std::to_string(comparisons) + " step comparisons, max error " + num(worst) +
                " (tol 1e-11), " + num(secs) + " s (limit 60 s)"};
}

// 5. pi-phase closed form against the iteration: moduli and relative phase.
Verdict closed_form() {
    const auto start = Clock::now();
    const PhasePair pi_pair = PhasePair::matched(pi);
    double worst_mod = 0.0, worst_phase = 0.0, worst_component = 0.0;
    std::uint64_t phase_checks = 0;
    for (std::uint64_t n = 2; n <= 128; ++n) {
        for (std::uint64_t t = 1; t < n; ++t) {
            CollapsedState c = CollapsedState::uniform(n, t);
            for (std::uint64_t j = 0; j <= 50; ++j) {
                const CollapsedState f = pi_phase_trajectory(n, t, j);
                worst_component = std::max(worst_component, amplitude_distance(c, f));
                worst_mod = std::max({worst_mod, std::abs(std::abs(c.k) - std::abs(f.k)),
                                      std::abs(std::abs(c.l) - std::abs(f.l))});
                // arg(k conj l) is undefined when either amplitude vanishes;
                // the moduli check covers those steps.
                if (std::abs(c.k) > 1e-6 && std::abs(c.l) > 1e-6) {
                    const double d = std::arg((c.k * std::conj(c.l)) / (f.k * std::conj(f.l)));
                    worst_phase = std::max(worst_phase, std::abs(d));
                    ++phase_checks;
                }
                c = grover_step_collapsed(c, pi_pair);
            }
        }
    }
    const double secs = seconds_since(start);
    return {worst_mod <= 1e-9 && worst_phase <= 1e-9 && worst_component <= 1e-9 && secs < 30.0,
            "max modulus error " + num(worst_mod) + ", max relative-phase error " + num(worst_phase) + " (" +
                std::to_string(phase_checks) + " checks), componentwise " + num(worst_component) +
                " (tol 1e-9), " + num(secs) + " s (limit 30 s)"};
}

// 6. Norm preservation, including diffusion on proper subspaces.
Verdict unitarity() {
    std::mt19937_64 rng(606);
    double worst = 0.0;
    int proper = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        const std::uint64_t n = 1 + rng() % 4096;
        std::vector<Complex> a(n);
        double norm = 0.0;
        for (auto& z : a) {
            z = {uniform01(rng) - 0.5, uniform01(rng) - 0.5};
            norm += std::norm(z);
        }
        for (auto& z : a) z /= std::sqrt(norm);
        const StateVector s(std::move(a));
        const OracleSpec oracle = generate_oracle(n, rng() % (n + 1), PlacementRule::random(rng()));
        const std::uint64_t m = (n > 1 && rep % 2 == 0) ? 1 + rng() % (n - 1) : 1 + rng() % n;
        const OracleSpec subset = generate_oracle(n, m, PlacementRule::random(rng()));
        const SubspaceSpec sub =
            SubspaceSpec::of(n, std::vector<std::uint64_t>(subset.marked().begin(), subset.marked().end()));
        if (sub.size() < n) ++proper;
        const PhasePair p{kTwoPi * uniform01(rng), kTwoPi * uniform01(rng)};
        const double before = s.norm_squared();
        worst = std::max(worst, std::abs(apply_conditional_phase(s, oracle, p.gamma()).norm_squared() - before));
        worst = std::max(worst, std::abs(apply_diffusion(s, sub, p.beta()).norm_squared() - before));
        worst = std::max(worst, std::abs(apply_grover(s, oracle, p, sub).norm_squared() - before));
    }
    return {worst <= 1e-12 && proper > 0, "1000 cases (" + std::to_string(proper) +
                                              " with m < N), max |norm change| " + num(worst) + " (tol 1e-12)"};
}

// 7. Sweep output is byte-identical across runs and thread counts.
Verdict sweep_determinism() {
    auto run = [](const char* threads) {
        std::ostringstream out, err;
        const int code = pc::run_cli(std::vector<std::string>{"phasegrover", "sweep", "--n", "32", "--t", "8",
                                                              "--grid", "101", "--threads", threads},
                                     out, err);
        return std::make_pair(code, out.str());
    };
    const auto a = run("1");
    const auto b = run("1");
    const auto c = run("8");
    const bool ok = a.first == 0 && b.first == 0 && c.first == 0 && a.second == b.second && a.second == c.second &&
                    !a.second.empty();
    return {ok, std::to_string(a.second.size()) + " bytes; run1 == run2: " + (a.second == b.second ? "yes" : "no") +
                    ", threads 1 == threads 8: " + (a.second == c.second ? "yes" : "no")};
}

// 8. One apply_grover at N = 2^20 in under 100 ms.
Verdict performance() {
    const std::uint64_t n = std::uint64_t{1} << 20;
    const OracleSpec oracle = generate_oracle(n, n / 4, PlacementRule::random(8));
    const Parallelism par = Parallelism::from_environment();
    StateVector s = uniform_state(n);
    s = apply_grover(std::move(s), oracle, PhasePair::matched(pi), nullptr, par); // warm-up
    std::vector<double> ms;
    for (int rep = 0; rep < 5; ++rep) {
        const auto start = Clock::now();
        s = apply_grover(std::move(s), oracle, {0.9, 2.3}, nullptr, par);
        ms.push_back(seconds_since(start) * 1e3);
    }
    std::sort(ms.begin(), ms.end());
    return {ms[2] < 100.0, "median " + num(ms[2]) + " ms, worst " + num(ms.back()) + " ms with " +
                               std::to_string(par.threads) + " thread(s) (limit 100 ms)"};
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
        {"AC1 single-query certainty", single_query_certainty},
        {"AC2 special-case phases", special_cases},
        {"AC3 converse infeasibility", converse_infeasibility},
        {"AC4 two-amplitude recurrence vs dense engine", recurrence_equivalence},
        {"AC5 pi-phase closed form", closed_form},
        {"AC6 unitarity", unitarity},
        {"AC7 sweep determinism", sweep_determinism},
        {"AC8 N=2^20 step time", performance},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Verdict v{false, ""};
        try {
            v = check();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] %s: %s\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str());
        failed += v.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
