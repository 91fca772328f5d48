#include "phasegrover/collapsed.hpp"

#include "phasegrover/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace phasegrover {

namespace {

Complex expi(double phase) { return std::polar(1.0, phase); }

void require_counts(std::uint64_t n_total, std::uint64_t n_marked) {
    if (n_total < 1) {
        throw InvalidCount("N must be at least 1");
    }
    if (n_marked > n_total) {
        throw InvalidCount("t = " + std::to_string(n_marked) + " exceeds N = " + std::to_string(n_total));
    }
}

void require_phase(double phase, const char* what) {
    if (!std::isfinite(phase) || phase < 0.0 || phase > kTwoPi) {
        throw InvalidArgument(std::string(what) + " must be a finite phase in [0, 2pi], got " +
                              std::to_string(phase));
    }
}

double wrap(double phase) {
    if (!std::isfinite(phase)) {
        throw InvalidArgument("phase must be finite");
    }
    double r = std::fmod(phase, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    // fmod of a tiny negative value can round up to exactly 2pi.
    return r >= kTwoPi ? 0.0 : r;
}

} // namespace

PhasePair::PhasePair(double beta, double gamma) : beta_(beta), gamma_(gamma) {
    require_phase(beta, "beta");
    require_phase(gamma, "gamma");
}

PhasePair PhasePair::wrapped(double beta, double gamma) { return {wrap(beta), wrap(gamma)}; }

CollapsedState CollapsedState::make(std::uint64_t n_total, std::uint64_t n_marked, Complex k,
                                    Complex l, double tol) {
    require_counts(n_total, n_marked);
    CollapsedState s{k, n_marked == n_total ? Complex{} : l, n_total, n_marked};
    const double norm = s.norm_squared();
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > tol) {
        throw InvalidArgument("collapsed state is not normalized: t|k|^2 + (N-t)|l|^2 = " +
                              std::to_string(norm));
    }
    return s;
}

CollapsedState CollapsedState::uniform(std::uint64_t n_total, std::uint64_t n_marked) {
    require_counts(n_total, n_marked);
    const double a = 1.0 / std::sqrt(static_cast<double>(n_total));
    return {Complex{a, 0.0}, n_marked == n_total ? Complex{} : Complex{a, 0.0}, n_total, n_marked};
}

double CollapsedState::norm_squared() const {
    const auto t = static_cast<double>(n_marked);
    const auto u = static_cast<double>(n_total - n_marked);
    return t * std::norm(k) + u * std::norm(l);
}

CollapsedState grover_step_collapsed(const CollapsedState& state, const PhasePair& phases) {
    require_counts(state.n_total, state.n_marked);
    const double n = static_cast<double>(state.n_total);
    const double t = static_cast<double>(state.n_marked);
    const double u = n - t;
    const Complex eb1 = expi(phases.beta()) - 1.0;
    const Complex marked = expi(phases.gamma()) * state.k;

    // D_beta adds (e^{i beta} - 1) times the mean amplitude to every entry.
    // Writing it through the mean keeps beta = gamma = 0 exactly the identity.
    const Complex mean = (t * marked + u * state.l) / n;
    const Complex shift = eb1 * mean;

    CollapsedState next = state;
    next.k = marked + shift;
    next.l = state.n_marked == state.n_total ? Complex{} : state.l + shift;
    return next;
}

std::vector<TrajectoryRecord> collapsed_trajectory(const CollapsedState& start,
                                                   const PhasePair& phases,
                                                   std::uint64_t steps) {
    std::vector<TrajectoryRecord> out;
    out.reserve(steps + 1);
    CollapsedState s = start;
    for (std::uint64_t j = 0;; ++j) {
        out.push_back({j, s, collapsed_success_probability(s)});
        if (j == steps) {
            break;
        }
        s = grover_step_collapsed(s, phases);
    }
    return out;
}

Complex unmarked_residual(std::uint64_t n_total, std::uint64_t n_marked, const PhasePair& phases) {
    require_counts(n_total, n_marked);
    if (n_marked < 1) {
        throw InvalidCount("one-step residual needs t >= 1");
    }
    const double ratio = static_cast<double>(n_marked) / static_cast<double>(n_total);
    const Complex eb = expi(phases.beta());
    const Complex eg = expi(phases.gamma());
    return ((eb - 1.0) * (eg - 1.0) * ratio + eb) / std::sqrt(static_cast<double>(n_total));
}

CollapsedState single_step_from_uniform(std::uint64_t n_total, std::uint64_t n_marked,
                                        const PhasePair& phases) {
    require_counts(n_total, n_marked);
    if (n_marked < 1) {
        throw InvalidCount("one-step formula needs t >= 1");
    }
    const double ratio = static_cast<double>(n_marked) / static_cast<double>(n_total);
    const double root = std::sqrt(static_cast<double>(n_total));
    const Complex eb = expi(phases.beta());
    const Complex eg = expi(phases.gamma());
    const Complex cross = (eb - 1.0) * (eg - 1.0) * ratio;

    CollapsedState s;
    s.n_total = n_total;
    s.n_marked = n_marked;
    s.k = (cross + eg + eb - 1.0) / root;
    s.l = n_marked == n_total ? Complex{} : (cross + eb) / root;
    return s;
}

double single_query_phase(std::uint64_t n_total, std::uint64_t n_marked) {
    if (n_total < 1 || n_marked < 1 || n_marked > n_total) {
        throw InvalidCount("single-query phase needs 1 <= t <= N (N = " + std::to_string(n_total) +
                           ", t = " + std::to_string(n_marked) + ")");
    }
    // 4t >= N is checked in integers so the boundary t = N/4 is exact.
    if (4 * n_marked < n_total) {
        throw InfeasibleSingleQuery("single-query search requires t >= N/4 (N = " +
                                    std::to_string(n_total) + ", t = " + std::to_string(n_marked) +
                                    ")");
    }
    // 1 - N/(2t) as (2t - N) / 2t: one rounding, and exactly -1 at t = N/4.
    const double two_t = 2.0 * static_cast<double>(n_marked);
    double arg = (two_t - static_cast<double>(n_total)) / two_t;
    if (arg < -1.0 && arg > -1.0 - 1e-12) {
        arg = -1.0;
    } else if (arg > 1.0 && arg < 1.0 + 1e-12) {
        arg = 1.0;
    }
    return std::acos(arg);
}

CollapsedState pi_phase_trajectory(std::uint64_t n_total, std::uint64_t n_marked, std::uint64_t step) {
    if (n_total < 2 || n_marked < 1 || n_marked >= n_total) {
        throw InvalidCount("pi-phase closed form needs 1 <= t <= N - 1 (N = " +
                           std::to_string(n_total) + ", t = " + std::to_string(n_marked) + ")");
    }
    const double n = static_cast<double>(n_total);
    const double t = static_cast<double>(n_marked);
    const double theta = std::asin(std::sqrt(t / n));
    const double angle = static_cast<double>(2 * step + 1) * theta;
    const double sign = (step % 2 == 0) ? 1.0 : -1.0;

    CollapsedState s;
    s.n_total = n_total;
    s.n_marked = n_marked;
    s.k = Complex{sign * std::sin(angle) / std::sqrt(t), 0.0};
    s.l = Complex{sign * std::cos(angle) / std::sqrt(n - t), 0.0};
    return s;
}

double amplitude_distance(const CollapsedState& a, const CollapsedState& b) {
    if (a.n_total != b.n_total || a.n_marked != b.n_marked) {
        throw InvalidArgument("collapsed states over different (N, t) are not comparable");
    }
    double d = 0.0;
    if (a.n_marked > 0) {
        d = std::abs(a.k - b.k);
    }
    if (a.n_marked < a.n_total) {
        d = std::max(d, std::abs(a.l - b.l));
    }
    return d;
}

double collapsed_success_probability(const CollapsedState& state) {
    return clamp_probability(static_cast<double>(state.n_marked) * std::norm(state.k));
}

double grid_phase(std::uint64_t index, std::uint64_t steps) {
    if (steps < 2) {
        throw InvalidArgument("grid needs at least 2 points per axis");
    }
    if (index + 1 == steps) {
        return kTwoPi;
    }
    return kTwoPi * static_cast<double>(index) / static_cast<double>(steps - 1);
}

double min_unmarked_residual(std::uint64_t n_total, std::uint64_t n_marked, std::uint64_t grid_steps) {
    require_counts(n_total, n_marked);
    if (n_marked < 1) {
        throw InvalidCount("residual scan needs t >= 1");
    }
    if (grid_steps < 2) {
        throw InvalidArgument("grid needs at least 2 points per axis");
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t i = 0; i < grid_steps; ++i) {
        const double beta = grid_phase(i, grid_steps);
        for (std::uint64_t j = 0; j < grid_steps; ++j) {
            const double r = std::abs(unmarked_residual(n_total, n_marked, {beta, grid_phase(j, grid_steps)}));
            best = std::min(best, r);
        }
    }
    return best;
}

double clamp_probability(double p) {
    if (!(p >= -kProbabilityClamp && p <= 1.0 + kProbabilityClamp)) {
        throw InvalidArgument("probability " + std::to_string(p) + " outside [0, 1]");
    }
    return std::clamp(p, 0.0, 1.0);
}

} // namespace phasegrover
