#pragma once

// Two-amplitude Grover dynamics.
//
// A state with amplitude k on each of the t marked indices and l on each of
// the N - t unmarked ones stays in that family under D_beta S_gamma, so the
// whole evolution reduces to a 2x2 complex linear map on (k, l).

#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace phasegrover {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Default absolute tolerance on amplitudes.
inline constexpr double kAmplitudeTolerance = 1e-10;

// Tolerance used to validate the normalization of externally built states.
inline constexpr double kNormTolerance = 1e-9;

// Probabilities within this distance of [0, 1] are clamped; further out is a bug.
inline constexpr double kProbabilityClamp = 1e-9;

// The engine applies G = D_beta S_gamma with no global minus sign. Its
// pi-phase iterates equal the textbook closed form, whose (-1)^j factor is
// exactly the per-step sign of D_pi = -(2P - I). Hence no extra phase
// correction is needed between the two; this constant records that.
inline constexpr int kPiPhaseSignPerStep = 1;

// Operator phases (beta for the diffusion, gamma for the conditional phase),
// both in [0, 2pi].
class PhasePair {
public:
    // Throws InvalidArgument when either phase is non-finite or outside [0, 2pi].
    PhasePair(double beta, double gamma);

    // Reduces arbitrary finite phases into [0, 2pi) by periodicity.
    static PhasePair wrapped(double beta, double gamma);

    static PhasePair identity() { return {0.0, 0.0}; }
    static PhasePair matched(double phase) { return {phase, phase}; }

    double beta() const { return beta_; }
    double gamma() const { return gamma_; }

private:
    double beta_;
    double gamma_;
};

// |psi(k, l)> together with N and t. When t == N the unmarked amplitude has
// no basis states to live on and is carried as exactly zero.
struct CollapsedState {
    Complex k;
    Complex l;
    std::uint64_t n_total = 1;
    std::uint64_t n_marked = 0;

    // Validates counts and normalization (within `tol`), zeroing l when t == N.
    static CollapsedState make(std::uint64_t n_total, std::uint64_t n_marked,
                               Complex k, Complex l, double tol = kNormTolerance);

    // k = l = 1/sqrt(N).
    static CollapsedState uniform(std::uint64_t n_total, std::uint64_t n_marked);

    // t |k|^2 + (N - t) |l|^2
    double norm_squared() const;
};

struct TrajectoryRecord {
    std::uint64_t step = 0;
    CollapsedState state;
    double success_probability = 0.0;
};

// One application of G_{F,beta,gamma} in the collapsed picture.
CollapsedState grover_step_collapsed(const CollapsedState& state, const PhasePair& phases);

// j applications from `start`, returning records for steps 0..steps.
std::vector<TrajectoryRecord> collapsed_trajectory(const CollapsedState& start,
                                                   const PhasePair& phases,
                                                   std::uint64_t steps);

// (k_1, l_1) after one step from the uniform state, via the closed one-step
// expression rather than the recurrence. Requires 1 <= t <= N.
CollapsedState single_step_from_uniform(std::uint64_t n_total, std::uint64_t n_marked,
                                        const PhasePair& phases);

// The unmarked amplitude l_1 of the one-step expression, kept even when t == N
// (where the state itself carries l = 0). This is the quantity whose zeros the
// single-query condition characterizes.
Complex unmarked_residual(std::uint64_t n_total, std::uint64_t n_marked, const PhasePair& phases);

// gamma = arccos(1 - N/(2t)) on [0, pi]. With beta = gamma this zeroes l_1.
// The mirrored pair (2pi - gamma, 2pi - gamma) works too; only the principal
// value is returned.
//
// Throws InvalidCount unless 1 <= t <= N, InfeasibleSingleQuery when t < N/4.
double single_query_phase(std::uint64_t n_total, std::uint64_t n_marked);

// Closed form of the pi-phase iteration from the uniform state:
//   k_j = (-1)^j sin((2j+1) theta) / sqrt(t)
//   l_j = (-1)^j cos((2j+1) theta) / sqrt(N - t),   sin^2 theta = t / N
// Throws InvalidCount unless 1 <= t <= N - 1.
CollapsedState pi_phase_trajectory(std::uint64_t n_total, std::uint64_t n_marked, std::uint64_t step);

// max(|k_a - k_b|, |l_a - l_b|), skipping k when t = 0 and l when t = N
// (a component with no basis states carries no information). Throws
// InvalidArgument when N or t differ.
double amplitude_distance(const CollapsedState& a, const CollapsedState& b);

// t |k|^2, clamped into [0, 1].
double collapsed_success_probability(const CollapsedState& state);

// Minimum of |l_1| over the uniform grid_steps x grid_steps grid on
// [0, 2pi]^2 (both endpoints included).
double min_unmarked_residual(std::uint64_t n_total, std::uint64_t n_marked, std::uint64_t grid_steps);

// Grid coordinate i of a grid with `steps` points on [0, 2pi].
double grid_phase(std::uint64_t index, std::uint64_t steps);

// Clamps a probability into [0, 1]; throws InvalidArgument if it is further
// than kProbabilityClamp outside.
double clamp_probability(double p);

} // namespace phasegrover
