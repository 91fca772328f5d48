#pragma once

// Dense state-vector engine: S_{F,gamma}, D_beta (optionally restricted to a
// subspace H_m) and G = D_beta S_gamma acting on all N amplitudes.

#include "phasegrover/collapsed.hpp"
#include "phasegrover/oracle.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace phasegrover {

// Execution knobs for the dense kernels. Results never depend on `threads`.
struct Parallelism {
    unsigned threads = 1;

    static Parallelism from_environment();
};

class StateVector {
public:
    // Throws InvalidArgument if empty or sum |a_i|^2 deviates from 1 by more than `tol`.
    explicit StateVector(std::vector<Complex> amps, double tol = kNormTolerance);

    std::uint64_t dim() const { return amps_.size(); }
    std::span<const Complex> amps() const { return amps_; }
    Complex operator[](std::uint64_t i) const { return amps_[i]; }

    double norm_squared() const;

private:
    struct Unchecked {};
    StateVector(Unchecked, std::vector<Complex> amps) : amps_(std::move(amps)) {}

    std::vector<Complex> amps_;

    friend class StateVectorAccess;
};

// Basis indices B_m on which the diffusion acts; `full` covers all of B_N
// without materializing the index list.
class SubspaceSpec {
public:
    static SubspaceSpec full(std::uint64_t n_total);

    // Throws InvalidArgument unless indices are strictly increasing, non-empty
    // and inside [0, n_total).
    static SubspaceSpec of(std::uint64_t n_total, std::vector<std::uint64_t> indices);

    std::uint64_t ambient_dim() const { return n_total_; }
    std::uint64_t size() const { return is_full() ? n_total_ : indices_.size(); }
    bool is_full() const { return indices_.empty(); }
    std::span<const std::uint64_t> indices() const { return indices_; }

private:
    SubspaceSpec(std::uint64_t n, std::vector<std::uint64_t> idx)
        : n_total_(n), indices_(std::move(idx)) {}

    std::uint64_t n_total_;
    std::vector<std::uint64_t> indices_; // empty means full
};

struct ShotCounts {
    std::uint64_t seed = 0;
    std::uint64_t shots = 0;
    std::vector<std::uint64_t> counts; // length N
};

struct MeasurementReport {
    double success_probability = 0.0;
    std::optional<std::vector<double>> per_index_probabilities;
    std::optional<ShotCounts> shots;
};

// Number of oracle queries (conditional-phase applications) performed.
struct QueryCounter {
    std::uint64_t queries = 0;
};

StateVector uniform_state(std::uint64_t n_total);
StateVector uniform_state_on_subspace(std::uint64_t n_total, const SubspaceSpec& subspace);

// Writes a collapsed state out as N amplitudes.
StateVector embed(const CollapsedState& state, const OracleSpec& oracle);

// Multiplies marked amplitudes by e^{i gamma}. Counts one query.
StateVector apply_conditional_phase(StateVector state, const OracleSpec& oracle, double gamma,
                                    QueryCounter* counter = nullptr,
                                    Parallelism par = {});

// a_i += (e^{i beta} - 1) mu for i in the subspace, mu the subspace mean.
// O(N); amplitudes outside the subspace are not touched.
StateVector apply_diffusion(StateVector state, const SubspaceSpec& subspace, double beta,
                            Parallelism par = {});

// D_beta S_gamma.
StateVector apply_grover(StateVector state, const OracleSpec& oracle, const PhasePair& phases,
                         const SubspaceSpec& subspace, QueryCounter* counter = nullptr,
                         Parallelism par = {});

// Full-space diffusion.
StateVector apply_grover(StateVector state, const OracleSpec& oracle, const PhasePair& phases,
                         QueryCounter* counter = nullptr, Parallelism par = {});

// sum over marked i of |a_i|^2, clamped into [0, 1].
double success_probability(const StateVector& state, const OracleSpec& oracle);

// Reads (k, l) off a state; throws NotCollapsible when any amplitude deviates
// from its class's common value by `tol` or more.
CollapsedState collapse(const StateVector& state, const OracleSpec& oracle,
                        double tol = kNormTolerance);

struct SearchResult {
    double gamma = 0.0;
    StateVector final_state;
    MeasurementReport report;
    std::uint64_t oracle_queries = 0;
};

// Uniform start, then a single G_{F,gamma,gamma} with the single-query phase.
// Throws InvalidCount for t = 0 and InfeasibleSingleQuery for t < N/4.
SearchResult single_query_search(const OracleSpec& oracle, Parallelism par = {});

// Multinomial sample over |a_i|^2 by inverse CDF. Uniform variates come from
// mt19937_64(seed) as (x >> 11) * 2^-53, so the counts are reproducible
// across platforms and standard libraries.
std::vector<std::uint64_t> sample_measurement(const StateVector& state, std::uint64_t shots,
                                              std::uint64_t seed);

MeasurementReport measure(const StateVector& state, const OracleSpec& oracle,
                          bool per_index = false,
                          std::optional<std::pair<std::uint64_t, std::uint64_t>> shots_and_seed = std::nullopt);

} // namespace phasegrover
