#include "phasegrover/statevector.hpp"

#include "phasegrover/errors.hpp"
#include "phasegrover/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace phasegrover {

class StateVectorAccess {
public:
    static std::vector<Complex>& amps(StateVector& s) { return s.amps_; }
    static StateVector adopt(std::vector<Complex> amps) {
        return StateVector(StateVector::Unchecked{}, std::move(amps));
    }
};

namespace {

void require_dim(std::uint64_t state_dim, std::uint64_t other, const char* what) {
    if (state_dim != other) {
        throw DimensionMismatch(std::string(what) + " is defined over N = " + std::to_string(other) +
                                " but the state has dimension " + std::to_string(state_dim));
    }
}

double plain_norm(std::span<const Complex> amps) {
    double acc = 0.0;
    for (const auto& a : amps) {
        acc += std::norm(a);
    }
    return acc;
}

} // namespace

Parallelism Parallelism::from_environment() { return {default_thread_count()}; }

StateVector::StateVector(std::vector<Complex> amps, double tol) : amps_(std::move(amps)) {
    if (amps_.empty()) {
        throw InvalidArgument("state vector must have dimension >= 1");
    }
    const double n = plain_norm(amps_);
    if (!std::isfinite(n) || std::abs(n - 1.0) > tol) {
        throw InvalidArgument("state vector is not normalized: squared norm " + std::to_string(n));
    }
}

double StateVector::norm_squared() const { return plain_norm(amps_); }

SubspaceSpec SubspaceSpec::full(std::uint64_t n_total) {
    if (n_total < 1) {
        throw InvalidArgument("subspace ambient dimension must be >= 1");
    }
    return {n_total, {}};
}

SubspaceSpec SubspaceSpec::of(std::uint64_t n_total, std::vector<std::uint64_t> indices) {
    if (n_total < 1) {
        throw InvalidArgument("subspace ambient dimension must be >= 1");
    }
    if (indices.empty()) {
        throw InvalidArgument("subspace must contain at least one basis index");
    }
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] >= n_total) {
            throw InvalidArgument("subspace index " + std::to_string(indices[i]) + " outside [0, " +
                                  std::to_string(n_total) + ")");
        }
        if (i > 0 && indices[i] <= indices[i - 1]) {
            throw InvalidArgument("subspace indices must be strictly increasing");
        }
    }
    if (indices.size() == n_total) {
        return full(n_total);
    }
    return {n_total, std::move(indices)};
}

StateVector uniform_state(std::uint64_t n_total) {
    if (n_total < 1) {
        throw InvalidArgument("state dimension must be >= 1");
    }
    const double a = 1.0 / std::sqrt(static_cast<double>(n_total));
    return StateVectorAccess::adopt(std::vector<Complex>(n_total, Complex{a, 0.0}));
}

StateVector uniform_state_on_subspace(std::uint64_t n_total, const SubspaceSpec& subspace) {
    require_dim(n_total, subspace.ambient_dim(), "subspace");
    if (subspace.is_full()) {
        return uniform_state(n_total);
    }
    const double a = 1.0 / std::sqrt(static_cast<double>(subspace.size()));
    std::vector<Complex> amps(n_total);
    for (auto i : subspace.indices()) {
        amps[i] = Complex{a, 0.0};
    }
    return StateVectorAccess::adopt(std::move(amps));
}

StateVector embed(const CollapsedState& state, const OracleSpec& oracle) {
    require_dim(state.n_total, oracle.n_total(), "oracle");
    if (state.n_marked != oracle.n_marked()) {
        throw InvalidCount("collapsed state has t = " + std::to_string(state.n_marked) +
                           " but the oracle marks " + std::to_string(oracle.n_marked()));
    }
    std::vector<Complex> amps(state.n_total, state.l);
    for (auto i : oracle.marked()) {
        amps[i] = state.k;
    }
    return StateVector(std::move(amps));
}

StateVector apply_conditional_phase(StateVector state, const OracleSpec& oracle, double gamma,
                                    QueryCounter* counter, Parallelism par) {
    require_dim(state.dim(), oracle.n_total(), "oracle");
    auto& amps = StateVectorAccess::amps(state);
    const Complex phase = std::polar(1.0, gamma);
    const auto marked = oracle.marked();
    const unsigned threads = marked.size() >= kParallelThreshold ? par.threads : 1;
    parallel_for(marked.size(), threads, kReductionBlock, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            amps[marked[i]] *= phase;
        }
    });
    if (counter) {
        ++counter->queries;
    }
    return state;
}

StateVector apply_diffusion(StateVector state, const SubspaceSpec& subspace, double beta,
                            Parallelism par) {
    require_dim(state.dim(), subspace.ambient_dim(), "subspace");
    auto& amps = StateVectorAccess::amps(state);
    const double m = static_cast<double>(subspace.size());
    const unsigned threads = subspace.size() >= kParallelThreshold ? par.threads : 1;

    if (subspace.is_full()) {
        const Complex shift = (std::polar(1.0, beta) - 1.0) * (deterministic_sum(amps, par.threads) / m);
        parallel_for(amps.size(), threads, kReductionBlock, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                amps[i] += shift;
            }
        });
    } else {
        const auto idx = subspace.indices();
        const Complex shift =
            (std::polar(1.0, beta) - 1.0) * (deterministic_sum_gather(amps, idx, par.threads) / m);
        parallel_for(idx.size(), threads, kReductionBlock, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                amps[idx[i]] += shift;
            }
        });
    }
    return state;
}

StateVector apply_grover(StateVector state, const OracleSpec& oracle, const PhasePair& phases,
                         const SubspaceSpec& subspace, QueryCounter* counter, Parallelism par) {
    require_dim(state.dim(), oracle.n_total(), "oracle");
    require_dim(state.dim(), subspace.ambient_dim(), "subspace");
    return apply_diffusion(apply_conditional_phase(std::move(state), oracle, phases.gamma(), counter, par),
                           subspace, phases.beta(), par);
}

StateVector apply_grover(StateVector state, const OracleSpec& oracle, const PhasePair& phases,
                         QueryCounter* counter, Parallelism par) {
    const auto full = SubspaceSpec::full(oracle.n_total());
    return apply_grover(std::move(state), oracle, phases, full, counter, par);
}

double success_probability(const StateVector& state, const OracleSpec& oracle) {
    require_dim(state.dim(), oracle.n_total(), "oracle");
    double acc = 0.0;
    for (auto i : oracle.marked()) {
        acc += std::norm(state[i]);
    }
    return clamp_probability(acc);
}

CollapsedState collapse(const StateVector& state, const OracleSpec& oracle, double tol) {
    require_dim(state.dim(), oracle.n_total(), "oracle");
    const auto amps = state.amps();
    const auto mask = oracle.mask();
    const std::uint64_t t = oracle.n_marked();
    const std::uint64_t u = state.dim() - t;

    Complex k{}, l{};
    if (t > 0) {
        k = deterministic_sum_gather(amps, oracle.marked(), 1) / static_cast<double>(t);
    }
    if (u > 0) {
        std::vector<Complex> rest;
        rest.reserve(u);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if (!mask[i]) rest.push_back(amps[i]);
        }
        l = deterministic_sum(rest, 1) / static_cast<double>(u);
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        worst = std::max(worst, std::abs(amps[i] - (mask[i] ? k : l)));
    }
    if (!(worst < tol)) {
        throw NotCollapsible("state is not of the form psi(k, l): amplitude deviates from its class value by " +
                             std::to_string(worst));
    }
    CollapsedState s;
    s.n_total = state.dim();
    s.n_marked = t;
    s.k = k;
    s.l = l;
    return s;
}

std::vector<std::uint64_t> sample_measurement(const StateVector& state, std::uint64_t shots,
                                              std::uint64_t seed) {
    const auto amps = state.amps();
    std::vector<double> cdf(amps.size());
    double running = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        if (p > 0.0) last_positive = i;
        running += p;
        cdf[i] = running;
    }
    std::vector<std::uint64_t> counts(amps.size(), 0);
    std::mt19937_64 rng(seed);
    constexpr double kInv53 = 1.0 / 9007199254740992.0; // 2^-53
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = static_cast<double>(rng() >> 11) * kInv53 * running;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::size_t idx = it == cdf.end() ? last_positive : static_cast<std::size_t>(it - cdf.begin());
        ++counts[idx];
    }
    return counts;
}

MeasurementReport measure(const StateVector& state, const OracleSpec& oracle, bool per_index,
                          std::optional<std::pair<std::uint64_t, std::uint64_t>> shots_and_seed) {
    MeasurementReport r;
    r.success_probability = success_probability(state, oracle);
    if (per_index) {
        std::vector<double> probs(state.dim());
        for (std::size_t i = 0; i < probs.size(); ++i) {
            probs[i] = std::norm(state[i]);
        }
        r.per_index_probabilities = std::move(probs);
    }
    if (shots_and_seed) {
        const auto [shots, seed] = *shots_and_seed;
        r.shots = ShotCounts{seed, shots, sample_measurement(state, shots, seed)};
    }
    return r;
}

SearchResult single_query_search(const OracleSpec& oracle, Parallelism par) {
    if (oracle.n_marked() == 0) {
        throw InvalidCount("single-query search needs at least one marked index");
    }
    const double gamma = single_query_phase(oracle.n_total(), oracle.n_marked());
    QueryCounter counter;
    StateVector final_state =
        apply_grover(uniform_state(oracle.n_total()), oracle, PhasePair::matched(gamma), &counter, par);
    MeasurementReport report = measure(final_state, oracle);
    return {gamma, std::move(final_state), std::move(report), counter.queries};
}

} // namespace phasegrover
