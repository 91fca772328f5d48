#include "phasegrover/reduction.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

namespace phasegrover {

namespace {

using C = std::complex<double>;

template <class Get>
C tree_sum(std::size_t begin, std::size_t end, const Get& get) {
    const std::size_t n = end - begin;
    if (n == 0) {
        return {};
    }
    if (n <= 8) {
        C acc = get(begin);
        for (std::size_t i = begin + 1; i < end; ++i) {
            acc += get(i);
        }
        return acc;
    }
    const std::size_t mid = begin + n / 2;
    return tree_sum(begin, mid, get) + tree_sum(mid, end, get);
}

template <class Get>
C blocked_sum(std::size_t n, unsigned threads, const Get& get) {
    if (n <= kReductionBlock) {
        return tree_sum(0, n, get);
    }
    const std::size_t blocks = (n + kReductionBlock - 1) / kReductionBlock;
    std::vector<C> partial(blocks);
    const unsigned use = n >= kParallelThreshold ? threads : 1;
    parallel_for(blocks, use, 1, [&](std::size_t b0, std::size_t b1) {
        for (std::size_t b = b0; b < b1; ++b) {
            const std::size_t lo = b * kReductionBlock;
            partial[b] = tree_sum(lo, std::min(n, lo + kReductionBlock), get);
        }
    });
    return tree_sum(0, blocks, [&](std::size_t i) { return partial[i]; });
}

} // namespace

unsigned default_thread_count() {
    if (const char* env = std::getenv("PHASEGROVER_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) {
                return static_cast<unsigned>(v);
            }
        } catch (const std::exception&) {
        }
    }
    return 1;
}

void parallel_for(std::size_t count, unsigned threads, std::size_t grain,
                  const std::function<void(std::size_t, std::size_t)>& body) {
    if (count == 0) {
        return;
    }
    grain = std::max<std::size_t>(grain, 1);
    const std::size_t grains = (count + grain - 1) / grain;
    const std::size_t workers = std::min<std::size_t>(std::max(threads, 1u), grains);
    if (workers <= 1) {
        body(0, count);
        return;
    }
    const std::size_t per = (grains + workers - 1) / workers;
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) {
        const std::size_t lo = std::min(count, w * per * grain);
        const std::size_t hi = std::min(count, (w + 1) * per * grain);
        if (lo < hi) {
            pool.emplace_back([&body, lo, hi] { body(lo, hi); });
        }
    }
    body(0, std::min(count, per * grain));
}

C pairwise_sum(std::span<const C> values) {
    return tree_sum(0, values.size(), [&](std::size_t i) { return values[i]; });
}

C pairwise_sum_gather(std::span<const C> values, std::span<const std::uint64_t> indices) {
    return tree_sum(0, indices.size(), [&](std::size_t i) { return values[indices[i]]; });
}

C deterministic_sum(std::span<const C> values, unsigned threads) {
    return blocked_sum(values.size(), threads, [&](std::size_t i) { return values[i]; });
}

C deterministic_sum_gather(std::span<const C> values, std::span<const std::uint64_t> indices,
                           unsigned threads) {
    return blocked_sum(indices.size(), threads, [&](std::size_t i) { return values[indices[i]]; });
}

} // namespace phasegrover
