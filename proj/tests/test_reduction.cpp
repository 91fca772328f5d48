#include "phasegrover/reduction.hpp"

#include <doctest.h>

#include <atomic>
#include <cstring>
#include <random>

using namespace phasegrover;
using C = std::complex<double>;

namespace {

std::vector<C> random_values(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<C> v(n);
    for (auto& z : v) {
        z = {static_cast<double>(rng() >> 11) * 0x1p-53 - 0.5, static_cast<double>(rng() >> 11) * 0x1p-53 - 0.5};
    }
    return v;
}

bool same_bits(C a, C b) { return std::memcmp(&a, &b, sizeof(C)) == 0; }

} // namespace

TEST_CASE("pairwise sums are accurate") {
    for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 1000u, 1024u, 1025u, 100000u}) {
        const auto v = random_values(n, n);
        long double re = 0, im = 0;
        for (auto z : v) {
            re += z.real();
            im += z.imag();
        }
        const C s = deterministic_sum(v, 1);
        CHECK(std::abs(s.real() - double(re)) < 1e-12);
        CHECK(std::abs(s.imag() - double(im)) < 1e-12);
    }
}

TEST_CASE("small inputs use the single-block tree") {
    const auto v = random_values(1000, 3);
    CHECK(same_bits(pairwise_sum(v), deterministic_sum(v, 4)));
}

TEST_CASE("blocked sum is bit-identical for any thread count") {
    const auto v = random_values((1u << 17) + 77, 9);
    const C ref = deterministic_sum(v, 1);
    for (unsigned threads : {2u, 3u, 8u, 16u}) {
        CHECK(same_bits(ref, deterministic_sum(v, threads)));
    }
}

TEST_CASE("gather sum matches the contiguous sum of the gathered values") {
    const auto v = random_values(50000, 4);
    std::vector<std::uint64_t> idx;
    std::vector<C> gathered;
    for (std::uint64_t i = 0; i < v.size(); i += 3) {
        idx.push_back(i);
        gathered.push_back(v[i]);
    }
    CHECK(same_bits(deterministic_sum_gather(v, idx, 1), deterministic_sum(gathered, 1)));
    CHECK(same_bits(deterministic_sum_gather(v, idx, 1), deterministic_sum_gather(v, idx, 6)));
    CHECK(same_bits(pairwise_sum_gather(v, std::span(idx).first(500)), pairwise_sum(std::span(gathered).first(500))));
}

TEST_CASE("parallel_for covers the range exactly once") {
    for (unsigned threads : {1u, 2u, 7u}) {
        std::vector<std::atomic<int>> hits(10007);
        parallel_for(hits.size(), threads, 64, [&](std::size_t lo, std::size_t hi) {
            CHECK(lo % 64 == 0);
            for (std::size_t i = lo; i < hi; ++i) hits[i]++;
        });
        bool ok = true;
        for (auto& h : hits) ok = ok && h.load() == 1;
        CHECK(ok);
    }
    int calls = 0;
    parallel_for(0, 4, 1, [&](std::size_t, std::size_t) { ++calls; });
    CHECK(calls == 0);
}
