#include "mantel/randgen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <string>

#include "mantel/combinatorics.hpp"

namespace mantel {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

TrialSeed derive_seed(std::uint64_t master, std::uint64_t index) {
    return {master, index, mix64(master + (index + 1) * 0x9E3779B97F4A7C15ull)};
}

TrialSeed direct_seed(std::uint64_t seed) { return {seed, 0, seed}; }

std::uint64_t SplitMix64::below(std::uint64_t bound) {
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t x;
    do {
        x = (*this)();
    } while (x >= limit);
    return x % bound;
}

std::string_view sampler_name(Sampler s) { return s == Sampler::Skip ? "skip" : "bernoulli"; }

Hypergraph sample_gknp(std::size_t n, int k, double p, const TrialSeed& seed, Sampler sampler) {
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("edge probability must lie in [0, 1]");
    if (k < 2 || n < static_cast<std::size_t>(k)) throw InputError("need n >= k >= 2");
    const std::uint64_t total = binomial(n, static_cast<std::uint64_t>(k));
    if (p == 1.0) return Hypergraph::complete(n, k);

    SplitMix64 rng(seed.derived);
    std::vector<std::uint64_t> keys;
    keys.reserve(static_cast<std::size_t>(static_cast<double>(total) * p * 1.1) + 16);
    if (p == 0.0) return Hypergraph::from_keys(n, k, std::move(keys));

    if (sampler == Sampler::Bernoulli) {
        std::array<Vertex, kMaxUniformity> sub{};
        for (int i = 0; i < k; ++i) sub[i] = static_cast<Vertex>(i);
        const std::span<Vertex> s(sub.data(), static_cast<std::size_t>(k));
        do {
            if (rng.uniform() < p) keys.push_back(Edge::of(s).key());
        } while (colex_next(s, n));
    } else {
        // Gap to the next included subset is Geometric(p) on {0, 1, ...}:
        // floor(ln U / ln(1 - p)) with U uniform in (0, 1].
        const double log_q = std::log1p(-p);
        std::uint64_t rank = 0;
        bool first = true;
        std::array<Vertex, kMaxUniformity> sub{};
        const std::span<Vertex> s(sub.data(), static_cast<std::size_t>(k));
        while (true) {
            const double u = 1.0 - rng.uniform();
            const double gap = std::floor(std::log(u) / log_q);
            const double next = static_cast<double>(rank) + (first ? 0.0 : 1.0) + gap;
            if (next >= static_cast<double>(total)) break;
            const auto target = static_cast<std::uint64_t>(next);
            // short skips walk the successor, long ones unrank
            if (!first && target - rank <= 16) {
                for (; rank < target; ++rank) colex_next(s, n);
            } else {
                const Edge e = colex_unrank(target, k);
                std::copy(e.begin(), e.end(), sub.begin());
                rank = target;
            }
            first = false;
            keys.push_back(Edge::of(std::span<const Vertex>(sub.data(), s.size())).key());
        }
    }
    return Hypergraph::from_keys(n, k, std::move(keys));
}

}  // namespace mantel
