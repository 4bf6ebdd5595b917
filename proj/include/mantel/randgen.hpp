#pragma once

#include <cstdint>
#include <string_view>

#include "mantel/hypergraph.hpp"

namespace mantel {

/// Per-trial seed. derived = mix64(master + (index + 1) * 0x9E3779B97F4A7C15),
/// where mix64 is the SplitMix64 finaliser
///   z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
///   z ^= z >> 27; z *= 0x94D049BB133111EB;
///   z ^= z >> 31.
/// Both steps are bijections on 64-bit words, so distinct indices under one
/// master never collide.
struct TrialSeed {
    std::uint64_t master = 0;
    std::uint64_t index = 0;
    std::uint64_t derived = 0;

    friend bool operator==(const TrialSeed&, const TrialSeed&) = default;
};

std::uint64_t mix64(std::uint64_t z);
TrialSeed derive_seed(std::uint64_t master, std::uint64_t index);
/// A seed used as-is (derived == master); for one-off sampling.
TrialSeed direct_seed(std::uint64_t seed);

/// Small deterministic PRNG: SplitMix64 stream. Output is fixed by this code,
/// independent of the standard library, so sampled hypergraphs are
/// reproducible across platforms.
class SplitMix64 {
public:
    using result_type = std::uint64_t;
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix64(state_);
    }
    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
    /// Uniform integer in [0, bound) by rejection (bound > 0).
    std::uint64_t below(std::uint64_t bound);

private:
    std::uint64_t state_;
};

enum class Sampler {
    /// Geometric skips over the colex order of C([n], k); the normative generator.
    Skip,
    /// One Bernoulli(p) draw per k-subset in colex order. A distinct generator:
    /// it consumes the stream differently and produces different samples.
    Bernoulli,
};

std::string_view sampler_name(Sampler s);

/// G^k(n, p). Throws InputError for p outside [0, 1] or n < k.
Hypergraph sample_gknp(std::size_t n, int k, double p, const TrialSeed& seed, Sampler sampler = Sampler::Skip);

}  // namespace mantel
