#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace agentmetrics {

/// SplitMix64 (Steele, Lea, Flood). Used to expand seeds and to mix keys.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}
    std::uint64_t next();

private:
    std::uint64_t state_;
};

/// FNV-1a 64-bit hash, used to key substreams by label.
std::uint64_t fnv1a64(std::string_view text, std::uint64_t basis = 0xcbf29ce484222325ULL);

/// xoshiro256** (Blackman, Vigna) with portable samplers built only on
/// next(): results depend on this file alone, not on the standard
/// library's distribution implementations.
class Rng {
public:
    /// State filled by four SplitMix64 outputs of `seed`.
    explicit Rng(std::uint64_t seed);

    std::uint64_t next();

    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    /// Uniform in [lo, hi], unbiased (rejection).
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
    bool bernoulli(double p);
    /// Standard normal via the Marsaglia polar method (no cached spare).
    double normal();
    double normal(double mean, double sd) { return mean + sd * normal(); }
    /// Lognormal with mean 1 and the given coefficient of variation.
    double lognormal_unit_mean(double cv);
    double exponential(double mean);
    /// Marsaglia-Tsang; shape > 0.
    double gamma(double shape);
    double beta(double a, double b);
    /// Sum of n Bernoulli draws; intended for the small n of task steps.
    std::int64_t binomial(std::int64_t n, double p);
    /// Index drawn with probability proportional to weights.
    std::size_t categorical(std::span<const double> weights);

    template <class It>
    void shuffle(It first, It last) {
        const auto n = static_cast<std::int64_t>(last - first);
        for (std::int64_t i = n - 1; i > 0; --i) {
            const std::int64_t j = uniform_int(0, i);
            using std::swap;
            swap(first[i], first[j]);
        }
    }

private:
    std::array<std::uint64_t, 4> s_{};
};

/// Independent child stream keyed by (seed, agent, domain, purpose):
/// the key hash is FNV-1a over "agent\x1fdomain\x1fpurpose", mixed with the
/// seed through SplitMix64. The stream does not depend on which other cells
/// are generated or in what order.
Rng substream(std::uint64_t seed, std::string_view agent, std::string_view domain,
              std::string_view purpose = "tasks");

}  // namespace agentmetrics
