#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "matprobe/dense.hpp"

namespace matprobe {

enum class ProbeDistribution { gaussian, rademacher };

std::string_view to_string(ProbeDistribution kind);
ProbeDistribution parse_distribution(std::string_view name);

/// Reproducible stream of 64-bit words: mt19937_64 seeded through splitmix64 from
/// (seed, stream index). Independent sub-streams are addressed by index, so trial
/// i of a Monte Carlo run always draws from derive(seed, i) no matter which
/// thread executes it.
class RandomStream {
public:
    static constexpr std::string_view kAlgorithm = "mt19937_64/splitmix64";

    explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0);

    static RandomStream derive(std::uint64_t seed, std::uint64_t index) { return RandomStream(seed, index); }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }
    /// Number of 64-bit words consumed so far.
    std::uint64_t counter() const { return counter_; }

    std::uint64_t next_u64();
    /// Uniform in (0, 1].
    double next_open_uniform();
    /// Advances the stream by `words` draws.
    void discard(std::uint64_t words);

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
    std::mt19937_64 engine_;
};

/// n iid real-valued draws: standard normal via Box–Muller, or ±1 with equal
/// probability (one word per entry, top bit).
ComplexVector draw_sequence(RandomStream& s, std::size_t n, ProbeDistribution kind);

/// Complex standard normal entries (real and imaginary parts independent N(0,1)).
ComplexVector draw_complex_gaussian(RandomStream& s, std::size_t n);

}  // namespace matprobe
