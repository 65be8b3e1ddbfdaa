#include "matprobe/random.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "matprobe/errors.hpp"

namespace matprobe {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t state = seed;
    const std::uint64_t a = splitmix64(state);
    state ^= stream * 0xD1B54A32D192ED03ULL;
    const std::uint64_t b = splitmix64(state);
    return a ^ (b + 0x632BE59BD9B4E019ULL);
}

}  // namespace

std::string_view to_string(ProbeDistribution kind) {
    return kind == ProbeDistribution::gaussian ? "gaussian" : "rademacher";
}

ProbeDistribution parse_distribution(std::string_view name) {
    if (name == "gaussian") return ProbeDistribution::gaussian;
    if (name == "rademacher") return ProbeDistribution::rademacher;
    throw ValidationError("unknown probe distribution: " + std::string(name));
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(mix_seed(seed, stream)) {}

std::uint64_t RandomStream::next_u64() {
    ++counter_;
    return engine_();
}

double RandomStream::next_open_uniform() {
    // 53 random bits mapped onto (0, 1].
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

void RandomStream::discard(std::uint64_t words) {
    engine_.discard(words);
    counter_ += words;
}

ComplexVector draw_sequence(RandomStream& s, std::size_t n, ProbeDistribution kind) {
    if (n == 0) throw ValidationError("draw_sequence: n must be at least 1");
    ComplexVector out(n);
    if (kind == ProbeDistribution::rademacher) {
        for (auto& v : out) v = (s.next_u64() >> 63) ? 1.0 : -1.0;
        return out;
    }
    for (std::size_t i = 0; i < n; i += 2) {
        const double u1 = s.next_open_uniform();
        const double u2 = s.next_open_uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        out[i] = r * std::cos(angle);
        if (i + 1 < n) out[i + 1] = r * std::sin(angle);
    }
    return out;
}

ComplexVector draw_complex_gaussian(RandomStream& s, std::size_t n) {
    const ComplexVector re = draw_sequence(s, n, ProbeDistribution::gaussian);
    const ComplexVector im = draw_sequence(s, n, ProbeDistribution::gaussian);
    ComplexVector out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = {re[i].real(), im[i].real()};
    return out;
}

}  // namespace matprobe
