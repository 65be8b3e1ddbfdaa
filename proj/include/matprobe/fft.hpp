#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "matprobe/dense.hpp"

namespace matprobe {

enum class Direction { forward, inverse };

/// Unnormalized 1D transform of one fixed length. Power-of-two lengths use an
/// iterative radix-2 kernel; every other length goes through Bluestein's chirp-z
/// reduction onto a power-of-two core.
///
/// forward:  X[k] = Σ_i x[i] e^{-2πi ik/N}
/// inverse:  x[i] = Σ_k X[k] e^{+2πi ik/N}     (no 1/N)
class FftPlan {
public:
    explicit FftPlan(std::size_t length);
    ~FftPlan();
    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;

    std::size_t length() const { return length_; }
    void transform(std::span<Complex> data, Direction dir) const;

    /// Shared per-thread plan cache.
    static const FftPlan& cached(std::size_t length);

private:
    struct Radix2;
    void bluestein(std::span<Complex> data, Direction dir) const;

    std::size_t length_;
    std::unique_ptr<Radix2> core_;       // length_ when a power of two, else the padded length
    std::vector<Complex> chirp_;          // e^{-iπ k²/N}
    std::vector<Complex> kernel_hat_;     // transformed conj(chirp), padded
};

/// Multi-axis DFT over a row-major array with per-axis lengths `shape`, using the
/// centered frequency ordering: along an axis of length L, output slot f holds
/// frequency f − ⌊L/2⌋.
///
/// forward:  û(ξ) = (1/n) Σ_x u(x) e^{-2πi ξ·x}
/// inverse:  u(x) = Σ_ξ û(ξ) e^{+2πi ξ·x}
ComplexVector dft(std::span<const Complex> v, std::span<const std::size_t> shape, Direction dir);

/// In-place variant of dft() with the same conventions.
void dft_inplace(std::span<Complex> v, std::span<const std::size_t> shape, Direction dir);

}  // namespace matprobe
