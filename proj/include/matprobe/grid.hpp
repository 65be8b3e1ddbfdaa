#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "matprobe/dense.hpp"

namespace matprobe {

using Frequency = std::array<int, 2>;
using Point = std::array<double, 2>;

/// Periodic lattice on [0,1)^d with n₁ = 2ξ₀+1 points per axis and the centered
/// frequency window Ξ = {−ξ₀,…,ξ₀}^d.
///
/// Spatial index i ↔ x = (i₁/n₁, i₂/n₁) with i = i₁·n₁ + i₂ (row-major, axis 0
/// first). Frequency index f ↔ ξ = (f₁ − ξ₀, f₂ − ξ₀) with the same layout. In 1D
/// the second component is unused and reported as 0.
class Grid {
public:
    Grid(int dim, int band);

    /// Grid with the given odd per-axis point count.
    static Grid from_side(int dim, int side);

    int dim() const { return dim_; }
    int band() const { return band_; }
    int side() const { return side_; }
    std::size_t size() const { return size_; }
    std::vector<std::size_t> shape() const;

    Frequency frequency(std::size_t index) const;
    /// Index of a frequency after wrapping each component into the window.
    std::size_t frequency_index(Frequency f) const;
    /// Wraps a frequency component into [−ξ₀, ξ₀].
    int wrap(int component) const;

    std::array<int, 2> lattice(std::size_t index) const;
    Point point(std::size_t index) const;

    /// e^{2πi ξ·x}, evaluated exactly through integer phase arithmetic.
    Complex plane_wave(std::size_t x_index, std::size_t xi_index) const;
    /// e^{2πi k/n₁}
    Complex root(long long k) const;

    double frequency_norm(std::size_t xi_index) const;

    bool operator==(const Grid& other) const { return dim_ == other.dim_ && band_ == other.band_; }

private:
    int dim_;
    int band_;
    int side_;
    std::size_t size_;
    std::shared_ptr<const std::vector<Complex>> roots_;
};

/// û = (1/n) Σ_x u(x) e^{-2πiξ·x} over the grid's frequency window.
ComplexVector forward_dft(const Grid& grid, std::span<const Complex> u);
/// u(x) = Σ_ξ û(ξ) e^{2πiξ·x}
ComplexVector inverse_dft(const Grid& grid, std::span<const Complex> u_hat);

/// Spectral derivative ∂/∂x_axis via multiplication by 2πiξ_axis.
ComplexVector spectral_derivative(const Grid& grid, std::span<const Complex> f, int axis);

}  // namespace matprobe
