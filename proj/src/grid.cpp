#include "matprobe/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "matprobe/errors.hpp"
#include "matprobe/fft.hpp"

namespace matprobe {

Grid::Grid(int dim, int band) : dim_(dim), band_(band), side_(2 * band + 1), size_(0) {
    if (dim != 1 && dim != 2) throw ValidationError("grid dimension must be 1 or 2");
    if (band < 1) throw ValidationError("grid band limit must be a positive integer");
    size_ = dim == 1 ? static_cast<std::size_t>(side_) : static_cast<std::size_t>(side_) * side_;
    auto roots = std::make_shared<std::vector<Complex>>(side_);
    for (int k = 0; k < side_; ++k) {
        const double angle = 2.0 * std::numbers::pi * k / side_;
        (*roots)[k] = {std::cos(angle), std::sin(angle)};
    }
    roots_ = std::move(roots);
}

Grid Grid::from_side(int dim, int side) {
    if (side < 3 || side % 2 == 0) throw ValidationError("grid side must be an odd integer >= 3, got " + std::to_string(side));
    return Grid(dim, (side - 1) / 2);
}

std::vector<std::size_t> Grid::shape() const {
    if (dim_ == 1) return {static_cast<std::size_t>(side_)};
    return {static_cast<std::size_t>(side_), static_cast<std::size_t>(side_)};
}

Frequency Grid::frequency(std::size_t index) const {
    if (dim_ == 1) return {static_cast<int>(index) - band_, 0};
    return {static_cast<int>(index / side_) - band_, static_cast<int>(index % side_) - band_};
}

int Grid::wrap(int component) const {
    int r = (component + band_) % side_;
    if (r < 0) r += side_;
    return r - band_;
}

std::size_t Grid::frequency_index(Frequency f) const {
    const std::size_t a = static_cast<std::size_t>(wrap(f[0]) + band_);
    if (dim_ == 1) return a;
    const std::size_t b = static_cast<std::size_t>(wrap(f[1]) + band_);
    return a * side_ + b;
}

std::array<int, 2> Grid::lattice(std::size_t index) const {
    if (dim_ == 1) return {static_cast<int>(index), 0};
    return {static_cast<int>(index / side_), static_cast<int>(index % side_)};
}

Point Grid::point(std::size_t index) const {
    const auto l = lattice(index);
    return {static_cast<double>(l[0]) / side_, dim_ == 1 ? 0.0 : static_cast<double>(l[1]) / side_};
}

Complex Grid::root(long long k) const {
    long long r = k % side_;
    if (r < 0) r += side_;
    return (*roots_)[static_cast<std::size_t>(r)];
}

Complex Grid::plane_wave(std::size_t x_index, std::size_t xi_index) const {
    const auto l = lattice(x_index);
    const auto f = frequency(xi_index);
    return root(static_cast<long long>(f[0]) * l[0] + static_cast<long long>(f[1]) * l[1]);
}

double Grid::frequency_norm(std::size_t xi_index) const {
    const auto f = frequency(xi_index);
    return std::sqrt(static_cast<double>(f[0]) * f[0] + static_cast<double>(f[1]) * f[1]);
}

ComplexVector forward_dft(const Grid& grid, std::span<const Complex> u) {
    if (u.size() != grid.size()) throw DimensionError("forward_dft: vector length does not match grid");
    const auto shape = grid.shape();
    return dft(u, shape, Direction::forward);
}

ComplexVector inverse_dft(const Grid& grid, std::span<const Complex> u_hat) {
    if (u_hat.size() != grid.size()) throw DimensionError("inverse_dft: vector length does not match grid");
    const auto shape = grid.shape();
    return dft(u_hat, shape, Direction::inverse);
}

ComplexVector spectral_derivative(const Grid& grid, std::span<const Complex> f, int axis) {
    if (axis < 0 || axis >= grid.dim()) throw ValidationError("spectral_derivative: axis out of range");
    ComplexVector hat = forward_dft(grid, f);
    for (std::size_t k = 0; k < hat.size(); ++k)
        hat[k] *= Complex{0.0, 2.0 * std::numbers::pi * grid.frequency(k)[axis]};
    return inverse_dft(grid, hat);
}

}  // namespace matprobe
