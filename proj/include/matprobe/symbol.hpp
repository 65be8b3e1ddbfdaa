#pragma once

#include <functional>
#include <span>
#include <vector>

#include "matprobe/dense.hpp"
#include "matprobe/grid.hpp"

namespace matprobe {

/// Discrete symbol a(x, ξ) sampled densely over X × Ξ. An operator with this
/// symbol acts as Au(x) = Σ_ξ e^{2πiξ·x} a(x, ξ) û(ξ).
///
/// Storage is x-major: value(x, ξ) lives at x·n + ξ.
class DiscreteSymbol {
public:
    explicit DiscreteSymbol(Grid grid);
    DiscreteSymbol(Grid grid, std::vector<Complex> values);

    template <typename F>
    static DiscreteSymbol from_function(const Grid& grid, F&& f) {
        DiscreteSymbol s(grid);
        const std::size_t n = grid.size();
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t xi = 0; xi < n; ++xi) s.values_[x * n + xi] = f(x, xi);
        return s;
    }

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return grid_.size(); }

    Complex& operator()(std::size_t x, std::size_t xi) { return values_[x * grid_.size() + xi]; }
    const Complex& operator()(std::size_t x, std::size_t xi) const { return values_[x * grid_.size() + xi]; }

    std::span<const Complex> row(std::size_t x) const { return {values_.data() + x * grid_.size(), grid_.size()}; }
    std::span<const Complex> values() const { return values_; }

private:
    Grid grid_;
    std::vector<Complex> values_;
};

/// Fills row(x) = a(x, ·) over Ξ for the requested x.
using SymbolRowFn = std::function<void(std::size_t x_index, std::span<Complex> row)>;

/// Applies a symbol given row by row, O(n²). Lets callers evaluate symbols on the
/// fly instead of storing n² values.
ComplexVector apply_symbol_rows(const Grid& grid, std::span<const Complex> u, const SymbolRowFn& rows);

ComplexVector symbol_apply(const DiscreteSymbol& a, std::span<const Complex> u);

/// Compact form â(j, ξ) = (1/n) Σ_x a(x, ξ) e^{-2πij·x}, stored j-major (j·n + ξ).
std::vector<Complex> symbol_coefficients(const DiscreteSymbol& a);
/// Inverse of symbol_coefficients.
DiscreteSymbol symbol_from_coefficients(const Grid& grid, std::span<const Complex> a_hat);

/// Matrix in the Fourier basis: A_{ηξ} = â(η − ξ, ξ), differences wrapped onto the
/// discrete torus.
ComplexMatrix symbol_to_matrix(const DiscreteSymbol& a);
/// a(x, ξ) = e^{-2πiξ·x} Σ_η e^{2πiη·x} A_{ηξ}
DiscreteSymbol matrix_to_symbol(const ComplexMatrix& a, const Grid& grid);

/// tr(A) = Σ_ξ â(0, ξ)
Complex symbol_trace(const DiscreteSymbol& a);
/// Symbol of A*: ĉ(j, ξ) = conj(â(−j, j + ξ)).
DiscreteSymbol symbol_adjoint(const DiscreteSymbol& a);
/// Symbol of AB: ĉ(j, ξ) = Σ_ζ â(j + ξ − ζ, ζ) b̂(ζ − ξ, ξ).
DiscreteSymbol symbol_compose(const DiscreteSymbol& a, const DiscreteSymbol& b);

/// a(x, ξ) = e^{-2πiξ·x} (A e_ξ)(x) for an operator given by its action, where
/// e_ξ(x) = e^{2πiξ·x}. Exact for any linear map on the grid.
DiscreteSymbol symbol_of_action(const Grid& grid,
                                const std::function<ComplexVector(std::span<const Complex>)>& apply);

}  // namespace matprobe
