#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "matprobe/dense.hpp"

namespace matprobe {

struct LeastSquaresResult {
    ComplexVector solution;
    std::size_t rank = 0;
    bool rank_deficient = false;
    /// ‖Lc − b‖₂
    double residual_norm = 0.0;
};

/// Relative pivot tolerance below which a column counts as dependent.
inline constexpr double kRankTolerance = 1e-12;

/// Minimizes ‖Lc − b‖₂ for rows(L) ≥ cols(L) by Householder QR with column
/// pivoting. Rank-deficient systems get the minimal-norm minimizer through a
/// complete orthogonal decomposition and are flagged.
LeastSquaresResult least_squares(const ComplexMatrix& L, std::span<const Complex> b);

/// Singular values in descending order (one-sided Jacobi).
std::vector<double> singular_values(const ComplexMatrix& a);

/// Eigenvalues of a Hermitian matrix in ascending order (cyclic Jacobi). The input
/// is symmetrized first; a deviation from Hermitian symmetry larger than
/// 1e-12·‖M‖_F is rejected.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// Spectral norm of a Hermitian matrix, max |λ|.
double hermitian_norm(const ComplexMatrix& m);

/// Spectral norm via singular values.
double spectral_norm(const ComplexMatrix& a);

/// σ_max / σ_min; infinity when σ_min is zero.
double condition_from_singular_values(std::span<const double> descending, std::size_t skip_smallest = 0);

/// M = L*L for a column-major block of `cols` columns of length `rows`.
ComplexMatrix gram_of_columns(std::span<const Complex> column_major, std::size_t rows, std::size_t cols);

}  // namespace matprobe
