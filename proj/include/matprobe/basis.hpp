#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "matprobe/dense.hpp"
#include "matprobe/grid.hpp"
#include "matprobe/symbol.hpp"

namespace matprobe {

enum class FamilyKind { fourier, cheb1d, chebdisk };

std::string_view to_string(FamilyKind kind);
FamilyKind parse_family_kind(std::string_view name);

/// Everything needed to rebuild a family on a grid. K1 is the angular label count
/// of the disk family and is ignored by the other kinds.
struct FamilyDescriptor {
    FamilyKind kind = FamilyKind::fourier;
    int J = 1;
    int K = 1;
    int K1 = 3;
    double order = 0.0;
    bool normalized = false;

    std::string describe() const;
};

/// One basis matrix with symbol e(x)·g(ξ); the order weight is already folded into g.
struct SeparableBasisElement {
    ComplexVector e;  // over X
    ComplexVector g;  // over Ξ
    std::array<int, 2> j_label{};
    std::array<int, 3> k_label{};
    double order = 0.0;
};

/// Ordered family {B_jk}. Elements share spatial factors e_j and frequency factors
/// g_k; element i corresponds to (j, k) = (i / K_count, i % K_count), i.e. j is the
/// outer index and both j and k are themselves lexicographic in their components.
class BasisFamily {
public:
    BasisFamily(Grid grid, FamilyDescriptor descriptor, std::vector<ComplexVector> spatial,
                std::vector<ComplexVector> spectral, std::vector<std::array<int, 2>> j_labels,
                std::vector<std::array<int, 3>> k_labels);

    /// Family from arbitrary factors, labelled by position. Descriptor kind is fourier
    /// with J, K set to the factor counts; only meant for tests and experiments.
    static BasisFamily custom(const Grid& grid, std::vector<ComplexVector> spatial, std::vector<ComplexVector> spectral);

    const Grid& grid() const { return grid_; }
    const FamilyDescriptor& descriptor() const { return descriptor_; }

    std::size_t size() const { return spatial_.size() * spectral_.size(); }
    std::size_t spatial_count() const { return spatial_.size(); }
    std::size_t spectral_count() const { return spectral_.size(); }

    const ComplexVector& spatial(std::size_t j) const { return spatial_[j]; }
    const ComplexVector& spectral(std::size_t k) const { return spectral_[k]; }
    const std::array<int, 2>& j_label(std::size_t j) const { return j_labels_[j]; }
    const std::array<int, 3>& k_label(std::size_t k) const { return k_labels_[k]; }

    std::size_t index(std::size_t j, std::size_t k) const { return j * spectral_.size() + k; }
    std::size_t j_of(std::size_t i) const { return i / spectral_.size(); }
    std::size_t k_of(std::size_t i) const { return i % spectral_.size(); }

    SeparableBasisElement element(std::size_t i) const;

    /// True when every e_j has constant modulus.
    bool unimodular_spatial() const;

private:
    Grid grid_;
    FamilyDescriptor descriptor_;
    std::vector<ComplexVector> spatial_;
    std::vector<ComplexVector> spectral_;
    std::vector<std::array<int, 2>> j_labels_;
    std::vector<std::array<int, 3>> k_labels_;
};

/// ‖ξ‖^m, with the value at ξ = 0 taken as 1 for m = 0 and 0 otherwise.
double order_weight(const Grid& grid, std::size_t xi_index, double order);

BasisFamily make_fourier_family(const Grid& grid, int J, int K, double order = 0.0);
/// g_k(ξ) = T_k(ξ/ξ₀) for degrees k = 0..K−1.
BasisFamily make_cheb1d_family(const Grid& grid, int J, int K, double order = 0.0);
/// g(ξ) = e^{ik₁ arg ξ} T_{k₂}(√2‖ξ‖/ξ₀ − 1), k₁ over K1 centered labels and k₂ = 0..K−1.
BasisFamily make_chebdisk_family(const Grid& grid, int J, int K, int K1, double order = 0.0, bool normalized = false);
BasisFamily make_family(const Grid& grid, const FamilyDescriptor& d);

/// T_0..T_{count−1} at t by the three-term recurrence.
std::vector<double> chebyshev_values(double t, int count);

/// Applies one element: FFT, multiply by g, inverse FFT, multiply by e.
ComplexVector basis_apply(const Grid& grid, const SeparableBasisElement& b, std::span<const Complex> u);
ComplexVector basis_apply(const BasisFamily& family, std::size_t i, std::span<const Complex> u);

/// B_i u for every element, sharing one forward FFT and one inverse FFT per g_k.
std::vector<ComplexVector> apply_all(const BasisFamily& family, std::span<const Complex> u);

/// Σ_i c_i B_i u with one inverse FFT per g_k.
ComplexVector apply_combination(const BasisFamily& family, std::span<const Complex> c, std::span<const Complex> u);

/// Symbol Σ_i c_i e_j(x) g_k(ξ).
DiscreteSymbol combination_symbol(const BasisFamily& family, std::span<const Complex> c);

/// Dense n×n matrix of element i.
ComplexMatrix element_matrix(const BasisFamily& family, std::size_t i);

struct GramDiagnostics {
    ComplexMatrix gram;                 // N, p×p
    double kappa = 0.0;                 // λ_max(N)/λ_min(N)
    double lambda = 0.0;                // max_i λ(B_i)
    std::vector<double> element_lambda;
    std::size_t effective_rank = 0;     // n, or rank(A) for a transformed family
    double effective_lambda = 0.0;      // (ñ/n)^{1/2} λ
};

/// N_{(j,k),(j',k')} = ⟨e_j, e_j'⟩⟨g_k, g_k'⟩ with ⟨e, e'⟩ = (1/n)Σ_x ē e' and
/// ⟨g, g'⟩ = Σ_ξ ḡ g'. λ(B) = ‖B‖ n^{1/2}/‖B‖_F, exact via max|e|·max|g| when |e|
/// is constant and by dense SVD otherwise.
GramDiagnostics gram_matrix(const BasisFamily& family);

/// Diagnostics computed directly from dense matrices (all square, same size).
GramDiagnostics dense_gram_diagnostics(std::span<const ComplexMatrix> elements);

/// Diagnostics of {B_1 A, …, B_p A} from dense assemblies. ñ is the numerical rank of A
/// (singular values above 1e−10·σ_max).
GramDiagnostics transformed_family(const BasisFamily& family, const ComplexMatrix& a);

/// κ of a Hermitian PSD matrix from its eigenvalues; infinity when singular.
double gram_condition(const ComplexMatrix& gram);

}  // namespace matprobe
