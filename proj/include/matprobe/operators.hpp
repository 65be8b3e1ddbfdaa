#pragma once

#include <array>
#include <string>
#include <vector>

#include "matprobe/grid.hpp"
#include "matprobe/linear_operator.hpp"
#include "matprobe/symbol.hpp"

namespace matprobe {

/// Coefficient α(x) of −∇·(α∇u).
struct EllipticMedia {
    enum class Kind { smooth1d, layered2d, constant };

    Kind kind = Kind::smooth1d;
    double contrast = 10.0;  // T
    int roughness = 1;       // γ
    double value = 1.0;      // constant media only
    int dim = 1;

    /// α(x) = 1 + 0.4cos(4πx) + 0.2cos(6πx)
    static EllipticMedia smooth1d();
    /// α(x) = 1/T + cos²(πγx₁)sin²(πγx₂)
    static EllipticMedia layered2d(double contrast, int roughness);
    static EllipticMedia constant(int dim, double value);

    double at(const Point& x) const;
    std::vector<double> sample(const Grid& grid) const;
    std::string describe() const;
};

/// How the divergence-form operator is discretized on the periodic grid.
///
/// pseudospectral: −Σ_k D_k(α D_k u) with D_k the spectral derivative. Hermitian
///   PSD, but the product α·D_k u aliases at the band edge.
/// symbol: α·(−Δu) − Σ_k (D_kα)(D_k u), i.e. the operator whose discrete symbol is
///   exactly α(x)4π²‖ξ‖² − Σ_k 2πiξ_k ∂_kα(x). No aliasing, not exactly Hermitian.
enum class EllipticDiscretization { pseudospectral, symbol };

std::string_view to_string(EllipticDiscretization d);
EllipticDiscretization parse_discretization(std::string_view name);

/// Periodic elliptic operator with declared nullity 1 (constants).
LinearOperator elliptic_operator(const EllipticMedia& media, const Grid& grid,
                                 EllipticDiscretization disc = EllipticDiscretization::pseudospectral);

/// Exact discrete symbol of elliptic_operator for the same discretization.
DiscreteSymbol elliptic_symbol(const EllipticMedia& media, const Grid& grid,
                               EllipticDiscretization disc = EllipticDiscretization::pseudospectral);

/// Space-varying Gaussian blur with width w(x) = (a‖x − x₀‖² + b)^{1/2}, applied
/// through the symbol exp(−2π² w(x)² ‖ξ‖²).
struct FoveationSpec {
    Point fixation{0.5, 0.5};
    double a = 0.0;
    double b = 0.0;

    /// Widths at the fixation point and at the corner (1, 1).
    static FoveationSpec from_widths(double width_at_fixation, double width_at_corner, Point fixation = {0.5, 0.5});

    double width(const Point& x) const;
};

LinearOperator foveation_operator(const FoveationSpec& spec, const Grid& grid);
DiscreteSymbol foveation_symbol(const FoveationSpec& spec, const Grid& grid);

/// σ_max over the (nullity+1)-th smallest singular value of the dense assembly.
double condition_number(const LinearOperator& a, std::size_t nullity);
double condition_number(const ComplexMatrix& a, std::size_t nullity);

/// u ↦ u − mean(u)
NullspaceFilter mean_filter(const Grid& grid);

}  // namespace matprobe
