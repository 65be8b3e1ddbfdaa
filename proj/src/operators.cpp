#include "matprobe/operators.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "matprobe/errors.hpp"
#include "matprobe/linalg.hpp"

namespace matprobe {
namespace {

constexpr double kPi = std::numbers::pi;

void require_dim(const EllipticMedia& media, const Grid& grid) {
    if (media.dim != grid.dim())
        throw DimensionError("media dimension " + std::to_string(media.dim) + " does not match grid dimension " +
                             std::to_string(grid.dim()));
}

ComplexVector to_complex(const std::vector<double>& v) { return ComplexVector(v.begin(), v.end()); }

struct EllipticData {
    Grid grid;
    ComplexVector alpha;
    std::vector<ComplexVector> grad;  // spectral ∂_k α
};

}  // namespace

EllipticMedia EllipticMedia::smooth1d() { return EllipticMedia{Kind::smooth1d, 0.0, 0, 0.0, 1}; }

EllipticMedia EllipticMedia::layered2d(double contrast, int roughness) {
    if (!(contrast > 0.0)) throw ValidationError("contrast T must be positive");
    if (roughness < 1) throw ValidationError("roughness must be a positive integer");
    return EllipticMedia{Kind::layered2d, contrast, roughness, 0.0, 2};
}

EllipticMedia EllipticMedia::constant(int dim, double value) {
    if (!(value > 0.0)) throw ValidationError("media value must be positive");
    if (dim != 1 && dim != 2) throw ValidationError("media dimension must be 1 or 2");
    return EllipticMedia{Kind::constant, 0.0, 0, value, dim};
}

double EllipticMedia::at(const Point& x) const {
    switch (kind) {
        case Kind::smooth1d: return 1.0 + 0.4 * std::cos(4 * kPi * x[0]) + 0.2 * std::cos(6 * kPi * x[0]);
        case Kind::layered2d: {
            const double c = std::cos(kPi * roughness * x[0]);
            const double s = std::sin(kPi * roughness * x[1]);
            return 1.0 / contrast + c * c * s * s;
        }
        case Kind::constant: return value;
    }
    return 0.0;
}

std::vector<double> EllipticMedia::sample(const Grid& grid) const {
    require_dim(*this, grid);
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out[i] = at(grid.point(i));
        if (!(out[i] > 0.0)) throw ValidationError("media coefficient is not positive on the grid");
    }
    return out;
}

std::string EllipticMedia::describe() const {
    std::ostringstream s;
    switch (kind) {
        case Kind::smooth1d: s << "media=smooth1d"; break;
        case Kind::layered2d: s << "media=layered2d T=" << contrast << " gamma=" << roughness; break;
        case Kind::constant: s << "media=constant dim=" << dim << " value=" << value; break;
    }
    return s.str();
}

std::string_view to_string(EllipticDiscretization d) {
    return d == EllipticDiscretization::symbol ? "symbol" : "pseudospectral";
}

EllipticDiscretization parse_discretization(std::string_view name) {
    if (name == "pseudospectral") return EllipticDiscretization::pseudospectral;
    if (name == "symbol") return EllipticDiscretization::symbol;
    throw ValidationError("unknown discretization '" + std::string(name) + "'");
}

LinearOperator elliptic_operator(const EllipticMedia& media, const Grid& grid, EllipticDiscretization disc) {
    require_dim(media, grid);
    auto data = std::make_shared<EllipticData>(EllipticData{grid, to_complex(media.sample(grid)), {}});
    const std::string name = "elliptic(" + media.describe() + ")";

    if (disc == EllipticDiscretization::pseudospectral) {
        return LinearOperator(
            grid.size(),
            [data](std::span<const Complex> u) {
                const Grid& g = data->grid;
                ComplexVector out(g.size());
                for (int axis = 0; axis < g.dim(); ++axis) {
                    ComplexVector flux = spectral_derivative(g, u, axis);
                    for (std::size_t x = 0; x < flux.size(); ++x) flux[x] *= data->alpha[x];
                    const ComplexVector div = spectral_derivative(g, flux, axis);
                    for (std::size_t x = 0; x < out.size(); ++x) out[x] -= div[x];
                }
                return out;
            },
            1, name);
    }

    for (int axis = 0; axis < grid.dim(); ++axis) data->grad.push_back(spectral_derivative(grid, data->alpha, axis));
    return LinearOperator(
        grid.size(),
        [data](std::span<const Complex> u) {
            const Grid& g = data->grid;
            const std::size_t n = g.size();
            const ComplexVector u_hat = forward_dft(g, u);
            ComplexVector lap_hat(n);
            for (std::size_t k = 0; k < n; ++k) {
                const double r = g.frequency_norm(k);
                lap_hat[k] = u_hat[k] * (4.0 * kPi * kPi * r * r);
            }
            ComplexVector out = inverse_dft(g, lap_hat);
            for (std::size_t x = 0; x < n; ++x) out[x] *= data->alpha[x];
            ComplexVector d_hat(n);
            for (int axis = 0; axis < g.dim(); ++axis) {
                for (std::size_t k = 0; k < n; ++k) d_hat[k] = u_hat[k] * Complex{0.0, 2.0 * kPi * g.frequency(k)[axis]};
                const ComplexVector du = inverse_dft(g, d_hat);
                for (std::size_t x = 0; x < n; ++x) out[x] -= data->grad[axis][x] * du[x];
            }
            return out;
        },
        1, name);
}

DiscreteSymbol elliptic_symbol(const EllipticMedia& media, const Grid& grid, EllipticDiscretization disc) {
    require_dim(media, grid);
    if (disc == EllipticDiscretization::pseudospectral) {
        const LinearOperator a = elliptic_operator(media, grid, disc);
        return symbol_of_action(grid, [&](std::span<const Complex> u) { return a.apply(u); });
    }
    const ComplexVector alpha = to_complex(media.sample(grid));
    std::vector<ComplexVector> grad;
    for (int axis = 0; axis < grid.dim(); ++axis) grad.push_back(spectral_derivative(grid, alpha, axis));
    return DiscreteSymbol::from_function(grid, [&](std::size_t x, std::size_t xi) {
        const auto f = grid.frequency(xi);
        const double r = grid.frequency_norm(xi);
        Complex v = alpha[x] * (4.0 * kPi * kPi * r * r);
        for (int axis = 0; axis < grid.dim(); ++axis) v -= Complex{0.0, 2.0 * kPi * f[axis]} * grad[axis][x];
        return v;
    });
}

FoveationSpec FoveationSpec::from_widths(double width_at_fixation, double width_at_corner, Point fixation) {
    if (!(width_at_fixation > 0.0) || !(width_at_corner > 0.0)) throw ValidationError("foveation widths must be positive");
    const double dx = 1.0 - fixation[0];
    const double dy = 1.0 - fixation[1];
    const double d2 = dx * dx + dy * dy;
    if (!(d2 > 0.0)) throw ValidationError("fixation point must differ from the corner");
    FoveationSpec s;
    s.fixation = fixation;
    s.a = (width_at_corner * width_at_corner - width_at_fixation * width_at_fixation) / d2;
    s.b = width_at_fixation * width_at_fixation;
    if (s.a < 0.0) throw ValidationError("foveation width must not shrink away from the fixation point");
    return s;
}

double FoveationSpec::width(const Point& x) const {
    const double dx = x[0] - fixation[0];
    const double dy = x[1] - fixation[1];
    return std::sqrt(a * (dx * dx + dy * dy) + b);
}

namespace {

// Row filler exp(−2π² w(x)² ‖ξ‖²); depends on ξ only through the integer ‖ξ‖².
struct FoveationRows {
    FoveationRows(const FoveationSpec& spec, const Grid& grid) : spec(spec), grid(grid), norm2(grid.size()) {
        int max_s = 0;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const auto f = grid.frequency(k);
            norm2[k] = f[0] * f[0] + f[1] * f[1];
            max_s = std::max(max_s, norm2[k]);
        }
        table_size = static_cast<std::size_t>(max_s) + 1;
    }

    void operator()(std::size_t x, std::span<Complex> row) const {
        const double w = spec.width(grid.point(x));
        std::vector<double> table(table_size);
        for (std::size_t s = 0; s < table_size; ++s) table[s] = std::exp(-2.0 * kPi * kPi * w * w * static_cast<double>(s));
        for (std::size_t k = 0; k < row.size(); ++k) row[k] = table[norm2[k]];
    }

    FoveationSpec spec;
    Grid grid;
    std::vector<int> norm2;
    std::size_t table_size = 0;
};

}  // namespace

LinearOperator foveation_operator(const FoveationSpec& spec, const Grid& grid) {
    if (grid.dim() != 2) throw ValidationError("foveation requires a 2D grid");
    if (!(spec.b > 0.0) || spec.a < 0.0) throw ValidationError("foveation width parameters must satisfy a >= 0, b > 0");
    auto rows = std::make_shared<const FoveationRows>(spec, grid);
    return LinearOperator(
        grid.size(),
        [rows](std::span<const Complex> u) {
            return apply_symbol_rows(rows->grid, u, [&](std::size_t x, std::span<Complex> row) { (*rows)(x, row); });
        },
        0, "foveation");
}

DiscreteSymbol foveation_symbol(const FoveationSpec& spec, const Grid& grid) {
    if (grid.dim() != 2) throw ValidationError("foveation requires a 2D grid");
    const FoveationRows rows(spec, grid);
    DiscreteSymbol s(grid);
    std::vector<Complex> row(grid.size());
    for (std::size_t x = 0; x < grid.size(); ++x) {
        rows(x, row);
        for (std::size_t k = 0; k < grid.size(); ++k) s(x, k) = row[k];
    }
    return s;
}

double condition_number(const ComplexMatrix& a, std::size_t nullity) {
    if (a.rows() != a.cols()) throw DimensionError("condition_number: matrix must be square");
    if (nullity >= a.rows()) throw ValidationError("condition_number: nullity must be smaller than n");
    const auto sv = singular_values(a);
    return condition_from_singular_values(sv, nullity);
}

double condition_number(const LinearOperator& a, std::size_t nullity) { return condition_number(a.dense(), nullity); }

NullspaceFilter mean_filter(const Grid& grid) {
    const std::size_t n = grid.size();
    return NullspaceFilter(
        [n](std::span<const Complex> u) {
            if (u.size() != n) throw DimensionError("mean_filter: vector length does not match grid");
            Complex mean{};
            for (const auto& v : u) mean += v;
            mean /= static_cast<double>(n);
            ComplexVector out(u.begin(), u.end());
            for (auto& v : out) v -= mean;
            return out;
        },
        "mean");
}

}  // namespace matprobe
