#include "matprobe/symbol.hpp"

#include "matprobe/errors.hpp"

namespace matprobe {
namespace {

struct FrequencyTable {
    explicit FrequencyTable(const Grid& g) : grid(g), freq(g.size()) {
        for (std::size_t i = 0; i < g.size(); ++i) freq[i] = g.frequency(i);
    }
    // Index of a + sign·b, wrapped.
    std::size_t combine(std::size_t a, std::size_t b, int sign) const {
        return grid.frequency_index({freq[a][0] + sign * freq[b][0], freq[a][1] + sign * freq[b][1]});
    }
    std::size_t negate(std::size_t a) const { return grid.frequency_index({-freq[a][0], -freq[a][1]}); }

    const Grid& grid;
    std::vector<Frequency> freq;
};

void require_same_grid(const Grid& a, const Grid& b) {
    if (!(a == b)) throw DimensionError("symbols live on different grids");
}

}  // namespace

DiscreteSymbol::DiscreteSymbol(Grid grid) : grid_(std::move(grid)), values_(grid_.size() * grid_.size()) {}

DiscreteSymbol::DiscreteSymbol(Grid grid, std::vector<Complex> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size() * grid_.size())
        throw DimensionError("symbol table does not match grid size");
    require_finite(values_, "symbol");
}

ComplexVector apply_symbol_rows(const Grid& grid, std::span<const Complex> u, const SymbolRowFn& rows) {
    const std::size_t n = grid.size();
    if (u.size() != n) throw DimensionError("symbol_apply: vector length does not match grid");
    const ComplexVector u_hat = forward_dft(grid, u);
    const int side = grid.side();
    const int band = grid.band();

    // Frequency components in index order; phase index (ξ·l) mod n₁.
    std::vector<int> f0(n), f1(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto f = grid.frequency(k);
        f0[k] = f[0] + band;  // shifted to [0, n₁) so the phase stays nonnegative
        f1[k] = f[1] + band;
    }
    std::vector<Complex> roots(side);
    for (int k = 0; k < side; ++k) roots[k] = grid.root(k);

    ComplexVector out(n);
    std::vector<Complex> row(n);
    for (std::size_t x = 0; x < n; ++x) {
        rows(x, row);
        const auto l = grid.lattice(x);
        // e^{2πiξ·x} = e^{2πi(f − ξ₀)·l/n₁}; the −ξ₀ part is a common factor.
        const Complex common = grid.root(-static_cast<long long>(band) * (l[0] + l[1]));
        Complex acc{};
        for (std::size_t k = 0; k < n; ++k) {
            const int phase = (f0[k] * l[0] + f1[k] * l[1]) % side;
            acc += roots[phase] * row[k] * u_hat[k];
        }
        out[x] = common * acc;
    }
    return out;
}

ComplexVector symbol_apply(const DiscreteSymbol& a, std::span<const Complex> u) {
    return apply_symbol_rows(a.grid(), u, [&](std::size_t x, std::span<Complex> row) {
        const auto src = a.row(x);
        std::copy(src.begin(), src.end(), row.begin());
    });
}

std::vector<Complex> symbol_coefficients(const DiscreteSymbol& a) {
    const Grid& g = a.grid();
    const std::size_t n = g.size();
    std::vector<Complex> a_hat(n * n);
    ComplexVector column(n);
    for (std::size_t xi = 0; xi < n; ++xi) {
        for (std::size_t x = 0; x < n; ++x) column[x] = a(x, xi);
        const ComplexVector hat = forward_dft(g, column);
        for (std::size_t j = 0; j < n; ++j) a_hat[j * n + xi] = hat[j];
    }
    return a_hat;
}

DiscreteSymbol symbol_from_coefficients(const Grid& grid, std::span<const Complex> a_hat) {
    const std::size_t n = grid.size();
    if (a_hat.size() != n * n) throw DimensionError("coefficient table does not match grid size");
    DiscreteSymbol s(grid);
    ComplexVector column(n);
    for (std::size_t xi = 0; xi < n; ++xi) {
        for (std::size_t j = 0; j < n; ++j) column[j] = a_hat[j * n + xi];
        const ComplexVector values = inverse_dft(grid, column);
        for (std::size_t x = 0; x < n; ++x) s(x, xi) = values[x];
    }
    return s;
}

ComplexMatrix symbol_to_matrix(const DiscreteSymbol& a) {
    const Grid& g = a.grid();
    const std::size_t n = g.size();
    const FrequencyTable table(g);
    const auto a_hat = symbol_coefficients(a);
    ComplexMatrix m(n, n);
    for (std::size_t eta = 0; eta < n; ++eta)
        for (std::size_t xi = 0; xi < n; ++xi) m(eta, xi) = a_hat[table.combine(eta, xi, -1) * n + xi];
    return m;
}

DiscreteSymbol matrix_to_symbol(const ComplexMatrix& a, const Grid& grid) {
    const std::size_t n = grid.size();
    if (a.rows() != n || a.cols() != n) throw DimensionError("matrix_to_symbol: matrix does not match grid");
    const FrequencyTable table(grid);
    std::vector<Complex> a_hat(n * n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t xi = 0; xi < n; ++xi) a_hat[j * n + xi] = a(table.combine(j, xi, +1), xi);
    return symbol_from_coefficients(grid, a_hat);
}

Complex symbol_trace(const DiscreteSymbol& a) {
    const std::size_t n = a.size();
    Complex total{};
    for (std::size_t x = 0; x < n; ++x)
        for (const auto& v : a.row(x)) total += v;
    return total / static_cast<double>(n);
}

DiscreteSymbol symbol_adjoint(const DiscreteSymbol& a) {
    const Grid& g = a.grid();
    const std::size_t n = g.size();
    const FrequencyTable table(g);
    const auto a_hat = symbol_coefficients(a);
    std::vector<Complex> c_hat(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t minus_j = table.negate(j);
        for (std::size_t xi = 0; xi < n; ++xi)
            c_hat[j * n + xi] = std::conj(a_hat[minus_j * n + table.combine(j, xi, +1)]);
    }
    return symbol_from_coefficients(g, c_hat);
}

DiscreteSymbol symbol_compose(const DiscreteSymbol& a, const DiscreteSymbol& b) {
    require_same_grid(a.grid(), b.grid());
    const Grid& g = a.grid();
    const std::size_t n = g.size();
    const FrequencyTable table(g);
    const auto a_hat = symbol_coefficients(a);
    const auto b_hat = symbol_coefficients(b);
    std::vector<Complex> c_hat(n * n);
    std::vector<Complex> b_col(n);
    for (std::size_t xi = 0; xi < n; ++xi) {
        // b̂(ζ − ξ, ξ) for every ζ
        for (std::size_t zeta = 0; zeta < n; ++zeta) b_col[zeta] = b_hat[table.combine(zeta, xi, -1) * n + xi];
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t j_plus_xi = table.combine(j, xi, +1);
            Complex acc{};
            for (std::size_t zeta = 0; zeta < n; ++zeta) {
                if (b_col[zeta] == Complex{}) continue;
                acc += a_hat[table.combine(j_plus_xi, zeta, -1) * n + zeta] * b_col[zeta];
            }
            c_hat[j * n + xi] = acc;
        }
    }
    return symbol_from_coefficients(g, c_hat);
}

DiscreteSymbol symbol_of_action(const Grid& grid,
                                const std::function<ComplexVector(std::span<const Complex>)>& apply) {
    const std::size_t n = grid.size();
    DiscreteSymbol s(grid);
    ComplexVector wave(n);
    for (std::size_t xi = 0; xi < n; ++xi) {
        for (std::size_t x = 0; x < n; ++x) wave[x] = grid.plane_wave(x, xi);
        const ComplexVector image = apply(wave);
        if (image.size() != n) throw DimensionError("symbol_of_action: operator output has wrong length");
        for (std::size_t x = 0; x < n; ++x) s(x, xi) = std::conj(wave[x]) * image[x];
    }
    return s;
}

}  // namespace matprobe
