#include "matprobe/basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "matprobe/errors.hpp"
#include "matprobe/linalg.hpp"

namespace matprobe {
namespace {

void require_odd_count(int count, const char* what, const Grid& grid) {
    if (count < 1 || count % 2 == 0)
        throw ValidationError(std::string(what) + " must be a positive odd count, got " + std::to_string(count));
    if (count > grid.side())
        throw ValidationError(std::string(what) + "=" + std::to_string(count) + " exceeds the grid side " +
                              std::to_string(grid.side()));
}

// Centered labels −(c−1)/2..(c−1)/2 per axis, lexicographic.
std::vector<std::array<int, 2>> centered_labels(int count, int dim) {
    std::vector<std::array<int, 2>> out;
    const int h = (count - 1) / 2;
    if (dim == 1) {
        for (int a = -h; a <= h; ++a) out.push_back({a, 0});
    } else {
        for (int a = -h; a <= h; ++a)
            for (int b = -h; b <= h; ++b) out.push_back({a, b});
    }
    return out;
}

std::vector<ComplexVector> fourier_spatial(const Grid& grid, const std::vector<std::array<int, 2>>& labels) {
    std::vector<ComplexVector> out;
    out.reserve(labels.size());
    for (const auto& j : labels) {
        ComplexVector e(grid.size());
        for (std::size_t x = 0; x < grid.size(); ++x) {
            const auto l = grid.lattice(x);
            e[x] = grid.root(static_cast<long long>(j[0]) * l[0] + static_cast<long long>(j[1]) * l[1]);
        }
        out.push_back(std::move(e));
    }
    return out;
}

double max_modulus(std::span<const Complex> v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

// Gram matrix of vectors under Σ ā b, scaled.
ComplexMatrix factor_gram(const std::vector<ComplexVector>& vs, double scale) {
    const std::size_t m = vs.size();
    ComplexMatrix g(m, m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a; b < m; ++b) {
            const Complex v = dot(vs[a], vs[b]) * scale;
            g(a, b) = v;
            g(b, a) = std::conj(v);
        }
    return g;
}

double eigen_ratio(const std::vector<double>& ascending) {
    const double lo = ascending.front();
    const double hi = ascending.back();
    if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

}  // namespace

std::string_view to_string(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::fourier: return "fourier";
        case FamilyKind::cheb1d: return "cheb1d";
        case FamilyKind::chebdisk: return "chebdisk";
    }
    return "unknown";
}

FamilyKind parse_family_kind(std::string_view name) {
    if (name == "fourier") return FamilyKind::fourier;
    if (name == "cheb1d") return FamilyKind::cheb1d;
    if (name == "chebdisk" || name == "chebdisk2d") return FamilyKind::chebdisk;
    throw ValidationError("unknown family '" + std::string(name) + "'");
}

std::string FamilyDescriptor::describe() const {
    std::ostringstream s;
    s << "family=" << to_string(kind) << " J=" << J << " K=" << K;
    if (kind == FamilyKind::chebdisk) s << " K1=" << K1;
    s << " order=" << order << " normalized=" << (normalized ? 1 : 0);
    return s.str();
}

BasisFamily::BasisFamily(Grid grid, FamilyDescriptor descriptor, std::vector<ComplexVector> spatial,
                         std::vector<ComplexVector> spectral, std::vector<std::array<int, 2>> j_labels,
                         std::vector<std::array<int, 3>> k_labels)
    : grid_(std::move(grid)),
      descriptor_(descriptor),
      spatial_(std::move(spatial)),
      spectral_(std::move(spectral)),
      j_labels_(std::move(j_labels)),
      k_labels_(std::move(k_labels)) {
    if (spatial_.empty() || spectral_.empty()) throw ValidationError("basis family needs at least one element");
    if (j_labels_.size() != spatial_.size() || k_labels_.size() != spectral_.size())
        throw DimensionError("basis family labels do not match factors");
    for (const auto& e : spatial_) {
        if (e.size() != grid_.size()) throw DimensionError("spatial factor length does not match grid");
        require_finite(e, "spatial factor");
    }
    for (const auto& g : spectral_) {
        if (g.size() != grid_.size()) throw DimensionError("frequency factor length does not match grid");
        require_finite(g, "frequency factor");
    }
}

BasisFamily BasisFamily::custom(const Grid& grid, std::vector<ComplexVector> spatial, std::vector<ComplexVector> spectral) {
    std::vector<std::array<int, 2>> jl(spatial.size());
    std::vector<std::array<int, 3>> kl(spectral.size());
    for (std::size_t a = 0; a < jl.size(); ++a) jl[a] = {static_cast<int>(a), 0};
    for (std::size_t a = 0; a < kl.size(); ++a) kl[a] = {static_cast<int>(a), 0, 0};
    FamilyDescriptor d;
    d.J = static_cast<int>(spatial.size());
    d.K = static_cast<int>(spectral.size());
    return BasisFamily(grid, d, std::move(spatial), std::move(spectral), std::move(jl), std::move(kl));
}

SeparableBasisElement BasisFamily::element(std::size_t i) const {
    if (i >= size()) throw ValidationError("basis element index out of range");
    const std::size_t j = j_of(i);
    const std::size_t k = k_of(i);
    return {spatial_[j], spectral_[k], j_labels_[j], k_labels_[k], descriptor_.order};
}

bool BasisFamily::unimodular_spatial() const {
    for (const auto& e : spatial_) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        for (const auto& z : e) {
            const double a = std::abs(z);
            lo = std::min(lo, a);
            hi = std::max(hi, a);
        }
        if (hi - lo > 1e-12 * hi) return false;
    }
    return true;
}

double order_weight(const Grid& grid, std::size_t xi_index, double order) {
    if (order == 0.0) return 1.0;
    const double r = grid.frequency_norm(xi_index);
    if (r == 0.0) return 0.0;
    return std::pow(r, order);
}

std::vector<double> chebyshev_values(double t, int count) {
    std::vector<double> out(static_cast<std::size_t>(std::max(count, 0)));
    if (count > 0) out[0] = 1.0;
    if (count > 1) out[1] = t;
    for (int k = 2; k < count; ++k) out[k] = 2.0 * t * out[k - 1] - out[k - 2];
    return out;
}

BasisFamily make_fourier_family(const Grid& grid, int J, int K, double order) {
    require_odd_count(J, "J", grid);
    require_odd_count(K, "K", grid);
    auto j_labels = centered_labels(J, grid.dim());
    auto k2 = centered_labels(K, grid.dim());
    std::vector<std::array<int, 3>> k_labels;
    std::vector<ComplexVector> spectral;
    for (const auto& k : k2) {
        k_labels.push_back({k[0], k[1], 0});
        // φ(ξ) = (ξ + ξ₀)/n₁ per axis, so e^{2πik·φ(ξ)} = root(k·f) with f the slot index.
        ComplexVector g(grid.size());
        for (std::size_t xi = 0; xi < grid.size(); ++xi) {
            const auto f = grid.frequency(xi);
            const long long phase = static_cast<long long>(k[0]) * (f[0] + grid.band()) +
                                    (grid.dim() == 2 ? static_cast<long long>(k[1]) * (f[1] + grid.band()) : 0);
            g[xi] = grid.root(phase) * order_weight(grid, xi, order);
        }
        spectral.push_back(std::move(g));
    }
    FamilyDescriptor d{FamilyKind::fourier, J, K, 1, order, false};
    auto spatial = fourier_spatial(grid, j_labels);
    return BasisFamily(grid, d, std::move(spatial), std::move(spectral), std::move(j_labels), std::move(k_labels));
}

BasisFamily make_cheb1d_family(const Grid& grid, int J, int K, double order) {
    if (grid.dim() != 1) throw ValidationError("cheb1d family requires a 1D grid");
    require_odd_count(J, "J", grid);
    if (K < 1) throw ValidationError("K must be at least 1");
    if (K > grid.side()) throw ValidationError("K exceeds the grid side");
    auto j_labels = centered_labels(J, 1);
    std::vector<ComplexVector> spectral(K, ComplexVector(grid.size()));
    for (std::size_t xi = 0; xi < grid.size(); ++xi) {
        const double t = static_cast<double>(grid.frequency(xi)[0]) / grid.band();
        const auto T = chebyshev_values(t, K);
        const double w = order_weight(grid, xi, order);
        for (int k = 0; k < K; ++k) spectral[k][xi] = T[k] * w;
    }
    std::vector<std::array<int, 3>> k_labels;
    for (int k = 0; k < K; ++k) k_labels.push_back({k, 0, 0});
    FamilyDescriptor d{FamilyKind::cheb1d, J, K, 1, order, false};
    auto spatial = fourier_spatial(grid, j_labels);
    return BasisFamily(grid, d, std::move(spatial), std::move(spectral), std::move(j_labels), std::move(k_labels));
}

BasisFamily make_chebdisk_family(const Grid& grid, int J, int K, int K1, double order, bool normalized) {
    if (grid.dim() != 2) throw ValidationError("chebdisk family requires a 2D grid");
    require_odd_count(J, "J", grid);
    require_odd_count(K1, "K1", grid);
    if (K < 1) throw ValidationError("K must be at least 1");
    if (K > grid.side()) throw ValidationError("K exceeds the grid side");
    auto j_labels = centered_labels(J, 2);
    const int h = (K1 - 1) / 2;
    std::vector<std::array<int, 3>> k_labels;
    for (int k1 = -h; k1 <= h; ++k1)
        for (int k2 = 0; k2 < K; ++k2) k_labels.push_back({k1, k2, 0});

    std::vector<ComplexVector> spectral(k_labels.size(), ComplexVector(grid.size()));
    for (std::size_t xi = 0; xi < grid.size(); ++xi) {
        const auto f = grid.frequency(xi);
        const double r = grid.frequency_norm(xi);
        // Corner frequencies land exactly on t = 1; clamp rounding.
        const double t = std::clamp(std::sqrt(2.0) * r / grid.band() - 1.0, -1.0, 1.0);
        const auto T = chebyshev_values(t, K);
        const double theta = std::atan2(static_cast<double>(f[1]), static_cast<double>(f[0]));
        const double w = order_weight(grid, xi, order);
        for (std::size_t k = 0; k < k_labels.size(); ++k) {
            const int k1 = k_labels[k][0];
            if (r == 0.0 && k1 != 0) continue;  // arg ξ undefined at the origin
            spectral[k][xi] = std::polar(1.0, k1 * theta) * (T[k_labels[k][1]] * w);
        }
    }
    if (normalized) {
        for (auto& g : spectral) {
            const double nrm = norm2(g);
            if (nrm == 0.0) throw ValidationError("chebdisk element vanishes on this grid and cannot be normalized");
            for (auto& v : g) v /= nrm;
        }
    }
    FamilyDescriptor d{FamilyKind::chebdisk, J, K, K1, order, normalized};
    auto spatial = fourier_spatial(grid, j_labels);
    return BasisFamily(grid, d, std::move(spatial), std::move(spectral), std::move(j_labels), std::move(k_labels));
}

BasisFamily make_family(const Grid& grid, const FamilyDescriptor& d) {
    switch (d.kind) {
        case FamilyKind::fourier: return make_fourier_family(grid, d.J, d.K, d.order);
        case FamilyKind::cheb1d: return make_cheb1d_family(grid, d.J, d.K, d.order);
        case FamilyKind::chebdisk: return make_chebdisk_family(grid, d.J, d.K, d.K1, d.order, d.normalized);
    }
    throw ValidationError("unknown family kind");
}

ComplexVector basis_apply(const Grid& grid, const SeparableBasisElement& b, std::span<const Complex> u) {
    if (u.size() != grid.size()) throw DimensionError("basis_apply: vector length does not match grid");
    if (b.e.size() != grid.size() || b.g.size() != grid.size())
        throw DimensionError("basis_apply: element does not match grid");
    ComplexVector v = forward_dft(grid, u);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] *= b.g[k];
    v = inverse_dft(grid, v);
    for (std::size_t x = 0; x < v.size(); ++x) v[x] *= b.e[x];
    return v;
}

ComplexVector basis_apply(const BasisFamily& family, std::size_t i, std::span<const Complex> u) {
    if (i >= family.size()) throw ValidationError("basis element index out of range");
    const Grid& grid = family.grid();
    if (u.size() != grid.size()) throw DimensionError("basis_apply: vector length does not match grid");
    const auto& g = family.spectral(family.k_of(i));
    const auto& e = family.spatial(family.j_of(i));
    ComplexVector v = forward_dft(grid, u);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] *= g[k];
    v = inverse_dft(grid, v);
    for (std::size_t x = 0; x < v.size(); ++x) v[x] *= e[x];
    return v;
}

std::vector<ComplexVector> apply_all(const BasisFamily& family, std::span<const Complex> u) {
    const Grid& grid = family.grid();
    const std::size_t n = grid.size();
    if (u.size() != n) throw DimensionError("apply_all: vector length does not match grid");
    const ComplexVector u_hat = forward_dft(grid, u);
    std::vector<ComplexVector> out(family.size());
    ComplexVector w(n);
    for (std::size_t k = 0; k < family.spectral_count(); ++k) {
        const auto& g = family.spectral(k);
        for (std::size_t f = 0; f < n; ++f) w[f] = u_hat[f] * g[f];
        const ComplexVector v = inverse_dft(grid, w);
        for (std::size_t j = 0; j < family.spatial_count(); ++j) {
            const auto& e = family.spatial(j);
            ComplexVector col(n);
            for (std::size_t x = 0; x < n; ++x) col[x] = e[x] * v[x];
            out[family.index(j, k)] = std::move(col);
        }
    }
    return out;
}

ComplexVector apply_combination(const BasisFamily& family, std::span<const Complex> c, std::span<const Complex> u) {
    const Grid& grid = family.grid();
    const std::size_t n = grid.size();
    if (c.size() != family.size()) throw DimensionError("coefficient count does not match family size");
    if (u.size() != n) throw DimensionError("vector length does not match grid");
    const ComplexVector u_hat = forward_dft(grid, u);
    ComplexVector out(n);
    ComplexVector w(n);
    ComplexVector mult(n);
    for (std::size_t k = 0; k < family.spectral_count(); ++k) {
        // E_k(x) = Σ_j c_jk e_j(x)
        std::fill(mult.begin(), mult.end(), Complex{});
        bool any = false;
        for (std::size_t j = 0; j < family.spatial_count(); ++j) {
            const Complex cj = c[family.index(j, k)];
            if (cj == Complex{}) continue;
            any = true;
            const auto& e = family.spatial(j);
            for (std::size_t x = 0; x < n; ++x) mult[x] += cj * e[x];
        }
        if (!any) continue;
        const auto& g = family.spectral(k);
        for (std::size_t f = 0; f < n; ++f) w[f] = u_hat[f] * g[f];
        const ComplexVector v = inverse_dft(grid, w);
        for (std::size_t x = 0; x < n; ++x) out[x] += mult[x] * v[x];
    }
    return out;
}

DiscreteSymbol combination_symbol(const BasisFamily& family, std::span<const Complex> c) {
    if (c.size() != family.size()) throw DimensionError("coefficient count does not match family size");
    const std::size_t n = family.grid().size();
    std::vector<Complex> values(n * n);
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (c[i] == Complex{}) continue;
        const auto& e = family.spatial(family.j_of(i));
        const auto& g = family.spectral(family.k_of(i));
        for (std::size_t x = 0; x < n; ++x) {
            const Complex ex = c[i] * e[x];
            Complex* row = values.data() + x * n;
            for (std::size_t xi = 0; xi < n; ++xi) row[xi] += ex * g[xi];
        }
    }
    return DiscreteSymbol(family.grid(), std::move(values));
}

ComplexMatrix element_matrix(const BasisFamily& family, std::size_t i) {
    const std::size_t n = family.grid().size();
    ComplexMatrix m(n, n);
    ComplexVector unit(n);
    for (std::size_t c = 0; c < n; ++c) {
        unit[c] = 1.0;
        m.set_column(c, basis_apply(family, i, unit));
        unit[c] = 0.0;
    }
    return m;
}

double gram_condition(const ComplexMatrix& gram) { return eigen_ratio(hermitian_eigenvalues(gram)); }

GramDiagnostics gram_matrix(const BasisFamily& family) {
    const Grid& grid = family.grid();
    const std::size_t n = grid.size();
    std::vector<ComplexVector> spatial, spectral;
    for (std::size_t j = 0; j < family.spatial_count(); ++j) spatial.push_back(family.spatial(j));
    for (std::size_t k = 0; k < family.spectral_count(); ++k) spectral.push_back(family.spectral(k));
    const ComplexMatrix e_gram = factor_gram(spatial, 1.0 / static_cast<double>(n));
    const ComplexMatrix g_gram = factor_gram(spectral, 1.0);

    GramDiagnostics out;
    out.gram = kronecker(e_gram, g_gram);
    // Eigenvalues of a Kronecker product of PSD factors are the pairwise products.
    out.kappa = eigen_ratio(hermitian_eigenvalues(e_gram)) * eigen_ratio(hermitian_eigenvalues(g_gram));

    const bool unimodular = family.unimodular_spatial();
    out.element_lambda.resize(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) {
        const std::size_t j = family.j_of(i);
        const std::size_t k = family.k_of(i);
        const double fro = std::sqrt(e_gram(j, j).real() * g_gram(k, k).real());
        if (!(fro > 0.0)) throw ValidationError("basis element " + std::to_string(i) + " is zero");
        const double op = unimodular ? max_modulus(family.spatial(j)) * max_modulus(family.spectral(k))
                                     : spectral_norm(element_matrix(family, i));
        out.element_lambda[i] = op * std::sqrt(static_cast<double>(n)) / fro;
    }
    out.lambda = *std::max_element(out.element_lambda.begin(), out.element_lambda.end());
    out.effective_rank = n;
    out.effective_lambda = out.lambda;
    return out;
}

GramDiagnostics dense_gram_diagnostics(std::span<const ComplexMatrix> elements) {
    if (elements.empty()) throw ValidationError("no elements");
    const std::size_t n = elements.front().rows();
    const std::size_t p = elements.size();
    for (const auto& b : elements)
        if (b.rows() != n || b.cols() != n) throw DimensionError("elements must be square and of equal size");
    GramDiagnostics out;
    out.gram = ComplexMatrix(p, p);
    for (std::size_t a = 0; a < p; ++a)
        for (std::size_t b = a; b < p; ++b) {
            const Complex v = frobenius_inner(elements[a], elements[b]);
            out.gram(a, b) = v;
            out.gram(b, a) = std::conj(v);
        }
    out.kappa = gram_condition(out.gram);
    out.element_lambda.resize(p);
    for (std::size_t a = 0; a < p; ++a) {
        const double fro = frobenius_norm(elements[a]);
        if (!(fro > 0.0)) throw ValidationError("basis element " + std::to_string(a) + " is zero");
        out.element_lambda[a] = spectral_norm(elements[a]) * std::sqrt(static_cast<double>(n)) / fro;
    }
    out.lambda = *std::max_element(out.element_lambda.begin(), out.element_lambda.end());
    out.effective_rank = n;
    out.effective_lambda = out.lambda;
    return out;
}

GramDiagnostics transformed_family(const BasisFamily& family, const ComplexMatrix& a) {
    const Grid& grid = family.grid();
    const std::size_t n = grid.size();
    if (a.rows() != n || a.cols() != n) throw DimensionError("operator does not match the family grid");
    const std::size_t p = family.size();

    // products[i] holds B_i A column-major.
    std::vector<std::vector<Complex>> products(p, std::vector<Complex>(n * n));
    for (std::size_t c = 0; c < n; ++c) {
        const ComplexVector col = a.column(c);
        const auto images = apply_all(family, col);
        for (std::size_t i = 0; i < p; ++i) std::copy(images[i].begin(), images[i].end(), products[i].begin() + c * n);
    }

    GramDiagnostics out;
    out.gram = ComplexMatrix(p, p);
    for (std::size_t r = 0; r < p; ++r)
        for (std::size_t s = r; s < p; ++s) {
            const Complex v = dot(products[r], products[s]);
            out.gram(r, s) = v;
            out.gram(s, r) = std::conj(v);
        }
    out.kappa = gram_condition(out.gram);

    // ‖B_jk A‖ = |e_j|·‖g_k(D) A‖ when |e_j| is constant, so one SVD per k suffices.
    const bool unimodular = family.unimodular_spatial();
    std::vector<double> k_norm(family.spectral_count(), -1.0);
    auto dense_of = [&](std::size_t i) {
        ComplexMatrix m(n, n);
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t r = 0; r < n; ++r) m(r, c) = products[i][c * n + r];
        return m;
    };
    out.element_lambda.resize(p);
    for (std::size_t i = 0; i < p; ++i) {
        const double fro = std::sqrt(out.gram(i, i).real());
        if (!(fro > 0.0)) throw ValidationError("transformed element " + std::to_string(i) + " vanishes");
        double op = 0.0;
        if (unimodular) {
            const std::size_t j = family.j_of(i);
            const std::size_t k = family.k_of(i);
            const double ej = max_modulus(family.spatial(j));
            if (k_norm[k] < 0.0) k_norm[k] = spectral_norm(dense_of(i)) / ej;
            op = ej * k_norm[k];
        } else {
            op = spectral_norm(dense_of(i));
        }
        out.element_lambda[i] = op * std::sqrt(static_cast<double>(n)) / fro;
    }
    out.lambda = *std::max_element(out.element_lambda.begin(), out.element_lambda.end());

    const auto sv = singular_values(a);
    std::size_t rank = 0;
    for (double s : sv)
        if (s > 1e-10 * sv.front()) ++rank;
    out.effective_rank = rank;
    out.effective_lambda = std::sqrt(static_cast<double>(rank) / static_cast<double>(n)) * out.lambda;
    return out;
}

}  // namespace matprobe
