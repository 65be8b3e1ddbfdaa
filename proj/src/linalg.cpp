#include "matprobe/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "matprobe/errors.hpp"

namespace matprobe {
namespace {

// Raw kernels over interleaved (re, im) storage. Two accumulators per part give
// the compiler room to pipeline the reduction.
Complex conj_dot(const Complex* x, const Complex* y, std::size_t n) {
    const double* a = reinterpret_cast<const double*>(x);
    const double* b = reinterpret_cast<const double*>(y);
    double re0 = 0, im0 = 0, re1 = 0, im1 = 0;
    std::size_t i = 0;
    for (; i + 1 < n; i += 2) {
        re0 += a[2 * i] * b[2 * i] + a[2 * i + 1] * b[2 * i + 1];
        im0 += a[2 * i] * b[2 * i + 1] - a[2 * i + 1] * b[2 * i];
        re1 += a[2 * i + 2] * b[2 * i + 2] + a[2 * i + 3] * b[2 * i + 3];
        im1 += a[2 * i + 2] * b[2 * i + 3] - a[2 * i + 3] * b[2 * i + 2];
    }
    for (; i < n; ++i) {
        re0 += a[2 * i] * b[2 * i] + a[2 * i + 1] * b[2 * i + 1];
        im0 += a[2 * i] * b[2 * i + 1] - a[2 * i + 1] * b[2 * i];
    }
    return {re0 + re1, im0 + im1};
}

double squared_norm(const Complex* x, std::size_t n) {
    const double* a = reinterpret_cast<const double*>(x);
    double s0 = 0, s1 = 0;
    std::size_t i = 0;
    for (; i + 1 < 2 * n; i += 2) {
        s0 += a[i] * a[i];
        s1 += a[i + 1] * a[i + 1];
    }
    return s0 + s1;
}

// y -= f·x
void axpy_minus(Complex f, const Complex* x, Complex* y, std::size_t n) {
    const double fr = f.real(), fi = f.imag();
    const double* a = reinterpret_cast<const double*>(x);
    double* b = reinterpret_cast<double*>(y);
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = a[2 * i], xi = a[2 * i + 1];
        b[2 * i] -= fr * xr - fi * xi;
        b[2 * i + 1] -= fr * xi + fi * xr;
    }
}

// Householder reflector H = I − τ v v* with v[0] = 1 such that H x = β e₁.
// Overwrites x with v (v[0] slot holds β) and returns τ.
Complex make_reflector(Complex* x, std::size_t n, Complex& beta) {
    const double xnorm = std::sqrt(squared_norm(x, n));
    if (xnorm == 0.0) {
        beta = 0.0;
        return 0.0;
    }
    const Complex x0 = x[0];
    const double ax0 = std::abs(x0);
    const Complex phase = ax0 > 0.0 ? x0 / ax0 : Complex{1.0, 0.0};
    beta = -phase * xnorm;
    const Complex v0 = x0 - beta;
    const Complex inv_v0 = 1.0 / v0;
    for (std::size_t i = 1; i < n; ++i) x[i] *= inv_v0;
    x[0] = beta;
    // With v = (1, x[1:]/v0): τ = (β − x0)/β ... for Hermitian H we use τ = 2/‖v‖².
    const double vnorm2 = 1.0 + squared_norm(x + 1, n - 1);
    return 2.0 / vnorm2;
}

// Applies H = I − τ v v* (v[0] = 1 implied) to column y of length n.
void apply_reflector(const Complex* v, Complex tau, Complex* y, std::size_t n) {
    Complex s = y[0] + conj_dot(v + 1, y + 1, n - 1);
    const Complex f = tau * s;
    y[0] -= f;
    axpy_minus(f, v + 1, y + 1, n - 1);
}

struct PivotedQr {
    std::size_t rows = 0, cols = 0;
    std::vector<Complex> a;  // column-major; R above diagonal, reflectors below
    std::vector<Complex> tau;
    std::vector<std::size_t> perm;
    std::size_t rank = 0;
};

PivotedQr pivoted_qr(const ComplexMatrix& L) {
    PivotedQr qr;
    qr.rows = L.rows();
    qr.cols = L.cols();
    qr.a = L.column_major();
    qr.tau.assign(qr.cols, Complex{});
    qr.perm.resize(qr.cols);
    std::iota(qr.perm.begin(), qr.perm.end(), 0);

    const std::size_t m = qr.rows, p = qr.cols;
    std::vector<double> norms(p), reference(p);
    for (std::size_t j = 0; j < p; ++j) {
        norms[j] = std::sqrt(squared_norm(&qr.a[j * m], m));
        reference[j] = norms[j];
    }
    double largest_pivot = 0.0;
    qr.rank = p;
    const std::size_t steps = std::min(m, p);
    for (std::size_t k = 0; k < steps; ++k) {
        std::size_t best = k;
        for (std::size_t j = k + 1; j < p; ++j)
            if (norms[j] > norms[best]) best = j;
        if (best != k) {
            std::swap_ranges(qr.a.begin() + k * m, qr.a.begin() + (k + 1) * m, qr.a.begin() + best * m);
            std::swap(norms[k], norms[best]);
            std::swap(reference[k], reference[best]);
            std::swap(qr.perm[k], qr.perm[best]);
        }
        Complex beta;
        Complex* col = &qr.a[k * m + k];
        qr.tau[k] = make_reflector(col, m - k, beta);
        const double pivot = std::abs(beta);
        if (k == 0) largest_pivot = pivot;
        if (pivot <= kRankTolerance * largest_pivot || pivot == 0.0) {
            qr.rank = k;
            // Remaining columns are numerically in the span; R11 is k×k.
            col[0] = beta;
            for (std::size_t j = k + 1; j < p; ++j) apply_reflector(col, qr.tau[k], &qr.a[j * m + k], m - k);
            for (std::size_t kk = k + 1; kk < steps; ++kk) qr.tau[kk] = 0.0;
            return qr;
        }
        for (std::size_t j = k + 1; j < p; ++j) {
            Complex* y = &qr.a[j * m + k];
            apply_reflector(col, qr.tau[k], y, m - k);
            // Norm downdate with recomputation when cancellation sets in.
            if (norms[j] > 0.0) {
                const double r = std::abs(y[0]) / norms[j];
                double t = std::max(0.0, (1.0 - r) * (1.0 + r));
                const double ratio = norms[j] / reference[j];
                if (t * ratio * ratio <= std::sqrt(std::numeric_limits<double>::epsilon())) {
                    norms[j] = std::sqrt(squared_norm(y + 1, m - k - 1));
                    reference[j] = norms[j];
                } else {
                    norms[j] *= std::sqrt(t);
                }
            }
        }
        col[0] = beta;
    }
    qr.rank = steps;
    return qr;
}

// Q* b using the stored reflectors.
void apply_qt(const PivotedQr& qr, std::vector<Complex>& b) {
    const std::size_t m = qr.rows;
    const std::size_t steps = std::min(qr.rows, qr.cols);
    for (std::size_t k = 0; k < steps; ++k) {
        if (qr.tau[k] == Complex{}) continue;
        const Complex* v = &qr.a[k * m + k];
        Complex s = b[k] + conj_dot(v + 1, &b[k + 1], m - k - 1);
        const Complex f = qr.tau[k] * s;
        b[k] -= f;
        axpy_minus(f, v + 1, &b[k + 1], m - k - 1);
    }
}

}  // namespace

LeastSquaresResult least_squares(const ComplexMatrix& L, std::span<const Complex> b) {
    if (L.rows() == 0 || L.cols() == 0) throw DimensionError("least_squares: empty matrix");
    if (L.rows() < L.cols()) throw DimensionError("least_squares: need rows >= cols");
    if (b.size() != L.rows()) throw DimensionError("least_squares: rhs length does not match rows");
    require_finite(L.data(), "least_squares matrix");
    require_finite(b, "least_squares rhs");

    const std::size_t m = L.rows(), p = L.cols();
    PivotedQr qr = pivoted_qr(L);
    std::vector<Complex> qtb(b.begin(), b.end());
    apply_qt(qr, qtb);
    const std::size_t r = qr.rank;

    std::vector<Complex> y(p);
    if (r == p) {
        for (std::size_t i = p; i-- > 0;) {
            Complex s = qtb[i];
            for (std::size_t j = i + 1; j < p; ++j) s -= qr.a[j * m + i] * y[j];
            y[i] = s / qr.a[i * m + i];
        }
    } else if (r > 0) {
        // Complete orthogonal decomposition: T = [R11 R12] (r×p). The minimal-norm
        // solution of T y = (Q*b)[0:r] is y = Z (S*)⁻¹ rhs where T* = Z S.
        ComplexMatrix t_adj(p, r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = i; j < p; ++j) t_adj(j, i) = std::conj(qr.a[j * m + i]);
        std::vector<Complex> z = t_adj.column_major();
        std::vector<Complex> ztau(r);
        std::vector<Complex> s_diag(r);
        for (std::size_t k = 0; k < r; ++k) {
            Complex beta;
            ztau[k] = make_reflector(&z[k * p + k], p - k, beta);
            for (std::size_t j = k + 1; j < r; ++j) apply_reflector(&z[k * p + k], ztau[k], &z[j * p + k], p - k);
            s_diag[k] = beta;
            z[k * p + k] = beta;
        }
        // Solve S* w = rhs (S upper triangular r×r, so S* is lower triangular).
        std::vector<Complex> w(r);
        for (std::size_t i = 0; i < r; ++i) {
            Complex s = qtb[i];
            for (std::size_t j = 0; j < i; ++j) s -= std::conj(z[i * p + j]) * w[j];
            w[i] = s / std::conj(s_diag[i]);
        }
        // y = Z [w; 0] = H_1 … H_r [w; 0]
        std::fill(y.begin(), y.end(), Complex{});
        std::copy(w.begin(), w.end(), y.begin());
        for (std::size_t k = r; k-- > 0;) {
            if (ztau[k] == Complex{}) continue;
            const Complex* v = &z[k * p + k];
            Complex s = y[k] + conj_dot(v + 1, &y[k + 1], p - k - 1);
            const Complex f = ztau[k] * s;
            y[k] -= f;
            axpy_minus(f, v + 1, &y[k + 1], p - k - 1);
        }
    }

    LeastSquaresResult result;
    result.solution.assign(p, Complex{});
    for (std::size_t j = 0; j < p; ++j) result.solution[qr.perm[j]] = y[j];
    result.rank = r;
    result.rank_deficient = r < p;
    result.residual_norm = norm2(subtract(L * std::span<const Complex>(result.solution), b));
    return result;
}

std::vector<double> singular_values(const ComplexMatrix& input) {
    require_finite(input.data(), "singular_values input");
    // Work on the tall orientation: columns are orthogonalized in place.
    const bool wide = input.rows() < input.cols();
    const ComplexMatrix& src = input;
    const std::size_t m = wide ? src.cols() : src.rows();
    const std::size_t n = wide ? src.rows() : src.cols();
    std::vector<Complex> a(m * n);
    if (wide) {
        for (std::size_t r = 0; r < src.rows(); ++r)
            for (std::size_t c = 0; c < src.cols(); ++c) a[r * m + c] = std::conj(src(r, c));
    } else {
        a = src.column_major();
    }

    std::vector<double> sq(n);
    for (std::size_t j = 0; j < n; ++j) sq[j] = squared_norm(&a[j * m], m);
    constexpr double tol = 1e-15;
    constexpr int max_sweeps = 80;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double alpha = sq[i], beta = sq[j];
                if (alpha == 0.0 || beta == 0.0) continue;
                Complex* ci = &a[i * m];
                Complex* cj = &a[j * m];
                const Complex g = conj_dot(ci, cj, m);
                const double ag = std::abs(g);
                if (ag <= tol * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const Complex phase = g / ag;  // e^{iφ}
                const double zeta = (beta - alpha) / (2.0 * ag);
                const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                const Complex sp = s * std::conj(phase);
                const Complex cp = c * std::conj(phase);
                // [ci cj] ← [ci cj]·[[c, s], [−s e^{-iφ}, c e^{-iφ}]]
                for (std::size_t r = 0; r < m; ++r) {
                    const Complex xi = ci[r], xj = cj[r];
                    ci[r] = c * xi - sp * xj;
                    cj[r] = s * xi + cp * xj;
                }
                sq[i] = squared_norm(ci, m);
                sq[j] = squared_norm(cj, m);
            }
        }
        if (!rotated) break;
    }
    std::vector<double> sv(n);
    for (std::size_t j = 0; j < n; ++j) sv[j] = std::sqrt(squared_norm(&a[j * m], m));
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& input) {
    if (input.rows() != input.cols()) throw DimensionError("hermitian_eigenvalues: matrix must be square");
    require_finite(input.data(), "hermitian_eigenvalues input");
    const std::size_t n = input.rows();
    const double scale = frobenius_norm(input);
    double asym = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) asym = std::max(asym, std::abs(input(i, j) - std::conj(input(j, i))));
    if (asym > 1e-12 * std::max(scale, std::numeric_limits<double>::min()))
        throw NumericalError("hermitian_eigenvalues: matrix is not Hermitian");

    // Symmetrized copy, row-major.
    std::vector<Complex> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = 0.5 * (input(i, j) + std::conj(input(j, i)));

    auto at = [&](std::size_t i, std::size_t j) -> Complex& { return a[i * n + j]; };
    constexpr int max_sweeps = 80;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0, diag = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            diag += std::norm(at(i, i));
            for (std::size_t j = i + 1; j < n; ++j) off += std::norm(at(i, j));
        }
        if (off <= 1e-32 * diag || off == 0.0) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = at(p, q);
                const double mag = std::abs(apq);
                const double app = at(p, p).real(), aqq = at(q, q).real();
                if (mag == 0.0 || mag <= 1e-18 * (std::abs(app) + std::abs(aqq))) {
                    at(p, q) = at(q, p) = 0.0;
                    continue;
                }
                const Complex phase = apq / mag;
                const double zeta = (aqq - app) / (2.0 * mag);
                const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                const Complex em = std::conj(phase);
                // A ← A J with J = [[c, s], [−s e^{-iφ}, c e^{-iφ}]]
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex xp = at(k, p), xq = at(k, q);
                    at(k, p) = c * xp - s * em * xq;
                    at(k, q) = s * xp + c * em * xq;
                }
                // A ← J* A
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex xp = at(p, k), xq = at(q, k);
                    at(p, k) = c * xp - s * phase * xq;
                    at(q, k) = s * xp + c * phase * xq;
                }
                at(p, q) = at(q, p) = 0.0;
                at(p, p) = at(p, p).real();
                at(q, q) = at(q, q).real();
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = at(i, i).real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

double hermitian_norm(const ComplexMatrix& m) {
    const auto ev = hermitian_eigenvalues(m);
    if (ev.empty()) return 0.0;
    return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

double spectral_norm(const ComplexMatrix& a) {
    const auto sv = singular_values(a);
    return sv.empty() ? 0.0 : sv.front();
}

double condition_from_singular_values(std::span<const double> descending, std::size_t skip_smallest) {
    if (descending.size() <= skip_smallest) throw ValidationError("condition number: nothing left after skipping");
    const double smallest = descending[descending.size() - 1 - skip_smallest];
    if (smallest <= 0.0) return std::numeric_limits<double>::infinity();
    return descending.front() / smallest;
}

ComplexMatrix gram_of_columns(std::span<const Complex> column_major, std::size_t rows, std::size_t cols) {
    if (column_major.size() != rows * cols) throw DimensionError("gram_of_columns: size mismatch");
    ComplexMatrix g(cols, cols);
    for (std::size_t i = 0; i < cols; ++i) {
        for (std::size_t j = i; j < cols; ++j) {
            const Complex v = conj_dot(&column_major[i * rows], &column_major[j * rows], rows);
            g(i, j) = v;
            g(j, i) = std::conj(v);
        }
        g(i, i) = g(i, i).real();
    }
    return g;
}

}  // namespace matprobe
