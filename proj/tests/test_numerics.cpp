#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "matprobe/dense.hpp"
#include "matprobe/errors.hpp"
#include "matprobe/fft.hpp"
#include "matprobe/linalg.hpp"
#include "matprobe/random.hpp"

using namespace matprobe;

namespace {

ComplexMatrix random_matrix(std::size_t r, std::size_t c, std::uint64_t seed) {
    RandomStream s(seed);
    return ComplexMatrix(r, c, draw_complex_gaussian(s, r * c));
}

// Direct O(L²) transform in the centered ordering, forward scaled by 1/L.
ComplexVector naive_dft_1d(const ComplexVector& u, bool forward) {
    const std::size_t L = u.size();
    const long half = static_cast<long>(L / 2);
    ComplexVector out(L);
    for (std::size_t a = 0; a < L; ++a) {
        Complex acc{};
        for (std::size_t b = 0; b < L; ++b) {
            const long xi = forward ? static_cast<long>(a) - half : static_cast<long>(b) - half;
            const long x = forward ? static_cast<long>(b) : static_cast<long>(a);
            const double ang = (forward ? -2.0 : 2.0) * std::numbers::pi * xi * x / static_cast<double>(L);
            acc += u[b] * std::polar(1.0, ang);
        }
        out[a] = forward ? acc / static_cast<double>(L) : acc;
    }
    return out;
}

}  // namespace

TEST_CASE("dft of a delta is constant") {
    const ComplexVector u{1.0, 0.0, 0.0};
    const std::vector<std::size_t> shape{3};
    const auto h = dft(u, shape, Direction::forward);
    for (const auto& v : h) CHECK(std::abs(v - Complex(1.0 / 3.0)) < 1e-15);
}

TEST_CASE("dft of a constant is a delta at zero frequency") {
    const ComplexVector u(5, 1.0);
    const std::vector<std::size_t> shape{5};
    const auto h = dft(u, shape, Direction::forward);
    for (std::size_t k = 0; k < 5; ++k) CHECK(std::abs(h[k] - (k == 2 ? Complex(1.0) : Complex{})) < 1e-15);
}

TEST_CASE("dft round trip and agreement with the direct sum") {
    for (std::size_t L : {3u, 5u, 12u, 101u, 201u, 64u, 1u}) {
        RandomStream s(L);
        const ComplexVector u = draw_complex_gaussian(s, L);
        const std::vector<std::size_t> shape{L};
        const auto h = dft(u, shape, Direction::forward);
        CHECK(relative_error(dft(h, shape, Direction::inverse), u) < 1e-12);
        CHECK(relative_error(h, naive_dft_1d(u, true)) < 1e-12);
        CHECK(relative_error(dft(u, shape, Direction::inverse), naive_dft_1d(u, false)) < 1e-12);
    }
}

TEST_CASE("two-dimensional dft round trip") {
    RandomStream s(9);
    const ComplexVector u = draw_complex_gaussian(s, 15 * 15);
    const std::vector<std::size_t> shape{15, 15};
    CHECK(relative_error(dft(dft(u, shape, Direction::forward), shape, Direction::inverse), u) < 1e-12);
}

TEST_CASE("dft rejects shape mismatch") {
    const ComplexVector u(6);
    const std::vector<std::size_t> shape{4};
    CHECK_THROWS_AS(dft(u, shape, Direction::forward), DimensionError);
}

TEST_CASE("least squares: identity and consistent systems") {
    RandomStream s(3);
    const ComplexVector b = draw_complex_gaussian(s, 4);
    const auto r = least_squares(ComplexMatrix::identity(4), b);
    CHECK(relative_error(r.solution, b) < 1e-14);
    CHECK_FALSE(r.rank_deficient);

    const ComplexMatrix L = random_matrix(50, 10, 5);
    const ComplexVector c = draw_complex_gaussian(s, 10);
    const auto r2 = least_squares(L, L * c);
    CHECK(relative_error(r2.solution, c) < 1e-10);
    CHECK(r2.rank == 10);
}

TEST_CASE("least squares residual is orthogonal to the column space") {
    const ComplexMatrix L = random_matrix(40, 7, 11);
    RandomStream s(12);
    const ComplexVector b = draw_complex_gaussian(s, 40);
    const auto r = least_squares(L, b);
    const ComplexVector res = subtract(L * r.solution, b);
    const ComplexVector g = L.adjoint() * res;
    CHECK(norm2(g) <= 1e-10 * spectral_norm(L) * norm2(b));
    CHECK(std::abs(r.residual_norm - norm2(res)) < 1e-10 * norm2(b));
}

TEST_CASE("least squares: duplicated column gives the minimal-norm solution") {
    ComplexMatrix L = random_matrix(20, 4, 21);
    for (std::size_t r = 0; r < 20; ++r) L(r, 3) = L(r, 1);
    RandomStream s(22);
    const ComplexVector b = draw_complex_gaussian(s, 20);
    const auto res = least_squares(L, b);
    CHECK(res.rank_deficient);
    CHECK(res.rank == 3);
    // Minimal norm splits the duplicated weight evenly.
    CHECK(std::abs(res.solution[1] - res.solution[3]) < 1e-10 * norm2(res.solution));
    // Same fit as the reduced full-rank problem.
    ComplexMatrix R(20, 3);
    for (std::size_t r = 0; r < 20; ++r)
        for (std::size_t c = 0; c < 3; ++c) R(r, c) = L(r, c);
    const auto reduced = least_squares(R, b);
    CHECK(std::abs(res.residual_norm - reduced.residual_norm) < 1e-10 * norm2(b));
    CHECK(std::abs(res.solution[1] + res.solution[3] - reduced.solution[1]) < 1e-10 * norm2(b));
}

TEST_CASE("least squares input validation") {
    CHECK_THROWS_AS(least_squares(ComplexMatrix(3, 4), ComplexVector(3)), ValidationError);
    CHECK_THROWS_AS(least_squares(ComplexMatrix(4, 3), ComplexVector(5)), DimensionError);
    ComplexMatrix bad = ComplexMatrix::identity(3);
    bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS(least_squares(bad, ComplexVector(3, 1.0)));
}

TEST_CASE("singular values") {
    const ComplexVector d{3.0, 1.0, 2.0};
    const auto sv = singular_values(ComplexMatrix::diagonal(d));
    CHECK(sv[0] == doctest::Approx(3.0));
    CHECK(sv[1] == doctest::Approx(2.0));
    CHECK(sv[2] == doctest::Approx(1.0));

    const auto ones = singular_values(ComplexMatrix(3, 3, std::vector<Complex>(9, 1.0)));
    CHECK(ones[0] == doctest::Approx(3.0));
    CHECK(std::abs(ones[1]) < 1e-12);
    CHECK(std::abs(ones[2]) < 1e-12);

    const ComplexMatrix a = random_matrix(6, 4, 31);
    const auto s = singular_values(a);
    double sum = 0.0;
    for (double v : s) sum += v * v;
    const double f = frobenius_norm(a);
    CHECK(std::abs(sum - f * f) <= 1e-10 * f * f);
    CHECK(std::is_sorted(s.rbegin(), s.rend()));
}

TEST_CASE("singular values match eigenvalues of A*A") {
    const ComplexMatrix a = random_matrix(8, 5, 41);
    const auto sv = singular_values(a);
    auto ev = hermitian_eigenvalues(a.adjoint() * a);
    std::reverse(ev.begin(), ev.end());
    for (std::size_t i = 0; i < sv.size(); ++i) CHECK(std::abs(sv[i] - std::sqrt(ev[i])) <= 1e-8 * sv[i]);
}

TEST_CASE("hermitian eigenvalues") {
    const auto id = hermitian_eigenvalues(ComplexMatrix::identity(3));
    for (double v : id) CHECK(v == doctest::Approx(1.0));
    const ComplexVector d{5.0, -1.0, 2.0};
    const auto ev = hermitian_eigenvalues(ComplexMatrix::diagonal(d));
    CHECK(ev[0] == doctest::Approx(-1.0));
    CHECK(ev[1] == doctest::Approx(2.0));
    CHECK(ev[2] == doctest::Approx(5.0));

    const ComplexMatrix g = random_matrix(5, 5, 51);
    const ComplexMatrix h = g + g.adjoint();
    const auto e = hermitian_eigenvalues(h);
    double sum = 0.0;
    for (double v : e) sum += v;
    CHECK(std::abs(sum - trace(h).real()) <= 1e-10 * frobenius_norm(h));

    ComplexMatrix skew = h;
    skew(0, 1) += Complex(0.0, 1.0);
    CHECK_THROWS_AS(hermitian_eigenvalues(skew), NumericalError);
}

TEST_CASE("rademacher and determinism") {
    RandomStream a(77), b(77);
    const auto x = draw_sequence(a, 1000, ProbeDistribution::rademacher);
    for (const auto& v : x) CHECK((v == Complex(1.0) || v == Complex(-1.0)));
    const auto y = draw_sequence(b, 1000, ProbeDistribution::rademacher);
    CHECK(x == y);
    CHECK(a.counter() == b.counter());
    CHECK(a.counter() > 0);

    RandomStream c(5, 3), d(5, 3);
    CHECK(draw_sequence(c, 17, ProbeDistribution::gaussian) == draw_sequence(d, 17, ProbeDistribution::gaussian));
    CHECK_THROWS_AS(draw_sequence(c, 0, ProbeDistribution::gaussian), ValidationError);
}

TEST_CASE("gaussian moments") {
    RandomStream s(2024);
    const std::size_t n = 100000;
    const auto x = draw_sequence(s, n, ProbeDistribution::gaussian);
    double mean = 0.0;
    for (const auto& v : x) mean += v.real();
    mean /= n;
    double var = 0.0;
    for (const auto& v : x) var += (v.real() - mean) * (v.real() - mean);
    var /= (n - 1);
    CHECK(std::abs(mean) < 3.0 / std::sqrt(static_cast<double>(n)));
    CHECK(var > 0.95);
    CHECK(var < 1.05);
}

TEST_CASE("gaussian draws from disjoint counters pass a sign-pair chi-square test") {
    // Survival function of chi-square with 3 degrees of freedom.
    auto p_value = [](double x) {
        return std::erfc(std::sqrt(x / 2.0)) + std::sqrt(2.0 * x / std::numbers::pi) * std::exp(-x / 2.0);
    };
    const std::size_t n = 20000;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        RandomStream s(seed);
        const auto first = draw_sequence(s, n, ProbeDistribution::gaussian);
        s.discard(1000);
        const auto second = draw_sequence(s, n, ProbeDistribution::gaussian);
        double counts[4] = {0, 0, 0, 0};
        for (std::size_t i = 0; i < n; ++i) counts[(first[i].real() > 0) * 2 + (second[i].real() > 0)] += 1;
        double chi2 = 0.0;
        for (double c : counts) chi2 += (c - n / 4.0) * (c - n / 4.0) / (n / 4.0);
        CHECK(p_value(chi2) > 0.001);
    }
}

TEST_CASE("distribution names") {
    CHECK(parse_distribution("gaussian") == ProbeDistribution::gaussian);
    CHECK(parse_distribution("rademacher") == ProbeDistribution::rademacher);
    CHECK_THROWS_AS(parse_distribution("uniform"), ValidationError);
}

TEST_CASE("kronecker product") {
    const ComplexMatrix a = random_matrix(2, 3, 61);
    const ComplexMatrix b = random_matrix(3, 2, 62);
    const ComplexMatrix k = kronecker(a, b);
    CHECK(k.rows() == 6);
    CHECK(k.cols() == 6);
    CHECK(std::abs(k(4, 3) - a(1, 1) * b(1, 1)) < 1e-15);
}
