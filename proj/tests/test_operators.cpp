#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "doctest.h"
#include "matprobe/errors.hpp"
#include "matprobe/linalg.hpp"
#include "matprobe/operators.hpp"
#include "matprobe/pgm.hpp"
#include "matprobe/random.hpp"

using namespace matprobe;

namespace {

constexpr double kPi = std::numbers::pi;

ComplexVector random_vector(std::size_t n, std::uint64_t seed) {
    RandomStream s(seed);
    return draw_complex_gaussian(s, n);
}

ComplexVector plane_wave(const Grid& g, std::size_t xi) {
    ComplexVector w(g.size());
    for (std::size_t x = 0; x < g.size(); ++x) w[x] = g.plane_wave(x, xi);
    return w;
}

std::string temp_path(const std::string& name) { return "matprobe_test_" + name; }

}  // namespace

TEST_CASE("media coefficients") {
    CHECK(EllipticMedia::smooth1d().at({0.0, 0.0}) == doctest::Approx(1.6));
    const EllipticMedia m = EllipticMedia::layered2d(10.0, 2);
    CHECK(m.at({0.0, 0.25}) == doctest::Approx(1.1));
    CHECK(m.at({0.25, 0.25}) == doctest::Approx(0.1));
    CHECK_THROWS_AS(EllipticMedia::layered2d(-1.0, 2), ValidationError);
    CHECK_THROWS_AS(EllipticMedia::layered2d(10.0, 0), ValidationError);
    CHECK_THROWS_AS(elliptic_operator(EllipticMedia::smooth1d(), Grid(2, 3)), DimensionError);
}

TEST_CASE("constant media gives the Laplacian eigenvalues") {
    const Grid g(1, 6);
    for (auto disc : {EllipticDiscretization::pseudospectral, EllipticDiscretization::symbol}) {
        const LinearOperator a = elliptic_operator(EllipticMedia::constant(1, 1.0), g, disc);
        for (std::size_t xi = 0; xi < g.size(); ++xi) {
            const double f = g.frequency(xi)[0];
            const auto w = plane_wave(g, xi);
            CHECK(relative_error(a.apply(w), scaled(w, 4 * kPi * kPi * f * f)) < 1e-12 * (1 + f * f) + (f == 0 ? 1e-12 : 0));
        }
        const DiscreteSymbol s = elliptic_symbol(EllipticMedia::constant(1, 1.0), g, disc);
        for (std::size_t x = 0; x < g.size(); ++x)
            for (std::size_t xi = 0; xi < g.size(); ++xi)
                CHECK(std::abs(s(x, xi) - Complex(4 * kPi * kPi * std::pow(g.frequency_norm(xi), 2))) < 1e-9);
    }
}

TEST_CASE("pseudospectral elliptic operator is Hermitian PSD and kills constants") {
    for (const auto& [media, grid] : {std::pair{EllipticMedia::smooth1d(), Grid(1, 30)},
                                      std::pair{EllipticMedia::layered2d(1e4, 2), Grid(2, 6)}}) {
        const LinearOperator a = elliptic_operator(media, grid);
        const ComplexMatrix A = a.dense();
        const double norm_a = spectral_norm(A);
        CHECK(spectral_norm(A - A.adjoint()) <= 1e-9 * norm_a);
        CHECK(norm2(a.apply(ComplexVector(grid.size(), 1.0))) <= 1e-10 * norm_a * std::sqrt(double(grid.size())));
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const auto u = random_vector(grid.size(), seed);
            const Complex q = dot(u, a.apply(u));
            const double uu = norm2(u) * norm2(u);
            CHECK(std::abs(q.imag()) <= 1e-10 * norm_a * uu);
            CHECK(q.real() >= -1e-10 * uu);
        }
        CHECK(a.nullity() == 1);
    }
}

TEST_CASE("elliptic symbols reproduce the operators") {
    for (auto disc : {EllipticDiscretization::pseudospectral, EllipticDiscretization::symbol}) {
        const Grid g1(1, 20);
        const DiscreteSymbol s1 = elliptic_symbol(EllipticMedia::smooth1d(), g1, disc);
        const LinearOperator a1 = elliptic_operator(EllipticMedia::smooth1d(), g1, disc);
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const auto u = random_vector(g1.size(), seed);
            CHECK(relative_error(symbol_apply(s1, u), a1.apply(u)) < 1e-8);
        }
        const Grid g2(2, 5);
        for (int gamma : {1, 2})
            for (double T : {10.0, 1e4}) {
                const EllipticMedia m = EllipticMedia::layered2d(T, gamma);
                const DiscreteSymbol s = elliptic_symbol(m, g2, disc);
                const LinearOperator a = elliptic_operator(m, g2, disc);
                const auto u = random_vector(g2.size(), 100 + gamma);
                CHECK(relative_error(symbol_apply(s, u), a.apply(u)) < 1e-8);
            }
    }
}

TEST_CASE("symbol discretization has the analytic symbol") {
    const Grid g(1, 20);
    const DiscreteSymbol s = elliptic_symbol(EllipticMedia::smooth1d(), g, EllipticDiscretization::symbol);
    for (std::size_t x = 0; x < g.size(); x += 7)
        for (std::size_t xi = 0; xi < g.size(); xi += 5) {
            const double t = g.point(x)[0];
            const double f = g.frequency(xi)[0];
            const double alpha = 1 + 0.4 * std::cos(4 * kPi * t) + 0.2 * std::cos(6 * kPi * t);
            const double dalpha = -1.6 * kPi * std::sin(4 * kPi * t) - 1.2 * kPi * std::sin(6 * kPi * t);
            const Complex expect = alpha * 4 * kPi * kPi * f * f - Complex(0, 2 * kPi * f) * dalpha;
            CHECK(std::abs(s(x, xi) - expect) < 1e-9 * (1 + std::abs(expect)));
        }
}

TEST_CASE("spectral derivative of the media matches the analytic derivative") {
    const Grid g(1, 50);
    const auto alpha = EllipticMedia::smooth1d().sample(g);
    const auto d = spectral_derivative(g, ComplexVector(alpha.begin(), alpha.end()), 0);
    for (std::size_t x = 0; x < g.size(); ++x) {
        const double t = g.point(x)[0];
        CHECK(std::abs(d[x] - Complex(-1.6 * kPi * std::sin(4 * kPi * t) - 1.2 * kPi * std::sin(6 * kPi * t))) < 1e-10);
    }
}

TEST_CASE("foveation preserves constants and reduces to a multiplier for constant width") {
    const Grid g(2, 10);
    const FoveationSpec spec = FoveationSpec::from_widths(0.02, 0.06);
    const LinearOperator a = foveation_operator(spec, g);
    const ComplexVector c(g.size(), 3.5);
    CHECK(relative_error(a.apply(c), c) < 1e-10);

    FoveationSpec flat;
    flat.a = 0.0;
    flat.b = 0.03 * 0.03;
    const auto u = random_vector(g.size(), 5);
    const ComplexVector out_hat = forward_dft(g, foveation_operator(flat, g).apply(u));
    ComplexVector expect = forward_dft(g, u);
    for (std::size_t xi = 0; xi < g.size(); ++xi)
        expect[xi] *= std::exp(-2 * kPi * kPi * flat.b * std::pow(g.frequency_norm(xi), 2));
    CHECK(relative_error(out_hat, expect) < 1e-10);
}

TEST_CASE("foveation widths and symbol shape") {
    const FoveationSpec spec = FoveationSpec::from_widths(0.003, 0.012);
    CHECK(spec.width({0.5, 0.5}) == doctest::Approx(0.003));
    CHECK(spec.width({1.0, 1.0}) == doctest::Approx(0.012));
    const Grid g(2, 6);
    const DiscreteSymbol s = foveation_symbol(spec, g);
    for (std::size_t x = 0; x < g.size(); x += 5)
        for (std::size_t a = 0; a < g.size(); ++a) {
            CHECK(s(x, a).real() > 0.0);
            CHECK(s(x, a).real() <= 1.0);
            for (std::size_t b = 0; b < g.size(); ++b)
                if (g.frequency_norm(a) < g.frequency_norm(b)) CHECK(s(x, a).real() >= s(x, b).real());
        }
    const auto u = random_vector(g.size(), 9);
    CHECK(relative_error(foveation_operator(spec, g).apply(u), symbol_apply(s, u)) < 1e-12);
}

TEST_CASE("foveation of a nonnegative smooth image stays below its maximum") {
    const Grid g(2, 12);
    const LinearOperator a = foveation_operator(FoveationSpec::from_widths(0.03, 0.08), g);
    ComplexVector u(g.size());
    double top = 0.0;
    for (std::size_t x = 0; x < g.size(); ++x) {
        const auto p = g.point(x);
        u[x] = 1.0 + std::cos(2 * kPi * p[0]) * std::sin(2 * kPi * p[1]);
        top = std::max(top, u[x].real());
    }
    for (const auto& v : a.apply(u)) CHECK(v.real() <= top * (1 + 1e-8));
}

TEST_CASE("condition numbers") {
    CHECK(condition_number(identity_operator(4), 0) == doctest::Approx(1.0));
    const ComplexVector d{3.0, 2.0, 1.0, 0.0};
    CHECK(condition_number(ComplexMatrix::diagonal(d), 1) == doctest::Approx(3.0));
    const LinearOperator lap = elliptic_operator(EllipticMedia::constant(1, 1.0), Grid(1, 2));
    CHECK(condition_number(lap, 1) == doctest::Approx(4.0));
    CHECK_THROWS_AS(condition_number(identity_operator(3), 3), ValidationError);
}

TEST_CASE("smallest nonzero singular value of the 1D operator is grid independent") {
    std::vector<double> smallest;
    for (int side : {51, 101, 201}) {
        const auto sv = singular_values(elliptic_operator(EllipticMedia::smooth1d(), Grid::from_side(1, side)).dense());
        smallest.push_back(sv[sv.size() - 2]);
    }
    CHECK(std::isfinite(smallest[0]));
    CHECK(smallest[1] == doctest::Approx(smallest[0]).epsilon(0.01));
    CHECK(smallest[2] == doctest::Approx(smallest[0]).epsilon(0.01));
}

TEST_CASE("mean filter") {
    const Grid g(1, 4);
    const NullspaceFilter f = mean_filter(g);
    CHECK(norm2(f(ComplexVector(g.size(), 2.0))) < 1e-14);
    ComplexVector zero_mean(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) zero_mean[i] = (i % 3 == 0) ? 2.0 : -1.0;
    CHECK(relative_error(f(zero_mean), zero_mean) < 1e-14);
    const auto u = random_vector(g.size(), 3);
    const auto v = f(u);
    Complex mean{};
    for (const auto& x : v) mean += x;
    CHECK(std::abs(mean) / g.size() <= 1e-14 * (1 + norm2(u)));
    CHECK(relative_error(f(v), v) < 1e-12);
}

TEST_CASE("operators are linear") {
    const Grid g(2, 4);
    const LinearOperator a = elliptic_operator(EllipticMedia::layered2d(10.0, 1), g);
    const auto u = random_vector(g.size(), 1), v = random_vector(g.size(), 2);
    const Complex s(0.3, -1.2);
    const auto lhs = a.apply(add(scaled(u, s), v));
    const auto rhs = add(scaled(a.apply(u), s), a.apply(v));
    CHECK(relative_error(lhs, rhs) < 1e-10);
}

TEST_CASE("dense assembly is refused above the size limit") {
    CHECK_THROWS_AS(identity_operator(kMaxDenseSize + 1).dense(), CapabilityError);
    CHECK_THROWS_AS(condition_number(identity_operator(kMaxDenseSize + 1), 0), CapabilityError);
}

TEST_CASE("PGM round trips") {
    GrayImage img;
    img.width = 3;
    img.height = 2;
    img.maxval = 255;
    img.pixels = {0, 17, 255, 128, 3, 99};
    write_pgm(temp_path("8.pgm"), img);
    const GrayImage back = read_pgm(temp_path("8.pgm"));
    CHECK(back.width == 3);
    CHECK(back.height == 2);
    CHECK(back.pixels == img.pixels);

    img.maxval = 65535;
    img.pixels = {0, 1000, 65535, 256, 255, 40000};
    write_pgm(temp_path("16.pgm"), img);
    CHECK(read_pgm(temp_path("16.pgm")).pixels == img.pixels);

    {
        std::ofstream p2(temp_path("ascii.pgm"));
        p2 << "P2\n# comment\n2 2\n15\n0 5\n10 15\n";
    }
    const GrayImage a = read_pgm(temp_path("ascii.pgm"));
    CHECK(a.maxval == 15);
    CHECK(a.pixels == std::vector<double>{0, 5, 10, 15});

    {
        std::ofstream bad(temp_path("bad.pgm"));
        bad << "P6\n1 1\n255\nabc";
    }
    CHECK_THROWS_AS(read_pgm(temp_path("bad.pgm")), ValidationError);
    for (const char* n : {"8.pgm", "16.pgm", "ascii.pgm", "bad.pgm"}) std::remove(temp_path(n).c_str());
}
