#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "matprobe/errors.hpp"
#include "matprobe/random.hpp"
#include "matprobe/symbol.hpp"
#include "matprobe/symbol_io.hpp"

using namespace matprobe;

namespace {

constexpr double kPi = std::numbers::pi;

DiscreteSymbol random_symbol(const Grid& g, std::uint64_t seed) {
    RandomStream s(seed);
    return DiscreteSymbol(g, draw_complex_gaussian(s, g.size() * g.size()));
}

ComplexVector random_vector(std::size_t n, std::uint64_t seed) {
    RandomStream s(seed);
    return draw_complex_gaussian(s, n);
}

DiscreteSymbol laplacian(const Grid& g) {
    return DiscreteSymbol::from_function(g, [&](std::size_t, std::size_t xi) {
        const double r = g.frequency_norm(xi);
        return Complex(-4.0 * kPi * kPi * r * r);
    });
}

double rel(const ComplexMatrix& a, const ComplexMatrix& b) { return frobenius_norm(a - b) / frobenius_norm(b); }

double sym_rel(const DiscreteSymbol& a, const DiscreteSymbol& b) { return relative_error(a.values(), b.values()); }

const Grid kGrids[] = {Grid(1, 1), Grid(1, 2), Grid(1, 5), Grid(2, 1), Grid(2, 2)};

}  // namespace

TEST_CASE("grid layout") {
    const Grid g(2, 3);
    CHECK(g.side() == 7);
    CHECK(g.size() == 49);
    CHECK(g.frequency(0) == Frequency{-3, -3});
    CHECK(g.frequency(48) == Frequency{3, 3});
    CHECK(g.frequency_index({4, -4}) == g.frequency_index({-3, 3}));
    CHECK(g.point(8)[0] == doctest::Approx(1.0 / 7.0));
    CHECK_THROWS_AS(Grid(3, 2), ValidationError);
    CHECK_THROWS_AS(Grid(1, 0), ValidationError);
    CHECK_THROWS_AS(Grid::from_side(1, 10), ValidationError);
}

TEST_CASE("identity symbol applies as identity") {
    const Grid g(2, 3);
    const DiscreteSymbol one = DiscreteSymbol::from_function(g, [](std::size_t, std::size_t) { return Complex(1.0); });
    const auto u = random_vector(g.size(), 1);
    CHECK(relative_error(symbol_apply(one, u), u) < 1e-13);
    CHECK(rel(symbol_to_matrix(one), ComplexMatrix::identity(g.size())) < 1e-14);
    CHECK(std::abs(symbol_trace(DiscreteSymbol::from_function(Grid(1, 2), [](std::size_t, std::size_t) { return Complex(1.0); })) -
                   Complex(5.0)) < 1e-13);
}

TEST_CASE("laplacian symbol") {
    const Grid g(1, 4);
    const DiscreteSymbol a = laplacian(g);
    ComplexVector u(g.size());
    for (std::size_t x = 0; x < g.size(); ++x) u[x] = std::polar(1.0, 2 * kPi * g.point(x)[0]);
    CHECK(relative_error(symbol_apply(a, u), scaled(u, -4 * kPi * kPi)) < 1e-12);

    const ComplexMatrix m = symbol_to_matrix(a);
    for (std::size_t r = 0; r < g.size(); ++r)
        for (std::size_t c = 0; c < g.size(); ++c) {
            const double f = g.frequency(c)[0];
            const Complex expect = r == c ? Complex(-4 * kPi * kPi * f * f) : Complex{};
            CHECK(std::abs(m(r, c) - expect) < 1e-10);
        }
    CHECK(sym_rel(matrix_to_symbol(m, g), a) < 1e-12);

    CHECK(std::abs(symbol_trace(laplacian(Grid(1, 1))) - Complex(-8 * kPi * kPi)) < 1e-10);
}

TEST_CASE("multiplication by e^{2πix} shifts frequencies up by one") {
    const Grid g(1, 2);
    const DiscreteSymbol a =
        DiscreteSymbol::from_function(g, [&](std::size_t x, std::size_t) { return std::polar(1.0, 2 * kPi * g.point(x)[0]); });
    const ComplexMatrix m = symbol_to_matrix(a);
    for (std::size_t eta = 0; eta < 5; ++eta)
        for (std::size_t xi = 0; xi < 5; ++xi) {
            const bool hit = eta == (xi + 1) % 5;
            CHECK(std::abs(m(eta, xi) - (hit ? Complex(1.0) : Complex{})) < 1e-12);
        }
}

TEST_CASE("symbol_apply agrees with the dense path") {
    for (const Grid& g : kGrids) {
        const DiscreteSymbol a = random_symbol(g, 10 + g.size());
        const auto u = random_vector(g.size(), 20 + g.size());
        const ComplexVector dense = inverse_dft(g, symbol_to_matrix(a) * forward_dft(g, u));
        CHECK(relative_error(symbol_apply(a, u), dense) < 1e-10);
    }
}

TEST_CASE("matrix and symbol round trips") {
    for (const Grid& g : kGrids) {
        const DiscreteSymbol a = random_symbol(g, 30 + g.size());
        CHECK(sym_rel(matrix_to_symbol(symbol_to_matrix(a), g), a) < 1e-10);
        RandomStream s(40 + g.size());
        const ComplexMatrix m(g.size(), g.size(), draw_complex_gaussian(s, g.size() * g.size()));
        CHECK(rel(symbol_to_matrix(matrix_to_symbol(m, g)), m) < 1e-10);
    }
    CHECK(sym_rel(matrix_to_symbol(ComplexMatrix::identity(5), Grid(1, 2)),
                  DiscreteSymbol::from_function(Grid(1, 2), [](std::size_t, std::size_t) { return Complex(1.0); })) < 1e-14);
}

TEST_CASE("trace, adjoint and composition match dense algebra") {
    for (const Grid& g : kGrids) {
        const DiscreteSymbol a = random_symbol(g, 50 + g.size());
        const DiscreteSymbol b = random_symbol(g, 60 + g.size());
        const ComplexMatrix A = symbol_to_matrix(a);
        const ComplexMatrix B = symbol_to_matrix(b);
        CHECK(std::abs(symbol_trace(a) - trace(A)) <= 1e-10 * frobenius_norm(A));
        CHECK(rel(symbol_to_matrix(symbol_adjoint(a)), A.adjoint()) < 1e-10);
        CHECK(sym_rel(symbol_adjoint(symbol_adjoint(a)), a) < 1e-12);
        CHECK(rel(symbol_to_matrix(symbol_compose(a, b)), A * B) < 1e-9);
    }
}

TEST_CASE("multipliers: self-adjoint and composing pointwise") {
    const Grid g(2, 2);
    auto g1 = [&](std::size_t xi) { return 1.0 + g.frequency_norm(xi); };
    auto g2 = [&](std::size_t xi) { return std::cos(g.frequency(xi)[0] + 0.3 * g.frequency(xi)[1]); };
    const auto a = DiscreteSymbol::from_function(g, [&](std::size_t, std::size_t xi) { return Complex(g1(xi)); });
    const auto b = DiscreteSymbol::from_function(g, [&](std::size_t, std::size_t xi) { return Complex(g2(xi)); });
    CHECK(sym_rel(symbol_adjoint(a), a) < 1e-12);
    const auto ab = DiscreteSymbol::from_function(g, [&](std::size_t, std::size_t xi) { return Complex(g1(xi) * g2(xi)); });
    CHECK(sym_rel(symbol_compose(a, b), ab) < 1e-12);
    const auto one = DiscreteSymbol::from_function(g, [](std::size_t, std::size_t) { return Complex(1.0); });
    const DiscreteSymbol r = random_symbol(g, 71);
    CHECK(sym_rel(symbol_compose(r, one), r) < 1e-12);
}

TEST_CASE("tr(A*A) is the squared Frobenius norm") {
    for (const Grid& g : kGrids) {
        const DiscreteSymbol a = random_symbol(g, 80 + g.size());
        const Complex t = symbol_trace(symbol_compose(symbol_adjoint(a), a));
        const double f = frobenius_norm(symbol_to_matrix(a));
        CHECK(std::abs(t.imag()) <= 1e-9 * f * f);
        CHECK(t.real() >= 0.0);
        CHECK(std::abs(t.real() - f * f) <= 1e-9 * f * f);
    }
}

TEST_CASE("composition is associative") {
    const Grid g(1, 2);
    const auto a = random_symbol(g, 91), b = random_symbol(g, 92), c = random_symbol(g, 93);
    CHECK(sym_rel(symbol_compose(symbol_compose(a, b), c), symbol_compose(a, symbol_compose(b, c))) < 1e-8);
    const Grid g2(2, 2);
    const auto d = random_symbol(g2, 94), e = random_symbol(g2, 95), f = random_symbol(g2, 96);
    CHECK(sym_rel(symbol_compose(symbol_compose(d, e), f), symbol_compose(d, symbol_compose(e, f))) < 1e-8);
}

TEST_CASE("symbol_of_action recovers a symbol") {
    const Grid g(2, 2);
    const DiscreteSymbol a = random_symbol(g, 101);
    const auto recovered = symbol_of_action(g, [&](std::span<const Complex> u) { return symbol_apply(a, u); });
    CHECK(sym_rel(recovered, a) < 1e-12);
}

TEST_CASE("grid and length mismatches") {
    CHECK_THROWS_AS(symbol_compose(random_symbol(Grid(1, 2), 1), random_symbol(Grid(1, 3), 2)), DimensionError);
    CHECK_THROWS_AS(symbol_apply(random_symbol(Grid(1, 2), 1), ComplexVector(4)), DimensionError);
    CHECK_THROWS_AS(matrix_to_symbol(ComplexMatrix::identity(4), Grid(1, 2)), DimensionError);
}

TEST_CASE("symbol CSV round trip is exact") {
    const DiscreteSymbol a = random_symbol(Grid(2, 1), 111);
    std::stringstream ss;
    write_symbol_csv(ss, a);
    const DiscreteSymbol b = read_symbol_csv(ss);
    CHECK(b.grid() == a.grid());
    for (std::size_t i = 0; i < a.values().size(); ++i) CHECK(a.values()[i] == b.values()[i]);

    std::stringstream broken("# matprobe symbol dim=1 band=1\nx_index,xi_index,real,imag\n0,0,1,0\n");
    CHECK_THROWS_AS(read_symbol_csv(broken), ValidationError);
}
