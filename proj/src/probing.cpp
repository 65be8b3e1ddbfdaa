#include "matprobe/probing.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "matprobe/errors.hpp"
#include "matprobe/linalg.hpp"

namespace matprobe {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void validate(const LinearOperator& a, const BasisFamily& family, const ProbeConfig& cfg) {
    const std::size_t n = family.grid().size();
    if (a.size() != n) throw DimensionError("operator size does not match the family grid");
    if (cfg.probes < 1) throw ValidationError("number of probes q must be at least 1");
    if (n * cfg.probes < family.size())
        throw ValidationError("n*q = " + std::to_string(n * cfg.probes) + " is smaller than p = " +
                              std::to_string(family.size()) + "; the system is underdetermined");
}

struct StackedSystem {
    ComplexMatrix L;
    ComplexVector rhs;
    double probe_norm = 0.0;
};

void fill_block(StackedSystem& sys, const BasisFamily& family, std::size_t block, std::span<const Complex> applied_to) {
    const std::size_t n = family.grid().size();
    const auto cols = apply_all(family, applied_to);
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t x = 0; x < n; ++x) sys.L(block * n + x, j) = cols[j][x];
}

double condition_from_gram(const ComplexMatrix& m) {
    const auto ev = hermitian_eigenvalues(m);
    if (!(ev.front() > 0.0)) return std::numeric_limits<double>::infinity();
    return std::sqrt(ev.back() / ev.front());
}

ProbeResult solve(StackedSystem& sys, const ProbeConfig& cfg) {
    require_finite(sys.rhs, "probe right-hand side");
    const auto ls = least_squares(sys.L, sys.rhs);
    ProbeResult r;
    r.coefficients = ls.solution;
    r.rows = sys.L.rows();
    r.rank = ls.rank;
    r.rank_deficient = ls.rank_deficient;
    const double b = norm2(sys.rhs);
    r.residual = b > 0.0 ? ls.residual_norm / b : ls.residual_norm;
    r.probe_norm = sys.probe_norm;
    r.cond_L = kNaN;
    r.deviation = kNaN;
    r.kappa = kNaN;
    if (cfg.diagnostics) {
        r.M = gram_of_columns(sys.L.column_major(), sys.L.rows(), sys.L.cols());
        r.cond_L = condition_from_gram(r.M);
    }
    return r;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

ComplexVector probe_vector(const ProbeConfig& cfg, std::size_t i, std::size_t n) {
    RandomStream s = RandomStream::derive(cfg.seed, i);
    return draw_sequence(s, n, cfg.distribution);
}

ProbeResult forward_probe(const LinearOperator& a, const BasisFamily& family, const ProbeConfig& cfg) {
    validate(a, family, cfg);
    const std::size_t n = family.grid().size();
    StackedSystem sys{ComplexMatrix(n * cfg.probes, family.size()), ComplexVector(n * cfg.probes), 0.0};
    double u2 = 0.0;
    for (std::size_t i = 0; i < cfg.probes; ++i) {
        const ComplexVector u = probe_vector(cfg, i, n);
        const double un = norm2(u);
        u2 += un * un;
        fill_block(sys, family, i, u);
        const ComplexVector au = a.apply(u);
        std::copy(au.begin(), au.end(), sys.rhs.begin() + i * n);
    }
    sys.probe_norm = std::sqrt(u2);
    ProbeResult r = solve(sys, cfg);
    if (cfg.diagnostics) {
        const GramDiagnostics g = gram_matrix(family);
        r.kappa = g.kappa;
        r.N = static_cast<double>(cfg.probes) * g.gram;
        r.deviation = gram_deviation(r.M, r.N);
    }
    return r;
}

ProbeResult backward_probe(const LinearOperator& a, const NullspaceFilter& filter, const BasisFamily& family,
                           const ProbeConfig& cfg) {
    validate(a, family, cfg);
    const std::size_t n = family.grid().size();
    StackedSystem sys{ComplexMatrix(n * cfg.probes, family.size()), ComplexVector(n * cfg.probes), 0.0};
    double u2 = 0.0;
    for (std::size_t i = 0; i < cfg.probes; ++i) {
        const ComplexVector u = probe_vector(cfg, i, n);
        const ComplexVector v = a.apply(u);
        const ComplexVector filtered = filter(u);
        if (filtered.size() != n) throw DimensionError("nullspace filter returned the wrong length");
        const double un = norm2(filtered);
        u2 += un * un;
        fill_block(sys, family, i, v);
        std::copy(filtered.begin(), filtered.end(), sys.rhs.begin() + i * n);
    }
    sys.probe_norm = std::sqrt(u2);
    return solve(sys, cfg);
}

LinearOperator reconstruct(const BasisFamily& family, const ComplexVector& c) { return combination_operator(family, c); }

DiscreteSymbol reconstruct_symbol(const BasisFamily& family, const ComplexVector& c) {
    return combination_symbol(family, c);
}

ComplexMatrix sample_gram(const BasisFamily& family, RandomStream& stream, std::size_t probes,
                          ProbeDistribution distribution) {
    const std::size_t n = family.grid().size();
    const std::size_t p = family.size();
    std::vector<Complex> colmajor(n * probes * p);
    const std::size_t rows = n * probes;
    for (std::size_t i = 0; i < probes; ++i) {
        const ComplexVector u = draw_sequence(stream, n, distribution);
        const auto cols = apply_all(family, u);
        for (std::size_t j = 0; j < p; ++j) std::copy(cols[j].begin(), cols[j].end(), colmajor.begin() + j * rows + i * n);
    }
    return gram_of_columns(colmajor, rows, p);
}

double gram_deviation(const ComplexMatrix& m, const ComplexMatrix& n) {
    if (m.rows() != n.rows() || m.cols() != n.cols()) throw DimensionError("gram_deviation: shapes differ");
    return hermitian_norm(m - n) / hermitian_norm(n);
}

ErrorBoundReport error_bound_check(const ProbeResult& result, const GramDiagnostics& gram, std::size_t n,
                                   std::size_t probes, double epsilon, double measured) {
    if (result.M.empty()) throw ValidationError("error_bound_check needs a probe result with diagnostics");
    if (epsilon < 0.0) throw ValidationError("epsilon must be nonnegative");
    ErrorBoundReport rep;
    const ComplexMatrix N = static_cast<double>(probes) * gram.gram;
    rep.t = gram.kappa * gram_deviation(result.M, N);
    rep.measured = measured;
    if (!(rep.t < 1.0)) {
        rep.inconclusive = true;
        rep.bound = std::numeric_limits<double>::infinity();
        return rep;
    }
    const double p = static_cast<double>(gram.gram.rows());
    const double scale = gram.kappa * p / ((1.0 - rep.t) * static_cast<double>(probes * n));
    rep.bound = epsilon * (1.0 + gram.lambda * result.probe_norm * std::sqrt(scale));
    // Round-off floor so an in-span operator (ε = 0) is judged sensibly.
    rep.satisfied = measured <= rep.bound + 1e-8;
    return rep;
}

void write_probe_csv(std::ostream& out, const ProbeResult& r, const std::string& header) {
    std::istringstream lines(header);
    std::string line;
    while (std::getline(lines, line)) out << "# " << line << '\n';
    out << "index,real,imag\n";
    for (std::size_t i = 0; i < r.coefficients.size(); ++i)
        out << i << ',' << format_double(r.coefficients[i].real()) << ',' << format_double(r.coefficients[i].imag())
            << '\n';
    out << "# rows," << r.rows << '\n';
    out << "# rank," << r.rank << '\n';
    out << "# rank_deficient," << (r.rank_deficient ? 1 : 0) << '\n';
    out << "# cond_L," << format_double(r.cond_L) << '\n';
    out << "# residual," << format_double(r.residual) << '\n';
    out << "# deviation," << format_double(r.deviation) << '\n';
}

ComplexVector read_coefficients_csv(std::istream& in) {
    ComplexVector c;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("index", 0) == 0) continue;
        std::istringstream row(line);
        std::string idx, re, im;
        if (!std::getline(row, idx, ',') || !std::getline(row, re, ',') || !std::getline(row, im))
            throw ValidationError("coefficient file: bad row '" + line + "'");
        try {
            if (std::stoul(idx) != c.size()) throw ValidationError("coefficient file: indices must be consecutive");
            c.emplace_back(std::stod(re), std::stod(im));
        } catch (const std::logic_error&) {
            throw ValidationError("coefficient file: bad row '" + line + "'");
        }
    }
    if (c.empty()) throw ValidationError("coefficient file holds no coefficients");
    return c;
}

}  // namespace matprobe
