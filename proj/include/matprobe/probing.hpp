#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "matprobe/basis.hpp"
#include "matprobe/linear_operator.hpp"
#include "matprobe/random.hpp"

namespace matprobe {

struct ProbeConfig {
    std::size_t probes = 1;  // q
    std::uint64_t seed = 0;
    ProbeDistribution distribution = ProbeDistribution::gaussian;
    /// Compute M, N, cond(L) and the deviation. Costs a p×p eigensolve or two.
    bool diagnostics = true;
};

struct ProbeResult {
    ComplexVector coefficients;
    std::size_t rows = 0;            // n·q
    std::size_t rank = 0;
    bool rank_deficient = false;
    double residual = 0.0;           // ‖Lc − b‖/‖b‖
    double probe_norm = 0.0;         // ‖u‖ over all stacked probes
    double cond_L = 0.0;             // from the eigenvalues of M; NaN without diagnostics
    ComplexMatrix M;                 // L*L
    ComplexMatrix N;                 // q·gram (forward probing only)
    double deviation = 0.0;          // ‖M − N‖/‖N‖; NaN when N is unavailable
    double kappa = 0.0;              // κ of the family gram (forward probing only)
};

/// Probe i is drawn from the sub-stream (seed, i), so runs with different q share
/// their leading probes.
ComplexVector probe_vector(const ProbeConfig& cfg, std::size_t i, std::size_t n);

/// Solves the stacked system L c = [A u_1; …; A u_q] with L's block i holding the
/// columns B_j u_i.
ProbeResult forward_probe(const LinearOperator& a, const BasisFamily& family, const ProbeConfig& cfg);

/// Solves L c = [ũ_1; …; ũ_q] with columns B_j v_i, v_i = A u_i and ũ_i = filter(u_i),
/// so that Σ c_j B_j approximates the pseudoinverse of A.
ProbeResult backward_probe(const LinearOperator& a, const NullspaceFilter& filter, const BasisFamily& family,
                           const ProbeConfig& cfg);

/// v ↦ Σ c_j B_j v
LinearOperator reconstruct(const BasisFamily& family, const ComplexVector& c);
/// Symbol Σ c_j e_j(x) g_k(ξ) of the reconstruction.
DiscreteSymbol reconstruct_symbol(const BasisFamily& family, const ComplexVector& c);

/// M = L*L for a single stream of probes, without solving anything. Used by the
/// Monte Carlo studies.
ComplexMatrix sample_gram(const BasisFamily& family, RandomStream& stream, std::size_t probes,
                          ProbeDistribution distribution);

/// ‖M − N‖/‖N‖ in the spectral norm.
double gram_deviation(const ComplexMatrix& m, const ComplexMatrix& n);

struct ErrorBoundReport {
    double t = 0.0;          // κ‖M − N‖/‖N‖
    double bound = 0.0;
    double measured = 0.0;
    bool inconclusive = false;
    bool satisfied = false;
};

/// Recovery error bound for an operator within ε (spectral norm) of the span:
///   ‖A − Σ c_j B_j‖ ≤ ε (1 + λ‖u‖ (κp / ((1 − t) q n))^{1/2}),  t = κ‖M − N‖/‖N‖.
/// The hypothesis needs t < 1; otherwise the report is inconclusive.
ErrorBoundReport error_bound_check(const ProbeResult& result, const GramDiagnostics& gram, std::size_t n,
                                   std::size_t probes, double epsilon, double measured);

/// CSV with '#' header rows echoing the configuration, body rows "index,real,imag",
/// and '#' footer rows with the diagnostics.
void write_probe_csv(std::ostream& out, const ProbeResult& r, const std::string& header);
/// Reads the coefficient rows back.
ComplexVector read_coefficients_csv(std::istream& in);

}  // namespace matprobe
