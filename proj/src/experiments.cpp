#include "matprobe/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "matprobe/basis.hpp"
#include "matprobe/errors.hpp"
#include "matprobe/linalg.hpp"
#include "matprobe/operators.hpp"
#include "matprobe/pgm.hpp"
#include "matprobe/probing.hpp"
#include "matprobe/random.hpp"

namespace matprobe {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
    if (std::isnan(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i];
    return out;
}

template <typename T>
std::vector<std::string> to_strings(const std::vector<T>& v) {
    std::vector<std::string> out;
    for (const auto& x : v) {
        if constexpr (std::is_same_v<T, double>) out.push_back(fmt(x));
        else out.push_back(std::to_string(x));
    }
    return out;
}

unsigned thread_count(const ExperimentSpec& s) {
    // Read without resolving: the worker count never affects the output.
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (!s.has("threads")) return hw;
    const int t = std::stoi(s.get_string("threads", "1"));
    if (t < 1) throw ValidationError("threads must be at least 1");
    return static_cast<unsigned>(t);
}

int require_odd_square(int p) {
    const int j = static_cast<int>(std::lround(std::sqrt(static_cast<double>(p))));
    if (p < 1 || j * j != p || j % 2 == 0) throw ValidationError("p must be the square of an odd integer, got " + std::to_string(p));
    return j;
}

int require_positive(int v, const char* what) {
    if (v < 1) throw ValidationError(std::string(what) + " must be at least 1");
    return v;
}

FamilyDescriptor family_from(const ExperimentSpec& s, int J, int K, double order) {
    FamilyDescriptor d;
    d.kind = parse_family_kind(s.get_string("family", "fourier"));
    d.J = s.get_int("J", J);
    d.K = s.get_int("K", K);
    if (d.kind == FamilyKind::chebdisk) {
        d.K1 = s.get_int("K1", 3);
        d.normalized = s.get_flag("normalized");
    }
    d.order = s.get_double("order", order);
    return d;
}

EllipticMedia media_from(const ExperimentSpec& s, int dim) {
    if (dim == 1) return EllipticMedia::smooth1d();
    return EllipticMedia::layered2d(s.get_double("contrast", 10.0), s.get_int("roughness", 2));
}

// Deviation ‖M − N‖/‖N‖ for one Monte Carlo draw, N = gram (precomputed norm).
double deviation_sample(const BasisFamily& family, const ComplexMatrix& gram, double gram_norm, std::uint64_t seed,
                        std::uint64_t trial, ProbeDistribution dist) {
    RandomStream stream = RandomStream::derive(seed, trial);
    const ComplexMatrix m = sample_gram(family, stream, 1, dist);
    return hermitian_norm(m - gram) / gram_norm;
}

std::string cmd_statstudy(const ExperimentSpec& s) {
    const int trials = require_positive(s.get_int("trials", 100), "trials");
    const std::uint64_t seed = s.get_u64("seed", 1);
    const ProbeDistribution dist = parse_distribution(s.get_string("rng", "gaussian"));
    const unsigned threads = thread_count(s);
    const bool n_sweep = s.has_sweep("n");
    const std::vector<int> ps = s.sweep_ints("p", n_sweep ? std::vector<int>{25} : std::vector<int>{9, 25, 49, 81});
    const std::vector<double> cs = n_sweep ? std::vector<double>{} : s.sweep_doubles("c", {1.5});
    const std::vector<int> ns = n_sweep ? s.sweep_ints("n", {}) : std::vector<int>{};

    struct Point {
        int p;
        double c;
        int n;
    };
    std::vector<Point> points;
    if (n_sweep) {
        for (int p : ps)
            for (int n : ns) points.push_back({p, kNaN, n});
    } else {
        for (double c : cs)
            for (int p : ps) points.push_back({p, c, odd_size_for(p, c)});
    }

    std::ostringstream out;
    out << "p,c,n,mean,sigma,trials\n";
    std::vector<SampleStats> stats(points.size());
    for (std::size_t pt = 0; pt < points.size(); ++pt) {
        const int J = require_odd_square(points[pt].p);
        if (points[pt].n < 3 || points[pt].n % 2 == 0) throw ValidationError("n must be odd and at least 3");
        const Grid grid = Grid::from_side(1, points[pt].n);
        const BasisFamily family = make_fourier_family(grid, J, J);
        const ComplexMatrix gram = gram_matrix(family).gram;
        const double gram_norm = hermitian_norm(gram);
        const std::uint64_t point_seed = trial_seed(seed, pt);
        std::vector<double> dev(trials);
        parallel_for(trials, threads,
                     [&](std::size_t i) { dev[i] = deviation_sample(family, gram, gram_norm, point_seed, i, dist); });
        stats[pt] = sample_stats(dev);
        out << points[pt].p << ',' << fmt(points[pt].c) << ',' << points[pt].n << ',' << fmt(stats[pt].mean) << ','
            << fmt(stats[pt].sigma) << ',' << stats[pt].count << '\n';
    }

    // Fits on log-transformed data.
    if (n_sweep) {
        for (int p : ps) {
            std::vector<double> x, y;
            for (std::size_t pt = 0; pt < points.size(); ++pt)
                if (points[pt].p == p && stats[pt].mean > 0.0) {
                    x.push_back(std::log(points[pt].n));
                    y.push_back(std::log(stats[pt].mean));
                }
            if (x.size() >= 2) {
                const LineFit f = fit_line(x, y);
                out << "# fit p=" << p << ": log(mean) vs log(n), slope=" << fmt(f.slope)
                    << " intercept=" << fmt(f.intercept) << " n_range=[" << ns.front() << "," << ns.back() << "]\n";
            }
        }
    } else {
        for (double c : cs) {
            std::vector<double> x, y;
            for (std::size_t pt = 0; pt < points.size(); ++pt)
                if (points[pt].c == c) {
                    x.push_back(std::log(points[pt].p));
                    y.push_back(stats[pt].mean);
                }
            if (x.size() >= 2) {
                const LineFit f = fit_line(x, y);
                out << "# fit c=" << fmt(c) << ": mean vs log(p), slope=" << fmt(f.slope)
                    << " intercept=" << fmt(f.intercept) << " p_range=[" << ps.front() << "," << ps.back() << "]\n";
            }
        }
    }
    return out.str();
}

std::string cmd_tail(const ExperimentSpec& s) {
    const int p = s.get_int("p", 25);
    const int J = require_odd_square(p);
    const Grid grid = Grid::from_side(1, s.get_int("grid", 51));
    const int samples = require_positive(s.get_int("samples", 100000), "samples");
    const std::uint64_t seed = s.get_u64("seed", 1);
    const ProbeDistribution dist = parse_distribution(s.get_string("rng", "gaussian"));
    const unsigned threads = thread_count(s);

    const BasisFamily family = make_fourier_family(grid, J, J);
    const ComplexMatrix gram = gram_matrix(family).gram;
    const double gram_norm = hermitian_norm(gram);
    std::vector<double> dev(samples);
    parallel_for(samples, threads, [&](std::size_t i) { dev[i] = deviation_sample(family, gram, gram_norm, seed, i, dist); });
    std::sort(dev.begin(), dev.end());

    std::vector<double> ts;
    if (s.has_sweep("t")) {
        ts = s.sweep_doubles("t", {});
        std::sort(ts.begin(), ts.end());
    } else {
        const int steps = 40;
        for (int k = 0; k <= steps; ++k) ts.push_back(dev.back() * k / steps);
    }

    std::ostringstream out;
    out << "t,count,probability\n";
    std::vector<double> fx, fy;
    for (double t : ts) {
        // Exceedance P(X > t).
        const auto count = static_cast<std::size_t>(dev.end() - std::upper_bound(dev.begin(), dev.end(), t));
        const double prob = static_cast<double>(count) / samples;
        out << fmt(t) << ',' << count << ',' << fmt(prob) << '\n';
        if (prob <= 0.1 && count >= 10) {
            fx.push_back(t);
            fy.push_back(std::log(prob));
        }
    }
    out << "# sample max=" << fmt(dev.back()) << " median=" << fmt(dev[dev.size() / 2]) << '\n';
    if (fx.size() >= 2) {
        const LineFit f = fit_line(fx, fy);
        out << "# fit upper tail (P <= 0.1, count >= 10): log(P) vs t, slope=" << fmt(f.slope)
            << " intercept=" << fmt(f.intercept) << " t_range=[" << fmt(fx.front()) << "," << fmt(fx.back()) << "]\n";
    } else {
        out << "# fit upper tail: too few points\n";
    }
    return out.str();
}

std::string cmd_chebcond(const ExperimentSpec& s) {
    const int dim = s.get_int("dim", 1);
    if (dim != 1 && dim != 2) throw ValidationError("dim must be 1 or 2");
    const Grid grid = Grid::from_side(dim, s.get_int("grid", dim == 1 ? 2001 : 55));
    const std::vector<int> Ks = s.sweep_ints("K", dim == 1 ? std::vector<int>{4, 8, 16} : std::vector<int>{2, 3, 4, 5, 6, 7, 8});
    const int J = s.get_int("J", 1);
    const double order = s.get_double("order", 0.0);
    const int K1 = dim == 2 ? s.get_int("K1", 3) : 1;

    std::ostringstream out;
    out << (dim == 1 ? "K,p,kappa,lambda,kappa_over_K\n" : "K,p,kappa,lambda,kappa_normalized,lambda_normalized\n");
    std::vector<double> lx, ly;
    for (int K : Ks) {
        if (dim == 1) {
            const GramDiagnostics g = gram_matrix(make_cheb1d_family(grid, J, K, order));
            out << K << ',' << J * K << ',' << fmt(g.kappa) << ',' << fmt(g.lambda) << ',' << fmt(g.kappa / K) << '\n';
            lx.push_back(std::log(K));
            ly.push_back(std::log(g.kappa));
        } else {
            const GramDiagnostics g = gram_matrix(make_chebdisk_family(grid, J, K, K1, order, false));
            const GramDiagnostics gn = gram_matrix(make_chebdisk_family(grid, J, K, K1, order, true));
            out << K << ',' << J * J * K1 * K << ',' << fmt(g.kappa) << ',' << fmt(g.lambda) << ',' << fmt(gn.kappa)
                << ',' << fmt(gn.lambda) << '\n';
            lx.push_back(std::log(K));
            ly.push_back(std::log(g.kappa));
        }
    }
    if (lx.size() >= 2) {
        const LineFit f = fit_line(lx, ly);
        out << "# fit log(kappa) vs log(K), slope=" << fmt(f.slope) << " intercept=" << fmt(f.intercept) << " K_range=["
            << Ks.front() << "," << Ks.back() << "]\n";
    }
    return out.str();
}

struct OperatorChoice {
    LinearOperator op;
    NullspaceFilter filter;
};

OperatorChoice operator_from(const ExperimentSpec& s, const Grid& grid) {
    const std::string kind = s.get_string("operator", "elliptic");
    if (kind == "elliptic") {
        const auto disc = parse_discretization(s.get_string("discretization", "pseudospectral"));
        return {elliptic_operator(media_from(s, grid.dim()), grid, disc), mean_filter(grid)};
    }
    if (kind == "identity") return {identity_operator(grid.size()), identity_filter()};
    if (kind == "foveation") {
        const double w0 = s.get_double("w0", 0.003 * 201.0 / grid.side());
        const double wc = s.get_double("wc", 0.012 * 201.0 / grid.side());
        return {foveation_operator(FoveationSpec::from_widths(w0, wc), grid), identity_filter()};
    }
    throw ValidationError("unknown operator '" + kind + "' (elliptic, identity, foveation)");
}

ComplexMatrix apply_columns(const BasisFamily& family, const ComplexVector& c, const ComplexMatrix& a) {
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t col = 0; col < a.cols(); ++col) out.set_column(col, apply_combination(family, c, a.column(col)));
    return out;
}

std::string cmd_probe(const ExperimentSpec& s) {
    const std::string mode = s.get_string("mode", "forward");
    if (mode != "forward" && mode != "backward") throw ValidationError("mode must be forward or backward");
    const int dim = s.get_int("dim", 1);
    const Grid grid = Grid::from_side(dim, s.get_int("grid", dim == 1 ? 201 : 21));
    const FamilyDescriptor fd = family_from(s, 5, 5, 0.0);
    const BasisFamily family = make_family(grid, fd);
    ProbeConfig cfg;
    cfg.probes = static_cast<std::size_t>(require_positive(s.get_int("q", 1), "q"));
    cfg.seed = s.get_u64("seed", 1);
    cfg.distribution = parse_distribution(s.get_string("rng", "gaussian"));
    const OperatorChoice choice = operator_from(s, grid);
    const bool dense_ok = grid.size() <= kMaxDenseSize;
    // M, N and the deviation are cheap next to the dense checks only for moderate p.
    cfg.diagnostics = family.size() <= 400;

    const ProbeResult r = mode == "forward" ? forward_probe(choice.op, family, cfg)
                                            : backward_probe(choice.op, choice.filter, family, cfg);
    std::ostringstream out;
    write_probe_csv(out, r, "");
    out << "# p," << family.size() << '\n';
    if (dense_ok) {
        const ComplexMatrix a = choice.op.dense();
        if (mode == "forward") {
            const ComplexMatrix c = apply_columns(family, r.coefficients, ComplexMatrix::identity(grid.size()));
            out << "# operator_error," << fmt(frobenius_norm(c - a) / frobenius_norm(a)) << '\n';
        } else {
            const ComplexMatrix ca = apply_columns(family, r.coefficients, a);
            const double cond_a = condition_number(a, choice.op.nullity());
            const double cond_ca = condition_number(ca, choice.op.nullity());
            out << "# cond_A," << fmt(cond_a) << '\n';
            out << "# cond_CA," << fmt(cond_ca) << '\n';
            out << "# ratio," << fmt(cond_ca / cond_a) << '\n';
        }
    }
    if (s.has("coef-out")) {
        std::ofstream coef(s.get_string("coef-out", ""));
        if (!coef) throw ValidationError("cannot open coefficient output file");
        write_probe_csv(coef, r, fd.describe());
    }
    return out.str();
}

std::string cmd_precond2d(const ExperimentSpec& s) {
    const Grid grid = Grid::from_side(2, s.get_int("grid", 21));
    const std::vector<double> Ts = s.sweep_doubles("T", {1e4});
    const std::vector<int> gammas = s.sweep_ints("gamma", {2});
    const std::vector<int> Js = s.sweep_ints("J", {3, 5});
    const int trials = require_positive(s.get_int("trials", 10), "trials");
    const double order = s.get_double("order", -2.0);
    const double oversample = s.get_double("oversample", 16.0);
    const std::uint64_t seed = s.get_u64("seed", 1);
    const ProbeDistribution dist = parse_distribution(s.get_string("rng", "gaussian"));
    const bool fixed_q = s.has("q");
    const int q_fixed = fixed_q ? require_positive(s.get_int("q", 1), "q") : 0;
    const auto disc = parse_discretization(s.get_string("discretization", "pseudospectral"));
    const unsigned threads = thread_count(s);
    const std::size_t n = grid.size();

    std::ostringstream out;
    out << "T,gamma,J,p,q,mean_ratio,sigma,trials,cond_A\n";
    std::size_t point = 0;
    for (double T : Ts)
        for (int gamma : gammas) {
            const LinearOperator a = elliptic_operator(EllipticMedia::layered2d(T, gamma), grid, disc);
            const ComplexMatrix dense_a = a.dense();
            const double cond_a = condition_number(dense_a, 1);
            const NullspaceFilter filter = mean_filter(grid);
            for (int J : Js) {
                const BasisFamily family = make_fourier_family(grid, J, J, order);
                const std::size_t p = family.size();
                const std::size_t q = fixed_q ? static_cast<std::size_t>(q_fixed)
                                              : std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(oversample * p / n)));
                const std::uint64_t point_seed = trial_seed(seed, point++);
                std::vector<double> ratio(trials);
                parallel_for(trials, threads, [&](std::size_t t) {
                    ProbeConfig cfg;
                    cfg.probes = q;
                    cfg.seed = trial_seed(point_seed, t);
                    cfg.distribution = dist;
                    cfg.diagnostics = false;
                    const ProbeResult r = backward_probe(a, filter, family, cfg);
                    ratio[t] = condition_number(apply_columns(family, r.coefficients, dense_a), 1) / cond_a;
                });
                const SampleStats st = sample_stats(ratio);
                out << fmt(T) << ',' << gamma << ',' << J << ',' << p << ',' << q << ',' << fmt(st.mean) << ','
                    << fmt(st.sigma) << ',' << st.count << ',' << fmt(cond_a) << '\n';
            }
        }
    return out.str();
}

std::string cmd_ordercorrect(const ExperimentSpec& s) {
    const int dim = s.get_int("dim", 1);
    const std::vector<int> sides = s.sweep_ints("n", dim == 1 ? std::vector<int>{101, 201} : std::vector<int>{15, 21});
    const std::vector<double> orders = s.sweep_doubles("m", {0.0, -1.0, -2.0, -3.0});
    const FamilyDescriptor base = family_from(s, 5, 5, 0.0);

    std::ostringstream out;
    out << "m,n,p,kappa,lambda,effective_lambda,rank\n";
    for (int side : sides) {
        const Grid grid = Grid::from_side(dim, side);
        const OperatorChoice choice = operator_from(s, grid);
        const ComplexMatrix a = choice.op.dense();
        for (double m : orders) {
            FamilyDescriptor fd = base;
            fd.order = m;
            const BasisFamily family = make_family(grid, fd);
            const GramDiagnostics g = transformed_family(family, a);
            out << fmt(m) << ',' << grid.size() << ',' << family.size() << ',' << fmt(g.kappa) << ',' << fmt(g.lambda)
                << ',' << fmt(g.effective_lambda) << ',' << g.effective_rank << '\n';
        }
    }
    return out.str();
}

std::string cmd_foveate(const ExperimentSpec& s) {
    std::vector<double> image;
    int side = 0;
    if (s.has("image")) {
        const GrayImage img = read_pgm(s.get_string("image", ""));
        if (img.width != img.height) throw ValidationError("foveation input must be a square image");
        side = static_cast<int>(img.width);
        if (side % 2 == 0) throw ValidationError("foveation input side must be odd (grid side 2*band+1)");
        image = img.pixels;
    } else {
        side = s.get_int("grid", 65);
        image = test_image(side);
    }
    const Grid grid = Grid::from_side(2, side);
    const std::vector<int> Js = s.sweep_ints("J", {1, 3, 5, 7});
    const double w0 = s.get_double("w0", 0.003 * 201.0 / side);
    const double wc = s.get_double("wc", 0.012 * 201.0 / side);
    const LinearOperator a = foveation_operator(FoveationSpec::from_widths(w0, wc), grid);
    ProbeConfig cfg;
    cfg.probes = static_cast<std::size_t>(require_positive(s.get_int("q", 1), "q"));
    cfg.seed = s.get_u64("seed", 1);
    cfg.distribution = parse_distribution(s.get_string("rng", "gaussian"));
    cfg.diagnostics = false;

    const ComplexVector z(image.begin(), image.end());
    const ComplexVector az = a.apply(z);
    const bool images = s.has("out");
    const std::string stem = s.get_string("out", "");
    auto real_part = [](const ComplexVector& v) {
        std::vector<double> r(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].real();
        return r;
    };
    if (images) write_pgm(stem + ".Az.pgm", to_gray(real_part(az), side, 0.0, 255.0));

    std::ostringstream out;
    out << "J,p,rel_error\n";
    for (int J : Js) {
        const BasisFamily family = make_fourier_family(grid, J, J);
        const ProbeResult r = forward_probe(a, family, cfg);
        const ComplexVector cz = apply_combination(family, r.coefficients, z);
        out << J << ',' << family.size() << ',' << fmt(relative_error(cz, az)) << '\n';
        if (images) write_pgm(stem + ".Cz_J" + std::to_string(J) + ".pgm", to_gray(real_part(cz), side, 0.0, 255.0));
    }
    return out.str();
}

}  // namespace

void ExperimentSpec::add_sweep(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == assignment.size())
        throw ValidationError("sweep must look like key=v1,v2,...; got '" + assignment + "'");
    std::vector<std::string> values;
    std::stringstream ss(assignment.substr(eq + 1));
    std::string v;
    while (std::getline(ss, v, ',')) {
        if (v.empty()) throw ValidationError("empty value in sweep '" + assignment + "'");
        values.push_back(v);
    }
    sweeps_[assignment.substr(0, eq)] = std::move(values);
}

std::string ExperimentSpec::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = params_.find(key);
    const std::string v = it == params_.end() ? fallback : it->second;
    resolved_[key] = v;
    return v;
}

int ExperimentSpec::get_int(const std::string& key, int fallback) const {
    const auto it = params_.find(key);
    int v = fallback;
    if (it != params_.end()) {
        std::size_t used = 0;
        try {
            v = std::stoi(it->second, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != it->second.size()) throw ValidationError(key + " must be an integer, got '" + it->second + "'");
    }
    resolved_[key] = std::to_string(v);
    return v;
}

double ExperimentSpec::get_double(const std::string& key, double fallback) const {
    const auto it = params_.find(key);
    double v = fallback;
    if (it != params_.end()) {
        std::size_t used = 0;
        try {
            v = std::stod(it->second, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != it->second.size() || !std::isfinite(v))
            throw ValidationError(key + " must be a finite number, got '" + it->second + "'");
    }
    resolved_[key] = fmt(v);
    return v;
}

std::uint64_t ExperimentSpec::get_u64(const std::string& key, std::uint64_t fallback) const {
    const auto it = params_.find(key);
    std::uint64_t v = fallback;
    if (it != params_.end()) {
        std::size_t used = 0;
        try {
            if (!it->second.empty() && it->second[0] != '-') v = std::stoull(it->second, &used, 0);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != it->second.size())
            throw ValidationError(key + " must be an unsigned 64-bit integer, got '" + it->second + "'");
    }
    resolved_[key] = std::to_string(v);
    return v;
}

bool ExperimentSpec::get_flag(const std::string& key) const {
    const auto it = params_.find(key);
    const bool v = it != params_.end() && it->second != "0" && it->second != "false";
    resolved_[key] = v ? "1" : "0";
    return v;
}

std::vector<int> ExperimentSpec::sweep_ints(const std::string& key, const std::vector<int>& fallback) const {
    std::vector<int> out = fallback;
    const auto it = sweeps_.find(key);
    if (it != sweeps_.end()) {
        out.clear();
        for (const auto& v : it->second) {
            std::size_t used = 0;
            int x = 0;
            try {
                x = std::stoi(v, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != v.size()) throw ValidationError("sweep " + key + ": '" + v + "' is not an integer");
            out.push_back(x);
        }
    }
    if (out.empty()) throw ValidationError("sweep " + key + " needs at least one value");
    resolved_["sweep." + key] = join(to_strings(out));
    return out;
}

std::vector<double> ExperimentSpec::sweep_doubles(const std::string& key, const std::vector<double>& fallback) const {
    std::vector<double> out = fallback;
    const auto it = sweeps_.find(key);
    if (it != sweeps_.end()) {
        out.clear();
        for (const auto& v : it->second) {
            std::size_t used = 0;
            double x = 0;
            try {
                x = std::stod(v, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != v.size() || !std::isfinite(x))
                throw ValidationError("sweep " + key + ": '" + v + "' is not a number");
            out.push_back(x);
        }
    }
    if (out.empty()) throw ValidationError("sweep " + key + " needs at least one value");
    resolved_["sweep." + key] = join(to_strings(out));
    return out;
}

std::string ExperimentSpec::echo() const {
    std::string out;
    for (const auto& [k, v] : resolved_) {
        if (k == "threads" || k == "out" || k == "coef-out") continue;
        out += "# " + k + "=" + v + "\n";
    }
    return out;
}

SampleStats sample_stats(const std::vector<double>& values) {
    SampleStats s;
    s.count = values.size();
    if (values.empty()) {
        s.mean = s.sigma = kNaN;
        return s;
    }
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() < 2) {
        s.sigma = kNaN;
        return s;
    }
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sigma = std::sqrt(ss / static_cast<double>(values.size() - 1));
    return s;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw ValidationError("line fit needs at least two points");
    const double m = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw ValidationError("line fit needs distinct abscissae");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    return f;
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            while (!failed.load()) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) break;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    failed = true;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) { return RandomStream::derive(seed, trial).next_u64(); }

int odd_size_for(int p, double c) {
    if (p < 2) throw ValidationError("p must be at least 2 for n = p log^c p");
    const double raw = p * std::pow(std::log(static_cast<double>(p)), c);
    int n = static_cast<int>(std::ceil(raw - 1e-9));
    if (n % 2 == 0) ++n;
    return std::max(n, 3);
}

std::vector<double> test_image(int side) {
    if (side < 3) throw ValidationError("test image side must be at least 3");
    std::vector<double> img(static_cast<std::size_t>(side) * side);
    const double pi = std::numbers::pi;
    for (int r = 0; r < side; ++r)
        for (int c = 0; c < side; ++c) {
            const double y = (r + 0.5) / side, x = (c + 0.5) / side;
            double v = 90.0 + 50.0 * std::sin(2 * pi * x) * std::cos(2 * pi * y);  // smooth background
            const double dx = x - 0.35, dy = y - 0.4;
            if (dx * dx + dy * dy < 0.04) v += 80.0;                              // disk with a sharp rim
            if (x > 0.62 && x < 0.85 && y > 0.15 && y < 0.8) v -= 60.0;            // rectangle
            if (y > 0.7) v += 40.0 * (std::sin(2 * pi * 12 * x) > 0 ? 1.0 : -1.0);  // fine stripes
            img[static_cast<std::size_t>(r) * side + c] = std::clamp(v, 0.0, 255.0);
        }
    return img;
}

const std::vector<std::string>& experiment_commands() {
    static const std::vector<std::string> names{"statstudy", "tail", "chebcond", "probe", "precond2d", "ordercorrect", "foveate"};
    return names;
}

std::string run_experiment(const ExperimentSpec& spec) {
    std::string body;
    const std::string& c = spec.command();
    if (c == "statstudy") body = cmd_statstudy(spec);
    else if (c == "tail") body = cmd_tail(spec);
    else if (c == "chebcond") body = cmd_chebcond(spec);
    else if (c == "probe") body = cmd_probe(spec);
    else if (c == "precond2d") body = cmd_precond2d(spec);
    else if (c == "ordercorrect") body = cmd_ordercorrect(spec);
    else if (c == "foveate") body = cmd_foveate(spec);
    else throw ValidationError("unknown command '" + c + "'");

    std::string header = "# matprobe " + c + "\n# rng_algorithm=" + std::string(RandomStream::kAlgorithm) + "\n";
    return header + spec.echo() + body;
}

}  // namespace matprobe
