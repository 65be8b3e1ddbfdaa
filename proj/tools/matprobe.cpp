// Command-line front end for the experiment harness.
//
//   matprobe <command> [--grid N1] [--dim D] [--family fourier|cheb1d|chebdisk] [--J n] [--K n]
//            [--order m] [--normalized] [--q n] [--rng gaussian|rademacher] [--seed u64]
//            [--trials n] [--sweep key=v1,v2,...] [--out path]
//
// Exit status: 0 success, 2 invalid input, 3 computation not possible at this size.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "matprobe/errors.hpp"
#include "matprobe/experiments.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitCapability = 3;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Matrix probing experiments"};
    std::string command;
    std::string commands_help = "one of:";
    for (const auto& c : matprobe::experiment_commands()) commands_help += " " + c;
    app.add_option("command", command, commands_help)->required();

    // Every option is kept as text; the experiment layer validates and resolves defaults.
    const std::vector<std::pair<std::string, std::string>> valued = {
        {"grid", "points per axis n1 (odd)"},
        {"dim", "grid dimension, 1 or 2"},
        {"family", "fourier, cheb1d or chebdisk"},
        {"J", "spatial label count"},
        {"K", "frequency label count"},
        {"K1", "angular label count of the disk family"},
        {"order", "order correction m"},
        {"q", "number of probe vectors"},
        {"rng", "gaussian or rademacher"},
        {"seed", "64-bit seed"},
        {"trials", "Monte Carlo trials"},
        {"samples", "Monte Carlo samples (tail)"},
        {"mode", "forward or backward (probe)"},
        {"operator", "elliptic, identity or foveation (probe, ordercorrect)"},
        {"contrast", "media contrast T (2D elliptic)"},
        {"roughness", "media roughness gamma (2D elliptic)"},
        {"discretization", "pseudospectral or symbol (elliptic)"},
        {"oversample", "n*q/p target when q is chosen automatically (precond2d)"},
        {"p", "basis size (tail)"},
        {"w0", "foveation width at the fixation point"},
        {"wc", "foveation width at the corner (1,1)"},
        {"image", "input PGM (foveate)"},
        {"threads", "worker threads; results do not depend on it"},
        {"out", "output CSV path (default stdout); also the stem for image outputs"},
        {"coef-out", "coefficient CSV path (probe)"},
    };
    std::vector<std::string> values(valued.size());
    std::vector<CLI::Option*> opts;
    for (std::size_t i = 0; i < valued.size(); ++i)
        opts.push_back(app.add_option("--" + valued[i].first, values[i], valued[i].second));
    bool normalized = false;
    app.add_flag("--normalized", normalized, "normalize disk-family frequency factors");
    std::vector<std::string> sweeps;
    app.add_option("--sweep", sweeps, "key=v1,v2,... (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        matprobe::ExperimentSpec spec(command);
        for (std::size_t i = 0; i < valued.size(); ++i)
            if (opts[i]->count() > 0) spec.set(valued[i].first, values[i]);
        if (normalized) spec.set("normalized", "1");
        for (const auto& s : sweeps) spec.add_sweep(s);

        const std::string csv = matprobe::run_experiment(spec);
        if (spec.has("out")) {
            const std::string path = spec.get_string("out", "");
            std::ofstream out(path, std::ios::binary);
            if (!out) throw matprobe::ValidationError("cannot open " + path + " for writing");
            out << csv;
        } else {
            std::cout << csv;
        }
    } catch (const matprobe::ValidationError& e) {
        std::cerr << "matprobe: " << e.what() << '\n';
        return kExitValidation;
    } catch (const matprobe::CapabilityError& e) {
        std::cerr << "matprobe: " << e.what() << '\n';
        return kExitCapability;
    } catch (const std::exception& e) {
        std::cerr << "matprobe: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
