#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace matprobe {

/// Command name plus string-valued parameters and sweep lists, as given on the
/// command line. Typed getters resolve defaults and remember every value they hand
/// out, so the CSV header echoes the complete effective configuration.
class ExperimentSpec {
public:
    explicit ExperimentSpec(std::string command = {}) : command_(std::move(command)) {}

    const std::string& command() const { return command_; }

    void set(const std::string& key, const std::string& value) { params_[key] = value; }
    void set_sweep(const std::string& key, std::vector<std::string> values) { sweeps_[key] = std::move(values); }
    /// Parses "key=v1,v2,...".
    void add_sweep(const std::string& assignment);

    bool has(const std::string& key) const { return params_.count(key) != 0; }
    bool has_sweep(const std::string& key) const { return sweeps_.count(key) != 0; }

    std::string get_string(const std::string& key, const std::string& fallback) const;
    int get_int(const std::string& key, int fallback) const;
    double get_double(const std::string& key, double fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    bool get_flag(const std::string& key) const;

    std::vector<int> sweep_ints(const std::string& key, const std::vector<int>& fallback) const;
    std::vector<double> sweep_doubles(const std::string& key, const std::vector<double>& fallback) const;

    /// "# key=value" lines for every resolved parameter, sorted by key.
    std::string echo() const;

private:
    std::string command_;
    std::map<std::string, std::string> params_;
    std::map<std::string, std::vector<std::string>> sweeps_;
    mutable std::map<std::string, std::string> resolved_;
};

/// Mean and sample standard deviation (n − 1 denominator); σ̂ is NaN for one sample.
struct SampleStats {
    double mean = 0.0;
    double sigma = 0.0;
    std::size_t count = 0;
};
SampleStats sample_stats(const std::vector<double>& values);

/// Ordinary least squares y ≈ intercept + slope·x.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Runs body(i) for i in [0, count) on up to `threads` workers. Work is handed out
/// by index, so results written to per-index slots do not depend on scheduling.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

/// Seed for trial `trial` of a run seeded with `seed`.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

/// n = p·log^c p rounded up to the next odd integer.
int odd_size_for(int p, double c);

/// Deterministic square test image with smooth regions, edges and fine detail, values in [0, 255].
std::vector<double> test_image(int side);

/// Runs one experiment command and returns its CSV text. Side files (images,
/// coefficient files) go to paths derived from the "out" and "coef-out" parameters.
///
/// Commands: statstudy, tail, chebcond, probe, precond2d, ordercorrect, foveate.
std::string run_experiment(const ExperimentSpec& spec);

/// Names of the supported commands.
const std::vector<std::string>& experiment_commands();

}  // namespace matprobe
