#include "matprobe/fft.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "matprobe/errors.hpp"

namespace matprobe {

struct FftPlan::Radix2 {
    explicit Radix2(std::size_t n) : size(n), twiddle(n / 2), reversed(n) {
        const int bits = std::countr_zero(n);
        for (std::size_t k = 0; k < n / 2; ++k) {
            const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
            twiddle[k] = {std::cos(angle), std::sin(angle)};
        }
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t r = 0;
            for (int b = 0; b < bits; ++b)
                if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
            reversed[i] = r;
        }
    }

    void run(Complex* a, Direction dir) const {
        for (std::size_t i = 0; i < size; ++i)
            if (i < reversed[i]) std::swap(a[i], a[reversed[i]]);
        const bool inv = dir == Direction::inverse;
        for (std::size_t len = 2; len <= size; len <<= 1) {
            const std::size_t half = len / 2;
            const std::size_t step = size / len;
            for (std::size_t start = 0; start < size; start += len) {
                for (std::size_t k = 0; k < half; ++k) {
                    Complex w = twiddle[k * step];
                    if (inv) w = std::conj(w);
                    const Complex t = w * a[start + k + half];
                    a[start + k + half] = a[start + k] - t;
                    a[start + k] += t;
                }
            }
        }
    }

    std::size_t size;
    std::vector<Complex> twiddle;
    std::vector<std::size_t> reversed;
};

FftPlan::FftPlan(std::size_t length) : length_(length) {
    if (length == 0) throw DimensionError("FFT length must be positive");
    if (std::has_single_bit(length)) {
        core_ = std::make_unique<Radix2>(length);
        return;
    }
    const std::size_t padded = std::bit_ceil(2 * length - 1);
    core_ = std::make_unique<Radix2>(padded);
    chirp_.resize(length);
    const std::size_t period = 2 * length;
    for (std::size_t k = 0; k < length; ++k) {
        // k² mod 2N keeps the phase argument small and exact.
        const std::size_t kk = (k * k) % period;
        const double angle = -std::numbers::pi * static_cast<double>(kk) / static_cast<double>(length);
        chirp_[k] = {std::cos(angle), std::sin(angle)};
    }
    kernel_hat_.assign(padded, Complex{});
    kernel_hat_[0] = std::conj(chirp_[0]);
    for (std::size_t k = 1; k < length; ++k) {
        kernel_hat_[k] = std::conj(chirp_[k]);
        kernel_hat_[padded - k] = std::conj(chirp_[k]);
    }
    core_->run(kernel_hat_.data(), Direction::forward);
}

FftPlan::~FftPlan() = default;

void FftPlan::transform(std::span<Complex> data, Direction dir) const {
    if (data.size() != length_) throw DimensionError("FFT input length does not match plan");
    if (length_ == 1) return;
    if (chirp_.empty()) {
        core_->run(data.data(), dir);
        return;
    }
    bluestein(data, dir);
}

void FftPlan::bluestein(std::span<Complex> data, Direction dir) const {
    // The inverse transform is conj(forward(conj(x))).
    const bool inv = dir == Direction::inverse;
    const std::size_t padded = core_->size;
    std::vector<Complex> work(padded);
    for (std::size_t k = 0; k < length_; ++k) {
        const Complex x = inv ? std::conj(data[k]) : data[k];
        work[k] = x * chirp_[k];
    }
    core_->run(work.data(), Direction::forward);
    for (std::size_t k = 0; k < padded; ++k) work[k] *= kernel_hat_[k];
    core_->run(work.data(), Direction::inverse);
    const double scale = 1.0 / static_cast<double>(padded);
    for (std::size_t k = 0; k < length_; ++k) {
        const Complex y = work[k] * chirp_[k] * scale;
        data[k] = inv ? std::conj(y) : y;
    }
}

const FftPlan& FftPlan::cached(std::size_t length) {
    thread_local std::unordered_map<std::size_t, std::unique_ptr<FftPlan>> cache;
    auto& slot = cache[length];
    if (!slot) slot = std::make_unique<FftPlan>(length);
    return *slot;
}

namespace {

void transform_axis(std::span<Complex> v, std::span<const std::size_t> shape, std::size_t axis,
                    Direction dir, std::vector<Complex>& line) {
    const std::size_t len = shape[axis];
    std::size_t inner = 1;
    for (std::size_t a = axis + 1; a < shape.size(); ++a) inner *= shape[a];
    const std::size_t outer = v.size() / (len * inner);
    const std::size_t half = len / 2;
    const FftPlan& plan = FftPlan::cached(len);
    line.resize(len);
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t in = 0; in < inner; ++in) {
            Complex* base = v.data() + o * len * inner + in;
            if (dir == Direction::forward) {
                for (std::size_t i = 0; i < len; ++i) line[i] = base[i * inner];
                plan.transform(line, dir);
                const double scale = 1.0 / static_cast<double>(len);
                // slot f ↔ frequency f − half ↔ standard bin (f − half) mod len
                for (std::size_t f = 0; f < len; ++f) base[f * inner] = line[(f + len - half) % len] * scale;
            } else {
                for (std::size_t f = 0; f < len; ++f) line[(f + len - half) % len] = base[f * inner];
                plan.transform(line, dir);
                for (std::size_t i = 0; i < len; ++i) base[i * inner] = line[i];
            }
        }
    }
}

}  // namespace

void dft_inplace(std::span<Complex> v, std::span<const std::size_t> shape, Direction dir) {
    if (shape.empty()) throw DimensionError("DFT shape is empty");
    std::size_t total = 1;
    for (auto len : shape) {
        if (len == 0) throw DimensionError("DFT axis length must be at least 1");
        total *= len;
    }
    if (total != v.size()) throw DimensionError("DFT shape does not match vector length");
    std::vector<Complex> line;
    for (std::size_t axis = 0; axis < shape.size(); ++axis) transform_axis(v, shape, axis, dir, line);
}

ComplexVector dft(std::span<const Complex> v, std::span<const std::size_t> shape, Direction dir) {
    ComplexVector out(v.begin(), v.end());
    dft_inplace(out, shape, dir);
    return out;
}

}  // namespace matprobe
