#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace matprobe {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Dense complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const Complex> d);
    /// Builds a matrix whose columns are the given vectors (all the same length).
    static ComplexMatrix from_columns(std::span<const ComplexVector> columns);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<Complex> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Complex> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    ComplexVector column(std::size_t c) const;
    void set_column(std::size_t c, std::span<const Complex> values);

    std::span<Complex> data() { return data_; }
    std::span<const Complex> data() const { return data_; }

    ComplexMatrix adjoint() const;
    /// Column-major copy of the entries.
    std::vector<Complex> column_major() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex s);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector operator*(const ComplexMatrix& a, std::span<const Complex> x);

/// Kronecker product a ⊗ b.
ComplexMatrix kronecker(const ComplexMatrix& a, const ComplexMatrix& b);

double frobenius_norm(const ComplexMatrix& a);
double max_abs(const ComplexMatrix& a);
Complex trace(const ComplexMatrix& a);
/// Frobenius inner product tr(a* b).
Complex frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b);

double norm2(std::span<const Complex> v);
double max_abs(std::span<const Complex> v);
/// Conjugate-linear in the first argument.
Complex dot(std::span<const Complex> a, std::span<const Complex> b);
ComplexVector add(std::span<const Complex> a, std::span<const Complex> b);
ComplexVector subtract(std::span<const Complex> a, std::span<const Complex> b);
ComplexVector scaled(std::span<const Complex> a, Complex s);
/// ‖a − b‖₂ / ‖b‖₂, or ‖a − b‖₂ when b is zero.
double relative_error(std::span<const Complex> a, std::span<const Complex> b);

bool all_finite(std::span<const Complex> v);
void require_finite(std::span<const Complex> v, const char* what);

}  // namespace matprobe
