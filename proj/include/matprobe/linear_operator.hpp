#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>

#include "matprobe/basis.hpp"
#include "matprobe/dense.hpp"
#include "matprobe/symbol.hpp"

namespace matprobe {

/// Dense assembly is refused above this many unknowns (51² points).
inline constexpr std::size_t kMaxDenseSize = 2601;

/// Black-box square operator on a grid: apply plus a declared nullity.
class LinearOperator {
public:
    using ApplyFn = std::function<ComplexVector(std::span<const Complex>)>;

    LinearOperator(std::size_t size, ApplyFn apply, std::size_t nullity = 0, std::string name = "operator");

    std::size_t size() const { return size_; }
    std::size_t nullity() const { return nullity_; }
    const std::string& name() const { return name_; }

    ComplexVector apply(std::span<const Complex> u) const;
    ComplexVector operator()(std::span<const Complex> u) const { return apply(u); }

    /// Columns A e_c. Throws CapabilityError above kMaxDenseSize.
    ComplexMatrix dense() const;

private:
    std::size_t size_;
    ApplyFn apply_;
    std::size_t nullity_;
    std::string name_;
};

LinearOperator identity_operator(std::size_t n);
LinearOperator dense_operator(ComplexMatrix a, std::size_t nullity = 0);
LinearOperator symbol_operator(DiscreteSymbol a, std::size_t nullity = 0);
/// v ↦ Σ c_i B_i v
LinearOperator combination_operator(BasisFamily family, ComplexVector c);
/// v ↦ A(B v)
LinearOperator compose(const LinearOperator& a, const LinearOperator& b);

/// Projection u ↦ ũ onto the orthogonal complement of a known nullspace.
class NullspaceFilter {
public:
    using Fn = std::function<ComplexVector(std::span<const Complex>)>;
    explicit NullspaceFilter(Fn fn, std::string name = "filter") : fn_(std::move(fn)), name_(std::move(name)) {}

    ComplexVector operator()(std::span<const Complex> u) const { return fn_(u); }
    const std::string& name() const { return name_; }

private:
    Fn fn_;
    std::string name_;
};

NullspaceFilter identity_filter();

/// Diagnostics of {B_i A} for an operator that can be assembled densely.
GramDiagnostics transformed_family(const BasisFamily& family, const LinearOperator& a);

}  // namespace matprobe
