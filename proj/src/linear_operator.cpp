#include "matprobe/linear_operator.hpp"

#include "matprobe/errors.hpp"

namespace matprobe {

LinearOperator::LinearOperator(std::size_t size, ApplyFn apply, std::size_t nullity, std::string name)
    : size_(size), apply_(std::move(apply)), nullity_(nullity), name_(std::move(name)) {
    if (size_ == 0) throw ValidationError("operator size must be positive");
    if (nullity_ >= size_) throw ValidationError("operator nullity must be smaller than its size");
}

ComplexVector LinearOperator::apply(std::span<const Complex> u) const {
    if (u.size() != size_) throw DimensionError(name_ + ": vector length does not match operator size");
    ComplexVector v = apply_(u);
    if (v.size() != size_) throw DimensionError(name_ + ": apply returned the wrong length");
    return v;
}

ComplexMatrix LinearOperator::dense() const {
    if (size_ > kMaxDenseSize)
        throw CapabilityError(name_ + ": dense assembly of n=" + std::to_string(size_) +
                              " exceeds the limit of " + std::to_string(kMaxDenseSize) + "; use matrix-free paths");
    ComplexMatrix m(size_, size_);
    ComplexVector unit(size_);
    for (std::size_t c = 0; c < size_; ++c) {
        unit[c] = 1.0;
        m.set_column(c, apply(unit));
        unit[c] = 0.0;
    }
    return m;
}

LinearOperator identity_operator(std::size_t n) {
    return LinearOperator(n, [](std::span<const Complex> u) { return ComplexVector(u.begin(), u.end()); }, 0, "identity");
}

LinearOperator dense_operator(ComplexMatrix a, std::size_t nullity) {
    if (a.rows() != a.cols()) throw DimensionError("dense operator must be square");
    const std::size_t n = a.rows();
    auto shared = std::make_shared<const ComplexMatrix>(std::move(a));
    return LinearOperator(n, [shared](std::span<const Complex> u) { return (*shared) * u; }, nullity, "dense");
}

LinearOperator symbol_operator(DiscreteSymbol a, std::size_t nullity) {
    const std::size_t n = a.size();
    auto shared = std::make_shared<const DiscreteSymbol>(std::move(a));
    return LinearOperator(n, [shared](std::span<const Complex> u) { return symbol_apply(*shared, u); }, nullity, "symbol");
}

LinearOperator combination_operator(BasisFamily family, ComplexVector c) {
    if (c.size() != family.size()) throw DimensionError("coefficient count does not match family size");
    const std::size_t n = family.grid().size();
    auto f = std::make_shared<const BasisFamily>(std::move(family));
    auto coeffs = std::make_shared<const ComplexVector>(std::move(c));
    return LinearOperator(
        n, [f, coeffs](std::span<const Complex> u) { return apply_combination(*f, *coeffs, u); }, 0, "combination");
}

LinearOperator compose(const LinearOperator& a, const LinearOperator& b) {
    if (a.size() != b.size()) throw DimensionError("compose: operator sizes differ");
    return LinearOperator(
        a.size(), [a, b](std::span<const Complex> u) { return a.apply(b.apply(u)); }, 0, a.name() + "*" + b.name());
}

NullspaceFilter identity_filter() {
    return NullspaceFilter([](std::span<const Complex> u) { return ComplexVector(u.begin(), u.end()); }, "identity");
}

GramDiagnostics transformed_family(const BasisFamily& family, const LinearOperator& a) {
    if (a.size() != family.grid().size()) throw DimensionError("operator does not match the family grid");
    return transformed_family(family, a.dense());
}

}  // namespace matprobe
