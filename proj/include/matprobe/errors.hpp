#pragma once

#include <stdexcept>
#include <string>

namespace matprobe {

/// Invalid user input: bad parameters, malformed files, out-of-range labels.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Shapes or lengths that do not agree.
class DimensionError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// The requested computation needs something the input cannot provide,
/// e.g. dense assembly of an operator that is too large.
class CapabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical breakdown such as non-finite values or a non-Hermitian input.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace matprobe
