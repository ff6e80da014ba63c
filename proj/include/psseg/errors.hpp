#pragma once

#include <stdexcept>
#include <string>

namespace psseg {

/// Grid dimensions that an operation cannot accept (too small, mismatched).
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A parameter outside its admissible range.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Explicit diffusion step above the 5-point stencil stability bound.
class StabilityError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Non-finite value in the level-set function after an update.
class NumericalBlowup : public std::runtime_error {
public:
    explicit NumericalBlowup(long iteration)
        : std::runtime_error("non-finite level-set value after iteration " +
                             std::to_string(iteration)),
          iteration_(iteration) {}

    long iteration() const noexcept { return iteration_; }

private:
    long iteration_;
};

/// Unreadable or unsupported image file.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace psseg
