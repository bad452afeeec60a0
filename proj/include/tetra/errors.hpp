#pragma once

#include <stdexcept>
#include <string>

namespace tetra {

/// Grid too coarse for the requested band limit.
class SizingError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Operands with different band limits or dimensions.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Right-hand side not orthogonal to the kernel of L.
class SolvabilityError : public std::runtime_error {
public:
    explicit SolvabilityError(const std::string& what, double kernelComponent = 0.0)
        : std::runtime_error(what), kernelComponent_(kernelComponent)
    {
    }
    [[nodiscard]] double kernel_component() const noexcept { return kernelComponent_; }

private:
    double kernelComponent_;
};

/// Group closure or projector construction went wrong.
class ConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A transcendental nonlinearity produced more energy beyond the band limit
/// than the aliasing budget allows.
class AliasError : public std::runtime_error {
public:
    AliasError(const std::string& what, double tailRatio) : std::runtime_error(what), tailRatio_(tailRatio) {}
    [[nodiscard]] double tail_ratio() const noexcept { return tailRatio_; }

private:
    double tailRatio_;
};

/// Newton or continuation failure.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace tetra
