#pragma once

#include <stdexcept>
#include <string>

namespace uhg {

// Caller broke a precondition: mismatched orders/modes, invalid parameters,
// malformed input. Maps to exit code 2 at the CLI.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Division by a series whose constant term is zero (or below the float pivot
// tolerance). Carries the name of the offending series.
struct SingularDenominator : std::runtime_error {
    explicit SingularDenominator(const std::string& which)
        : std::runtime_error("singular denominator: " + which) {}
};

// A lattice sum was requested outside its convergence domain.
struct DivergentSum : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An adaptive sum hit its term cap before the certified tail bound dropped
// below the requested tolerance.
struct TailNotConverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Hazard rate requested at a point of zero reliability.
struct UndefinedHazard : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace uhg
