#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lgpr {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A finite-difference stencil reached outside the grid.
class StencilError : public Error {
public:
    using Error::Error;
};

// A NaN or Inf appeared in a field.
class NumericError : public Error {
public:
    using Error::Error;
};

// Interface geometry could not be built (no sign change, bad projection, ...).
class GeometryError : public Error {
public:
    using Error::Error;
};

// A band mask or band parameter set is unusable.
class BandError : public Error {
public:
    using Error::Error;
};

// Crossing sets could not be paired edge by edge.
class PairingError : public Error {
public:
    using Error::Error;
};

// Convergence-order fit had unusable input.
class FitError : public Error {
public:
    using Error::Error;
};

// Invalid configuration or expression.
class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// Iterative solver hit its sweep cap; carries the residual history.
class DivergenceError : public Error {
public:
    DivergenceError(const std::string& what, std::vector<double> history)
        : Error(what), residual_history(std::move(history)) {}

    std::vector<double> residual_history;
};

} // namespace lgpr
