#pragma once

#include <stdexcept>
#include <string>

namespace causticlab {

// Root of everything the library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };
struct ArgumentError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

// Newton / quadrature did not reach its target.
struct ConvergenceError : Error { using Error::Error; };

// GO amplitude requested where it is singular.
struct OnCausticError : Error { using Error::Error; };
struct ExitSingularError : Error { using Error::Error; };

// A method was asked for a region where it does not apply.
struct RegionError : Error { using Error::Error; };

struct UnsupportedTransformError : Error { using Error::Error; };

}  // namespace causticlab
