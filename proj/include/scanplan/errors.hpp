#pragma once

#include <stdexcept>
#include <string>

namespace scanplan {

/// Base class for all pipeline errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// geometry
struct DegenerateProjection : Error { using Error::Error; };
struct DegenerateCamera : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct TooFewPoints : Error { using Error::Error; };
struct CollinearPoints : Error { using Error::Error; };
struct ParallelRay : Error { using Error::Error; };
struct BehindCamera : Error { using Error::Error; };

// reconstruction / features
struct EmptyMatrix : Error { using Error::Error; };
struct DegenerateGeometry : Error { using Error::Error; };
struct NoValidCells : Error { using Error::Error; };

// classifier / planner
struct Untrained : Error { using Error::Error; };
struct UnknownClass : Error { using Error::Error; };
struct ImplausibleFit : Error { using Error::Error; };
struct TooFewSamples : Error { using Error::Error; };

// simulator
struct NeverVisible : Error { using Error::Error; };

// configuration / file formats
struct ConfigError : Error { using Error::Error; };
struct CalibrationError : Error { using Error::Error; };
struct FormatError : Error { using Error::Error; };

} // namespace scanplan
