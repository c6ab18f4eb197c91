#pragma once

#include <stdexcept>
#include <string>

namespace etsim {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : Error {
    using Error::Error;
};
struct NonHermitian : Error {
    using Error::Error;
};
struct NoConvergence : Error {
    using Error::Error;
};
struct Singular : Error {
    using Error::Error;
};
struct ZeroSeparation : Error {
    using Error::Error;
};
struct UnphysicalMutualDecay : Error {
    using Error::Error;
};
struct NonUniqueSteadyState : Error {
    using Error::Error;
};
struct Unstable : Error {
    using Error::Error;
};
struct StepUnstable : Error {
    using Error::Error;
};
struct UnsupportedPump : Error {
    using Error::Error;
};
struct SingularResonance : Error {
    using Error::Error;
};
struct ZeroDetuning : Error {
    using Error::Error;
};
struct NonPhysicalState : Error {
    using Error::Error;
};

/// Config-file parse failure; carries the offending line number.
struct ParseError : Error {
    int line;
    ParseError(int line_, const std::string& what) : Error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace etsim
