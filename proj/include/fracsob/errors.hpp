#pragma once

#include <stdexcept>
#include <string>

namespace fracsob {

// Base class for every failure the library reports. Messages name the
// offending vertex/edge/parameter so callers can print them verbatim.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Graph construction and input validation.
struct DuplicateEdge : Error { using Error::Error; };
struct SelfLoop : Error { using Error::Error; };
struct NonPositiveWeight : Error { using Error::Error; };
struct DisconnectedGraph : Error { using Error::Error; };
struct EmptyDomain : Error { using Error::Error; };
struct SizeCapExceeded : Error { using Error::Error; };
struct GenerationTooSmall : Error { using Error::Error; };
struct TooFewSamples : Error { using Error::Error; };

// Bad arguments, malformed files, out-of-range ids.
struct ValidationError : Error { using Error::Error; };

// Numerical guards.
struct InsufficientRoom : Error { using Error::Error; };
struct ZeroGradient : Error { using Error::Error; };
struct ZeroField : Error { using Error::Error; };
struct BallTooLarge : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };

}  // namespace fracsob
