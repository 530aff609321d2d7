// Exception types shared across the workloop library.
#pragma once

#include <stdexcept>
#include <string>

namespace wl {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// signals
struct DegenerateSignal : Error { using Error::Error; };

// plants
struct UnsupportedPlant : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };
struct NotSimpleHarmonic : Error { using Error::Error; };

// workloop
struct NonMonotonicSignal : Error { using Error::Error; };
struct SelfIntersecting : Error { using Error::Error; };
struct NotClosed : Error { using Error::Error; };
struct NotBivalued : Error { using Error::Error; };

// resonance
struct GridMismatch : Error { using Error::Error; };

// duffing_opt / freqband
struct ZeroBetaStar : Error { using Error::Error; };
struct NonPositiveStiffness : Error { using Error::Error; };
struct OutsideRhoWindow : Error { using Error::Error; };
struct NoBand : Error { using Error::Error; };

// numerics
struct NoSignChange : Error { using Error::Error; };
struct MaxIterations : Error { using Error::Error; };
struct AllZeroCoefficients : Error { using Error::Error; };

}  // namespace wl
