#ifndef QFILT_ERRORS_HPP
#define QFILT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qfilt {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// parameter validation
struct NegativeRate : Error { using Error::Error; };
struct ZeroDissipation : Error { using Error::Error; };
struct BadTruncation : Error { using Error::Error; };

// linear algebra / solvers
struct DimensionMismatch : Error { using Error::Error; };
struct DegenerateSteadyState : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct SingularSystem : Error { using Error::Error; };
struct StepFailure : Error { using Error::Error; };
struct StepTooLarge : Error { using Error::Error; };

// observables and closed forms
struct InsufficientPhotons : Error { using Error::Error; };
struct UndefinedEfficiency : Error { using Error::Error; };
struct DegenerateFilter : Error { using Error::Error; };
struct NegativeTime : Error { using Error::Error; };
struct EmptyInput : Error { using Error::Error; };

} // namespace qfilt

#endif
