#ifndef SHAVIS_ERRORS_HPP
#define SHAVIS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace shavis {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularCurveError : Error { using Error::Error; };
struct NonIntegralResultError : Error { using Error::Error; };
struct FactorizationFailedError : Error { using Error::Error; };
struct PointNotOnCurveError : Error { using Error::Error; };
struct BadReductionPrimeError : Error { using Error::Error; };
struct PrimeTooLargeError : Error { using Error::Error; };
struct AmbiguousOrderError : Error { using Error::Error; };
struct PrecisionUnreachableError : Error { using Error::Error; };
struct ReconstructionFailedError : Error { using Error::Error; };
struct RankUnavailableError : Error { using Error::Error; };
struct NotSemistableError : Error { using Error::Error; };
struct IncompleteDataError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

} // namespace shavis

#endif
