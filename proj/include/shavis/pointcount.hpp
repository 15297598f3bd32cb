#ifndef SHAVIS_POINTCOUNT_HPP
#define SHAVIS_POINTCOUNT_HPP

#include <cstdint>
#include <vector>

#include "shavis/curve.hpp"
#include "shavis/localdata.hpp"

namespace shavis {

enum class ApMethod { naive, bsgs, table };

struct ApRecord {
    Int p;
    Int a_p;
    ApMethod method = ApMethod::naive;
    ReductionKind kind = ReductionKind::good;
};

// Full enumeration with quadratic-character evaluation. p good, p <= 10^6.
ApRecord ap_naive(const CurveQ& c, const Int& p);

// Baby-step/giant-step order finding in the Hasse interval, with the
// quadratic twist used to resolve ambiguous orders. p good, p <= 10^10.
ApRecord ap_bsgs(const CurveQ& c, const Int& p);

// Dispatch: bad primes from the reduction kind, naive below the threshold,
// BSGS above.  c minimal.
ApRecord trace_of_frobenius(const CurveQ& c, const Int& p);

constexpr int64_t kNaiveApLimit = 1000000;
constexpr int64_t kBsgsThreshold = 10000;

// a_1..a_M by sieve over prime powers and multiplicative assembly.
// M <= 10^7; values fit in int64 by the divisor bound.
std::vector<int64_t> an_coeffs(const CurveQ& c, int64_t M);

} // namespace shavis

#endif
