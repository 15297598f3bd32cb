#ifndef SHAVIS_ANALYTIC_HPP
#define SHAVIS_ANALYTIC_HPP

#include <optional>

#include "shavis/curve.hpp"
#include "shavis/mordell.hpp"

namespace shavis {

struct AnalyticData {
    double omega = 0;                  // real period of the minimal model
    int root_number = 1;               // sign w of the functional equation
    double l_value = 0;                // L(E,1); exactly 0 when w = -1
    std::optional<double> l_prime;     // L'(E,1) when w = -1
    double precision = 0;              // absolute error bound achieved
};

// Real period via AGM on the roots of the short-Weierstrass cubic;
// doubled when disc > 0 (two real components).  tol >= 1e-14.
double real_period(const CurveQ& minimal, double tol);

// w = -prod w_p over bad primes, w_p = -1 split / +1 nonsplit.
// Throws NotSemistableError on additive reduction.
int root_number_semistable(const CurveQ& c);

// order 0: L(1) = (1+w) sum (a_n/n) e^{-2 pi n / sqrt N}
// order 1: L'(1) = 2 sum (a_n/n) E1(2 pi n / sqrt N)     (requires w = -1)
double l_value(const CurveQ& minimal, int order, double tol,
               std::optional<int> known_root_number = std::nullopt);

struct ConjecturalSha {
    Rat value;          // reconstructed exact rational
    double raw = 0;     // pre-reconstruction real
    bool is_integer = false;
    bool is_square = false;
};

// The unique p/q with q <= den_bound and |x - p/q| <= tol, by continued
// fractions.  Pre: tol < 1/(2 den_bound^2).  Throws ReconstructionFailedError.
Rat rational_reconstruct(double x, const Int& den_bound, double tol);

// L(1)/Omega * tor^2 / prod c, reconstructed.  Requires rank-0 evidence.
ConjecturalSha conjectural_sha(const CurveQ& minimal, const RankData& rank_evidence,
                               std::optional<int> known_root_number = std::nullopt);

// exponential integral E1(x), x > 0, absolute error <= 1e-15
double exp1(double x);

} // namespace shavis

#endif
