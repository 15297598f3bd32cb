#ifndef SHAVIS_CONGRUENCE_HPP
#define SHAVIS_CONGRUENCE_HPP

#include <optional>
#include <string>
#include <vector>

#include "shavis/curve.hpp"
#include "shavis/integers.hpp"

namespace shavis {

enum class CertStatus { verified_to_sturm, verified_to_bound, refuted };
enum class CertRigor { rigorous_prime_irreducible, heuristic };

struct SkippedPrime {
    Int prime;
    std::string reason;
};

struct RefutingWitness {
    Int prime;
    Int trace_a, trace_b;
};

struct CongruenceCertificate {
    std::string label_a, label_b;
    Int n;
    Int bound_used;
    Int sturm_bound;
    int checked_primes = 0;
    std::vector<SkippedPrime> skipped;
    CertStatus status = CertStatus::verified_to_bound;
    std::optional<RefutingWitness> refuting;
    CertRigor rigor = CertRigor::heuristic;
    // per-prime level-raising evidence at primes dividing exactly one conductor
    std::vector<Int> level_raising_primes;
};

// floor(mu/6), mu = [SL2(Z) : Gamma_0(N)] = prod p^{e-1}(p+1)
Int sturm_bound(const Int& level);

struct IrreducibilityReport {
    Int p;
    enum class Status { irreducible, reducible, undetermined } status =
        Status::undetermined;
    std::optional<Int> witness_prime;       // good ell with x^2 - a_ell x + ell
                                            // irreducible mod p
    bool torsion_witness = false;           // p | #E(Q)_tor forces reducible
};

// reducible if p | torsion order; irreducible if some good ell <= scan_limit
// has an irreducible Frobenius characteristic polynomial mod p.
IrreducibilityReport irreducibility_check(const CurveQ& c, const Int& p,
                                          int scan_limit = 100);

// Prime-by-prime trace congruence a_l(a) = a_l(b) mod n up to the Sturm
// bound of lcm(N_a, N_b) (or bound_override), with level-raising checks at
// primes dividing exactly one conductor. Curves must be minimal models.
CongruenceCertificate congruence_check(const CurveQ& a, const CurveQ& b,
                                       const Int& n,
                                       std::optional<Int> bound_override = std::nullopt);

} // namespace shavis

#endif
