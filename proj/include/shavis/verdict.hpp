#ifndef SHAVIS_VERDICT_HPP
#define SHAVIS_VERDICT_HPP

#include <optional>
#include <string>
#include <vector>

#include "shavis/congruence.hpp"
#include "shavis/globaldata.hpp"

namespace shavis {

enum class TheoremId { mt_part_i, mt_part_ii, prop1, dws };
std::string theorem_id_str(TheoremId t);

enum class SemistabilityMode { strict, general };  // both curves vs B only

struct Hypothesis {
    std::string name;
    bool pass = false;
    std::string witness;
};

enum class ClaimKind {
    divides_sha_tamagawa,   // m | #Sha(A) * prod c_A
    injection_lower_bound,  // #Sha(A) >= m via B(Q)/nB(Q) -> Sha(A)
    kernel_bound,           // ker(phi) <= m for phi : B(Q)/nB(Q) -> Sha(A)
    divides_l_ratio,        // n | L(1)/Omega * tor^2 (exact rational)
    divides_sha,            // p | #Sha(A)
};
std::string claim_kind_str(ClaimKind k);

struct Conclusion {
    ClaimKind kind;
    Int quantity;                    // the divisor / bound
    std::string target;              // e.g. "#Sha(2834D1/Q) * prodc(2834D1)"
    std::optional<Rat> exact_value;  // for divides_l_ratio
    std::string text;                // human-readable sentence
};

enum class BsdConsistency { consistent, inconsistent, unavailable };

struct BsdCrossCheck {
    BsdConsistency status = BsdConsistency::unavailable;
    std::string detail;
};

struct VerdictInputs {
    std::string label_a, label_b;
    Int n;
    int rank_a = 0, rank_b = 0;
    RankProvenance rank_a_prov = RankProvenance::ingested;
    RankProvenance rank_b_prov = RankProvenance::ingested;
    Int tor_a = 1, tor_b = 1;
    Int tamagawa_a = 1, tamagawa_b = 1;
    Int conductor_a = 1, conductor_b = 1;
    std::string cert_status;
};

struct TheoremVerdict {
    TheoremId theorem;
    SemistabilityMode mode = SemistabilityMode::strict;
    std::vector<Hypothesis> hypotheses;
    bool applicable = false;
    std::optional<Conclusion> conclusion;
    std::vector<std::string> conditional_notes;
    BsdCrossCheck bsd;
    VerdictInputs inputs;
};

// Theorem on congruent n-torsion, part (i): if r_B > r_A then
// n^{r_B - r_A} | #Sha(A) * prod c_A.
TheoremVerdict check_main_theorem_part_i(const GlobalData& a, const GlobalData& b,
                                         const CongruenceCertificate& cert,
                                         const Int& n, SemistabilityMode mode);

// Part (ii): if also gcd(n, prod c_A) = 1 there is
// phi : B(Q)/nB(Q) -> Sha(A) with kernel of order at most n^{r_A};
// an injection when r_A = 0.
TheoremVerdict check_main_theorem_part_ii(const GlobalData& a, const GlobalData& b,
                                          const CongruenceCertificate& cert,
                                          const Int& n, SemistabilityMode mode);

// Both parts.
std::vector<TheoremVerdict> check_main_theorem(const GlobalData& a,
                                               const GlobalData& b,
                                               const CongruenceCertificate& cert,
                                               const Int& n, SemistabilityMode mode);

// Same-conductor optimal pairs, n prime, r_A = 0:
// n | L(1)/Omega * (#A(Q)_tor)^2 as an exact rational.
TheoremVerdict check_prop1(const GlobalData& a, const GlobalData& b,
                           const CongruenceCertificate& cert, const Int& n,
                           const Rat& l_over_omega);

// Semistable optimal same-level pairs with rank(F) > rank(E) = 0,
// p odd prime, p coprime to N * prod c_F, both torsion reps irreducible:
// p | #Sha(E).
TheoremVerdict check_dws(const GlobalData& e, const GlobalData& f, const Int& p,
                         const CongruenceCertificate& cert,
                         const IrreducibilityReport& irr_e,
                         const IrreducibilityReport& irr_f);

// Annotate the verdict with the BSD-II cross-check.
void cross_check_bsd(TheoremVerdict& v, const std::optional<ConjecturalSha>& sha_a,
                     const Int& tamagawa_a);

} // namespace shavis

#endif
