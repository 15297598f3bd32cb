#ifndef SHAVIS_MORDELL_HPP
#define SHAVIS_MORDELL_HPP

#include <optional>
#include <vector>

#include "shavis/curve.hpp"

namespace shavis {

// Rational point on a curve over Q, or the identity.
struct PointQ {
    bool infinity = true;
    Rat x, y;

    static PointQ zero() { return {}; }
    static PointQ affine(Rat x, Rat y) { return {false, std::move(x), std::move(y)}; }
    bool operator==(const PointQ&) const = default;
};

PointQ add_points(const CurveQ& c, const PointQ& P, const PointQ& Q);
PointQ negate_point(const CurveQ& c, const PointQ& P);
PointQ mul_point(const CurveQ& c, const PointQ& P, const Int& k);
bool on_curve(const CurveQ& c, const PointQ& P);

struct TorsionData {
    Int order = 1;
    int d1 = 1, d2 = 1;  // group = Z/d1 x Z/d2, d1 | d2, d1 in {1,2}
    std::vector<PointQ> generators;  // on the input curve
};

// Exact torsion subgroup: reduction bound at five good odd primes, then
// Lutz-Nagell enumeration on an integral short model.
TorsionData torsion_subgroup(const CurveQ& c);

enum class RankProvenance { ingested, analytic_order_0, analytic_order_1 };

struct RankData {
    int rank = 0;
    RankProvenance provenance = RankProvenance::ingested;
};

struct RankSource {
    std::optional<int> table_rank;   // from curve tables
    bool allow_analytic = false;     // fall back to L-value classification
    double tau0 = 1e-3;              // |L(1)|/Omega threshold for rank 0
    double tau1 = 1e-3;              // |L'(1)| threshold for rank 1
    double tol = 1e-8;               // L-series tolerance
};

// Throws RankUnavailableError when no table entry exists and the analytic
// classification is off or inconclusive.
RankData rank_of(const CurveQ& c, const RankSource& source);

} // namespace shavis

#endif
