#ifndef SHAVIS_GLOBALDATA_HPP
#define SHAVIS_GLOBALDATA_HPP

#include <optional>
#include <string>
#include <vector>

#include "shavis/analytic.hpp"
#include "shavis/curve.hpp"
#include "shavis/localdata.hpp"
#include "shavis/mordell.hpp"

namespace shavis {

// Everything the theorem checks consume about one curve.
struct GlobalData {
    std::string label;
    CurveQ curve;                     // global minimal model
    Int conductor = 1;
    std::vector<LocalData> locals;    // bad primes, sorted
    Int tamagawa = 1;
    TorsionData torsion;
    RankData rank;
    bool semistable = true;
    std::vector<Int> additive_primes;
    bool optimal = false;             // ingested attribute
    std::optional<AnalyticData> analytic;
    std::optional<ConjecturalSha> sha;
};

struct AssembleOptions {
    std::optional<int> table_rank;
    bool optimal = false;
    bool want_analytic = true;   // compute omega/L/sha when possible
    double tol = 1e-8;
    bool recompute_analytic_rank = false;  // audit rank-0/1 table claims
};

GlobalData assemble_global_data(const CurveQ& curve, const AssembleOptions& opts);

} // namespace shavis

#endif
