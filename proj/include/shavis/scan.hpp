#ifndef SHAVIS_SCAN_HPP
#define SHAVIS_SCAN_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shavis/table.hpp"
#include "shavis/verdict.hpp"

namespace shavis {

struct ScanFilters {
    bool cross_level = false;              // allow unequal conductors
    std::optional<Int> conductor_lo, conductor_hi;
    int threads = 1;
    int prefilter_primes = 10;             // smallest common good primes
    SemistabilityMode mode = SemistabilityMode::strict;
};

struct ScanReport {
    int64_t pairs_examined = 0;
    int64_t prefilter_rejections = 0;
    std::vector<CongruenceCertificate> certificates;
    std::vector<TheoremVerdict> verdicts;
    std::map<std::string, double> timing;  // per-stage seconds

    bool operator==(const ScanReport& o) const;
};

// For each unordered record pair and each odd n: quick trace prefilter,
// full congruence check on survivors, then every applicable theorem check.
// Deterministic: pairs ordered lexicographically by label.
ScanReport scan_pairs(const std::vector<CurveRecord>& records,
                      const std::vector<Int>& odd_primes, const ScanFilters& filters);

} // namespace shavis

#endif
