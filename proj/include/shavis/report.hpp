#ifndef SHAVIS_REPORT_HPP
#define SHAVIS_REPORT_HPP

#include <string>

#include "shavis/scan.hpp"

namespace shavis {

enum class ReportFormat { json, text };

struct EmitOptions {
    ReportFormat format = ReportFormat::json;
    bool include_timing = false;  // timing breaks byte-determinism; opt-in
};

// JSON: one top-level object, stable key order, rationals as {"num","den"}
// strings, reals as decimal strings (17 significant digits) with the
// recorded precision.  Text: human-readable summary.
std::string emit_report(const ScanReport& report, const EmitOptions& opts);

// Inverse of emit_report's JSON mode (timing excluded).
ScanReport parse_report(const std::string& json_text);

std::string certificate_to_text(const CongruenceCertificate& cert);
std::string verdict_to_text(const TheoremVerdict& v);

} // namespace shavis

#endif
