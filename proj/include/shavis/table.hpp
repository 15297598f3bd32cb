#ifndef SHAVIS_TABLE_HPP
#define SHAVIS_TABLE_HPP

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shavis/curve.hpp"

namespace shavis {

struct CurveRecord {
    std::string label;          // e.g. "2834D1"
    Int conductor_from_label;
    std::string isogeny_class;  // letter block
    int number = 1;             // curve number; 1 = optimal convention
    std::array<Int, 5> ainvs;
    std::optional<int> rank;
    std::optional<Int> torsion_order;
    bool optimal = false;

    CurveQ curve() const;
};

struct TableIssue {
    int line_no = 0;
    std::string line;
    std::string reason;
};

struct CurveTable {
    std::vector<CurveRecord> records;
    std::vector<TableIssue> issues;

    // case-insensitive label lookup; "2834D" resolves to curve number 1
    const CurveRecord* find(const std::string& label) const;
};

// Line format: <conductor> <class-letters> <number> [a1,a2,a3,a4,a6] <rank> <torsion>
// '#' lines ignored.  Each record is validated: the curve must be nonsingular
// and its computed conductor must equal the label's.  In strict mode the
// first malformed or invalid line throws ParseError; otherwise problems are
// collected in `issues`.
CurveTable parse_curve_table(std::istream& in, bool strict = false);
CurveTable load_curve_table(const std::string& path, bool strict = false);

// (conductor, class, number) from a label like "114C1" or "57A"
std::optional<std::tuple<Int, std::string, int>> parse_label(const std::string& label);

} // namespace shavis

#endif
