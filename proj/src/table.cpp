#include "shavis/table.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "shavis/errors.hpp"
#include "shavis/localdata.hpp"
#include "shavis/mordell.hpp"

namespace shavis {

CurveQ CurveRecord::curve() const {
    return CurveQ::from_ainvs(ainvs[0], ainvs[1], ainvs[2], ainvs[3], ainvs[4],
                              label);
}

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

} // namespace

std::optional<std::tuple<Int, std::string, int>> parse_label(const std::string& label) {
    size_t i = 0;
    while (i < label.size() && std::isdigit((unsigned char)label[i])) ++i;
    if (i == 0) return std::nullopt;
    size_t j = i;
    while (j < label.size() && std::isalpha((unsigned char)label[j])) ++j;
    if (j == i) return std::nullopt;
    int number = 1;
    if (j < label.size()) {
        for (size_t k = j; k < label.size(); ++k)
            if (!std::isdigit((unsigned char)label[k])) return std::nullopt;
        number = std::stoi(label.substr(j));
    }
    return std::make_tuple(Int(label.substr(0, i)), label.substr(i, j - i), number);
}

const CurveRecord* CurveTable::find(const std::string& label) const {
    auto want = parse_label(label);
    if (!want) return nullptr;
    for (const CurveRecord& r : records) {
        if (r.conductor_from_label == std::get<0>(*want) &&
            lower(r.isogeny_class) == lower(std::get<1>(*want)) &&
            r.number == std::get<2>(*want))
            return &r;
    }
    return nullptr;
}

CurveTable parse_curve_table(std::istream& in, bool strict) {
    CurveTable table;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t"));
        if (trimmed.empty() || trimmed[0] == '#') continue;

        auto fail = [&](const std::string& why) {
            if (strict) throw ParseError("line " + std::to_string(line_no) + ": " + why);
            table.issues.push_back({line_no, line, why});
        };

        std::istringstream is(trimmed);
        std::string cond_s, class_s, num_s, ainvs_s, rank_s, tor_s;
        if (!(is >> cond_s >> class_s >> num_s >> ainvs_s >> rank_s >> tor_s)) {
            fail("expected 6 whitespace-separated fields");
            continue;
        }
        CurveRecord rec;
        try {
            rec.conductor_from_label = Int(cond_s);
            rec.isogeny_class = class_s;
            rec.number = std::stoi(num_s);
        } catch (...) {
            fail("bad label fields");
            continue;
        }
        rec.label = cond_s + class_s + num_s;
        if (ainvs_s.size() < 2 || ainvs_s.front() != '[' || ainvs_s.back() != ']') {
            fail("a-invariants must be bracketed [a1,a2,a3,a4,a6]");
            continue;
        }
        {
            std::string body = ainvs_s.substr(1, ainvs_s.size() - 2);
            std::istringstream bs(body);
            std::string tok;
            std::vector<Int> vals;
            bool bad = false;
            while (std::getline(bs, tok, ',')) {
                try {
                    vals.push_back(Int(tok));
                } catch (...) {
                    bad = true;
                    break;
                }
            }
            if (bad || vals.size() != 5) {
                fail("need five integer a-invariants");
                continue;
            }
            for (int k = 0; k < 5; ++k) rec.ainvs[k] = vals[k];
        }
        try {
            rec.rank = std::stoi(rank_s);
            rec.torsion_order = Int(tor_s);
        } catch (...) {
            fail("bad rank/torsion fields");
            continue;
        }
        rec.optimal = rec.number == 1;

        // validation: nonsingular, conductor matches the label, torsion matches
        try {
            CurveQ c = rec.curve();
            auto [minimal, iso] = minimal_model(c);
            Int N = conductor(minimal);
            if (N != rec.conductor_from_label) {
                fail("label conductor " + rec.conductor_from_label.get_str() +
                     " != computed conductor " + N.get_str());
                continue;
            }
            if (rec.torsion_order) {
                TorsionData t = torsion_subgroup(minimal);
                if (t.order != *rec.torsion_order) {
                    fail("table torsion " + rec.torsion_order->get_str() +
                         " != computed " + t.order.get_str());
                    continue;
                }
            }
        } catch (const SingularCurveError&) {
            fail("singular a-invariants");
            continue;
        } catch (const Error& e) {
            fail(std::string("validation error: ") + e.what());
            continue;
        }
        table.records.push_back(std::move(rec));
    }
    return table;
}

CurveTable load_curve_table(const std::string& path, bool strict) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open curve table: " + path);
    return parse_curve_table(f, strict);
}

} // namespace shavis
