#include "shavis/report.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "shavis/errors.hpp"

namespace shavis {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string real_str(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

ordered_json rat_json(const Rat& r) {
    return ordered_json{{"num", Int(r.get_num()).get_str()},
                        {"den", Int(r.get_den()).get_str()}};
}

Rat rat_from_json(const ordered_json& j) {
    Rat r(Int(j.at("num").get<std::string>()), Int(j.at("den").get<std::string>()));
    r.canonicalize();
    return r;
}

std::string cert_status_str(CertStatus s) {
    switch (s) {
        case CertStatus::verified_to_sturm: return "verified-to-sturm";
        case CertStatus::verified_to_bound: return "verified-to-bound";
        case CertStatus::refuted: return "refuted";
    }
    return "?";
}

CertStatus cert_status_parse(const std::string& s) {
    if (s == "verified-to-sturm") return CertStatus::verified_to_sturm;
    if (s == "verified-to-bound") return CertStatus::verified_to_bound;
    if (s == "refuted") return CertStatus::refuted;
    throw ParseError("bad certificate status: " + s);
}

ordered_json cert_json(const CongruenceCertificate& c) {
    ordered_json j;
    j["label_a"] = c.label_a;
    j["label_b"] = c.label_b;
    j["n"] = c.n.get_str();
    j["bound_used"] = c.bound_used.get_str();
    j["sturm_bound"] = c.sturm_bound.get_str();
    j["checked_primes"] = c.checked_primes;
    ordered_json skipped = ordered_json::array();
    for (const SkippedPrime& s : c.skipped)
        skipped.push_back({{"prime", s.prime.get_str()}, {"reason", s.reason}});
    j["skipped_primes"] = skipped;
    j["status"] = cert_status_str(c.status);
    if (c.refuting) {
        j["refuting_prime"] = c.refuting->prime.get_str();
        j["refuting_traces"] = ordered_json{{"a", c.refuting->trace_a.get_str()},
                                            {"b", c.refuting->trace_b.get_str()}};
    }
    j["rigor"] = c.rigor == CertRigor::rigorous_prime_irreducible
                     ? "rigorous-prime-irreducible"
                     : "heuristic";
    ordered_json lr = ordered_json::array();
    for (const Int& p : c.level_raising_primes) lr.push_back(p.get_str());
    j["level_raising_primes"] = lr;
    return j;
}

CongruenceCertificate cert_from_json(const ordered_json& j) {
    CongruenceCertificate c;
    c.label_a = j.at("label_a").get<std::string>();
    c.label_b = j.at("label_b").get<std::string>();
    c.n = Int(j.at("n").get<std::string>());
    c.bound_used = Int(j.at("bound_used").get<std::string>());
    c.sturm_bound = Int(j.at("sturm_bound").get<std::string>());
    c.checked_primes = j.at("checked_primes").get<int>();
    for (const auto& s : j.at("skipped_primes"))
        c.skipped.push_back({Int(s.at("prime").get<std::string>()),
                             s.at("reason").get<std::string>()});
    c.status = cert_status_parse(j.at("status").get<std::string>());
    if (j.contains("refuting_prime")) {
        RefutingWitness w;
        w.prime = Int(j.at("refuting_prime").get<std::string>());
        w.trace_a = Int(j.at("refuting_traces").at("a").get<std::string>());
        w.trace_b = Int(j.at("refuting_traces").at("b").get<std::string>());
        c.refuting = w;
    }
    c.rigor = j.at("rigor").get<std::string>() == "rigorous-prime-irreducible"
                  ? CertRigor::rigorous_prime_irreducible
                  : CertRigor::heuristic;
    for (const auto& p : j.at("level_raising_primes"))
        c.level_raising_primes.push_back(Int(p.get<std::string>()));
    return c;
}

std::string bsd_str(BsdConsistency s) {
    switch (s) {
        case BsdConsistency::consistent: return "consistent";
        case BsdConsistency::inconsistent: return "inconsistent";
        case BsdConsistency::unavailable: return "unavailable";
    }
    return "?";
}

BsdConsistency bsd_parse(const std::string& s) {
    if (s == "consistent") return BsdConsistency::consistent;
    if (s == "inconsistent") return BsdConsistency::inconsistent;
    if (s == "unavailable") return BsdConsistency::unavailable;
    throw ParseError("bad bsd status: " + s);
}

std::string prov_str(RankProvenance p) {
    switch (p) {
        case RankProvenance::ingested: return "ingested";
        case RankProvenance::analytic_order_0: return "analytic-order-0";
        case RankProvenance::analytic_order_1: return "analytic-order-1";
    }
    return "?";
}

RankProvenance prov_parse(const std::string& s) {
    if (s == "ingested") return RankProvenance::ingested;
    if (s == "analytic-order-0") return RankProvenance::analytic_order_0;
    if (s == "analytic-order-1") return RankProvenance::analytic_order_1;
    throw ParseError("bad rank provenance: " + s);
}

TheoremId theorem_parse(const std::string& s) {
    if (s == "mt-part-i") return TheoremId::mt_part_i;
    if (s == "mt-part-ii") return TheoremId::mt_part_ii;
    if (s == "prop1") return TheoremId::prop1;
    if (s == "dws") return TheoremId::dws;
    throw ParseError("bad theorem id: " + s);
}

ClaimKind claim_parse(const std::string& s) {
    if (s == "divides-sha-tamagawa") return ClaimKind::divides_sha_tamagawa;
    if (s == "injection-lower-bound") return ClaimKind::injection_lower_bound;
    if (s == "kernel-bound") return ClaimKind::kernel_bound;
    if (s == "divides-l-ratio") return ClaimKind::divides_l_ratio;
    if (s == "divides-sha") return ClaimKind::divides_sha;
    throw ParseError("bad claim kind: " + s);
}

ordered_json verdict_json(const TheoremVerdict& v) {
    ordered_json j;
    j["theorem"] = theorem_id_str(v.theorem);
    j["mode"] = v.mode == SemistabilityMode::strict ? "strict" : "general";
    ordered_json hs = ordered_json::array();
    for (const Hypothesis& h : v.hypotheses)
        hs.push_back({{"name", h.name}, {"pass", h.pass}, {"witness", h.witness}});
    j["hypotheses"] = hs;
    j["applicable"] = v.applicable;
    if (v.conclusion) {
        ordered_json c;
        c["kind"] = claim_kind_str(v.conclusion->kind);
        c["quantity"] = v.conclusion->quantity.get_str();
        c["target"] = v.conclusion->target;
        if (v.conclusion->exact_value)
            c["exact_value"] = rat_json(*v.conclusion->exact_value);
        c["text"] = v.conclusion->text;
        j["conclusion"] = c;
    }
    j["conditional_notes"] = v.conditional_notes;
    j["bsd_crosscheck"] =
        ordered_json{{"status", bsd_str(v.bsd.status)}, {"detail", v.bsd.detail}};
    ordered_json in;
    in["label_a"] = v.inputs.label_a;
    in["label_b"] = v.inputs.label_b;
    in["n"] = v.inputs.n.get_str();
    in["rank_a"] = v.inputs.rank_a;
    in["rank_b"] = v.inputs.rank_b;
    in["rank_a_provenance"] = prov_str(v.inputs.rank_a_prov);
    in["rank_b_provenance"] = prov_str(v.inputs.rank_b_prov);
    in["torsion_a"] = v.inputs.tor_a.get_str();
    in["torsion_b"] = v.inputs.tor_b.get_str();
    in["tamagawa_a"] = v.inputs.tamagawa_a.get_str();
    in["tamagawa_b"] = v.inputs.tamagawa_b.get_str();
    in["conductor_a"] = v.inputs.conductor_a.get_str();
    in["conductor_b"] = v.inputs.conductor_b.get_str();
    in["certificate_status"] = v.inputs.cert_status;
    j["inputs"] = in;
    return j;
}

TheoremVerdict verdict_from_json(const ordered_json& j) {
    TheoremVerdict v;
    v.theorem = theorem_parse(j.at("theorem").get<std::string>());
    v.mode = j.at("mode").get<std::string>() == "strict" ? SemistabilityMode::strict
                                                         : SemistabilityMode::general;
    for (const auto& h : j.at("hypotheses"))
        v.hypotheses.push_back({h.at("name").get<std::string>(),
                                h.at("pass").get<bool>(),
                                h.at("witness").get<std::string>()});
    v.applicable = j.at("applicable").get<bool>();
    if (j.contains("conclusion")) {
        Conclusion c;
        const auto& cj = j.at("conclusion");
        c.kind = claim_parse(cj.at("kind").get<std::string>());
        c.quantity = Int(cj.at("quantity").get<std::string>());
        c.target = cj.at("target").get<std::string>();
        if (cj.contains("exact_value")) c.exact_value = rat_from_json(cj.at("exact_value"));
        c.text = cj.at("text").get<std::string>();
        v.conclusion = c;
    }
    for (const auto& s : j.at("conditional_notes"))
        v.conditional_notes.push_back(s.get<std::string>());
    v.bsd.status = bsd_parse(j.at("bsd_crosscheck").at("status").get<std::string>());
    v.bsd.detail = j.at("bsd_crosscheck").at("detail").get<std::string>();
    const auto& in = j.at("inputs");
    v.inputs.label_a = in.at("label_a").get<std::string>();
    v.inputs.label_b = in.at("label_b").get<std::string>();
    v.inputs.n = Int(in.at("n").get<std::string>());
    v.inputs.rank_a = in.at("rank_a").get<int>();
    v.inputs.rank_b = in.at("rank_b").get<int>();
    v.inputs.rank_a_prov = prov_parse(in.at("rank_a_provenance").get<std::string>());
    v.inputs.rank_b_prov = prov_parse(in.at("rank_b_provenance").get<std::string>());
    v.inputs.tor_a = Int(in.at("torsion_a").get<std::string>());
    v.inputs.tor_b = Int(in.at("torsion_b").get<std::string>());
    v.inputs.tamagawa_a = Int(in.at("tamagawa_a").get<std::string>());
    v.inputs.tamagawa_b = Int(in.at("tamagawa_b").get<std::string>());
    v.inputs.conductor_a = Int(in.at("conductor_a").get<std::string>());
    v.inputs.conductor_b = Int(in.at("conductor_b").get<std::string>());
    v.inputs.cert_status = in.at("certificate_status").get<std::string>();
    return v;
}

} // namespace

std::string certificate_to_text(const CongruenceCertificate& c) {
    std::ostringstream os;
    os << "congruence " << c.label_a << "[" << c.n << "] ~ " << c.label_b << "["
       << c.n << "]: " << cert_status_str(c.status) << " (checked "
       << c.checked_primes << " primes up to " << c.bound_used << ", sturm "
       << c.sturm_bound << ", rigor "
       << (c.rigor == CertRigor::rigorous_prime_irreducible
               ? "rigorous-prime-irreducible"
               : "heuristic")
       << ")";
    if (c.refuting)
        os << "; refuted at " << c.refuting->prime << " (traces "
           << c.refuting->trace_a << " vs " << c.refuting->trace_b << ")";
    for (const SkippedPrime& s : c.skipped)
        os << "\n  skipped " << s.prime << ": " << s.reason;
    return os.str();
}

std::string verdict_to_text(const TheoremVerdict& v) {
    std::ostringstream os;
    os << "[" << theorem_id_str(v.theorem) << "] A=" << v.inputs.label_a
       << " B=" << v.inputs.label_b << " n=" << v.inputs.n << " ("
       << (v.mode == SemistabilityMode::strict ? "strict" : "general")
       << " mode): " << (v.applicable ? "APPLICABLE" : "not applicable");
    for (const Hypothesis& h : v.hypotheses)
        os << "\n  [" << (h.pass ? "pass" : "FAIL") << "] " << h.name << " -- "
           << h.witness;
    if (v.conclusion) os << "\n  conclusion: " << v.conclusion->text;
    for (const std::string& note : v.conditional_notes) os << "\n  note: " << note;
    os << "\n  bsd-crosscheck: " << bsd_str(v.bsd.status);
    if (!v.bsd.detail.empty()) os << " (" << v.bsd.detail << ")";
    return os.str();
}

std::string emit_report(const ScanReport& report, const EmitOptions& opts) {
    if (opts.format == ReportFormat::text) {
        std::ostringstream os;
        os << "pairs examined:       " << report.pairs_examined << "\n";
        os << "prefilter rejections: " << report.prefilter_rejections << "\n";
        os << "certificates:         " << report.certificates.size() << "\n";
        os << "verdicts:             " << report.verdicts.size() << "\n";
        for (const CongruenceCertificate& c : report.certificates)
            os << "\n" << certificate_to_text(c) << "\n";
        for (const TheoremVerdict& v : report.verdicts)
            os << "\n" << verdict_to_text(v) << "\n";
        if (opts.include_timing) {
            os << "\ntiming (seconds):\n";
            for (const auto& [k, s] : report.timing)
                os << "  " << k << ": " << real_str(s) << "\n";
        }
        return os.str();
    }
    ordered_json j;
    j["pairs_examined"] = report.pairs_examined;
    j["prefilter_rejections"] = report.prefilter_rejections;
    ordered_json certs = ordered_json::array();
    for (const CongruenceCertificate& c : report.certificates)
        certs.push_back(cert_json(c));
    j["certificates"] = certs;
    ordered_json vs = ordered_json::array();
    for (const TheoremVerdict& v : report.verdicts) vs.push_back(verdict_json(v));
    j["verdicts"] = vs;
    if (opts.include_timing) {
        ordered_json t;
        for (const auto& [k, s] : report.timing) t[k] = real_str(s);
        j["timing"] = t;
    }
    return j.dump(2) + "\n";
}

ScanReport parse_report(const std::string& json_text) {
    ordered_json j = ordered_json::parse(json_text);
    ScanReport r;
    r.pairs_examined = j.at("pairs_examined").get<int64_t>();
    r.prefilter_rejections = j.at("prefilter_rejections").get<int64_t>();
    for (const auto& c : j.at("certificates"))
        r.certificates.push_back(cert_from_json(c));
    for (const auto& v : j.at("verdicts")) r.verdicts.push_back(verdict_from_json(v));
    return r;
}

} // namespace shavis
