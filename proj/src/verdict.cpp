#include "shavis/verdict.hpp"
#include "shavis/errors.hpp"

#include <set>
#include <sstream>

namespace shavis {

std::string theorem_id_str(TheoremId t) {
    switch (t) {
        case TheoremId::mt_part_i: return "mt-part-i";
        case TheoremId::mt_part_ii: return "mt-part-ii";
        case TheoremId::prop1: return "prop1";
        case TheoremId::dws: return "dws";
    }
    return "?";
}

std::string claim_kind_str(ClaimKind k) {
    switch (k) {
        case ClaimKind::divides_sha_tamagawa: return "divides-sha-tamagawa";
        case ClaimKind::injection_lower_bound: return "injection-lower-bound";
        case ClaimKind::kernel_bound: return "kernel-bound";
        case ClaimKind::divides_l_ratio: return "divides-l-ratio";
        case ClaimKind::divides_sha: return "divides-sha";
    }
    return "?";
}

namespace {

Int int_pow(const Int& base, int e) {
    Int r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

// product of the distinct bad residue characteristics of both curves
Int bad_characteristic_product(const GlobalData& a, const GlobalData& b) {
    std::set<Int> primes;
    for (const LocalData& d : a.locals) primes.insert(d.p);
    for (const LocalData& d : b.locals) primes.insert(d.p);
    Int N = 1;
    for (const Int& p : primes) N *= p;
    return N;
}

VerdictInputs make_inputs(const GlobalData& a, const GlobalData& b, const Int& n,
                          const CongruenceCertificate& cert) {
    VerdictInputs in;
    in.label_a = a.label;
    in.label_b = b.label;
    in.n = n;
    in.rank_a = a.rank.rank;
    in.rank_b = b.rank.rank;
    in.rank_a_prov = a.rank.provenance;
    in.rank_b_prov = b.rank.provenance;
    in.tor_a = a.torsion.order;
    in.tor_b = b.torsion.order;
    in.tamagawa_a = a.tamagawa;
    in.tamagawa_b = b.tamagawa;
    in.conductor_a = a.conductor;
    in.conductor_b = b.conductor;
    switch (cert.status) {
        case CertStatus::verified_to_sturm: in.cert_status = "verified-to-sturm"; break;
        case CertStatus::verified_to_bound: in.cert_status = "verified-to-bound"; break;
        case CertStatus::refuted: in.cert_status = "refuted"; break;
    }
    return in;
}

std::string list_primes(const std::vector<Int>& v) {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

// shared hypotheses H1..H4 of the congruent-torsion theorem
std::vector<Hypothesis> base_hypotheses(const GlobalData& a, const GlobalData& b,
                                        const CongruenceCertificate& cert,
                                        const Int& n, SemistabilityMode mode,
                                        std::vector<std::string>& notes) {
    std::vector<Hypothesis> hs;
    {
        bool pass = n >= 3 && mpz_odd_p(n.get_mpz_t());
        hs.push_back({"n odd and >= 3", pass, "n = " + n.get_str()});
    }
    {
        bool both = a.semistable && b.semistable;
        bool only_b = b.semistable;
        std::ostringstream wit;
        if (!a.semistable)
            wit << a.label << " additive at " << list_primes(a.additive_primes) << "; ";
        if (!b.semistable)
            wit << b.label << " additive at " << list_primes(b.additive_primes) << "; ";
        if (wit.str().empty()) wit << "both curves semistable";
        hs.push_back({"semistability (strict: both curves)", both, wit.str()});
        hs.push_back({"semistability (general: second curve only)", only_b, wit.str()});
        if (mode == SemistabilityMode::general) {
            // over Q every ramification index is 1, so e_p < p - 1 holds for
            // every odd prime p | n
            bool odd_ok = mpz_odd_p(n.get_mpz_t()) != 0;
            hs.push_back({"ramification e_p < p-1 for p | n", odd_ok,
                          "automatic over Q for odd n"});
        }
    }
    {
        Int N = bad_characteristic_product(a, b);
        Int g = gcd(n, N * a.torsion.order * b.tamagawa);
        std::ostringstream wit;
        wit << "gcd(" << n << ", " << N << " * " << a.torsion.order << " * "
            << b.tamagawa << ") = " << g;
        hs.push_back({"gcd(n, N * #A(Q)_tor * prodc_B) = 1", g == 1, wit.str()});
    }
    {
        bool pass = cert.status == CertStatus::verified_to_sturm ||
                    cert.status == CertStatus::verified_to_bound;
        std::ostringstream wit;
        wit << "certificate " << (pass ? "verified" : "refuted") << " (bound "
            << cert.bound_used << ", sturm " << cert.sturm_bound << ")";
        hs.push_back({"A[n] = B[n] certified congruent", pass, wit.str()});
        if (pass && cert.status == CertStatus::verified_to_bound)
            notes.push_back("congruence checked below the Sturm bound; treat as partial evidence");
        if (pass && cert.rigor == CertRigor::heuristic)
            notes.push_back("torsion isomorphism evidence is heuristic (trace congruences only)");
    }
    return hs;
}

bool all_pass(const std::vector<Hypothesis>& hs, SemistabilityMode mode) {
    for (const Hypothesis& h : hs) {
        if (h.name == "semistability (strict: both curves)" &&
            mode == SemistabilityMode::general)
            continue;
        if (h.name == "semistability (general: second curve only)" &&
            mode == SemistabilityMode::strict)
            continue;
        if (!h.pass) return false;
    }
    return true;
}

} // namespace

TheoremVerdict check_main_theorem_part_i(const GlobalData& a, const GlobalData& b,
                                         const CongruenceCertificate& cert,
                                         const Int& n, SemistabilityMode mode) {
    TheoremVerdict v;
    v.theorem = TheoremId::mt_part_i;
    v.mode = mode;
    v.inputs = make_inputs(a, b, n, cert);
    v.hypotheses = base_hypotheses(a, b, cert, n, mode, v.conditional_notes);
    {
        bool pass = b.rank.rank > a.rank.rank;
        std::ostringstream wit;
        wit << "r_B = " << b.rank.rank << " > r_A = " << a.rank.rank;
        v.hypotheses.push_back({"r_B > r_A", pass, wit.str()});
    }
    v.applicable = all_pass(v.hypotheses, mode);
    if (v.applicable) {
        Conclusion c;
        c.kind = ClaimKind::divides_sha_tamagawa;
        c.quantity = int_pow(n, b.rank.rank - a.rank.rank);
        c.target = "#Sha(" + a.label + "/Q) * prodc(" + a.label + ")";
        std::ostringstream txt;
        txt << c.quantity << " divides #Sha(" << a.label << "/Q) * " << a.tamagawa;
        c.text = txt.str();
        v.conclusion = c;
    }
    return v;
}

TheoremVerdict check_main_theorem_part_ii(const GlobalData& a, const GlobalData& b,
                                          const CongruenceCertificate& cert,
                                          const Int& n, SemistabilityMode mode) {
    TheoremVerdict v;
    v.theorem = TheoremId::mt_part_ii;
    v.mode = mode;
    v.inputs = make_inputs(a, b, n, cert);
    v.hypotheses = base_hypotheses(a, b, cert, n, mode, v.conditional_notes);
    {
        Int g = gcd(n, a.tamagawa);
        std::ostringstream wit;
        wit << "gcd(" << n << ", " << a.tamagawa << ") = " << g;
        v.hypotheses.push_back({"gcd(n, prodc_A) = 1", g == 1, wit.str()});
    }
    v.applicable = all_pass(v.hypotheses, mode);
    if (v.applicable) {
        Conclusion c;
        if (a.rank.rank == 0) {
            // #(B(Q)/nB(Q)) = n^{r_B} * #(B(Q)_tor[n])
            Int tor_n = gcd(n, Int(b.torsion.d1)) * gcd(n, Int(b.torsion.d2));
            Int m = int_pow(n, b.rank.rank) * tor_n;
            c.kind = ClaimKind::injection_lower_bound;
            c.quantity = m;
            c.target = "#Sha(" + a.label + "/Q)";
            std::ostringstream txt;
            txt << b.label << "(Q)/" << n << b.label << "(Q) injects into Sha("
                << a.label << "/Q); lower bound " << m << " for #Sha(" << a.label
                << "/Q)";
            c.text = txt.str();
            std::ostringstream note;
            note << "the injection is an isomorphism if Sha(" << b.label
                 << "/Q)[p] = 0 for every prime p | " << n
                 << " (assumption not verifiable here)";
            v.conditional_notes.push_back(note.str());
        } else {
            c.kind = ClaimKind::kernel_bound;
            c.quantity = int_pow(n, a.rank.rank);
            c.target = "ker(phi), phi : " + b.label + "(Q)/" + n.get_str() +
                       b.label + "(Q) -> Sha(" + a.label + "/Q)";
            std::ostringstream txt;
            txt << "there is phi : " << b.label << "(Q)/" << n << b.label
                << "(Q) -> Sha(" << a.label << "/Q) with kernel of order at most "
                << c.quantity;
            c.text = txt.str();
        }
        v.conclusion = c;
    }
    return v;
}

std::vector<TheoremVerdict> check_main_theorem(const GlobalData& a,
                                               const GlobalData& b,
                                               const CongruenceCertificate& cert,
                                               const Int& n, SemistabilityMode mode) {
    return {check_main_theorem_part_i(a, b, cert, n, mode),
            check_main_theorem_part_ii(a, b, cert, n, mode)};
}

TheoremVerdict check_prop1(const GlobalData& a, const GlobalData& b,
                           const CongruenceCertificate& cert, const Int& n,
                           const Rat& l_over_omega) {
    TheoremVerdict v;
    v.theorem = TheoremId::prop1;
    v.mode = SemistabilityMode::strict;
    v.inputs = make_inputs(a, b, n, cert);
    v.hypotheses = base_hypotheses(a, b, cert, n, SemistabilityMode::strict,
                                   v.conditional_notes);
    v.hypotheses.push_back({"r_B > r_A", b.rank.rank > a.rank.rank,
                            "r_B = " + std::to_string(b.rank.rank) +
                                ", r_A = " + std::to_string(a.rank.rank)});
    v.hypotheses.push_back({"n prime", is_probable_prime(n), "n = " + n.get_str()});
    v.hypotheses.push_back({"r_A = 0", a.rank.rank == 0,
                            "r_A = " + std::to_string(a.rank.rank)});
    v.hypotheses.push_back({"both curves optimal", a.optimal && b.optimal,
                            std::string(a.optimal ? "A optimal" : "A not optimal") +
                                ", " + (b.optimal ? "B optimal" : "B not optimal")});
    v.hypotheses.push_back({"equal conductors", a.conductor == b.conductor,
                            a.conductor.get_str() + " vs " + b.conductor.get_str()});
    v.applicable = all_pass(v.hypotheses, SemistabilityMode::strict);
    if (v.applicable) {
        Conclusion c;
        c.kind = ClaimKind::divides_l_ratio;
        c.quantity = n;
        Rat q = l_over_omega * a.torsion.order * a.torsion.order;
        q.canonicalize();
        c.exact_value = q;
        c.target = "L(1)/Omega * (#" + a.label + "(Q)_tor)^2";
        std::ostringstream txt;
        txt << n << " divides L(1)/Omega * tor^2 = " << q.get_str() << " for "
            << a.label;
        c.text = txt.str();
        v.conclusion = c;
        // immediate numeric verification of the divisibility
        bool den_coprime = gcd(Int(q.get_den()), n) == 1;
        bool divides = den_coprime &&
                       mpz_divisible_p(Int(q.get_num()).get_mpz_t(), n.get_mpz_t());
        v.bsd.status = divides ? BsdConsistency::consistent : BsdConsistency::inconsistent;
        v.bsd.detail = "exact quantity " + q.get_str() + (divides ? " divisible by "
                                                                  : " NOT divisible by ") +
                       n.get_str();
    }
    return v;
}

TheoremVerdict check_dws(const GlobalData& e, const GlobalData& f, const Int& p,
                         const CongruenceCertificate& cert,
                         const IrreducibilityReport& irr_e,
                         const IrreducibilityReport& irr_f) {
    TheoremVerdict v;
    v.theorem = TheoremId::dws;
    v.mode = SemistabilityMode::strict;
    v.inputs = make_inputs(e, f, p, cert);
    auto& hs = v.hypotheses;
    hs.push_back({"p odd prime", p >= 3 && mpz_odd_p(p.get_mpz_t()) &&
                                     is_probable_prime(p),
                  "p = " + p.get_str()});
    hs.push_back({"both curves semistable", e.semistable && f.semistable,
                  e.semistable && f.semistable ? "yes" : "no"});
    hs.push_back({"both curves optimal", e.optimal && f.optimal,
                  std::string(e.optimal ? "E optimal" : "E not optimal") + ", " +
                      (f.optimal ? "F optimal" : "F not optimal")});
    hs.push_back({"equal levels", e.conductor == f.conductor,
                  e.conductor.get_str() + " vs " + f.conductor.get_str()});
    hs.push_back({"rank(F) > rank(E) = 0",
                  f.rank.rank > e.rank.rank && e.rank.rank == 0,
                  "rank(F) = " + std::to_string(f.rank.rank) +
                      ", rank(E) = " + std::to_string(e.rank.rank)});
    {
        Int m = e.conductor * f.tamagawa;
        bool pass = !mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t());
        hs.push_back({"p coprime to N * prodc_F", pass,
                      "N * prodc_F = " + m.get_str()});
    }
    hs.push_back({"E[p] irreducible",
                  irr_e.status == IrreducibilityReport::Status::irreducible,
                  irr_e.witness_prime
                      ? "Frobenius witness at " + irr_e.witness_prime->get_str()
                      : "no witness"});
    hs.push_back({"F[p] irreducible",
                  irr_f.status == IrreducibilityReport::Status::irreducible,
                  irr_f.witness_prime
                      ? "Frobenius witness at " + irr_f.witness_prime->get_str()
                      : "no witness"});
    hs.push_back({"congruence certified at full rigor",
                  cert.status == CertStatus::verified_to_sturm &&
                      cert.rigor == CertRigor::rigorous_prime_irreducible,
                  "status " + v.inputs.cert_status});
    v.applicable = true;
    for (const Hypothesis& h : hs) v.applicable = v.applicable && h.pass;
    if (v.applicable) {
        Conclusion c;
        c.kind = ClaimKind::divides_sha;
        c.quantity = p;
        c.target = "#Sha(" + e.label + "/Q)";
        c.text = p.get_str() + " divides #Sha(" + e.label + "/Q)";
        v.conclusion = c;
    }
    return v;
}

void cross_check_bsd(TheoremVerdict& v, const std::optional<ConjecturalSha>& sha_a,
                     const Int& tamagawa_a) {
    if (v.theorem == TheoremId::prop1) return;  // checked exactly at creation
    if (!v.conclusion) {
        v.bsd.status = BsdConsistency::unavailable;
        v.bsd.detail = "no conclusion to check";
        return;
    }
    if (!sha_a || !sha_a->is_integer) {
        v.bsd.status = BsdConsistency::unavailable;
        v.bsd.detail = "no conjectural Sha available (rank > 0 or reconstruction failed)";
        return;
    }
    const Int sha = sha_a->value.get_num();
    const Conclusion& c = *v.conclusion;
    switch (c.kind) {
        case ClaimKind::divides_sha_tamagawa: {
            Int prod = sha * tamagawa_a;
            bool ok = mpz_divisible_p(prod.get_mpz_t(), c.quantity.get_mpz_t());
            v.bsd.status = ok ? BsdConsistency::consistent : BsdConsistency::inconsistent;
            v.bsd.detail = c.quantity.get_str() + (ok ? " divides " : " does NOT divide ") +
                           sha.get_str() + " * " + tamagawa_a.get_str();
            break;
        }
        case ClaimKind::injection_lower_bound: {
            bool ok = sha >= c.quantity;
            v.bsd.status = ok ? BsdConsistency::consistent : BsdConsistency::inconsistent;
            v.bsd.detail = "conjectural #Sha = " + sha.get_str() +
                           (ok ? " >= " : " < ") + c.quantity.get_str();
            break;
        }
        case ClaimKind::divides_sha: {
            bool ok = mpz_divisible_p(sha.get_mpz_t(), c.quantity.get_mpz_t());
            v.bsd.status = ok ? BsdConsistency::consistent : BsdConsistency::inconsistent;
            v.bsd.detail = c.quantity.get_str() + (ok ? " divides " : " does NOT divide ") +
                           "conjectural #Sha = " + sha.get_str();
            break;
        }
        case ClaimKind::kernel_bound: {
            v.bsd.status = BsdConsistency::unavailable;
            v.bsd.detail = "kernel bound carries no Sha-order content";
            break;
        }
        case ClaimKind::divides_l_ratio:
            break;
    }
}

} // namespace shavis
