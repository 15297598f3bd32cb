#include "shavis/congruence.hpp"

#include <cassert>

#include "shavis/errors.hpp"
#include "shavis/localdata.hpp"
#include "shavis/mordell.hpp"
#include "shavis/pointcount.hpp"

namespace shavis {

Int sturm_bound(const Int& level) {
    assert(level >= 1);
    Int mu = 1;
    for (const auto& [p, e] : factorize(level)) {
        for (int k = 0; k + 1 < e; ++k) mu *= p;
        mu *= p + 1;
    }
    return mu / 6;
}

IrreducibilityReport irreducibility_check(const CurveQ& c, const Int& p,
                                          int scan_limit) {
    IrreducibilityReport out;
    out.p = p;
    if (mpz_divisible_p(c.disc().get_mpz_t(), p.get_mpz_t()))
        return out;  // undetermined at bad p
    TorsionData tor = torsion_subgroup(c);
    if (mpz_divisible_p(tor.order.get_mpz_t(), p.get_mpz_t())) {
        out.status = IrreducibilityReport::Status::reducible;
        out.torsion_witness = true;
        return out;
    }
    Int ell = 1;
    while ((ell = next_prime_after(ell)) <= scan_limit) {
        if (ell == p) continue;
        if (mpz_divisible_p(c.disc().get_mpz_t(), ell.get_mpz_t())) continue;
        Int a_ell = ap_naive(c, ell).a_p;
        // x^2 - a_ell x + ell irreducible mod p <=> disc non-residue
        Int disc = a_ell * a_ell - 4 * ell;
        if (legendre(disc, p) == -1) {
            out.status = IrreducibilityReport::Status::irreducible;
            out.witness_prime = ell;
            return out;
        }
    }
    return out;  // undetermined
}

CongruenceCertificate congruence_check(const CurveQ& a, const CurveQ& b,
                                       const Int& n,
                                       std::optional<Int> bound_override) {
    assert(n >= 3 && mpz_odd_p(n.get_mpz_t()));
    CongruenceCertificate cert;
    cert.label_a = a.label().empty() ? a.str() : a.label();
    cert.label_b = b.label().empty() ? b.str() : b.label();
    cert.n = n;

    Int Na = conductor(a), Nb = conductor(b);
    Int sturm = sturm_bound(lcm(Na, Nb));
    cert.sturm_bound = sturm;
    cert.bound_used = bound_override ? *bound_override : sturm;

    bool refuted = false;
    for (Int ell = 2; ell <= cert.bound_used && !refuted;
         ell = next_prime_after(ell)) {
        bool bad_a = mpz_divisible_p(Na.get_mpz_t(), ell.get_mpz_t());
        bool bad_b = mpz_divisible_p(Nb.get_mpz_t(), ell.get_mpz_t());
        if (mpz_divisible_p(n.get_mpz_t(), ell.get_mpz_t())) {
            cert.skipped.push_back({ell, "divides n"});
            continue;
        }
        if (bad_a && bad_b) {
            cert.skipped.push_back({ell, "bad for both curves"});
            continue;
        }
        if (bad_a != bad_b) {
            // prime dividing exactly one conductor
            const CurveQ& bad_curve = bad_a ? a : b;
            const CurveQ& good_curve = bad_a ? b : a;
            LocalData d = tate_local(bad_curve, ell);
            if (d.kind == ReductionKind::additive) {
                cert.skipped.push_back({ell, "additive for one curve"});
                continue;
            }
            if (d.f_p == 1 && valuation(bad_a ? Na : Nb, ell) == 1) {
                Int a_good = trace_of_frobenius(good_curve, ell).a_p;
                Int a_mult = d.kind == ReductionKind::split_multiplicative ? 1 : -1;
                Int lhs1 = a_good * a_good - (ell + 1) * (ell + 1);
                Int lhs2 = a_good - a_mult * (ell + 1);
                if (mod_floor(lhs1, n) != 0 || mod_floor(lhs2, n) != 0) {
                    cert.status = CertStatus::refuted;
                    cert.refuting = RefutingWitness{ell, trace_of_frobenius(a, ell).a_p,
                                                    trace_of_frobenius(b, ell).a_p};
                    refuted = true;
                    break;
                }
                cert.level_raising_primes.push_back(ell);
                ++cert.checked_primes;
                continue;
            }
            cert.skipped.push_back({ell, "higher conductor exponent"});
            continue;
        }
        Int ta = trace_of_frobenius(a, ell).a_p;
        Int tb = trace_of_frobenius(b, ell).a_p;
        if (mod_floor(ta - tb, n) != 0) {
            cert.status = CertStatus::refuted;
            cert.refuting = RefutingWitness{ell, ta, tb};
            refuted = true;
            break;
        }
        ++cert.checked_primes;
    }

    if (!refuted) {
        cert.status = cert.bound_used >= sturm ? CertStatus::verified_to_sturm
                                               : CertStatus::verified_to_bound;
        if (is_probable_prime(n) && cert.bound_used >= sturm) {
            IrreducibilityReport ia = irreducibility_check(a, n);
            IrreducibilityReport ib = irreducibility_check(b, n);
            if (ia.status == IrreducibilityReport::Status::irreducible &&
                ib.status == IrreducibilityReport::Status::irreducible)
                cert.rigor = CertRigor::rigorous_prime_irreducible;
        }
    }
    return cert;
}

} // namespace shavis
