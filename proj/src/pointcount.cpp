#include "shavis/pointcount.hpp"
#include "shavis/errors.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <random>
#include <unordered_map>

namespace shavis {

namespace {

bool is_good(const CurveQ& c, const Int& p) {
    return !mpz_divisible_p(c.disc().get_mpz_t(), p.get_mpz_t());
}

} // namespace

ApRecord ap_naive(const CurveQ& c, const Int& P) {
    if (!is_good(c, P))
        throw BadReductionPrimeError("ap_naive needs good reduction at " + P.get_str());
    if (P > kNaiveApLimit)
        throw PrimeTooLargeError("ap_naive limited to p <= 10^6");
    const uint64_t p = P.get_ui();
    if (p == 2) {
        // direct enumeration of E(F_2)
        int cnt = 1;
        for (uint64_t x = 0; x < 2; ++x)
            for (uint64_t y = 0; y < 2; ++y) {
                Int F = Int(y * y) + c.a1() * x * y + c.a3() * y - Int(x * x * x) -
                        c.a2() * x * x - c.a4() * x - c.a6();
                if (mod_floor(F, 2) == 0) ++cnt;
            }
        return {P, Int(2 + 1 - cnt), ApMethod::naive, ReductionKind::good};
    }
    // #E(F_p) = p + 1 + sum_x chi(4x^3 + b2 x^2 + 2 b4 x + b6)
    uint64_t B2 = mod_floor(c.b2(), P).get_ui();
    uint64_t B4 = mod_floor(c.b4(), P).get_ui();
    uint64_t B6 = mod_floor(c.b6(), P).get_ui();
    std::vector<bool> qr(p, false);
    for (uint64_t i = 1; i <= (p - 1) / 2; ++i) qr[mulmod_u64(i, i, p)] = true;
    int64_t s = 0;
    uint64_t tb4 = (2 * B4) % p;
    for (uint64_t x = 0; x < p; ++x) {
        uint64_t x2 = mulmod_u64(x, x, p);
        uint64_t v = (mulmod_u64(4, mulmod_u64(x2, x, p), p) + mulmod_u64(B2, x2, p) +
                      mulmod_u64(tb4, x, p) + B6) % p;
        if (v == 0) continue;
        s += qr[v] ? 1 : -1;
    }
    return {P, Int(-s), ApMethod::naive, ReductionKind::good};
}

namespace {

// ---- short-curve arithmetic over F_p for BSGS (u64 coordinates) ----

struct ShortFp {
    uint64_t p, A, B;

    bool on(const PointFp& P) const {
        if (P.infinity) return true;
        uint64_t y2 = mulmod_u64(P.y, P.y, p);
        uint64_t x3 = mulmod_u64(mulmod_u64(P.x, P.x, p), P.x, p);
        uint64_t rhs = (x3 + mulmod_u64(A, P.x, p) + B) % p;
        return y2 == rhs;
    }

    PointFp add(const PointFp& P, const PointFp& Q) const {
        if (P.infinity) return Q;
        if (Q.infinity) return P;
        if (P.x == Q.x) {
            if ((P.y + Q.y) % p == 0) return PointFp::zero();
            // double
            uint64_t num = (3 * mulmod_u64(P.x, P.x, p) % p + A) % p;
            uint64_t lam = mulmod_u64(num, invmod_u64(2 * P.y % p, p), p);
            uint64_t x3 = (mulmod_u64(lam, lam, p) + 2 * (p - P.x) % p) % p;
            uint64_t y3 = (mulmod_u64(lam, (P.x + p - x3) % p, p) + p - P.y) % p;
            return PointFp::affine(x3, y3);
        }
        uint64_t lam = mulmod_u64((Q.y + p - P.y) % p, invmod_u64((Q.x + p - P.x) % p, p), p);
        uint64_t x3 = (mulmod_u64(lam, lam, p) + p - P.x + p - Q.x) % p;
        uint64_t y3 = (mulmod_u64(lam, (P.x + p - x3) % p, p) + p - P.y) % p;
        return PointFp::affine(x3, y3);
    }

    PointFp neg(const PointFp& P) const {
        return P.infinity ? P : PointFp::affine(P.x, (p - P.y) % p);
    }

    PointFp mul(PointFp P, uint64_t k) const {
        PointFp R = PointFp::zero();
        while (k) {
            if (k & 1) R = add(R, P);
            P = add(P, P);
            k >>= 1;
        }
        return R;
    }

    PointFp random_point(std::mt19937_64& rng) const {
        for (;;) {
            uint64_t x = rng() % p;
            uint64_t rhs = (mulmod_u64(mulmod_u64(x, x, p), x, p) +
                            mulmod_u64(A, x, p) + B) % p;
            uint64_t y;
            if (sqrtmod_u64(rhs, p, y)) return PointFp::affine(x, y);
        }
    }
};

// All m in [lo, hi] with m*P = O, via baby-step giant-step.
std::vector<uint64_t> bsgs_all_matches(const ShortFp& E, const PointFp& P,
                                       uint64_t lo, uint64_t hi) {
    // find k in [lo, hi] with k P = O  <=>  (k - mid) P = -mid P + ...
    uint64_t width = hi - lo + 1;
    uint64_t s = (uint64_t)std::ceil(std::sqrt((double)width));
    // baby steps: j P for j in [0, s)
    std::unordered_map<uint64_t, std::vector<uint64_t>> baby;  // x-coord -> j
    {
        PointFp T = PointFp::zero();
        for (uint64_t j = 0; j < s; ++j) {
            if (!T.infinity) baby[T.x].push_back(j);
            T = E.add(T, P);
        }
    }
    PointFp Plo = E.mul(P, lo);
    PointFp sP = E.mul(P, s);
    std::vector<uint64_t> out;
    // k = lo + i*s + j ; need (lo + i*s + j) P = O  <=>  j P = -(lo + i*s) P
    PointFp G = E.neg(Plo);
    for (uint64_t i = 0; lo + i * s <= hi; ++i) {
        if (G.infinity) {
            // j = 0 match
            uint64_t k = lo + i * s;
            if (k <= hi) out.push_back(k);
        } else {
            auto it = baby.find(G.x);
            if (it != baby.end()) {
                for (uint64_t j : it->second) {
                    PointFp T = E.mul(P, j);
                    if (T == G) {
                        uint64_t k = lo + i * s + j;
                        if (k <= hi) out.push_back(k);
                    }
                }
            }
        }
        G = E.add(G, E.neg(sP));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

ApRecord ap_bsgs(const CurveQ& c, const Int& P) {
    if (!is_good(c, P))
        throw BadReductionPrimeError("ap_bsgs needs good reduction at " + P.get_str());
    if (P > Int("10000000000"))
        throw PrimeTooLargeError("ap_bsgs limited to p <= 10^10");
    const uint64_t p = P.get_ui();
    assert(p > 3);
    // short model mod p: y^2 = x^3 - 27 c4 x - 54 c6  (6 invertible)
    uint64_t A = mod_floor(-27 * c.c4(), P).get_ui();
    uint64_t B = mod_floor(-54 * c.c6(), P).get_ui();
    ShortFp E{p, A, B};
    // twist by a non-residue d: y^2 = x^3 + A d^2 x + B d^3
    uint64_t d = 2;
    while (powmod_u64(d, (p - 1) / 2, p) != p - 1) ++d;
    ShortFp Et{p, mulmod_u64(A, mulmod_u64(d, d, p), p),
               mulmod_u64(B, mulmod_u64(mulmod_u64(d, d, p), d, p), p)};

    uint64_t w = (uint64_t)(2.0 * std::sqrt((double)p)) + 2;
    uint64_t lo = p + 1 - w, hi = p + 1 + w;

    std::mt19937_64 rng(0x5eedULL ^ p);
    std::vector<uint64_t> cand;      // candidates for #E
    std::vector<uint64_t> cand_tw;   // candidates for #E_twist
    for (int round = 0; round < 20; ++round) {
        {
            PointFp R = E.random_point(rng);
            std::vector<uint64_t> K = bsgs_all_matches(E, R, lo, hi);
            if (cand.empty())
                cand = K;
            else {
                std::vector<uint64_t> merged;
                std::set_intersection(cand.begin(), cand.end(), K.begin(), K.end(),
                                      std::back_inserter(merged));
                cand = std::move(merged);
            }
        }
        if (cand.size() == 1) break;
        {
            PointFp R = Et.random_point(rng);
            std::vector<uint64_t> K = bsgs_all_matches(Et, R, lo, hi);
            if (cand_tw.empty())
                cand_tw = K;
            else {
                std::vector<uint64_t> merged;
                std::set_intersection(cand_tw.begin(), cand_tw.end(), K.begin(),
                                      K.end(), std::back_inserter(merged));
                cand_tw = std::move(merged);
            }
        }
        // #E + #E_twist = 2p + 2
        if (!cand_tw.empty()) {
            std::vector<uint64_t> from_tw;
            for (auto it = cand_tw.rbegin(); it != cand_tw.rend(); ++it)
                from_tw.push_back(2 * p + 2 - *it);
            if (!cand.empty()) {
                std::vector<uint64_t> merged;
                std::set_intersection(cand.begin(), cand.end(), from_tw.begin(),
                                      from_tw.end(), std::back_inserter(merged));
                cand = std::move(merged);
            } else {
                cand = from_tw;
            }
        }
        if (cand.size() == 1) break;
    }
    if (cand.size() != 1)
        throw AmbiguousOrderError("group order not pinned after 20 samples at p=" +
                                  P.get_str());
    int64_t ap = (int64_t)(p + 1) - (int64_t)cand[0];
    return {P, Int((long)ap), ApMethod::bsgs, ReductionKind::good};
}

ApRecord trace_of_frobenius(const CurveQ& c, const Int& p) {
    if (!is_good(c, p)) {
        LocalData d = tate_local(c, p);
        Int ap = 0;
        if (d.kind == ReductionKind::split_multiplicative) ap = 1;
        else if (d.kind == ReductionKind::nonsplit_multiplicative) ap = -1;
        return {p, ap, ApMethod::table, d.kind};
    }
    if (p <= kBsgsThreshold) return ap_naive(c, p);
    return ap_bsgs(c, p);
}

std::vector<int64_t> an_coeffs(const CurveQ& c, int64_t M) {
    if (M > 10000000) throw PrecisionUnreachableError("a_n budget is 10^7");
    if (M < 1) M = 1;
    std::vector<int64_t> an(M + 1, 0);
    an[1] = 1;
    if (M == 1) return an;
    std::vector<int64_t> spf(M + 1, 0);
    for (int64_t i = 2; i <= M; ++i)
        if (spf[i] == 0)
            for (int64_t j = i; j <= M; j += i)
                if (spf[j] == 0) spf[j] = i;
    for (int64_t p = 2; p <= M; ++p) {
        if (spf[p] != p) continue;
        ApRecord rec = trace_of_frobenius(c, Int((long)p));
        int64_t ap = rec.a_p.get_si();
        bool good = rec.kind == ReductionKind::good;
        int64_t prev = 1, cur = ap;
        for (Int pk = p; pk <= M; pk *= p) {
            an[pk.get_si()] = cur;
            int64_t nxt = good ? ap * cur - p * prev : ap * cur;
            prev = cur;
            cur = nxt;
        }
    }
    for (int64_t n = 2; n <= M; ++n) {
        int64_t p = spf[n], pk = 1, m = n;
        while (m % p == 0) { pk *= p; m /= p; }
        if (m > 1) an[n] = an[pk] * an[m];
    }
    return an;
}

} // namespace shavis
