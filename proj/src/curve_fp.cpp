#include "shavis/curve_fp.hpp"
#include "shavis/errors.hpp"

namespace shavis {

CurveFp::CurveFp(uint64_t p, uint64_t a1, uint64_t a2, uint64_t a3,
                 uint64_t a4, uint64_t a6, bool singular)
    : p_(p), a_{a1 % p, a2 % p, a3 % p, a4 % p, a6 % p}, singular_(singular) {}

bool CurveFp::contains(const PointFp& P) const {
    if (P.infinity) return true;
    uint64_t x = P.x % p_, y = P.y % p_;
    uint64_t lhs = (mulmod_u64(y, y, p_) + mulmod_u64(a_[0], mulmod_u64(x, y, p_), p_) +
                    mulmod_u64(a_[2], y, p_)) % p_;
    uint64_t x2 = mulmod_u64(x, x, p_);
    uint64_t rhs = (mulmod_u64(x2, x, p_) + mulmod_u64(a_[1], x2, p_) +
                    mulmod_u64(a_[3], x, p_) + a_[4]) % p_;
    return lhs == rhs;
}

PointFp CurveFp::negate(const PointFp& P) const {
    if (P.infinity) return P;
    uint64_t y = (p_ - (P.y + mulmod_u64(a_[0], P.x, p_) + a_[2]) % p_) % p_;
    return PointFp::affine(P.x, y);
}

PointFp CurveFp::add(const PointFp& P, const PointFp& Q) const {
    if (!contains(P) || !contains(Q))
        throw PointNotOnCurveError("group law input not on curve");
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    const uint64_t p = p_;
    uint64_t x1 = P.x, y1 = P.y, x2 = Q.x, y2 = Q.y;
    if (x1 == x2 && (y1 + y2 + mulmod_u64(a_[0], x1, p) + a_[2]) % p == 0)
        return PointFp::zero();
    uint64_t lam, nu;
    if (x1 != x2) {
        uint64_t dx = (x2 + p - x1) % p;
        uint64_t dy = (y2 + p - y1) % p;
        uint64_t inv = invmod_u64(dx, p);
        lam = mulmod_u64(dy, inv, p);
        // nu = (y1 x2 - y2 x1) / (x2 - x1)
        uint64_t num = (mulmod_u64(y1, x2, p) + p - mulmod_u64(y2, x1, p) % p) % p;
        nu = mulmod_u64(num, inv, p);
    } else {
        // tangent
        uint64_t denom = (2 * y1 % p + mulmod_u64(a_[0], x1, p) + a_[2]) % p;
        uint64_t inv = invmod_u64(denom, p);
        uint64_t x1sq = mulmod_u64(x1, x1, p);
        uint64_t num = (3 * x1sq % p + 2 * mulmod_u64(a_[1], x1, p) % p + a_[3] +
                        p - mulmod_u64(a_[0], y1, p)) % p;
        lam = mulmod_u64(num, inv, p);
        uint64_t num2 = (p - mulmod_u64(x1sq, x1, p) + mulmod_u64(a_[3], x1, p) +
                         2 * a_[4] % p + p - mulmod_u64(a_[2], y1, p)) % p;
        nu = mulmod_u64(num2 % p, inv, p);
    }
    uint64_t x3 = (mulmod_u64(lam, lam, p) + mulmod_u64(a_[0], lam, p) + p - a_[1] + p -
                   x1 + p - x2) % p;
    uint64_t y3 = (p - (mulmod_u64((lam + a_[0]) % p, x3, p) + nu + a_[2]) % p) % p;
    return PointFp::affine(x3, y3);
}

PointFp CurveFp::mul(const PointFp& P, uint64_t k) const {
    PointFp R = PointFp::zero();
    PointFp B = P;
    while (k) {
        if (k & 1) R = add(R, B);
        B = add(B, B);
        k >>= 1;
    }
    return R;
}

std::vector<PointFp> CurveFp::enumerate() const {
    std::vector<PointFp> pts{PointFp::zero()};
    for (uint64_t x = 0; x < p_; ++x)
        for (uint64_t y = 0; y < p_; ++y) {
            PointFp P = PointFp::affine(x, y);
            if (contains(P)) pts.push_back(P);
        }
    return pts;
}

CurveFp reduce_mod_p(const CurveQ& c, const Int& p) {
    Int pm = p;
    auto red = [&](const Int& a) {
        return mod_floor(a, pm).get_ui();
    };
    bool singular = mpz_divisible_p(c.disc().get_mpz_t(), pm.get_mpz_t());
    return CurveFp(pm.get_ui(), red(c.a1()), red(c.a2()), red(c.a3()),
                   red(c.a4()), red(c.a6()), singular);
}

} // namespace shavis
