#include "shavis/curve.hpp"
#include "shavis/errors.hpp"

#include <cassert>
#include <sstream>

namespace shavis {

Isomorphism Isomorphism::compose(const Isomorphism& o) const {
    Isomorphism out;
    out.u = u * o.u;
    out.r = r + u * u * o.r;
    out.s = s + u * o.s;
    out.t = t + u * u * u * o.t + s * u * u * o.r;
    return out;
}

Isomorphism Isomorphism::inverse() const {
    // solve compose(inv) = identity
    Isomorphism inv;
    inv.u = 1 / u;
    inv.r = -r / (u * u);
    inv.s = -s / u;
    inv.t = (r * s - t) / (u * u * u);
    return inv;
}

Rat ModelQ::b8() const {
    return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
}

Rat ModelQ::c4() const { return b2() * b2() - 24 * b4(); }

Rat ModelQ::c6() const {
    Rat B2 = b2();
    return -B2 * B2 * B2 + 36 * B2 * b4() - 216 * b6();
}

Rat ModelQ::disc() const {
    Rat B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
}

bool ModelQ::integral() const {
    for (const Rat* x : {&a1, &a2, &a3, &a4, &a6})
        if (x->get_den() != 1) return false;
    return true;
}

ModelQ transform_model(const ModelQ& m, const Isomorphism& iso) {
    const Rat &u = iso.u, &r = iso.r, &s = iso.s, &t = iso.t;
    Rat u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
    ModelQ out;
    out.a1 = (m.a1 + 2 * s) / u;
    out.a2 = (m.a2 - s * m.a1 + 3 * r - s * s) / u2;
    out.a3 = (m.a3 + r * m.a1 + 2 * t) / u3;
    out.a4 = (m.a4 - s * m.a3 + 2 * r * m.a2 - (t + r * s) * m.a1 + 3 * r * r -
              2 * s * t) /
             u4;
    out.a6 = (m.a6 + r * m.a4 + r * r * m.a2 + r * r * r - t * m.a3 - t * t -
              r * t * m.a1) /
             u6;
    return out;
}

CurveQ CurveQ::from_ainvs(const Int& a1, const Int& a2, const Int& a3,
                          const Int& a4, const Int& a6, std::string label) {
    CurveQ c;
    c.a_ = {a1, a2, a3, a4, a6};
    c.b2_ = a1 * a1 + 4 * a2;
    c.b4_ = 2 * a4 + a1 * a3;
    c.b6_ = a3 * a3 + 4 * a6;
    c.b8_ = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    c.c4_ = c.b2_ * c.b2_ - 24 * c.b4_;
    c.c6_ = -c.b2_ * c.b2_ * c.b2_ + 36 * c.b2_ * c.b4_ - 216 * c.b6_;
    c.disc_ = -c.b2_ * c.b2_ * c.b8_ - 8 * c.b4_ * c.b4_ * c.b4_ -
              27 * c.b6_ * c.b6_ + 9 * c.b2_ * c.b4_ * c.b6_;
    if (c.disc_ == 0)
        throw SingularCurveError("singular curve: discriminant is zero");
    assert(4 * c.b8_ == c.b2_ * c.b6_ - c.b4_ * c.b4_);
    assert(c.c4_ * c.c4_ * c.c4_ - c.c6_ * c.c6_ == 1728 * c.disc_);
    Int g = gcd(c.c4_ * c.c4_ * c.c4_, c.disc_);
    c.j_num_ = c.c4_ * c.c4_ * c.c4_ / g;
    c.j_den_ = c.disc_ / g;
    if (c.j_den_ < 0) {
        c.j_num_ = -c.j_num_;
        c.j_den_ = -c.j_den_;
    }
    c.label_ = std::move(label);
    return c;
}

CurveQ CurveQ::from_model(const ModelQ& m, std::string label) {
    if (!m.integral())
        throw NonIntegralResultError("model is not integral");
    return from_ainvs(m.a1.get_num(), m.a2.get_num(), m.a3.get_num(),
                      m.a4.get_num(), m.a6.get_num(), std::move(label));
}

ModelQ CurveQ::model() const {
    return ModelQ{Rat(a_[0]), Rat(a_[1]), Rat(a_[2]), Rat(a_[3]), Rat(a_[4])};
}

std::string CurveQ::str() const {
    std::ostringstream os;
    if (!label_.empty()) os << label_ << " = ";
    os << "[" << a_[0] << "," << a_[1] << "," << a_[2] << "," << a_[3] << ","
       << a_[4] << "]";
    return os.str();
}

CurveQ transform(const CurveQ& c, const Isomorphism& iso,
                 bool require_integral) {
    ModelQ m = transform_model(c.model(), iso);
    if (!m.integral()) {
        if (require_integral)
            throw NonIntegralResultError("transform produced a non-integral model");
        // caller explicitly allowed clearing denominators
        return integralize(m).first;
    }
    return CurveQ::from_model(m, c.label());
}

std::pair<CurveQ, Isomorphism> integralize(const ModelQ& m) {
    // denominators are cleared by x -> x/u^2 with u = 1/d
    Int d = 1;
    d = lcm(d, Int(m.a1.get_den()));
    d = lcm(d, Int(m.a2.get_den()));
    d = lcm(d, Int(m.a3.get_den()));
    d = lcm(d, Int(m.a4.get_den()));
    d = lcm(d, Int(m.a6.get_den()));
    // u = 1/d scales a_i by d^i; any common denominator works
    Isomorphism iso = Isomorphism::scaling(Rat(1, 1) / d);
    ModelQ im = transform_model(m, iso);
    assert(im.integral());
    return {CurveQ::from_model(im), iso};
}

namespace {

// Standard-form curve with invariants (c4, c6), or nullopt when the
// Kraus conditions fail at 2 or 3.
std::optional<CurveQ> curve_from_c4c6(const Int& c4, const Int& c6) {
    Int b2 = mod_floor(-c6, 12);
    if (b2 > 6) b2 -= 12;
    Int num = b2 * b2 - c4;
    if (!mpz_divisible_ui_p(num.get_mpz_t(), 24)) return std::nullopt;
    Int b4 = num / 24;
    num = -b2 * b2 * b2 + 36 * b2 * b4 - c6;
    if (!mpz_divisible_ui_p(num.get_mpz_t(), 216)) return std::nullopt;
    Int b6 = num / 216;
    Int a1 = mod_floor(b2, 2);
    if (!mpz_divisible_ui_p(Int(b2 - a1).get_mpz_t(), 4)) return std::nullopt;
    Int a2 = (b2 - a1) / 4;
    Int a3 = mod_floor(b6, 2);
    if (!mpz_divisible_ui_p(Int(b6 - a3).get_mpz_t(), 4)) return std::nullopt;
    Int a6 = (b6 - a3) / 4;
    if (!mpz_divisible_ui_p(Int(b4 - a1 * a3).get_mpz_t(), 2)) return std::nullopt;
    Int a4 = (b4 - a1 * a3) / 2;
    CurveQ c = CurveQ::from_ainvs(a1, a2, a3, a4, a6);
    if (c.c4() != c4 || c.c6() != c6) return std::nullopt;
    return c;
}

// Isomorphism mapping src onto dst given the scale factor u.
Isomorphism connect(const CurveQ& src, const CurveQ& dst, const Rat& u) {
    Isomorphism iso;
    iso.u = u;
    iso.s = (u * dst.a1() - src.a1()) / 2;
    iso.r = (u * u * dst.a2() - src.a2() + iso.s * src.a1() + iso.s * iso.s) / 3;
    iso.t = (u * u * u * dst.a3() - src.a3() - iso.r * src.a1()) / 2;
    return iso;
}

} // namespace

std::pair<CurveQ, Isomorphism> minimal_model(const CurveQ& c) {
    Factorization fac = factorize(c.disc());
    std::map<Int, int> dp;
    for (const auto& [p, e] : fac) {
        int vc4 = c.c4() == 0 ? 1 << 20 : valuation(c.c4(), p);
        int vc6 = c.c6() == 0 ? 1 << 20 : valuation(c.c6(), p);
        int d = std::min({vc4 / 4, vc6 / 6, e / 12});
        if (d > 0) dp[p] = d;
    }
    for (;;) {
        Int u = 1;
        for (const auto& [p, d] : dp)
            for (int k = 0; k < d; ++k) u *= p;
        Int u4 = u * u * u * u;
        Int c4m = c.c4() / u4;
        Int c6m = c.c6() / (u4 * u * u);
        std::optional<CurveQ> m = curve_from_c4c6(c4m, c6m);
        if (m) {
            Isomorphism iso = connect(c, *m, Rat(u));
            assert(transform_model(c.model(), iso) == m->model());
            m->set_label(c.label());
            return {*m, iso};
        }
        // 3-adic Kraus obstruction first, then 2-adic
        if (dp.count(3) && dp[3] > 0 && valuation(c6m, 3) == 2) {
            if (--dp[3] == 0) dp.erase(3);
        } else if (dp.count(2) && dp[2] > 0) {
            if (--dp[2] == 0) dp.erase(2);
        } else if (dp.count(3) && dp[3] > 0) {
            if (--dp[3] == 0) dp.erase(3);
        } else {
            throw Error("minimal model reconstruction failed at u=1");
        }
    }
}

std::pair<CurveQ, Isomorphism> short_model(const CurveQ& c) {
    if (c.a1() == 0 && c.a2() == 0 && c.a3() == 0)
        return {c, Isomorphism::identity()};
    CurveQ s = CurveQ::from_ainvs(0, 0, 0, -27 * c.c4(), -54 * c.c6());
    Isomorphism iso = connect(c, s, Rat(1, 6));
    assert(transform_model(c.model(), iso) == s.model());
    return {s, iso};
}

} // namespace shavis
