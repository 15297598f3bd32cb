#include "shavis/mordell.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>

#include "shavis/analytic.hpp"
#include "shavis/errors.hpp"
#include "shavis/localdata.hpp"
#include "shavis/pointcount.hpp"

namespace shavis {

bool on_curve(const CurveQ& c, const PointQ& P) {
    if (P.infinity) return true;
    Rat lhs = P.y * P.y + Rat(c.a1()) * P.x * P.y + Rat(c.a3()) * P.y;
    Rat rhs = P.x * P.x * P.x + Rat(c.a2()) * P.x * P.x + Rat(c.a4()) * P.x +
              Rat(c.a6());
    return lhs == rhs;
}

PointQ negate_point(const CurveQ& c, const PointQ& P) {
    if (P.infinity) return P;
    return PointQ::affine(P.x, -P.y - Rat(c.a1()) * P.x - Rat(c.a3()));
}

PointQ add_points(const CurveQ& c, const PointQ& P, const PointQ& Q) {
    if (!on_curve(c, P) || !on_curve(c, Q))
        throw PointNotOnCurveError("rational point not on curve");
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    Rat A1(c.a1()), A2(c.a2()), A3(c.a3()), A4(c.a4()), A6(c.a6());
    if (P.x == Q.x && P.y + Q.y + A1 * P.x + A3 == 0) return PointQ::zero();
    Rat lam, nu;
    if (P.x != Q.x) {
        lam = (Q.y - P.y) / (Q.x - P.x);
        nu = (P.y * Q.x - Q.y * P.x) / (Q.x - P.x);
    } else {
        Rat denom = 2 * P.y + A1 * P.x + A3;
        lam = (3 * P.x * P.x + 2 * A2 * P.x + A4 - A1 * P.y) / denom;
        nu = (-P.x * P.x * P.x + A4 * P.x + 2 * A6 - A3 * P.y) / denom;
    }
    Rat x3 = lam * lam + A1 * lam - A2 - P.x - Q.x;
    Rat y3 = -(lam + A1) * x3 - nu - A3;
    return PointQ::affine(x3, y3);
}

PointQ mul_point(const CurveQ& c, const PointQ& P, const Int& k) {
    Int e = abs(k);
    PointQ R = PointQ::zero();
    PointQ B = k < 0 ? negate_point(c, P) : P;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) R = add_points(c, R, B);
        B = add_points(c, B, B);
        e >>= 1;
    }
    return R;
}

namespace {

// integer roots of x^3 + A x + B = rhs via floating-point roots + exact check
std::vector<Int> cubic_integer_roots(const Int& A, const Int& B, const Int& rhs) {
    double a = A.get_d(), b = (B - rhs).get_d();
    // real roots of x^3 + a x + b, Newton-polished
    std::vector<double> guesses;
    double q = a / 3.0, r = -b / 2.0;
    double disc = q * q * q + r * r;
    if (disc >= 0) {
        double sq = std::sqrt(disc);
        double u = std::cbrt(r + sq), v = std::cbrt(r - sq);
        guesses.push_back(u + v);
    } else {
        double rho = std::sqrt(-q * q * q);
        double theta = std::acos(std::clamp(r / rho, -1.0, 1.0));
        double m = 2 * std::sqrt(-q);
        for (int k = 0; k < 3; ++k)
            guesses.push_back(m * std::cos((theta + 2 * M_PI * k) / 3.0));
    }
    std::vector<Int> out;
    for (double g : guesses) {
        if (!std::isfinite(g)) continue;
        // Newton on long double to tighten
        long double x = g;
        for (int it = 0; it < 60; ++it) {
            long double f = x * x * x + (long double)a + 0;  // placeholder
            f = x * x * x + (long double)a * x + (long double)(b);
            long double df = 3 * x * x + (long double)a;
            if (df == 0) break;
            long double nx = x - f / df;
            if (std::abs((double)(nx - x)) < 1e-9 * (1 + std::abs((double)x))) { x = nx; break; }
            x = nx;
        }
        Int base((long)std::llround((double)x));
        for (long d = -2; d <= 2; ++d) {
            Int cand = base + d;
            if (cand * cand * cand + A * cand + B - rhs == 0)
                out.push_back(cand);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

TorsionData torsion_subgroup(const CurveQ& c) {
    // bound from reduction at the five smallest good odd primes
    Int bound = 0;
    int found = 0;
    Int p = 2;
    while (found < 5) {
        p = next_prime_after(p);
        if (mpz_divisible_p(c.disc().get_mpz_t(), p.get_mpz_t())) continue;
        Int np = p + 1 - ap_naive(c, p).a_p;
        bound = gcd(bound, np);
        ++found;
    }
    TorsionData out;
    if (bound == 1) return out;

    auto [S, to_short] = short_model(c);
    Isomorphism back = to_short.inverse();
    const Int A = S.a4(), B = S.a6();
    assert(S.a1() == 0 && S.a2() == 0 && S.a3() == 0);

    // Lutz-Nagell candidates: y = 0 or y^2 | disc(S)
    Factorization fac = factorize(S.disc());
    Int Y = square_part_root(fac);
    std::vector<Int> ys{0};
    {
        Factorization yf = factorize(Y);
        for (const Int& d : divisors_of(yf)) ys.push_back(d);
    }

    struct TorPt {
        Int x, y;
        int order;
    };
    std::vector<TorPt> tors;
    for (const Int& y : ys) {
        for (const Int& x : cubic_integer_roots(A, B, y * y)) {
            for (int sign = 0; sign < (y == 0 ? 1 : 2); ++sign) {
                Int yy = sign ? -y : y;
                PointQ P = PointQ::affine(Rat(x), Rat(yy));
                // multiples of torsion points stay integral; use that to bail
                PointQ Q = P;
                int ord = 0;
                for (int k = 1; k <= 12; ++k) {
                    if (Q.infinity) { ord = k; break; }
                    if (Q.x.get_den() != 1 || Q.y.get_den() != 1) break;
                    Q = add_points(S, Q, P);
                }
                if (ord == 0 && Q.infinity) ord = 13;  // cannot happen (Mazur)
                if (ord > 0 && mpz_divisible_ui_p(bound.get_mpz_t(), ord)) {
                    bool dup = false;
                    for (const TorPt& T : tors)
                        if (T.x == x && T.y == yy) dup = true;
                    if (!dup) tors.push_back({x, yy, ord});
                }
            }
        }
    }

    Int order(1 + (long)tors.size());
    int two_torsion = 1;
    int max_order = 1;
    for (const TorPt& T : tors) {
        if (T.order == 2) ++two_torsion;
        max_order = std::max(max_order, T.order);
    }
    int d1 = two_torsion == 4 ? 2 : 1;
    assert(order == Int(d1) * max_order);
    out.order = order;
    out.d1 = d1;
    out.d2 = max_order;

    // generators: one point of maximal order; plus an independent 2-torsion
    // point when the group is Z/2 x Z/2m
    auto to_input = [&](const TorPt& T) {
        ModelQ dummy;  // map short-model point back through the isomorphism
        // x = u^2 x' + r, y = u^3 y' + s u^2 x' + t  maps input -> short;
        // so input coords from short coords use the inverse transform
        const Rat &u = back.u, &r = back.r, &s = back.s, &t = back.t;
        Rat xs(T.x), ys2(T.y);
        Rat xi = u * u * xs + r;
        Rat yi = u * u * u * ys2 + s * u * u * xs + t;
        return PointQ::affine(xi, yi);
    };
    const TorPt* g2 = nullptr;
    for (const TorPt& T : tors)
        if (T.order == max_order) { g2 = &T; break; }
    if (g2) {
        PointQ G = to_input(*g2);
        assert(on_curve(c, G));
        assert(mul_point(c, G, max_order).infinity);
        out.generators.push_back(G);
        if (d1 == 2) {
            // 2-torsion point outside <g2>
            PointQ half = mul_point(S, PointQ::affine(Rat(g2->x), Rat(g2->y)),
                                    max_order / 2);
            for (const TorPt& T : tors)
                if (T.order == 2 &&
                    !(half == PointQ::affine(Rat(T.x), Rat(T.y)))) {
                    PointQ G1 = to_input(T);
                    assert(on_curve(c, G1));
                    out.generators.push_back(G1);
                    break;
                }
        }
    }
    return out;
}

RankData rank_of(const CurveQ& c, const RankSource& source) {
    if (source.table_rank) {
        if (*source.table_rank < 0)
            throw RankUnavailableError("negative rank in table");
        return {*source.table_rank, RankProvenance::ingested};
    }
    if (!source.allow_analytic)
        throw RankUnavailableError("no table entry for " + c.str());
    auto [minimal, iso] = minimal_model(c);
    int w = root_number_semistable(minimal);
    double omega = real_period(minimal, 1e-12);
    if (w == 1) {
        double L = l_value(minimal, 0, source.tol);
        if (std::abs(L) / omega > source.tau0)
            return {0, RankProvenance::analytic_order_0};
        throw RankUnavailableError("w=+1 but L(1) ~ 0: analytic rank >= 2 not claimed");
    }
    double Lp = l_value(minimal, 1, source.tol);
    if (std::abs(Lp) > source.tau1)
        return {1, RankProvenance::analytic_order_1};
    throw RankUnavailableError("w=-1 but L'(1) ~ 0: analytic rank >= 3 not claimed");
}

} // namespace shavis
