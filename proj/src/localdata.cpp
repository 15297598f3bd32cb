#include "shavis/localdata.hpp"
#include "shavis/errors.hpp"

#include <algorithm>
#include <cassert>

namespace shavis {

std::string KodairaType::str() const {
    switch (kind) {
        case KodairaKind::I: return "I" + std::to_string(n);
        case KodairaKind::II: return "II";
        case KodairaKind::III: return "III";
        case KodairaKind::IV: return "IV";
        case KodairaKind::Istar: return "I" + std::to_string(n) + "*";
        case KodairaKind::IIstar: return "II*";
        case KodairaKind::IIIstar: return "III*";
        case KodairaKind::IVstar: return "IV*";
    }
    return "?";
}

KodairaType KodairaType::parse(const std::string& s) {
    bool star = !s.empty() && s.back() == '*';
    std::string base = star ? s.substr(0, s.size() - 1) : s;
    if (base == "II") return {star ? KodairaKind::IIstar : KodairaKind::II, 0};
    if (base == "III") return {star ? KodairaKind::IIIstar : KodairaKind::III, 0};
    if (base == "IV") return {star ? KodairaKind::IVstar : KodairaKind::IV, 0};
    if (!base.empty() && base[0] == 'I')
        return {star ? KodairaKind::Istar : KodairaKind::I,
                std::stoi(base.substr(1))};
    throw ParseError("bad Kodaira symbol: " + s);
}

std::string reduction_kind_str(ReductionKind k) {
    switch (k) {
        case ReductionKind::good: return "good";
        case ReductionKind::split_multiplicative: return "split-multiplicative";
        case ReductionKind::nonsplit_multiplicative: return "nonsplit-multiplicative";
        case ReductionKind::additive: return "additive";
    }
    return "?";
}

ReductionKind reduction_kind_parse(const std::string& s) {
    if (s == "good") return ReductionKind::good;
    if (s == "split-multiplicative") return ReductionKind::split_multiplicative;
    if (s == "nonsplit-multiplicative") return ReductionKind::nonsplit_multiplicative;
    if (s == "additive") return ReductionKind::additive;
    throw ParseError("bad reduction kind: " + s);
}

namespace {

// --- tiny F_p polynomial helpers (degree <= 6), coefficients low->high ---

using Poly = std::vector<uint64_t>;

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_divrem(const Poly& fin, const Poly& g, uint64_t p, Poly* quot) {
    Poly f = fin;
    trim(f);
    uint64_t inv = invmod_u64(g.back(), p);
    if (quot) quot->assign(f.size() > g.size() ? f.size() - g.size() + 1 : 1, 0);
    while (f.size() >= g.size() && !f.empty()) {
        uint64_t c = mulmod_u64(f.back(), inv, p);
        size_t k = f.size() - g.size();
        if (quot) (*quot)[k] = c;
        for (size_t i = 0; i < g.size(); ++i) {
            uint64_t sub = mulmod_u64(c, g[i], p);
            f[i + k] = (f[i + k] + p - sub) % p;
        }
        trim(f);
    }
    return f;
}

Poly poly_gcd(Poly f, Poly g, uint64_t p) {
    trim(f);
    trim(g);
    while (!g.empty()) {
        Poly r = poly_divrem(f, g, p, nullptr);
        f = std::move(g);
        g = std::move(r);
    }
    return f;
}

Poly poly_mulmod(const Poly& f, const Poly& g, const Poly& h, uint64_t p) {
    Poly res(f.size() + g.size() - 1, 0);
    for (size_t i = 0; i < f.size(); ++i)
        if (f[i])
            for (size_t j = 0; j < g.size(); ++j)
                res[i + j] = (res[i + j] + mulmod_u64(f[i], g[j], p)) % p;
    return poly_divrem(res, h, p, nullptr);
}

// distinct roots in F_p of monic cubic T^3 + c T^2 + d T + e
int cubic_root_count(uint64_t c, uint64_t d, uint64_t e, uint64_t p) {
    if (p <= 50) {
        int cnt = 0;
        for (uint64_t x = 0; x < p; ++x) {
            uint64_t v = (mulmod_u64(mulmod_u64(x, x, p), x, p) +
                          mulmod_u64(c, mulmod_u64(x, x, p), p) +
                          mulmod_u64(d, x, p) + e) % p;
            if (v == 0) ++cnt;
        }
        return cnt;
    }
    Poly h{e % p, d % p, c % p, 1};
    // T^p mod h
    Poly acc{1}, base{0, 1};
    uint64_t ex = p;
    while (ex) {
        if (ex & 1) acc = poly_mulmod(acc, base, h, p);
        base = poly_mulmod(base, base, h, p);
        ex >>= 1;
    }
    // acc - T
    if (acc.size() < 2) acc.resize(2, 0);
    acc[1] = (acc[1] + p - 1) % p;
    Poly g = poly_gcd(h, acc, p);
    return g.empty() ? 0 : (int)g.size() - 1;
}

// (multiplicity, root) for the repeated root of monic cubic mod p, or {1,0}
std::pair<int, uint64_t> cubic_multiple_root(uint64_t c, uint64_t d, uint64_t e,
                                             uint64_t p) {
    c %= p; d %= p; e %= p;
    if (p == 2 || p == 3) {
        for (uint64_t x = 0; x < p; ++x) {
            uint64_t fx = (x * x * x + c * x * x + d * x + e) % p;
            if (fx) continue;
            // deflate: quotient T^2 + q2 T + q1
            uint64_t q2 = (c + x) % p;
            uint64_t q1 = (d + x * q2) % p;
            if ((x * x + q2 * x + q1) % p == 0) {
                uint64_t r2 = (q2 + x) % p;
                if ((x + r2) % p == 0) return {3, x};
                return {2, x};
            }
        }
        return {1, 0};
    }
    Poly f{e, d, c, 1};
    Poly df{d, (2 * c) % p, 3 % p};
    trim(df);
    if (df.empty()) {
        // p = 3 handled above; cannot happen for p >= 5
        assert(false);
    }
    Poly g = poly_gcd(f, df, p);
    if (g.size() <= 1) return {1, 0};
    if (g.size() == 2) {
        uint64_t root = mulmod_u64(p - g[0] % p, invmod_u64(g[1], p), p) % p;
        return {2, root};
    }
    // triple root: -c/3
    uint64_t root = mulmod_u64(p - c, invmod_u64(3 % p, p), p) % p;
    return {3, root};
}

// does a Y^2 + b Y + c have a root in F_p?
bool quad_has_root(const Int& a, const Int& b, const Int& c, const Int& p) {
    if (p == 2) {
        Int c2 = mod_floor(c, 2);
        if (c2 == 0) return true;
        return mod_floor(a + b + c, 2) == 0;
    }
    Int disc = b * b - 4 * a * c;
    return legendre(disc, p) >= 0;
}

struct Working {
    std::array<Int, 5> a;  // a1,a2,a3,a4,a6
    Int b2, b4, b6, b8, c4, c6, disc;

    void recompute() {
        const Int &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a6 = a[4];
        b2 = a1 * a1 + 4 * a2;
        b4 = 2 * a4 + a1 * a3;
        b6 = a3 * a3 + 4 * a6;
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        c4 = b2 * b2 - 24 * b4;
        c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
        disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
    }

    // integral translation (r, s, t), u = 1
    void translate(const Int& r, const Int& s, const Int& t) {
        const Int a1 = a[0], a2 = a[1], a3 = a[2], a4 = a[3], a6 = a[4];
        a[0] = a1 + 2 * s;
        a[1] = a2 - s * a1 + 3 * r - s * s;
        a[2] = a3 + r * a1 + 2 * t;
        a[3] = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
        a[4] = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        recompute();
    }

    // rescale by u = p (used only on non-minimal input)
    void rescale(const Int& p) {
        a[0] /= p;
        a[1] /= p * p;
        a[2] /= p * p * p;
        a[3] /= p * p * p * p;
        a[4] /= p * p * p * p * p * p;
        recompute();
    }
};

} // namespace

LocalData tate_local(const CurveQ& curve, const Int& P) {
    const uint64_t p = P.get_ui();
    Working w;
    w.a = curve.ainvs();
    w.recompute();

    for (;;) {
        int n = (mpz_divisible_p(w.disc.get_mpz_t(), P.get_mpz_t()))
                    ? valuation(w.disc, P)
                    : 0;
        LocalData out;
        out.p = P;
        out.v_delta = n;
        if (n == 0) {
            out.kodaira = KodairaType::In(0);
            out.f_p = 0;
            out.c_p = 1;
            out.kind = ReductionKind::good;
            out.phi_order = 1;
            return out;
        }

        // move the singular point of the reduction to (0,0)
        Int r = 0, t = 0;
        if (p == 2) {
            bool found = false;
            for (uint64_t x0 = 0; x0 < 2 && !found; ++x0)
                for (uint64_t y0 = 0; y0 < 2 && !found; ++y0) {
                    Int F = y0 * y0 + w.a[0] * x0 * y0 + w.a[2] * y0 - x0 * x0 * x0 -
                            w.a[1] * x0 * x0 - w.a[3] * x0 - w.a[4];
                    Int Fx = w.a[0] * y0 + x0 * x0 + w.a[3];  // char 2: -3x^2 = x^2
                    Int Fy = w.a[0] * x0 + w.a[2];
                    if (mod_floor(F, 2) == 0 && mod_floor(Fx, 2) == 0 &&
                        mod_floor(Fy, 2) == 0) {
                        r = x0;
                        t = y0;
                        found = true;
                    }
                }
            assert(found);
        } else {
            uint64_t inv4 = invmod_u64(4, p);
            uint64_t B2 = mod_floor(w.b2, P).get_ui();
            uint64_t B4 = mod_floor(w.b4, P).get_ui();
            uint64_t B6 = mod_floor(w.b6, P).get_ui();
            auto [mult, x0] = cubic_multiple_root(
                mulmod_u64(B2, inv4, p), mulmod_u64(2 * B4 % p, inv4, p),
                mulmod_u64(B6, inv4, p), p);
            assert(mult >= 2);
            r = Int((unsigned long)x0);
            Int y0 = mod_floor(-(w.a[0] * r + w.a[2]) * Int((unsigned long)invmod_u64(2, p)), P);
            t = y0;
        }
        w.translate(r, 0, t);
        assert(mod_floor(w.a[2], P) == 0 && mod_floor(w.a[3], P) == 0 &&
               mod_floor(w.a[4], P) == 0);

        if (!mpz_divisible_p(w.c4.get_mpz_t(), P.get_mpz_t())) {
            // multiplicative: type I_n
            bool split;
            if (p == 2) {
                split = mod_floor(w.a[1], 2) == 0;
            } else if (p == 3) {
                split = mod_floor(w.b2, 3) == 1;
            } else {
                split = legendre(-w.c6, P) == 1;
            }
            out.kodaira = KodairaType::In(n);
            out.f_p = 1;
            out.kind = split ? ReductionKind::split_multiplicative
                             : ReductionKind::nonsplit_multiplicative;
            out.c_p = split ? Int(n) : Int(n % 2 == 0 ? 2 : 1);
            out.phi_order = n;
            return out;
        }

        // additive types
        out.kind = ReductionKind::additive;
        const Int P2 = P * P, P3 = P2 * P, P4 = P3 * P;

        if (!mpz_divisible_p(Int(w.a[4]).get_mpz_t(), P2.get_mpz_t())) {
            out.kodaira = {KodairaKind::II, 0};
            out.f_p = n;
            out.c_p = 1;
            out.phi_order = 1;
            return out;
        }
        if (!mpz_divisible_p(w.b8.get_mpz_t(), P3.get_mpz_t())) {
            out.kodaira = {KodairaKind::III, 0};
            out.f_p = n - 1;
            out.c_p = 2;
            out.phi_order = 2;
            return out;
        }
        if (!mpz_divisible_p(w.b6.get_mpz_t(), P3.get_mpz_t())) {
            out.kodaira = {KodairaKind::IV, 0};
            out.f_p = n - 2;
            out.c_p = quad_has_root(1, w.a[2] / P, -(w.a[4] / P2), P) ? 3 : 1;
            out.phi_order = 3;
            return out;
        }

        // normalize: p | a1,a2 ; p^2 | a3,a4 ; p^3 | a6
        if (p == 2) {
            Int s = mod_floor(w.a[1], 2);
            w.translate(0, s, 0);
            assert(mod_floor(w.a[2], 4) == 0);
            Int tt = mod_floor(w.a[4], 8) == 0 ? Int(0) : Int(2);
            w.translate(0, 0, tt);
        } else {
            Int s = mod_floor(-w.a[0] * Int((unsigned long)invmod_u64(2, p)), P);
            w.translate(0, s, 0);
            Int inv2p2 = Int((unsigned long)invmod_u64(2 % (p * p), p * p));
            Int tt = mod_floor(-w.a[2] * inv2p2, P2);
            w.translate(0, 0, tt);
        }
        assert(mod_floor(w.a[0], P) == 0 && mod_floor(w.a[1], P) == 0);
        assert(mod_floor(w.a[2], P2) == 0 && mod_floor(w.a[3], P2) == 0);
        assert(mod_floor(w.a[4], P3) == 0);

        // P(T) = T^3 + (a2/p) T^2 + (a4/p^2) T + (a6/p^3) over F_p
        uint64_t pc = mod_floor(w.a[1] / P, P).get_ui();
        uint64_t pd = mod_floor(w.a[3] / P2, P).get_ui();
        uint64_t pe = mod_floor(w.a[4] / P3, P).get_ui();
        auto [mult, root] = cubic_multiple_root(pc, pd, pe, p);

        if (mult == 1) {
            out.kodaira = KodairaType::Instar(0);
            out.f_p = n - 4;
            out.c_p = 1 + cubic_root_count(pc, pd, pe, p);
            out.phi_order = 4;
            return out;
        }

        auto vge = [&P](const Int& x, int k) {
            return x == 0 || valuation(x, P) >= k;
        };

        if (mult == 2) {
            // type I_m*
            w.translate(P * Int((unsigned long)root), 0, 0);
            assert(w.a[1] != 0 && valuation(w.a[1], P) == 1 && vge(w.a[2], 2) &&
                   vge(w.a[3], 3) && vge(w.a[4], 4));
            int m = 1;
            Int mx = P2, my = P2;
            Int cp;
            for (;;) {
                Int a2t = w.a[1] / P;
                Int a3t = w.a[2] / my;
                Int a6t = w.a[4] / (mx * my);
                if (mod_floor(a3t * a3t + 4 * a6t, P) != 0) {
                    cp = quad_has_root(1, a3t, -a6t, P) ? 4 : 2;
                    break;
                }
                Int tt;
                if (p == 2)
                    tt = my * mod_floor(a6t, 2);
                else
                    tt = my * mod_floor(-a3t * Int((unsigned long)invmod_u64(2, p)), P);
                w.translate(0, 0, tt);
                my *= P;
                ++m;
                a2t = w.a[1] / P;
                Int a4t = w.a[3] / (P * mx);
                a6t = w.a[4] / (mx * my);
                if (mod_floor(a4t * a4t - 4 * a2t * a6t, P) != 0) {
                    cp = quad_has_root(a2t, a4t, a6t, P) ? 4 : 2;
                    break;
                }
                Int rr;
                if (p == 2)
                    rr = mx * mod_floor(a6t, 2);  // a2t odd
                else {
                    uint64_t inv = invmod_u64(mod_floor(2 * a2t, P).get_ui(), p);
                    rr = mx * mod_floor(-a4t * Int((unsigned long)inv), P);
                }
                w.translate(rr, 0, 0);
                mx *= P;
                ++m;
            }
            out.kodaira = KodairaType::Instar(m);
            out.f_p = n - 4 - m;
            out.c_p = cp;
            out.phi_order = 4;
            return out;
        }

        // triple root
        w.translate(P * Int((unsigned long)root), 0, 0);
        assert(vge(w.a[1], 2) && vge(w.a[3], 3) && vge(w.a[4], 4));
        {
            Int a3t = w.a[2] / P2;
            Int a6t = w.a[4] / P4;
            if (mod_floor(a3t * a3t + 4 * a6t, P) != 0) {
                out.kodaira = {KodairaKind::IVstar, 0};
                out.f_p = n - 6;
                out.c_p = quad_has_root(1, a3t, -a6t, P) ? 3 : 1;
                out.phi_order = 3;
                return out;
            }
            Int tt;
            if (p == 2)
                tt = P2 * mod_floor(a6t, 2);
            else
                tt = P2 * mod_floor(-a3t * Int((unsigned long)invmod_u64(2, p)), P);
            w.translate(0, 0, tt);
        }
        if (w.a[3] != 0 && valuation(w.a[3], P) < 4) {
            out.kodaira = {KodairaKind::IIIstar, 0};
            out.f_p = n - 7;
            out.c_p = 2;
            out.phi_order = 2;
            return out;
        }
        if (w.a[4] != 0 && valuation(w.a[4], P) < 6) {
            out.kodaira = {KodairaKind::IIstar, 0};
            out.f_p = n - 8;
            out.c_p = 1;
            out.phi_order = 1;
            return out;
        }
        // non-minimal at p: rescale and restart
        w.rescale(P);
    }
}

std::vector<LocalData> local_data(const CurveQ& c) {
    Factorization fac = factorize(c.disc());
    std::vector<LocalData> out;
    for (const auto& [p, e] : fac) out.push_back(tate_local(c, p));
    return out;
}

Int conductor(const CurveQ& c) {
    Int N = 1;
    for (const LocalData& d : local_data(c)) {
        Int pf = 1;
        for (int i = 0; i < d.f_p; ++i) pf *= d.p;
        N *= pf;
    }
    return N;
}

std::pair<bool, std::vector<Int>> is_semistable(const CurveQ& c) {
    std::vector<Int> additive;
    for (const LocalData& d : local_data(c))
        if (d.kind == ReductionKind::additive) additive.push_back(d.p);
    return {additive.empty(), additive};
}

Int tamagawa_product(const std::vector<LocalData>& locals) {
    Int prod = 1;
    for (const LocalData& d : locals) prod *= d.c_p;
    return prod;
}

Int tamagawa_product(const CurveQ& c) { return tamagawa_product(local_data(c)); }

} // namespace shavis
