#include "shavis/analytic.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>

#include "shavis/errors.hpp"
#include "shavis/localdata.hpp"
#include "shavis/pointcount.hpp"

namespace shavis {

namespace {

long double agm(long double x, long double y) {
    for (int i = 0; i < 200; ++i) {
        long double nx = (x + y) / 2;
        long double ny = sqrtl(x * y);
        if (fabsl(nx - ny) < 1e-19L * fabsl(nx)) return (nx + ny) / 2;
        x = nx;
        y = ny;
    }
    return (x + y) / 2;
}

// roots of monic cubic x^3 + c2 x^2 + c1 x + c0, Newton-polished
std::vector<std::complex<long double>> cubic_roots(long double c2, long double c1,
                                                   long double c0) {
    using C = std::complex<long double>;
    // depressed: x = t - c2/3
    long double sh = c2 / 3.0L;
    long double p = c1 - c2 * c2 / 3.0L;
    long double q = 2 * c2 * c2 * c2 / 27.0L - c2 * c1 / 3.0L + c0;
    std::vector<C> roots;
    long double disc = -(4 * p * p * p + 27 * q * q);
    if (disc >= 0) {
        // three real roots (or repeated): trigonometric form
        long double m = 2 * sqrtl(std::max(0.0L, -p / 3.0L));
        long double arg = (m == 0) ? 0 : 3 * q / (p * m);
        arg = std::clamp(arg, -1.0L, 1.0L);
        long double theta = acosl(arg) / 3.0L;
        for (int k = 0; k < 3; ++k)
            roots.push_back(C(m * cosl(theta - 2 * M_PIl * k / 3) - sh, 0.0L));
    } else {
        // one real root via Cardano
        long double sq = sqrtl(q * q / 4 + p * p * p / 27);
        long double u = cbrtl(-q / 2 + sq), v = cbrtl(-q / 2 - sq);
        long double t1 = u + v;
        long double re = -t1 / 2, im = (u - v) * sqrtl(3.0L) / 2;
        roots.push_back(C(t1 - sh, 0.0L));
        roots.push_back(C(re - sh, im));
        roots.push_back(C(re - sh, -im));
    }
    // Newton polish on the real parts of real roots
    for (auto& z : roots) {
        if (z.imag() != 0) continue;
        long double x = z.real();
        for (int it = 0; it < 8; ++it) {
            long double f = ((x + c2) * x + c1) * x + c0;
            long double df = (3 * x + 2 * c2) * x + c1;
            if (df == 0) break;
            x -= f / df;
        }
        z = C(x, 0.0L);
    }
    return roots;
}

} // namespace

double real_period(const CurveQ& c, double tol) {
    if (tol < 1e-14) tol = 1e-14;
    // w^2 = 4 g(x), g(x) = x^3 + (b2/4) x^2 + (b4/2) x + b6/4
    long double B2 = c.b2().get_d(), B4 = c.b4().get_d(), B6 = c.b6().get_d();
    auto roots = cubic_roots(B2 / 4, B4 / 2, B6 / 4);
    if (c.disc() > 0) {
        std::vector<long double> e;
        for (auto& z : roots) e.push_back(z.real());
        std::sort(e.begin(), e.end(), std::greater<>());
        long double om = M_PIl / agm(sqrtl(e[0] - e[2]), sqrtl(e[0] - e[1]));
        return (double)(2 * om);
    }
    long double e1 = 0;
    std::complex<long double> z;
    bool found = false;
    for (auto& r : roots) {
        if (r.imag() == 0) { e1 = r.real(); found = true; }
        else z = r;
    }
    assert(found);
    long double cc = e1 - z.real();
    long double A = sqrtl(cc * cc + z.imag() * z.imag());
    long double om = 2 * M_PIl / agm(2 * sqrtl(A), sqrtl(2 * A + 2 * cc));
    return (double)om;
}

int root_number_semistable(const CurveQ& c) {
    auto [ss, additive] = is_semistable(c);
    if (!ss) throw NotSemistableError("root number requires semistable reduction");
    int prod = 1;
    for (const LocalData& d : local_data(c))
        if (d.kind == ReductionKind::split_multiplicative) prod = -prod;
    return -prod;
}

double exp1(double x) {
    assert(x > 0);
    if (x <= 1.0) {
        // series: -gamma - ln x + sum (-1)^{k+1} x^k / (k k!)
        const long double gamma = 0.57721566490153286060651209008L;
        long double sum = 0, term = 1;
        for (int k = 1; k <= 40; ++k) {
            term *= -((long double)x) / k;
            sum += -term / k;
            if (fabsl(term / k) < 1e-20L) break;
        }
        return (double)(-gamma - logl((long double)x) + sum);
    }
    // continued fraction (modified Lentz):
    // E1(x) = e^{-x} / (x + 1 - 1/(x + 3 - 4/(x + 5 - 9/(...))))
    const long double tiny = 1e-30L;
    long double b = x + 1, C = 1 / tiny, D = 1 / b, h = D;
    for (int k = 1; k <= 200; ++k) {
        long double an = -(long double)k * k;
        b += 2;
        D = an * D + b;
        if (fabsl(D) < tiny) D = tiny;
        C = b + an / C;
        if (fabsl(C) < tiny) C = tiny;
        D = 1 / D;
        long double del = C * D;
        h *= del;
        if (fabsl(del - 1) < 1e-18L) break;
    }
    return (double)(expl(-(long double)x) * h);
}

namespace {

int64_t truncation_length(double sqrtN, int wabs_plus_1, double tol) {
    const double C = 10.0;  // crude a_n/n majorant constant
    double M = (sqrtN / (2 * M_PI)) * std::log((wabs_plus_1 + 1) * C / tol);
    return (int64_t)std::ceil(std::max(2.0, M));
}

} // namespace

double l_value(const CurveQ& c, int order, double tol,
               std::optional<int> known_root_number) {
    Int N = conductor(c);
    int w = known_root_number ? *known_root_number : root_number_semistable(c);
    double sqrtN = std::sqrt(N.get_d());
    if (order == 0) {
        if (w == -1) return 0.0;
        int64_t M = truncation_length(sqrtN, 2, tol);
        if (M > 10000000)
            throw PrecisionUnreachableError("a_n budget exceeded for tolerance");
        std::vector<int64_t> an = an_coeffs(c, M);
        long double s = 0;
        for (int64_t n = M; n >= 1; --n)
            s += (long double)an[n] / n * expl(-2 * M_PIl * n / sqrtN);
        return (double)(2 * s);
    }
    if (order != 1) throw Error("l_value supports orders 0 and 1 only");
    if (w != -1) throw Error("L'(1) evaluation requires root number -1");
    int64_t M = truncation_length(sqrtN, 1, tol);
    if (M > 10000000)
        throw PrecisionUnreachableError("a_n budget exceeded for tolerance");
    std::vector<int64_t> an = an_coeffs(c, M);
    long double s = 0;
    for (int64_t n = M; n >= 1; --n)
        s += (long double)an[n] / n * (long double)exp1(2 * M_PI * n / sqrtN);
    return (double)(2 * s);
}

Rat rational_reconstruct(double x, const Int& den_bound, double tol) {
    if (!(Rat(tol) < Rat(1) / (2 * den_bound * den_bound)))
        throw ReconstructionFailedError("tolerance too coarse for denominator bound");
    Rat target(x);  // exact dyadic value of the double
    Rat tolr(tol);
    // continued-fraction convergents of target
    Int p0 = 1, q0 = 0;  // h_{-1}
    Int p1, q1;          // current
    Rat y = target;
    {
        Int a0;
        mpz_fdiv_q(a0.get_mpz_t(), y.get_num().get_mpz_t(), y.get_den().get_mpz_t());
        p1 = a0;
        q1 = 1;
        y -= a0;
    }
    for (int it = 0; it < 512; ++it) {
        if (q1 <= den_bound && abs(target - Rat(p1) / q1) <= tolr) {
            Rat r = Rat(p1) / q1;
            r.canonicalize();
            return r;
        }
        if (y == 0) break;
        y = 1 / y;
        Int a;
        mpz_fdiv_q(a.get_mpz_t(), y.get_num().get_mpz_t(), y.get_den().get_mpz_t());
        y -= a;
        Int p2 = a * p1 + p0, q2 = a * q1 + q0;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        if (q1 > den_bound && q0 > den_bound) break;
    }
    throw ReconstructionFailedError("no rational within tolerance at bounded denominator");
}

ConjecturalSha conjectural_sha(const CurveQ& c, const RankData& rank_evidence,
                               std::optional<int> known_root_number) {
    if (rank_evidence.rank != 0)
        throw Error("conjectural sha computed only for rank 0");
    TorsionData tor = torsion_subgroup(c);
    Int prodc = tamagawa_product(c);
    Int den_bound = tor.order * tor.order * prodc * 64;
    double tol_rec = std::min(1e-9, 0.49 / (den_bound * den_bound).get_d());
    double omega = real_period(c, 1e-14);
    // L-tolerance so the propagated error stays within the reconstruction slack
    double scale = (tor.order * tor.order).get_d() / prodc.get_d() / omega;
    double tol_l = std::max(1e-13, 0.25 * tol_rec / std::max(1.0, scale));
    int w = known_root_number ? *known_root_number : root_number_semistable(c);
    double L = l_value(c, 0, tol_l, w);
    double x = L / omega * (tor.order * tor.order).get_d() / prodc.get_d();
    ConjecturalSha out;
    out.raw = x;
    out.value = rational_reconstruct(x, den_bound, tol_rec);
    out.is_integer = out.value.get_den() == 1;
    out.is_square = out.is_integer && is_perfect_square(out.value.get_num());
    return out;
}

} // namespace shavis
