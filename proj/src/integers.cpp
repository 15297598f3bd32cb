#include "shavis/integers.hpp"
#include "shavis/errors.hpp"

#include <algorithm>
#include <cassert>

namespace shavis {

int valuation(const Int& n, const Int& p) {
    assert(n != 0);
    Int m = abs(n);
    int v = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

Int mod_floor(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

int legendre(const Int& a, const Int& p) {
    return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

bool is_probable_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

Int next_prime_after(const Int& n) {
    Int r;
    mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_perfect_square(const Int& n) {
    if (n < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

namespace {

constexpr int64_t kTrialBound = 1000000;

Int pollard_rho(const Int& n) {
    // Brent's variant
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0xb5297a4dUL);
    for (int attempt = 0; attempt < 64; ++attempt) {
        Int c = rng.get_z_range(n - 3) + 1;
        Int x = rng.get_z_range(n - 2) + 1;
        Int y = x, d = 1;
        Int ys = y, q = 1;
        const int m = 128;
        int r = 1;
        while (d == 1) {
            x = y;
            for (int i = 0; i < r; ++i) y = (y * y + c) % n;
            int k = 0;
            while (k < r && d == 1) {
                ys = y;
                int lim = std::min(m, r - k);
                for (int i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                }
                d = gcd(q, n);
                k += m;
            }
            r *= 2;
            if (r > (1 << 22)) break;
        }
        if (d == n) {
            // backtrack
            do {
                ys = (ys * ys + c) % n;
                d = gcd(abs(x - ys), n);
            } while (d == 1);
        }
        if (d != 1 && d != n) return d;
    }
    throw FactorizationFailedError("pollard rho gave up on " + Int(n).get_str());
}

void factor_into(Int n, Factorization& out) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        out[n]++;
        return;
    }
    Int d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace

Factorization factorize(const Int& n) {
    if (n == 0) throw FactorizationFailedError("factorize(0)");
    Factorization out;
    Int m = abs(n);
    for (int64_t p : {int64_t(2), int64_t(3), int64_t(5)}) {
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            out[Int(p)]++;
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        }
    }
    int64_t d = 7;
    static const int wheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
    int wi = 0;
    while (d <= kTrialBound && m > 1) {
        if (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
            out[Int(d)]++;
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), d);
        } else {
            d += wheel[wi];
            wi = (wi + 1) & 7;
        }
        if (Int(d) * d > m) break;
    }
    if (m > 1) {
        if (Int(d) * d > m)
            out[m]++;
        else
            factor_into(m, out);
    }
    return out;
}

std::vector<Int> divisors_of(const Factorization& f) {
    std::vector<Int> out{1};
    for (const auto& [p, e] : f) {
        size_t sz = out.size();
        Int pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Int square_part_root(const Factorization& f) {
    Int y = 1;
    for (const auto& [p, e] : f) {
        for (int k = 0; k < e / 2; ++k) y *= p;
    }
    return y;
}

Int from_factorization(const Factorization& f) {
    Int n = 1;
    for (const auto& [p, e] : f)
        for (int k = 0; k < e; ++k) n *= p;
    return n;
}

std::vector<int64_t> primes_upto(int64_t m) {
    std::vector<int64_t> out;
    if (m < 2) return out;
    std::vector<bool> sieve(m + 1, true);
    sieve[0] = sieve[1] = false;
    for (int64_t i = 2; i * i <= m; ++i)
        if (sieve[i])
            for (int64_t j = i * i; j <= m; j += i) sieve[j] = false;
    for (int64_t i = 2; i <= m; ++i)
        if (sieve[i]) out.push_back(i);
    return out;
}

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return (uint64_t)((unsigned __int128)a * b % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

uint64_t invmod_u64(uint64_t a, uint64_t m) {
    int64_t t = 0, nt = 1;
    int64_t r = (int64_t)m, nr = (int64_t)(a % m);
    while (nr != 0) {
        int64_t q = r / nr;
        int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    assert(r == 1);
    return (uint64_t)(t < 0 ? t + (int64_t)m : t);
}

bool sqrtmod_u64(uint64_t a, uint64_t p, uint64_t& root) {
    a %= p;
    if (a == 0) { root = 0; return true; }
    if (p == 2) { root = a; return true; }
    if (powmod_u64(a, (p - 1) / 2, p) != 1) return false;
    if (p % 4 == 3) {
        root = powmod_u64(a, (p + 1) / 4, p);
        return true;
    }
    // Tonelli-Shanks
    uint64_t q = p - 1;
    int s = 0;
    while ((q & 1) == 0) { q >>= 1; ++s; }
    uint64_t z = 2;
    while (powmod_u64(z, (p - 1) / 2, p) != p - 1) ++z;
    uint64_t m = s;
    uint64_t c = powmod_u64(z, q, p);
    uint64_t t = powmod_u64(a, q, p);
    uint64_t r = powmod_u64(a, (q + 1) / 2, p);
    while (t != 1) {
        uint64_t i = 0, tt = t;
        while (tt != 1) { tt = mulmod_u64(tt, tt, p); ++i; }
        uint64_t b = c;
        for (uint64_t j = 0; j + i + 1 < m; ++j) b = mulmod_u64(b, b, p);
        m = i;
        c = mulmod_u64(b, b, p);
        t = mulmod_u64(t, c, p);
        r = mulmod_u64(r, b, p);
    }
    root = r;
    return true;
}

} // namespace shavis
