#ifndef SHAVIS_INTEGERS_HPP
#define SHAVIS_INTEGERS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace shavis {

using Int = mpz_class;
using Rat = mpq_class;

// p-adic valuation; n must be nonzero.
int valuation(const Int& n, const Int& p);

// floor-mod into [0, m)
Int mod_floor(const Int& a, const Int& m);

// Legendre symbol (a/p) for odd prime p: -1, 0, +1
int legendre(const Int& a, const Int& p);

bool is_probable_prime(const Int& n);

Int next_prime_after(const Int& n);

// Exact square root of a perfect square; caller checks squareness.
bool is_perfect_square(const Int& n);

// prime -> exponent, sorted
using Factorization = std::map<Int, int>;

// Trial division up to 10^6 then Pollard rho.
// Throws FactorizationFailedError if a composite cofactor resists.
Factorization factorize(const Int& n);

std::vector<Int> divisors_of(const Factorization& f);

// Largest Y with Y^2 | n, from a factorization of n.
Int square_part_root(const Factorization& f);

Int from_factorization(const Factorization& f);

// primes <= m (64-bit sieve)
std::vector<int64_t> primes_upto(int64_t m);

// u64 modular arithmetic (p < 2^62)
uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m);
uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m);
uint64_t invmod_u64(uint64_t a, uint64_t m);
// Tonelli-Shanks; returns false if a is a non-residue. p odd prime.
bool sqrtmod_u64(uint64_t a, uint64_t p, uint64_t& root);

} // namespace shavis

#endif
