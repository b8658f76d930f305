#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace abcl {

using Integer = mpz_class;

struct PrimePower
{
    std::uint64_t prime;
    unsigned exponent;

    bool operator==(PrimePower const&) const = default;
};

/* Primes strictly increasing, product of prime^exponent is the factored value. */
using Factorization = std::vector<PrimePower>;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
Integer powmod(Integer const& base, Integer const& exp, Integer const& m);

/* Inverse of a modulo m; throws domain_error when gcd(a, m) != 1. */
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);
Integer invmod(Integer const& a, Integer const& m);

/* Deterministic Miller-Rabin. The witness set {2,...,17} is complete below
 * 341550071728321; above that the first twelve primes are used, which is
 * complete on all of uint64. */
bool is_prime(std::uint64_t n);

/* Trial division by small primes, then Pollard rho (Brent) on the cofactor. */
Factorization factor(std::uint64_t n);

/* Kronecker symbol (a/n), with (a/0) = [|a| == 1] and (a/-1) = sign of a. */
int kronecker(std::int64_t a, std::int64_t n);

/* Odd-only sieve of Eratosthenes, ascending. */
std::vector<std::uint32_t> primes_up_to(std::uint64_t bound);

std::uint64_t isqrt(std::uint64_t n);
Integer isqrt(Integer const& n);
bool is_square(std::uint64_t n);
bool is_square(Integer const& n);

/* Largest e with p^e | n; n must be non-zero. */
unsigned valuation(std::uint64_t n, std::uint64_t p);
unsigned valuation(Integer const& n, std::uint64_t p);

/* floor(log_p(n)) for n >= 1, integer-only. */
unsigned ilog(std::uint64_t n, std::uint64_t p);

bool is_squarefree(std::int64_t n);

/* Multiplicative order of a modulo m (gcd(a, m) = 1, m >= 2). */
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m);

/* A primitive root modulo p^k (p odd): the least one mod p, shifted by p if needed. */
std::uint64_t primitive_root(std::uint64_t p, unsigned k);

/* Exact v_p(ell^f - 1) for ell != p prime (or any ell coprime to p). */
unsigned valuation_of_power_minus_one(std::uint64_t ell, std::uint64_t f, std::uint64_t p);

Integer pow_integer(std::uint64_t base, unsigned exp);
std::uint64_t pow_u64(std::uint64_t base, unsigned exp);

/* Fundamental discriminant of Q(sqrt(d)) for squarefree d != 0, 1. */
std::int64_t fundamental_discriminant(std::int64_t d);
bool is_fundamental_discriminant(std::int64_t D);

} // namespace abcl
