#include "abcl/numtheory.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdlib>
#include <numeric>

#include "abcl/error.hpp"

namespace abcl {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
    if (m == 1)
        return 0;
    std::uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1)
            result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

Integer powmod(Integer const& base, Integer const& exp, Integer const& m)
{
    if (m < 1)
        throw domain_error("powmod: modulus must be >= 1");
    if (exp < 0)
        throw domain_error("powmod: negative exponent");
    if (m == 1)
        return 0;
    Integer b = base % m;
    if (b < 0)
        b += m;
    Integer result = 1;
    std::size_t const nbits = mpz_sizeinbase(exp.get_mpz_t(), 2);
    for (std::size_t i = nbits; i-- > 0;) {
        result = result * result % m;
        if (mpz_tstbit(exp.get_mpz_t(), i))
            result = result * b % m;
    }
    return result;
}

namespace {

/* Extended gcd on signed 128-bit to keep invmod exact for any uint64 modulus. */
__int128 egcd_inverse(__int128 a, __int128 m)
{
    __int128 old_r = a, r = m, old_s = 1, s = 0;
    while (r != 0) {
        __int128 q = old_r / r;
        __int128 t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1)
        return -1;
    old_s %= m;
    if (old_s < 0)
        old_s += m;
    return old_s;
}

} // namespace

std::uint64_t invmod(std::uint64_t a, std::uint64_t m)
{
    if (m == 1)
        return 0;
    __int128 inv = egcd_inverse(a % m, m);
    if (inv < 0)
        throw domain_error("invmod: element is not invertible");
    return static_cast<std::uint64_t>(inv);
}

Integer invmod(Integer const& a, Integer const& m)
{
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw domain_error("invmod: element is not invertible");
    return inv;
}

namespace {

bool miller_rabin_round(std::uint64_t n, std::uint64_t d, int s, std::uint64_t a)
{
    a %= n;
    if (a == 0)
        return true;
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1)
        return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1)
            return true;
    }
    return false;
}

constexpr std::array<std::uint64_t, 12> small_primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

} // namespace

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t p : small_primes) {
        if (n == p)
            return true;
        if (n % p == 0)
            return false;
    }
    std::uint64_t d = n - 1;
    int s = std::countr_zero(d);
    d >>= s;
    std::size_t const nwitness = n < 341550071728321ULL ? 7 : small_primes.size();
    for (std::size_t i = 0; i < nwitness; ++i)
        if (!miller_rabin_round(n, d, s, small_primes[i]))
            return false;
    return true;
}

namespace {

std::uint64_t pollard_brent(std::uint64_t n)
{
    if (n % 2 == 0)
        return 2;
    /* deterministic sequence of constants; restarts on failure */
    for (std::uint64_t c = 1;; ++c) {
        std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
        std::uint64_t r = 1;
        constexpr std::uint64_t m = 128;
        auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i)
                y = f(y);
            std::uint64_t k = 0;
            do {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

void factor_into(std::uint64_t n, std::vector<std::uint64_t>& out)
{
    if (n == 1)
        return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    std::uint64_t d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace

Factorization factor(std::uint64_t n)
{
    if (n == 0)
        throw domain_error("factor: n must be >= 1");
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p = 2; p < 1000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            primes.push_back(p);
            n /= p;
        }
    }
    factor_into(n, primes);
    std::sort(primes.begin(), primes.end());
    Factorization result;
    for (std::uint64_t p : primes) {
        if (!result.empty() && result.back().prime == p)
            ++result.back().exponent;
        else
            result.push_back({p, 1});
    }
    return result;
}

int kronecker(std::int64_t a_in, std::int64_t n_in)
{
    __int128 a = a_in, n = n_in;
    if (n == 0)
        return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0)
            result = -result;
    }
    int v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    if (v > 0) {
        if (a % 2 == 0)
            return 0;
        __int128 am8 = ((a % 8) + 8) % 8;
        if ((v & 1) && (am8 == 3 || am8 == 5))
            result = -result;
    }
    /* n odd positive: Jacobi symbol */
    a %= n;
    if (a < 0)
        a += n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            __int128 nm8 = n % 8;
            if (nm8 == 3 || nm8 == 5)
                result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3)
            result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

std::vector<std::uint32_t> primes_up_to(std::uint64_t bound)
{
    std::vector<std::uint32_t> primes;
    if (bound < 2)
        return primes;
    primes.push_back(2);
    /* index i stands for 2i+1 */
    std::uint64_t const half = (bound - 1) / 2;
    std::vector<std::uint8_t> composite(half + 1, 0);
    for (std::uint64_t i = 1; i <= half; ++i) {
        if (composite[i])
            continue;
        std::uint64_t const p = 2 * i + 1;
        primes.push_back(static_cast<std::uint32_t>(p));
        for (std::uint64_t j = (p * p - 1) / 2; j <= half; j += p)
            composite[j] = 1;
    }
    return primes;
}

std::uint64_t isqrt(std::uint64_t n)
{
    if (n < 2)
        return n;
    std::uint64_t x = std::uint64_t{1} << ((65 - std::countl_zero(n)) / 2);
    for (;;) {
        std::uint64_t const y = (x + n / x) / 2;
        if (y >= x)
            return x;
        x = y;
    }
}

Integer isqrt(Integer const& n)
{
    if (n < 0)
        throw domain_error("isqrt: negative argument");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_square(std::uint64_t n)
{
    std::uint64_t r = isqrt(n);
    return r * r == n;
}

bool is_square(Integer const& n)
{
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

unsigned valuation(std::uint64_t n, std::uint64_t p)
{
    if (n == 0)
        throw domain_error("valuation of zero");
    unsigned v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

unsigned valuation(Integer const& n, std::uint64_t p)
{
    if (n == 0)
        throw domain_error("valuation of zero");
    Integer m = abs(n);
    unsigned v = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++v;
    }
    return v;
}

unsigned ilog(std::uint64_t n, std::uint64_t p)
{
    unsigned e = 0;
    while (n >= p) {
        n /= p;
        ++e;
    }
    return e;
}

bool is_squarefree(std::int64_t n)
{
    if (n == 0)
        return false;
    std::uint64_t m = static_cast<std::uint64_t>(n < 0 ? -n : n);
    for (auto const& pp : factor(m))
        if (pp.exponent > 1)
            return false;
    return true;
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m)
{
    if (m < 2 || std::gcd(a, m) != 1)
        throw domain_error("multiplicative_order: need gcd(a, m) = 1 and m >= 2");
    /* order divides lambda(m); start from phi(m) and strip prime factors */
    std::uint64_t phi = m;
    for (auto const& pp : factor(m))
        phi = phi / pp.prime * (pp.prime - 1);
    std::uint64_t order = phi;
    for (auto const& pp : factor(phi)) {
        for (unsigned i = 0; i < pp.exponent; ++i) {
            if (powmod(a, order / pp.prime, m) == 1)
                order /= pp.prime;
            else
                break;
        }
    }
    return order;
}

std::uint64_t primitive_root(std::uint64_t p, unsigned k)
{
    if (p == 2 || !is_prime(p))
        throw domain_error("primitive_root: odd prime required");
    auto const fac = factor(p - 1);
    std::uint64_t g = 2;
    for (;; ++g) {
        bool ok = true;
        for (auto const& pp : fac)
            if (powmod(g, (p - 1) / pp.prime, p) == 1) {
                ok = false;
                break;
            }
        if (ok)
            break;
    }
    if (k >= 2 && powmod(g, p - 1, p * p) == 1)
        g += p; /* g is then a primitive root modulo every p^k */
    return g;
}

std::uint64_t pow_u64(std::uint64_t base, unsigned exp)
{
    std::uint64_t r = 1;
    while (exp--)
        r *= base;
    return r;
}

Integer pow_integer(std::uint64_t base, unsigned exp)
{
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

unsigned valuation_of_power_minus_one(std::uint64_t ell, std::uint64_t f, std::uint64_t p)
{
    if (ell % p == 0)
        throw domain_error("valuation_of_power_minus_one: ell divisible by p");
    if (p == 2) {
        unsigned const v_minus = valuation(ell - 1, 2);
        if (f % 2 == 1)
            return v_minus;
        return v_minus + valuation(ell + 1, 2) + valuation(f, 2) - 1;
    }
    std::uint64_t const o = multiplicative_order(ell % p, p);
    if (f % o != 0)
        return 0;
    /* v_p(ell^o - 1), then lifting the exponent by f/o */
    unsigned k = 1;
    std::uint64_t pk = p;
    while (pk <= (UINT64_MAX >> 2) / p) {
        pk *= p;
        ++k;
    }
    std::uint64_t x = powmod(ell, o, pk);
    unsigned base_v;
    if (x != 1) {
        base_v = valuation(x + pk - 1, p);
    } else {
        Integer y = pow_integer(ell, static_cast<unsigned>(o)) - 1;
        base_v = valuation(y, p);
    }
    return base_v + valuation(f / o, p);
}

std::int64_t fundamental_discriminant(std::int64_t d)
{
    if (d == 0 || d == 1 || !is_squarefree(d))
        throw domain_error("fundamental_discriminant: d must be squarefree and not 0 or 1");
    std::int64_t const r = ((d % 4) + 4) % 4;
    return r == 1 ? d : 4 * d;
}

bool is_fundamental_discriminant(std::int64_t D)
{
    if (D == 0 || D == 1)
        return false;
    std::int64_t const r = ((D % 4) + 4) % 4;
    if (r == 1)
        return is_squarefree(D);
    if (r != 0)
        return false;
    std::int64_t const m = D / 4;
    std::int64_t const rm = ((m % 4) + 4) % 4;
    return (rm == 2 || rm == 3) && is_squarefree(m);
}

} // namespace abcl
