#include "abcl/scan_kernels.hpp"

#include <omp.h>

namespace abcl {

ResidueCounts& ResidueCounts::operator+=(ResidueCounts const& o)
{
    for (std::size_t k = 0; k < by_k.size(); ++k) {
        by_k[k] += o.by_k[k];
        norm_by_k[k] += o.norm_by_k[k];
    }
    primes += o.primes;
    return *this;
}

namespace {

void tally_prime(FieldDescriptor const& k, std::uint64_t p, std::uint64_t ell, std::uint64_t bound, ResidueCounts& out)
{
    if (ell == p || k.conductor() % ell == 0)
        return;
    std::uint64_t const f = residue_degree_unramified(k, ell);
    std::uint64_t const g = k.degree() / f;
    unsigned const v = valuation_of_power_minus_one(ell, f, p);
    out.by_k[v] += g;
    /* N(v) = ell^f <= bound */
    std::uint64_t norm = 1;
    bool small = true;
    for (std::uint64_t i = 0; i < f && small; ++i) {
        small = norm <= bound / ell;
        norm *= ell;
    }
    if (small)
        out.norm_by_k[v] += g;
    ++out.primes;
}

} // namespace

ResidueCounts residue_counts_serial(FieldDescriptor const& k, std::uint64_t p,
                                    std::span<std::uint32_t const> primes, std::uint64_t bound)
{
    ResidueCounts out;
    for (std::uint32_t ell : primes)
        tally_prime(k, p, ell, bound, out);
    return out;
}

ResidueCounts residue_counts_parallel(FieldDescriptor const& k, std::uint64_t p,
                                      std::span<std::uint32_t const> primes, std::uint64_t bound, int threads)
{
    if (threads <= 0)
        threads = omp_get_max_threads();
    auto const n = static_cast<std::int64_t>(primes.size());
    std::int64_t const chunk = 4096;
    std::int64_t const chunks = (n + chunk - 1) / chunk;
    std::vector<ResidueCounts> partial(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::int64_t c = 0; c < chunks; ++c) {
        std::int64_t const hi = std::min(n, (c + 1) * chunk);
        for (std::int64_t i = c * chunk; i < hi; ++i)
            tally_prime(k, p, primes[static_cast<std::size_t>(i)], bound, partial[static_cast<std::size_t>(c)]);
    }
    ResidueCounts out;
    for (auto const& r : partial)
        out += r;
    return out;
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul(u64 a, u64 b, u64 m)
{
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 reduce(Integer const& a, u64 m)
{
    return mpz_fdiv_ui(a.get_mpz_t(), m);
}

/* (x + y sqrt d)^e modulo m */
std::pair<u64, u64> quad_pow(u64 x, u64 y, u64 d, u64 e, u64 m)
{
    u64 rx = 1 % m, ry = 0;
    while (e) {
        if (e & 1) {
            u64 const nx = (mul(rx, x, m) + mul(mul(ry, y, m), d, m)) % m;
            u64 const ny = (mul(rx, y, m) + mul(ry, x, m)) % m;
            rx = nx;
            ry = ny;
        }
        e >>= 1;
        if (e) {
            u64 const nx = (mul(x, x, m) + mul(mul(y, y, m), d, m)) % m;
            u64 const ny = mul(2 * x % m, y, m);
            x = nx;
            y = ny;
        }
    }
    return {rx, ry};
}

bool fails_fast(UnitData const& eps, u64 p)
{
    u64 const m = p * p;
    u64 const d = reduce(eps.d, m);
    u64 x = reduce(eps.a, m), y = reduce(eps.b, m);
    if (eps.denom == 2) {
        u64 const half = (m + 1) / 2;
        x = mul(x, half, m);
        y = mul(y, half, m);
    }
    int const kr = kronecker(eps.d, static_cast<std::int64_t>(p));
    u64 const e = kr == 1 ? p - 1 : p + 1;
    return quad_pow(x, y, d, e, m).second == 0;
}

bool fails_reference(UnitData const& eps, u64 p)
{
    Integer const m = Integer(p) * p;
    Integer const D = eps.d;
    Integer x = eps.a, y = eps.b;
    if (eps.denom == 2) {
        Integer const half = invmod(Integer(2), m);
        x *= half;
        y *= half;
    }
    x %= m;
    y %= m;
    int const kr = kronecker(eps.d, static_cast<std::int64_t>(p));
    u64 e = kr == 1 ? p - 1 : p + 1;
    Integer rx = 1, ry = 0;
    for (; e; e >>= 1) {
        if (e & 1) {
            Integer const nx = rx * x + ry * y * D;
            ry = (rx * y + ry * x) % m;
            rx = nx % m;
        }
        Integer const nx = x * x + y * y * D;
        y = (2 * x * y) % m;
        x = nx % m;
    }
    return ry % m == 0;
}

bool eligible(UnitData const& eps, u64 p)
{
    return p != 2 && eps.d % static_cast<std::int64_t>(p) != 0;
}

} // namespace

std::vector<std::uint64_t> fermat_failures_serial(UnitData const& eps, std::span<std::uint32_t const> primes)
{
    std::vector<std::uint64_t> out;
    for (std::uint32_t p : primes)
        if (eligible(eps, p) && fails_reference(eps, p))
            out.push_back(p);
    return out;
}

std::vector<std::uint64_t> fermat_failures_parallel(UnitData const& eps, std::span<std::uint32_t const> primes,
                                                    int threads)
{
    if (threads <= 0)
        threads = omp_get_max_threads();
    auto const n = static_cast<std::int64_t>(primes.size());
    std::vector<char> hit(primes.size(), 0);
#pragma omp parallel for schedule(dynamic, 2048) num_threads(threads)
    for (std::int64_t i = 0; i < n; ++i) {
        u64 const p = primes[static_cast<std::size_t>(i)];
        hit[static_cast<std::size_t>(i)] = eligible(eps, p) && fails_fast(eps, p);
    }
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < primes.size(); ++i)
        if (hit[i])
            out.push_back(primes[i]);
    return out;
}

} // namespace abcl
