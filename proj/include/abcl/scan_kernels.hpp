#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "abcl/abelian_field.hpp"

namespace abcl {

/* Per-k place counts of one residue scan; k = v_p(|F_v^x|) <= 63. */
struct ResidueCounts
{
    std::array<std::uint64_t, 64> by_k{};
    std::array<std::uint64_t, 64> norm_by_k{}; /* places with N(v) <= bound */
    std::uint64_t primes = 0;

    ResidueCounts& operator+=(ResidueCounts const& o);
    bool operator==(ResidueCounts const&) const = default;
};

ResidueCounts residue_counts_serial(FieldDescriptor const& k, std::uint64_t p,
                                    std::span<std::uint32_t const> primes, std::uint64_t bound);
ResidueCounts residue_counts_parallel(FieldDescriptor const& k, std::uint64_t p,
                                      std::span<std::uint32_t const> primes, std::uint64_t bound, int threads);

/* eps = (a + b sqrt d) / denom with denom in {1, 2}, N(eps) = +-1 */
struct UnitData
{
    std::int64_t d;
    Integer a;
    Integer b;
    unsigned denom;
};

/* Primes p of the list (odd, p not dividing d, p < 2^32) for which
 * eps^(p - (d/p)) = +-1 mod p^2 in Z[sqrt d]. Ascending. */
std::vector<std::uint64_t> fermat_failures_serial(UnitData const& eps, std::span<std::uint32_t const> primes);
std::vector<std::uint64_t> fermat_failures_parallel(UnitData const& eps, std::span<std::uint32_t const> primes,
                                                    int threads);

} // namespace abcl
