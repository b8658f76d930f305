#include <benchmark/benchmark.h>

#include "abcl/cft.hpp"
#include "abcl/quadratic.hpp"
#include "abcl/scan_kernels.hpp"

using namespace abcl;

namespace {

std::vector<std::uint32_t> const& primes()
{
    static auto const ps = primes_up_to(2000000);
    return ps;
}

UnitData sqrt2_unit()
{
    auto const e = fundamental_unit(2);
    return {2, e.a, e.b, e.denom};
}

void residue_serial(benchmark::State& st)
{
    auto const k = field_from_sqrt(2);
    for (auto _ : st)
        benchmark::DoNotOptimize(residue_counts_serial(k, 2, primes(), 2000000));
}

void residue_parallel(benchmark::State& st)
{
    auto const k = field_from_sqrt(2);
    for (auto _ : st)
        benchmark::DoNotOptimize(residue_counts_parallel(k, 2, primes(), 2000000, static_cast<int>(st.range(0))));
}

void fermat_serial(benchmark::State& st)
{
    auto const u = sqrt2_unit();
    std::span<std::uint32_t const> const ps(primes().data(), 20000);
    for (auto _ : st)
        benchmark::DoNotOptimize(fermat_failures_serial(u, ps));
}

void fermat_parallel(benchmark::State& st)
{
    auto const u = sqrt2_unit();
    std::span<std::uint32_t const> const ps(primes().data(), 20000);
    for (auto _ : st)
        benchmark::DoNotOptimize(fermat_failures_parallel(u, ps, static_cast<int>(st.range(0))));
}

} // namespace

BENCHMARK(residue_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(residue_parallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(fermat_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(fermat_parallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
