#include <numeric>

#include "doctest.h"
#include "oracles.hpp"

#include "abcl/cft.hpp"
#include "abcl/error.hpp"
#include "abcl/scan_kernels.hpp"

using namespace abcl;

namespace {

/* fields of conductor <= 1000 reachable from the constructors */
std::vector<FieldDescriptor> corpus(oracle::Rng& rng, int random_fields)
{
    std::vector<FieldDescriptor> ks{rational_field()};
    for (std::int64_t d = -250; d <= 250; ++d)
        if (d != 0 && d != 1 && is_squarefree(d))
            ks.push_back(field_from_sqrt(d));
    for (std::uint64_t n = 3; n <= 120; ++n) {
        if (n % 4 == 2)
            continue;
        ks.push_back(field_from_cyclotomic(n, false));
        ks.push_back(field_from_cyclotomic(n, true));
    }
    for (int i = 0; i < random_fields; ++i) {
        std::uint64_t const f = rng.uniform(3, 1000);
        UnitGroupModF const g(f);
        std::vector<std::vector<std::uint64_t>> gens;
        for (int j = 0; j < 2; ++j) {
            std::vector<std::uint64_t> e;
            for (auto const& gen : g.generators())
                e.push_back(rng.uniform(0, gen.order - 1));
            gens.push_back(e);
        }
        ks.push_back(field_from_characters(f, gens));
    }
    return ks;
}

/* nu from splitting of small primes: Q_nu is in K iff every prime split in K splits in Q_nu */
unsigned nu_by_splitting(FieldDescriptor const& k, std::uint64_t p, bool nonreal)
{
    std::vector<std::uint64_t> split;
    for (auto ell : primes_up_to(3000))
        if (ell != p && k.conductor() % ell != 0 && oracle::residue_degree_brute(k, ell) == 1)
            split.push_back(ell);
    unsigned nu = 0;
    for (unsigned cand = 1; pow_u64(p, cand) <= k.degree(); ++cand) {
        bool ok = true;
        for (auto ell : split) {
            if (p != 2) {
                std::uint64_t const m = pow_u64(p, cand + 1);
                ok = ok && powmod(ell % m, p - 1, m) == 1;
            } else {
                std::uint64_t const m = pow_u64(2, cand + 2);
                std::uint64_t const r = ell % m;
                if (!nonreal) {
                    ok = ok && (r == 1 || r == m - 1);
                } else {
                    std::uint64_t const t = m - powmod(5, pow_u64(2, cand - 1), m);
                    ok = ok && (r == 1 || r == t);
                }
            }
        }
        if (ok)
            nu = cand;
    }
    return nu;
}

ResidueCounts direct_tally_rational(std::uint64_t p, std::uint64_t bound)
{
    ResidueCounts rc;
    for (std::uint64_t ell = 2; ell <= bound; ++ell) {
        if (!oracle::is_prime_trial(ell) || ell == p)
            continue;
        std::uint64_t x = ell - 1;
        unsigned k = 0;
        while (x % p == 0) {
            x /= p;
            ++k;
        }
        ++rc.by_k[k];
        ++rc.norm_by_k[k];
        ++rc.primes;
    }
    return rc;
}

} // namespace

TEST_CASE("cyclotomic intersection examples")
{
    auto const i2 = cyclotomic_intersection(field_from_sqrt(2), 2);
    CHECK(i2.kind == IntersectionKind::q_nu);
    CHECK(i2.nu == 1);
    for (std::uint64_t p : {2, 3, 5, 7, 11}) {
        auto const i = cyclotomic_intersection(field_from_sqrt(-5), p);
        CHECK(i.kind == IntersectionKind::trivial);
        CHECK(i.nu == 0);
        CHECK(i.degree() == 1);
    }
    auto const i9 = cyclotomic_intersection(field_from_cyclotomic(9, true), 3);
    CHECK(i9.kind == IntersectionKind::q_nu);
    CHECK(i9.nu == 1);
    auto const im2 = cyclotomic_intersection(field_from_sqrt(-2), 2);
    CHECK(im2.kind == IntersectionKind::q_prime_nu);
    CHECK(im2.nu == 1);
    auto const i16 = cyclotomic_intersection(field_from_cyclotomic(16, false), 2);
    CHECK(i16.kind == IntersectionKind::contains_mu4);
    CHECK(i16.nu == 2);
    CHECK(i16.nu_agreement);
    CHECK(cyclotomic_intersection(field_from_sqrt(-3), 3).kind == IntersectionKind::contains_mu_p);
    CHECK(cyclotomic_intersection(field_from_sqrt(-7), 7).kind == IntersectionKind::q_nu);
    CHECK(cyclotomic_intersection(field_from_sqrt(-7), 7).nu == 0);
}

TEST_CASE("intersection properties on the corpus")
{
    oracle::Rng rng(101);
    auto const ks = corpus(rng, 60);
    for (auto const& k : ks)
        for (std::uint64_t p : {2, 3, 5, 7}) {
            auto const I = cyclotomic_intersection(k, p);
            /* witness characters are exactly those of p-power conductor */
            std::uint64_t count = 0;
            for (auto const& chi : k.characters()) {
                std::uint64_t c = oracle::conductor_brute(chi);
                while (c % p == 0)
                    c /= p;
                count += c == 1;
            }
            REQUIRE(I.degree() == count);
            REQUIRE(k.degree() % I.degree() == 0);
            REQUIRE(pow_u64(p, I.nu) <= k.degree());
            if (p != 2) {
                REQUIRE(I.degree() % pow_u64(p, I.nu) == 0);
                REQUIRE((p - 1) % (I.degree() / pow_u64(p, I.nu)) == 0);
            }
            if (I.kind == IntersectionKind::contains_mu4)
                REQUIRE(I.nu_agreement);
            if (I.kind == IntersectionKind::q_prime_nu)
                REQUIRE(k.r2() > 0);
        }
}

TEST_CASE("nu agrees with the splitting oracle")
{
    oracle::Rng rng(5);
    auto ks = corpus(rng, 20);
    ks.erase(ks.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(ks.size(), 400)), ks.end());
    for (auto const& k : ks)
        for (std::uint64_t p : {2, 3, 5}) {
            auto const I = cyclotomic_intersection(k, p);
            REQUIRE(I.nu_real == nu_by_splitting(k, p, false));
            if (p == 2)
                REQUIRE(I.nu_nonreal == nu_by_splitting(k, 2, true));
        }
}

TEST_CASE("w and delta examples")
{
    auto const s2 = compute_w_delta(field_from_sqrt(2));
    CHECK(s2.delta == 1);
    CHECK(s2.w == 8);
    auto const s4 = compute_w_delta(field_from_cyclotomic(4, false));
    CHECK(s4.delta == 0);
    CHECK(s4.w == 4);
    auto const s9 = compute_w_delta(field_from_cyclotomic(9, true));
    CHECK(s9.delta == 0);
    CHECK(s9.w == 9);
    auto const sq = compute_w_delta(rational_field());
    CHECK(sq.delta == 0);
    CHECK(sq.w == 1);
    for (std::int64_t ell : {7, 11, 19, 23, 5, 15}) {
        auto const s = compute_w_delta(field_from_sqrt(-ell));
        CHECK(s.delta == 0);
        CHECK(s.w == 1);
    }
    CHECK(compute_w_delta(field_from_sqrt(-2)).w == 8);
    CHECK(compute_w_delta(field_from_sqrt(-2)).delta == 1);
    CHECK(compute_w_delta(field_from_cyclotomic(8, false)).w == 8);
    CHECK(compute_w_delta(field_from_cyclotomic(8, false)).delta == 0);
    CHECK(compute_w_delta(field_from_cyclotomic(16, true)).w == 16);
    CHECK(compute_w_delta(field_from_cyclotomic(36, false)).w == 36);
    CHECK(s2.known_layer_type() == "Zhat^1 x prod_{n>=1} (Z/2Z x Z/8nZ)");
    CHECK(sq.known_layer_type() == "Zhat^1 x prod_{n>=1} Z/nZ");
}

TEST_CASE("normalized w and the delta biconditional")
{
    oracle::Rng rng(77);
    for (auto const& k : corpus(rng, 200)) {
        auto const s = compute_w_delta(k);
        std::uint64_t prod = 1;
        for (auto const& [p, wp] : s.w_p) {
            prod *= wp;
            REQUIRE(wp % (p * p) == 0);
            REQUIRE(pow_u64(p, valuation(wp, p)) == wp);
            if (p != 2)
                REQUIRE(k.degree() % p == 0);
        }
        REQUIRE(prod == s.w);
        for (auto const& pp : factor(s.w))
            REQUIRE(pp.exponent >= 2);
        bool const mu4 = contains_mu(k, 4);
        REQUIRE((s.delta == 1) == (!mu4 && s.w % 8 == 0));
        if (k.is_quadratic())
            for (auto const& [p, wp] : s.w_p)
                REQUIRE(p == 2);
        if (s.w == 1)
            REQUIRE(s.delta == 0);
    }
}

TEST_CASE("forbidden exponents")
{
    CHECK(forbidden_exponents(field_from_sqrt(2), 2) == std::set<unsigned>{2});
    CHECK(forbidden_exponents(field_from_cyclotomic(4, false), 2) == std::set<unsigned>{1});
    CHECK(forbidden_exponents(rational_field(), 3).empty());
    CHECK(forbidden_exponents(field_from_cyclotomic(9, true), 3) == std::set<unsigned>{1});
    CHECK(forbidden_exponents(field_from_cyclotomic(16, false), 2) == std::set<unsigned>{1, 2, 3});
    CHECK(forbidden_exponents(field_from_cyclotomic(16, true), 2) == std::set<unsigned>{2, 3});
}

TEST_CASE("residue scans")
{
    auto const t2 = residue_scan(field_from_sqrt(2), 2, 100000);
    CHECK(t2.count(2) == 0);
    CHECK(t2.count(1) > 0);
    CHECK(t2.count(3) > 0);
    CHECK(t2.verdict());
    CHECK(t2.density_k1() >= 0.45);
    CHECK(t2.density_k1() <= 0.55);
    auto const t4 = residue_scan(field_from_cyclotomic(4, false), 2, 100000);
    CHECK(t4.count(1) == 0);
    CHECK(t4.verdict());
    auto const t9 = residue_scan(field_from_cyclotomic(9, true), 3, 10000);
    CHECK(t9.count(1) == 0);
    CHECK(t9.forbidden_ok);

    /* the direct tally over Q */
    auto const tq = residue_scan(rational_field(), 5, 1000, 3);
    auto const rc = direct_tally_rational(5, 1000);
    for (unsigned k = 0; k < 64; ++k)
        REQUIRE(tq.count(k) == rc.by_k[k]);
    CHECK(tq.count(1) > 0);
    CHECK(tq.count(2) > 0);
    CHECK(tq.count(3) > 0);
    CHECK(tq.verdict());
    CHECK(tq.total() == tq.primes);
    CHECK_THROWS_AS(residue_scan(rational_field(), 4, 1000), domain_error);
    CHECK_THROWS_AS(residue_scan(rational_field(), 5, 10), domain_error);
}

TEST_CASE("forbidden exponents never occur")
{
    oracle::Rng rng(3);
    for (auto const& k : corpus(rng, 30))
        for (std::uint64_t p : {2, 3}) {
            if (k.degree() > 64)
                continue;
            auto const t = residue_scan(k, p, 3000);
            REQUIRE(t.forbidden_ok);
        }
}

TEST_CASE("parallel scan matches the serial reference")
{
    std::vector<FieldDescriptor> const ks{field_from_sqrt(2), field_from_cyclotomic(9, true),
                                          field_from_cyclotomic(20, false), parse_field("chars:63:2,0;0,2")};
    auto const primes = primes_up_to(50000);
    for (auto const& k : ks)
        for (std::uint64_t p : {2, 3, 5}) {
            auto const ref = residue_counts_serial(k, p, primes, 50000);
            for (int threads : {1, 2, 4})
                REQUIRE(residue_counts_parallel(k, p, primes, 50000, threads) == ref);
        }
    auto const a = residue_scan(field_from_sqrt(2), 2, 20000, 6, 3);
    auto const b = residue_scan_reference(field_from_sqrt(2), 2, 20000);
    CHECK(a.to_json() == b.to_json());
    CHECK(a.to_json().rfind("{\"p\":2,\"B\":20000,\"counts\":{", 0) == 0);
}

TEST_CASE("gamma descriptor")
{
    auto const g3 = gamma_descriptor(field_from_sqrt(-3), 3);
    CHECK(g3.places.size() == 1);
    CHECK(g3.places[0].type == LocalType::ramified);
    CHECK(g3.places[0].order == 3);
    CHECK(g3.global == 3);
    CHECK(g3.quotient_order == 1);
    auto const g13 = gamma_descriptor(field_from_sqrt(2), 13);
    CHECK(g13.irregular.empty());
    CHECK(g13.quotient_order == 1);
    for (std::uint64_t p : {2, 3, 5, 7, 13}) {
        auto const g = gamma_descriptor(rational_field(), p);
        CHECK(g.quotient_order == 1);
    }
    /* Q(sqrt(-7)) at 2: two places with +-1 each over mu_2(K) */
    CHECK(gamma_descriptor(field_from_sqrt(-7), 2).quotient_order == 2);
    for (std::int64_t d = -100; d <= 100; ++d) {
        if (d == 0 || d == 1 || !is_squarefree(d))
            continue;
        for (std::uint64_t p : {2, 3, 5, 7}) {
            auto const g = gamma_descriptor(field_from_sqrt(d), p);
            REQUIRE(g.local_product % g.global == 0);
            REQUIRE(pow_u64(p, valuation(g.quotient_order, p)) == g.quotient_order);
            if (g.irregular.empty())
                REQUIRE(g.quotient_order == 1);
        }
    }
}
