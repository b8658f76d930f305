#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "abcl/abelian_field.hpp"
#include "abcl/padic.hpp"

namespace abcl {

enum class IntersectionKind
{
    trivial,
    q_nu,          /* Q_nu, or for p odd a subfield of Q(mu_p) times Q_nu */
    q_prime_nu,    /* non-real layer Q'_nu, p = 2 */
    contains_mu4,  /* p = 2 and mu_4 in K */
    contains_mu_p, /* p odd and mu_p in K */
};

std::string to_string(IntersectionKind k);

/* K cap Q(mu_{p^infinity}) */
struct CyclotomicIntersection
{
    std::uint64_t p;
    unsigned nu;
    IntersectionKind kind;
    /* characters of K of p-power conductor */
    std::vector<DirichletCharacter> characters;
    /* nu read off the real chain Q_nu and the non-real chain Q'_nu (p = 2) */
    unsigned nu_real = 0;
    unsigned nu_nonreal = 0;
    /* false when mu_4 is in K and the two chains disagree */
    bool nu_agreement = true;

    std::uint64_t degree() const { return characters.size(); }
};

CyclotomicIntersection cyclotomic_intersection(FieldDescriptor const& k, std::uint64_t p);

struct StructureInvariants
{
    std::map<std::uint64_t, std::uint64_t> w_p; /* primes with w_p != 1 */
    std::uint64_t w = 1;
    unsigned delta = 0;
    unsigned r2 = 0;

    std::uint64_t w_at(std::uint64_t p) const;
    /* prod_{n>=1} ((Z/2Z)^delta x Z/wnZ) */
    std::string product_type() const;
    /* Zhat^{r2+1} x product_type() */
    std::string known_layer_type() const;

    bool operator==(StructureInvariants const&) const = default;
};

StructureInvariants compute_w_delta(FieldDescriptor const& k);

/* exponents k >= 1 with no cyclic factor of order exactly p^k */
std::set<unsigned> forbidden_exponents(FieldDescriptor const& k, std::uint64_t p, CyclotomicIntersection const& I);
std::set<unsigned> forbidden_exponents(FieldDescriptor const& k, std::uint64_t p);

inline constexpr unsigned default_k_max = 6;

struct ResidueTally
{
    std::uint64_t p;
    std::uint64_t bound;
    unsigned k_max;
    /* places v | ell, ell <= bound, ell not dividing p f, counted with
     * multiplicity, plus real places for p = 2, by k = v_p(|F_v^x|) */
    std::map<unsigned, std::uint64_t> counts;
    /* finite places of norm <= bound, by k */
    std::map<unsigned, std::uint64_t> norm_counts;
    std::uint64_t primes = 0;
    std::set<unsigned> forbidden;
    bool forbidden_ok = true;
    bool allowed_ok = true;

    bool verdict() const { return forbidden_ok && allowed_ok; }
    std::uint64_t total() const;
    std::uint64_t count(unsigned k) const;
    /* fraction of places of norm <= bound with k = 1 */
    double density_k1() const;
    std::string to_json() const;
};

ResidueTally residue_scan(FieldDescriptor const& k, std::uint64_t p, std::uint64_t bound,
                          unsigned k_max = default_k_max, int threads = 0);
/* single-threaded reference for the same tally */
ResidueTally residue_scan_reference(FieldDescriptor const& k, std::uint64_t p, std::uint64_t bound,
                                    unsigned k_max = default_k_max);

struct GammaDescriptor
{
    std::uint64_t p;
    std::uint64_t w_p;
    unsigned delta;
    std::vector<PlaceTorsion> places;    /* every v | p with |mu^1_v| */
    std::vector<PlaceTorsion> irregular; /* those with mu^1_v != 1 */
    std::uint64_t local_product;         /* prod |mu^1_v| */
    std::uint64_t global;                /* |mu_p(K)| */
    std::uint64_t quotient_order;        /* local_product / global */
};

GammaDescriptor gamma_descriptor(FieldDescriptor const& k, std::uint64_t p);

} // namespace abcl
