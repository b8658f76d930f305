#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "abcl/numtheory.hpp"

namespace abcl {

/* (Z/fZ)^x as a product of cyclic factors: one per odd prime power, and
 * <-1> x <5> on the 2-part (just <-1> modulo 4). Each generator is lifted by
 * CRT to be 1 on the other components. Discrete logarithms are tabulated. */
class UnitGroupModF
{
  public:
    struct Generator
    {
        std::uint64_t prime;        /* prime of the component */
        std::uint64_t prime_power;  /* modulus of the component */
        std::uint64_t local;        /* generator modulo prime_power */
        std::uint64_t lift;         /* CRT lift modulo f */
        std::uint64_t order;
    };

    explicit UnitGroupModF(std::uint64_t modulus);

    std::uint64_t modulus() const { return modulus_; }
    /* exponent of the group: lcm of generator orders */
    std::uint64_t exponent() const { return exponent_; }
    std::vector<Generator> const& generators() const { return gens_; }
    std::uint64_t order() const;

    /* Exponent vector of a on the generators. Components whose prime divides a
     * are left at 0 and reported in the mask (bit i set = not defined). */
    std::vector<std::uint64_t> log(std::uint64_t a, std::uint64_t* undefined_mask = nullptr) const;

  private:
    std::uint64_t modulus_;
    std::uint64_t exponent_ = 1;
    std::vector<Generator> gens_;
    /* per generator: residue modulo prime_power -> index (or sentinel) */
    std::vector<std::vector<std::uint32_t>> tables_;
};

/* chi(g_i) = exp(2 pi i e_i / order_i). Values are returned in Z/exponent(). */
class DirichletCharacter
{
    std::shared_ptr<UnitGroupModF const> group_;
    std::vector<std::uint64_t> exps_;

  public:
    DirichletCharacter(std::shared_ptr<UnitGroupModF const> group, std::vector<std::uint64_t> exps);

    static DirichletCharacter trivial(std::shared_ptr<UnitGroupModF const> group);

    std::shared_ptr<UnitGroupModF const> const& group() const { return group_; }
    std::vector<std::uint64_t> const& exponents() const { return exps_; }
    std::uint64_t modulus() const { return group_->modulus(); }

    /* chi(a) as a numerator over group().exponent(); 0 means chi(a) = 1.
     * Components at primes dividing a are skipped, which evaluates the
     * character with those components removed. */
    std::uint64_t value(std::uint64_t a) const;
    std::uint64_t value_on_log(std::vector<std::uint64_t> const& log) const;

    std::uint64_t order() const;
    std::uint64_t conductor() const;
    bool is_even() const;
    bool is_trivial() const;
    /* the component of chi at one prime of the modulus is trivial */
    bool trivial_at(std::uint64_t prime) const;

    DirichletCharacter operator*(DirichletCharacter const& o) const;
    DirichletCharacter inverse() const;

    bool operator==(DirichletCharacter const& o) const { return exps_ == o.exps_; }
    auto operator<=>(DirichletCharacter const& o) const { return exps_ <=> o.exps_; }
};

/* Same character, as a character modulo target->modulus() (which the source
 * modulus must divide). */
DirichletCharacter induce(DirichletCharacter const& chi, std::shared_ptr<UnitGroupModF const> const& target);

/* An abelian number field given by its finite group X of Dirichlet characters. */
class FieldDescriptor
{
    std::shared_ptr<UnitGroupModF const> group_;
    std::vector<DirichletCharacter> elements_;   /* sorted */
    std::vector<DirichletCharacter> generators_; /* small generating set */
    std::string label_;
    std::string spec_;
    std::uint64_t conductor_ = 1;
    unsigned r1_ = 0, r2_ = 0;

  public:
    FieldDescriptor(std::shared_ptr<UnitGroupModF const> group,
                    std::vector<DirichletCharacter> const& generators,
                    std::string label, std::string spec);

    std::uint64_t degree() const { return elements_.size(); }
    unsigned r1() const { return r1_; }
    unsigned r2() const { return r2_; }
    std::uint64_t conductor() const { return conductor_; }
    std::uint64_t modulus() const { return group_->modulus(); }
    std::string const& label() const { return label_; }
    /* canonical CLI spelling, e.g. "sqrt:-7" */
    std::string const& spec() const { return spec_; }
    bool totally_real() const { return r2_ == 0; }

    std::shared_ptr<UnitGroupModF const> const& group() const { return group_; }
    std::vector<DirichletCharacter> const& characters() const { return elements_; }
    std::vector<DirichletCharacter> const& generators() const { return generators_; }
    bool contains(DirichletCharacter const& chi) const;

    bool is_rational() const { return degree() == 1; }
    bool is_quadratic() const { return degree() == 2; }
    /* squarefree d with K = Q(sqrt(d)), for quadratic fields */
    std::optional<std::int64_t> quadratic_radicand() const;
};

/* Default cap on the modulus of a character group. */
inline constexpr std::uint64_t default_conductor_cap = 1000000;

FieldDescriptor rational_field();
FieldDescriptor field_from_sqrt(std::int64_t d);
FieldDescriptor field_from_cyclotomic(std::uint64_t n, bool real_subfield);
/* Group generated by the given exponent vectors modulo f. */
FieldDescriptor field_from_characters(std::uint64_t f, std::vector<std::vector<std::uint64_t>> const& exps);

/* Grammar: "Q" | "sqrt:<d>" | "zeta:<n>" | "zeta+:<n>" | "chars:<f>:<v1>;<v2>;..."
 * where each vector is comma-separated exponents on the generators of
 * (Z/fZ)^x in ascending prime order (for 2^k, k >= 3: exponent of -1, then of 5). */
FieldDescriptor parse_field(std::string_view spec);

struct SplittingData
{
    std::uint64_t ell;
    bool ramified;
    std::uint64_t e;
    std::uint64_t f;
    std::uint64_t g;
    Integer residue_order; /* ell^f - 1 */

    bool split_completely() const { return e == 1 && f == 1; }
    bool inert() const { return e == 1 && g == 1 && f > 1; }
};

SplittingData splitting(FieldDescriptor const& k, std::uint64_t ell);

/* Residue degree of an unramified prime, without building SplittingData. */
std::uint64_t residue_degree_unramified(FieldDescriptor const& k, std::uint64_t ell);

/* True iff Q(mu_m) is contained in K. */
bool contains_mu(FieldDescriptor const& k, std::uint64_t m);

} // namespace abcl
