#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "abcl/abelian_field.hpp"
#include "abcl/numtheory.hpp"

namespace abcl {

/* Valuation read off at finite precision: when exact is false the true value
 * is only known to be >= value. */
struct Valuation
{
    int value;
    bool exact;

    bool operator==(Valuation const&) const = default;
};

/* Element of Z/p^N Z. */
struct PAdicInt
{
    std::uint64_t p;
    unsigned N;
    Integer value; /* in [0, p^N) */

    static PAdicInt make(Integer const& v, std::uint64_t p, unsigned N);

    Integer modulus() const { return pow_integer(p, N); }
    Valuation valuation() const;

    PAdicInt operator+(PAdicInt const& o) const;
    PAdicInt operator-(PAdicInt const& o) const;
    PAdicInt operator*(PAdicInt const& o) const;
    bool operator==(PAdicInt const& o) const = default;
};

/* x + y sqrt(d) with x, y in Z/p^N Z. */
struct PAdicQuadElement
{
    std::uint64_t p;
    unsigned N;
    std::int64_t d;
    Integer x;
    Integer y;

    static PAdicQuadElement make(Integer const& x, Integer const& y, std::int64_t d, std::uint64_t p, unsigned N);
    static PAdicQuadElement one(std::int64_t d, std::uint64_t p, unsigned N);

    Integer modulus() const { return pow_integer(p, N); }
    Valuation valuation() const; /* min over the two components */

    PAdicQuadElement operator+(PAdicQuadElement const& o) const;
    PAdicQuadElement operator-(PAdicQuadElement const& o) const;
    PAdicQuadElement operator*(PAdicQuadElement const& o) const;
    PAdicQuadElement pow(Integer const& e) const;
    PAdicQuadElement operator-() const;
    bool operator==(PAdicQuadElement const& o) const = default;
};

/* log(1 + z) by its power series. Requires u = 1 mod p (mod 4 when p = 2),
 * componentwise for the quadratic element. Accurate modulo p^N. */
PAdicInt log1p(PAdicInt const& u);
PAdicQuadElement log1p(PAdicQuadElement const& u);

enum class LocalType
{
    rational, /* K = Q */
    split,    /* two copies of Q_p */
    inert,
    ramified
};

std::string to_string(LocalType t);

/* The completion O_K (x) Z_p in a fixed frame:
 *   rational: Z_p
 *   split:    Z_p x Z_p via sqrt(d) -> (s, -s)
 *   inert / ramified: Z_p[w], w^2 = t w + n, with (t, n) = (0, d), or
 *             (1, (d-1)/4) for p = 2 inert (d = 5 mod 8).
 * Elements are coordinate pairs (c0, c1): for split the two Q_p coordinates,
 * otherwise c0 + c1 w. */
class LocalAlgebra
{
  public:
    struct Element
    {
        Integer c0;
        Integer c1;
    };

    LocalAlgebra(std::int64_t d, std::uint64_t p);

    LocalType type() const { return type_; }
    std::uint64_t p() const { return p_; }
    std::int64_t d() const { return d_; }
    Integer const& t() const { return t_; }
    Integer const& n() const { return n_; }
    /* exponent k0 with log an isometry on 1 + p^k0 A */
    unsigned k0() const { return p_ == 2 ? 2 : 1; }
    /* size of the residue field of each place */
    std::uint64_t residue_size() const { return type_ == LocalType::inert ? p_ * p_ : p_; }

    /* sqrt(d) in Z_p modulo p^W (split type only) */
    Integer sqrt_d(unsigned W) const;

    Element one() const;
    Element mul(Element const& a, Element const& b, Integer const& mod) const;
    Element pow(Element const& a, Integer const& e, Integer const& mod) const;
    /* image of the integer a + b sqrt(d), modulo p^W */
    Element embed(Integer const& a, Integer const& b, unsigned W) const;
    bool is_unit(Element const& a) const;
    /* (u - 1)^2 = 0 mod p in every coordinate */
    bool is_principal(Element const& a) const;

    /* Units u of A/p^k0 with u principal, as lifts with entries in [0, p^k0). */
    std::vector<Element> principal_unit_representatives() const;

  private:
    std::int64_t d_;
    std::uint64_t p_;
    LocalType type_;
    Integer t_ = 0;
    Integer n_ = 0;
};

/* A value of log in the local algebra, known modulo p^N.
 * The value is comps[i] / p^shift, with comps reduced modulo p^(N + shift)
 * and shift minimal. */
struct LogValue
{
    LocalType type;
    std::uint64_t p;
    std::int64_t d;
    unsigned N;
    unsigned shift;
    std::vector<Integer> comps;

    static LogValue zero(LocalAlgebra const& A, unsigned N);

    LogValue operator+(LogValue const& o) const;
    LogValue operator-(LogValue const& o) const;
    LogValue operator-() const;
    /* multiplication by an integer */
    LogValue scaled(Integer const& m) const;
    /* division by a non-zero integer; loses v_p(m) digits of precision */
    LogValue divided(Integer const& m) const;
    LogValue truncated(unsigned N_new) const;

    bool is_zero() const;
    Valuation valuation() const;
    /* valuation of the sqrt(d) coordinate (the y in x + y sqrt(d)) */
    Valuation sqrt_d_valuation() const;

    /* equal modulo p^min(N) */
    bool operator==(LogValue const& o) const;

  private:
    void normalize();
};

/* (a + b sqrt(d)) / c; d = 1 denotes Q, where b must be 0. */
struct QuadNumber
{
    Integer a;
    Integer b;
    Integer c = 1;
};

/* Iwasawa logarithm: log(p) = 0 and roots of unity go to 0. Accurate modulo p^N. */
LogValue iwasawa_log(std::int64_t d, QuadNumber const& alpha, std::uint64_t p, unsigned N);

/* log of a unit of the local algebra (given exactly, or modulo a high enough
 * power of p for the split frame) */
LogValue log_local_unit(LocalAlgebra const& A, LocalAlgebra::Element const& u, unsigned N);

struct PlaceTorsion
{
    LocalType type;
    std::uint64_t order; /* |mu_p(K_v)| */
};

/* One entry per place v | p of a quadratic field or Q. */
std::vector<PlaceTorsion> local_torsion(FieldDescriptor const& k, std::uint64_t p);

/* |mu_p(K)| for K quadratic or Q */
std::uint64_t global_torsion(FieldDescriptor const& k, std::uint64_t p);

/* square root of a modulo the odd prime p (a a non-zero square mod p) */
std::uint64_t sqrt_mod_prime(std::uint64_t a, std::uint64_t p);

} // namespace abcl
