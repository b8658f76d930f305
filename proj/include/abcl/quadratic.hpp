#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "abcl/numtheory.hpp"
#include "abcl/padic.hpp"

namespace abcl {

/* eps = (a + b sqrt(d)) / denom > 1 */
struct FundamentalUnit
{
    std::int64_t d;
    Integer a;
    Integer b;
    unsigned denom; /* 1 or 2 */
    int norm;       /* +1 or -1 */

    QuadNumber as_number() const { return {a, b, Integer(denom)}; }
};

FundamentalUnit fundamental_unit(std::int64_t d);

/* a x^2 + b x y + c y^2 */
struct Form
{
    Integer a;
    Integer b;
    Integer c;

    bool operator==(Form const&) const = default;
    auto operator<=>(Form const& o) const
    {
        if (auto r = cmp(a, o.a); r != 0)
            return r <=> 0;
        if (auto r = cmp(b, o.b); r != 0)
            return r <=> 0;
        return cmp(c, o.c) <=> 0;
    }
    Integer discriminant() const { return b * b - 4 * a * c; }
};

/* Positive definite reduction: |b| <= a <= c, and b >= 0 when |b| = a or a = c. */
Form reduce(Form f);
/* Composition of primitive positive definite forms of the same discriminant (unreduced). */
Form compose_unreduced(Form const& f, Form const& g);
Form compose(Form const& f, Form const& g);
Form inverse(Form const& f);

/* The form (ell, b, c) of a prime ideal above ell: b^2 = D mod 4 ell, 0 <= b <= ell. */
Form prime_form(std::int64_t D, std::uint64_t ell);

class FormClassGroup
{
  public:
    explicit FormClassGroup(std::int64_t D);

    std::int64_t discriminant() const { return D_; }
    std::uint64_t order() const { return forms_.size(); }
    std::vector<Form> const& forms() const { return forms_; }
    Form identity() const;
    Form power(Form const& f, std::uint64_t n) const;
    std::uint64_t order_of(Form const& f) const;
    std::size_t index_of(Form const& f) const; /* f reduced */

    /* p-Sylow subgroup as a list of cyclic factor orders, descending */
    std::vector<std::uint64_t> sylow(std::uint64_t p) const;
    std::uint64_t sylow_order(std::uint64_t p) const;

  private:
    std::int64_t D_;
    std::vector<Form> forms_;
    std::map<Form, std::size_t> index_;
};

FormClassGroup class_group(std::int64_t D);

/* Prime ideal of an imaginary quadratic order: (ell, (-b + sqrt D) / 2). */
struct PrimeIdeal
{
    std::uint64_t ell;
    Integer b;
};

PrimeIdeal prime_ideal(std::int64_t D, std::uint64_t ell);

struct IdealClassWitness
{
    PrimeIdeal ideal;
    unsigned m;
    /* alpha = (x + y sqrt D) / 2, N(alpha) = ell^m, (alpha) = ideal^m */
    Integer x;
    Integer y;

    QuadNumber alpha(std::int64_t D) const;
};

/* Generator of ideal^m for ell split or ramified in Q(sqrt D), D < 0. Throws
 * domain_error when ideal^m is not principal. */
IdealClassWitness principal_power_generator(std::int64_t D, PrimeIdeal const& ideal, unsigned m);
IdealClassWitness principal_power_generator(std::int64_t D, std::uint64_t ell, unsigned m);

/* Primes ell not in avoid, increasing, whose classes generate the class group. */
std::vector<PrimeIdeal> generating_prime_ideals(FormClassGroup const& g, std::vector<std::uint64_t> const& avoid);

/* Narrow class number of the real quadratic field of fundamental discriminant D > 0,
 * as the number of cycles of reduced indefinite forms. */
std::uint64_t narrow_class_number(std::int64_t D);

/* Class number of Q(sqrt d), d squarefree. */
std::uint64_t class_number(std::int64_t d);

} // namespace abcl
