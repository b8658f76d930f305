#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "abcl/abelian_field.hpp"
#include "abcl/padic.hpp"
#include "abcl/quadratic.hpp"
#include "abcl/smith.hpp"

namespace abcl {

enum class Condition
{
    holds,
    fails,
    not_applicable,
    undetermined,
};

std::string to_string(Condition c);

/* prod_{v|p} mu_p(K_v) = mu_p(K), for K quadratic or Q */
Condition condition_mu(FieldDescriptor const& k, std::uint64_t p);

struct FermatQuotientReport
{
    std::int64_t d;
    std::uint64_t p;
    LocalType splitting;
    std::uint64_t exponent; /* p - 1 split, p + 1 inert */
    int sign;               /* eta = sign * eps^exponent = 1 mod p */
    unsigned N;
    Integer eta_x; /* eta = eta_x + eta_y sqrt(d) mod p^N */
    Integer eta_y;
    Valuation y_valuation;
    std::optional<std::uint64_t> a; /* eta_y / p^2 mod p, when readable */
    Condition regulator;
    std::string tp_estimate; /* "1", "p" or ">=p^2" as numbers */
};

/* Throws domain_error when p = 2, p | d or p | h. */
FermatQuotientReport fermat_quotient_test(std::int64_t d, std::uint64_t p, unsigned N = 3);

/* Odd p <= bound, p not dividing d h, where the regulator condition fails. Ascending. */
std::vector<std::uint64_t> fermat_quotient_scan(std::int64_t d, std::uint64_t bound, int threads = 0);
std::vector<std::uint64_t> fermat_quotient_scan_reference(std::int64_t d, std::uint64_t bound);

/* Q(sqrt D) is on the list of imaginary quadratic fields whose 2-class field
 * lies in the compositum of their Z_2-extensions. */
bool footnote3_classifier(std::int64_t D);

struct IdealFactor
{
    PrimeIdeal ideal;
    int exponent;
};

/* Log of a product of prime ideals prime to p, in the local frame at p.
 * K = Q(sqrt d), d < 0. */
LogValue log_ideal(std::int64_t d, std::vector<IdealFactor> const& factors, std::uint64_t p, unsigned N);
/* (1/m) log(alpha) with (alpha) = ideal^m for the given m */
LogValue log_prime_ideal(std::int64_t d, PrimeIdeal const& ideal, unsigned m, std::uint64_t p, unsigned N);

struct LogLattice
{
    std::uint64_t p;
    unsigned N;
    unsigned scale;          /* every column is p^scale times a log value */
    IntegerMatrix local;     /* prod log(U_v^1) plus p^(N + scale) I */
    IntegerMatrix full;      /* local plus the Log of class generators */
    std::vector<PrimeIdeal> generators;
    std::uint64_t class_p_order; /* |Cl_p| */
    std::uint64_t quotient_order;
    bool certified;
};

LogLattice log_lattice(std::int64_t d, std::uint64_t p, unsigned N);
Condition condition_class_test(std::int64_t d, std::uint64_t p, unsigned N);

/* K = Q(sqrt d) real: largest t with Log(eps) in p^t Log(U^1). With p not
 * dividing h, |T_p| = |prod mu^1_v / mu_p(K)| p^t. */
struct UnitLogContent
{
    std::uint64_t p;
    unsigned N;
    unsigned t;
    bool certified;
};

UnitLogContent unit_log_content(std::int64_t d, std::uint64_t p, unsigned N);

struct RationalityVerdict
{
    std::uint64_t p;
    unsigned precision;
    Condition mu;
    Condition class_condition;
    Condition regulator;
    std::string overall; /* "p-rational", "not p-rational", "undetermined" */
    std::string tp_estimate;
    std::string reason;
    /* |prod mu^1_v / mu_p(K)| */
    std::uint64_t mu_quotient = 1;
    std::optional<FermatQuotientReport> fermat;
    std::optional<UnitLogContent> unit;
    /* |T_p| when determined exactly */
    std::optional<std::uint64_t> tp_order;

    std::string to_json(std::string const& field) const;
};

inline constexpr unsigned default_precision = 12;

RationalityVerdict rationality_verdict(FieldDescriptor const& k, std::uint64_t p, unsigned N = default_precision);

} // namespace abcl
