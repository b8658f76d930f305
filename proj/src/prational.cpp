#include "abcl/prational.hpp"

#include <algorithm>
#include <utility>

#include "json.hpp"

#include "abcl/error.hpp"
#include "abcl/scan_kernels.hpp"

namespace abcl {

std::string to_string(Condition c)
{
    switch (c) {
    case Condition::holds:
        return "holds";
    case Condition::fails:
        return "fails";
    case Condition::not_applicable:
        return "n/a";
    case Condition::undetermined:
        return "undetermined";
    }
    return "?";
}

namespace {

std::uint64_t mu_quotient_order(FieldDescriptor const& k, std::uint64_t p)
{
    std::uint64_t local = 1;
    for (auto const& v : local_torsion(k, p))
        local *= v.order;
    return local / global_torsion(k, p);
}

void require_real_quadratic(std::int64_t d)
{
    if (d <= 1 || !is_squarefree(d))
        throw domain_error("d must be squarefree and > 1");
}

void require_imaginary_quadratic(std::int64_t d)
{
    if (d >= 0 || !is_squarefree(d))
        throw domain_error("d must be squarefree and < 0");
}

} // namespace

Condition condition_mu(FieldDescriptor const& k, std::uint64_t p)
{
    if (k.degree() > 2)
        return Condition::not_applicable;
    return mu_quotient_order(k, p) == 1 ? Condition::holds : Condition::fails;
}

FermatQuotientReport fermat_quotient_test(std::int64_t d, std::uint64_t p, unsigned N)
{
    require_real_quadratic(d);
    if (p == 2 || !is_prime(p))
        throw domain_error("fermat_quotient_test: p must be an odd prime");
    if (d % static_cast<std::int64_t>(p) == 0)
        throw domain_error("fermat_quotient_test: p is ramified");
    if (class_number(d) % p == 0)
        throw domain_error("fermat_quotient_test: p divides the class number");
    if (N < 2)
        throw domain_error("fermat_quotient_test: precision must be at least 2");

    auto const eps = fundamental_unit(d);
    Integer const m = pow_integer(p, N);
    Integer x = eps.a, y = eps.b;
    if (eps.denom == 2) {
        Integer const half = invmod(Integer(2), m);
        x = x * half % m;
        y = y * half % m;
    }
    int const kr = kronecker(d, static_cast<std::int64_t>(p));
    FermatQuotientReport r;
    r.d = d;
    r.p = p;
    r.N = N;
    r.splitting = kr == 1 ? LocalType::split : LocalType::inert;
    r.exponent = kr == 1 ? p - 1 : p + 1;

    PAdicQuadElement const e = PAdicQuadElement::make(x, y, d, p, N).pow(Integer(r.exponent));
    r.eta_x = e.x;
    r.eta_y = e.y;
    r.sign = mpz_fdiv_ui(e.x.get_mpz_t(), p) == 1 ? 1 : -1;
    if (r.sign < 0) {
        r.eta_x = (m - r.eta_x) % m;
        r.eta_y = (m - r.eta_y) % m;
    }
    if (r.eta_y == 0)
        r.y_valuation = {static_cast<int>(N), false};
    else
        r.y_valuation = {static_cast<int>(valuation(r.eta_y, p)), true};

    Integer const p2 = Integer(p) * p;
    if (r.y_valuation.value >= 2 && N >= 3)
        r.a = mpz_fdiv_ui(Integer(r.eta_y / p2).get_mpz_t(), p);
    if (r.y_valuation.value >= 2) {
        r.regulator = Condition::fails;
        if (r.a && *r.a != 0)
            r.tp_estimate = std::to_string(p);
        else
            r.tp_estimate = ">=" + p2.get_str();
    } else {
        r.regulator = Condition::holds;
        r.tp_estimate = "1";
    }
    return r;
}

namespace {

UnitData unit_data(std::int64_t d)
{
    auto const e = fundamental_unit(d);
    return {d, e.a, e.b, e.denom};
}

std::vector<std::uint32_t> scan_primes(std::uint64_t bound)
{
    if (bound < 3)
        throw domain_error("fermat_quotient_scan: bound must be at least 3");
    if (bound > 4000000000ULL)
        throw domain_error("fermat_quotient_scan: bound too large");
    return primes_up_to(bound);
}

std::vector<std::uint64_t> drop_class_number_divisors(std::vector<std::uint64_t> ps, std::uint64_t h)
{
    std::erase_if(ps, [h](std::uint64_t p) { return h % p == 0; });
    return ps;
}

} // namespace

std::vector<std::uint64_t> fermat_quotient_scan(std::int64_t d, std::uint64_t bound, int threads)
{
    require_real_quadratic(d);
    auto const primes = scan_primes(bound);
    return drop_class_number_divisors(fermat_failures_parallel(unit_data(d), primes, threads), class_number(d));
}

std::vector<std::uint64_t> fermat_quotient_scan_reference(std::int64_t d, std::uint64_t bound)
{
    require_real_quadratic(d);
    auto const primes = scan_primes(bound);
    return drop_class_number_divisors(fermat_failures_serial(unit_data(d), primes), class_number(d));
}

bool footnote3_classifier(std::int64_t D)
{
    if (D >= 0 || !is_fundamental_discriminant(D))
        throw domain_error("footnote3_classifier: negative fundamental discriminant required");
    std::int64_t const n = -(D % 4 == 0 ? D / 4 : D);
    if (n == 1 || n == 2)
        return true;
    auto const f = factor(static_cast<std::uint64_t>(n));
    if (f.size() == 1)
        return f[0].prime % 8 == 3 || f[0].prime % 8 == 5 || f[0].prime % 8 == 7;
    if (f.size() != 2)
        return false;
    std::uint64_t const a = f[0].prime % 8, b = f[1].prime % 8;
    if (f[0].prime == 2)
        return b == 3 || b == 5;
    return (a == 3 && b == 5) || (a == 5 && b == 3);
}

LogValue log_prime_ideal(std::int64_t d, PrimeIdeal const& ideal, unsigned m, std::uint64_t p, unsigned N)
{
    require_imaginary_quadratic(d);
    if (ideal.ell == p)
        throw domain_error("log_ideal: ideal not prime to p");
    std::int64_t const D = fundamental_discriminant(d);
    auto const w = principal_power_generator(D, ideal, m);
    unsigned const v = valuation(std::uint64_t{m}, p);
    return iwasawa_log(d, w.alpha(D), p, N + v).divided(Integer(m));
}

namespace {

Form ideal_form(std::int64_t D, PrimeIdeal const& I)
{
    Integer const L = I.ell;
    return reduce({L, I.b, (I.b * I.b - D) / (4 * L)});
}

} // namespace

LogValue log_ideal(std::int64_t d, std::vector<IdealFactor> const& factors, std::uint64_t p, unsigned N)
{
    require_imaginary_quadratic(d);
    std::int64_t const D = fundamental_discriminant(d);
    auto const G = class_group(D);
    LogValue sum = LogValue::zero(LocalAlgebra(d, p), N);
    for (auto const& f : factors) {
        auto const m = static_cast<unsigned>(G.order_of(ideal_form(D, f.ideal)));
        sum = sum + log_prime_ideal(d, f.ideal, m, p, N).scaled(Integer(f.exponent));
    }
    return sum.truncated(N);
}

namespace {

struct DiagInfo
{
    unsigned total = 0;
    unsigned max_single = 0;
};

DiagInfo diag_valuation(IntegerMatrix const& m, std::uint64_t p)
{
    DiagInfo out;
    for (auto const& x : smith_normal_form(m).diagonal) {
        if (x == 0)
            throw std::logic_error("log lattice is not of full rank");
        unsigned const v = valuation(x, p);
        out.total += v;
        out.max_single = std::max(out.max_single, v);
    }
    return out;
}

IntegerMatrix with_columns(IntegerMatrix const& base, std::vector<std::vector<Integer>> const& cols)
{
    IntegerMatrix m(base.rows(), base.cols() + cols.size());
    for (std::size_t i = 0; i < base.rows(); ++i) {
        for (std::size_t j = 0; j < base.cols(); ++j)
            m(i, j) = base(i, j);
        for (std::size_t j = 0; j < cols.size(); ++j)
            m(i, base.cols() + j) = cols[j][i];
    }
    return m;
}

/* Log(U^1) and some extra log values as integer columns, all scaled by p^S
 * and known modulo p^P, P = N + S. local carries p^t Log(U^1) plus p^P I. */
struct ScaledFrame
{
    unsigned S = 0;
    unsigned P = 0;
    std::vector<std::vector<Integer>> unit_cols;
    std::vector<std::vector<Integer>> extra_cols;
    unsigned k0 = 0;
    std::uint64_t p = 0;

    IntegerMatrix local(unsigned t = 0) const
    {
        Integer const lift = pow_integer(p, t);
        Integer const modP = pow_integer(p, P);
        IntegerMatrix base(2, 4);
        base(0, 0) = base(1, 1) = pow_integer(p, k0 + S) * lift;
        base(0, 2) = base(1, 3) = modP;
        std::vector<std::vector<Integer>> cols = unit_cols;
        for (auto& c : cols)
            for (auto& e : c)
                e *= lift;
        return with_columns(base, cols);
    }
};

ScaledFrame scaled_frame(LocalAlgebra const& A, unsigned N, std::vector<LogValue> const& extra)
{
    std::vector<LogValue> unit_logs;
    for (auto const& u : A.principal_unit_representatives())
        unit_logs.push_back(log_local_unit(A, u, N));

    ScaledFrame f;
    f.p = A.p();
    f.k0 = A.k0();
    for (auto const* v : {&std::as_const(unit_logs), &extra})
        for (auto const& x : *v)
            f.S = std::max(f.S, x.shift);
    f.P = N + f.S;
    Integer const modP = pow_integer(f.p, f.P);
    auto column = [&](LogValue const& x) {
        std::vector<Integer> c;
        for (auto const& e : x.comps) {
            Integer r = e * pow_integer(f.p, f.S - x.shift) % modP;
            if (r < 0)
                r += modP;
            c.push_back(r);
        }
        return c;
    };
    for (auto const& x : unit_logs)
        f.unit_cols.push_back(column(x));
    for (auto const& x : extra)
        f.extra_cols.push_back(column(x));
    return f;
}

} // namespace

LogLattice log_lattice(std::int64_t d, std::uint64_t p, unsigned N)
{
    require_imaginary_quadratic(d);
    std::int64_t const D = fundamental_discriminant(d);
    auto const G = class_group(D);
    LocalAlgebra const A(d, p);

    LogLattice L;
    L.p = p;
    L.N = N;
    L.class_p_order = G.sylow_order(p);
    L.generators = generating_prime_ideals(G, {p});
    std::vector<LogValue> ideal_logs;
    for (auto const& I : L.generators) {
        auto const m = static_cast<unsigned>(G.order_of(ideal_form(D, I)));
        ideal_logs.push_back(log_prime_ideal(d, I, m, p, N).truncated(N));
    }

    auto const f = scaled_frame(A, N, ideal_logs);
    L.scale = f.S;
    L.local = f.local();
    L.full = with_columns(L.local, f.extra_cols);
    auto const vl = diag_valuation(L.local, p);
    auto const vf = diag_valuation(L.full, p);
    L.quotient_order = pow_u64(p, vl.total - vf.total);
    L.certified = N > A.k0() && vl.max_single < f.P && vf.max_single < f.P;
    return L;
}

UnitLogContent unit_log_content(std::int64_t d, std::uint64_t p, unsigned N)
{
    require_real_quadratic(d);
    if (!is_prime(p))
        throw domain_error("unit_log_content: p must be prime");
    LocalAlgebra const A(d, p);
    auto const f = scaled_frame(A, N, {iwasawa_log(d, fundamental_unit(d).as_number(), p, N)});

    UnitLogContent c;
    c.p = p;
    c.N = N;
    c.t = 0;
    c.certified = N > A.k0();
    for (unsigned t = 1;; ++t) {
        auto const lat = f.local(t);
        auto const without = diag_valuation(lat, p);
        auto const with = diag_valuation(with_columns(lat, f.extra_cols), p);
        if (without.max_single >= f.P) {
            c.certified = false;
            break;
        }
        if (with.total != without.total)
            break;
        c.t = t;
    }
    return c;
}

Condition condition_class_test(std::int64_t d, std::uint64_t p, unsigned N)
{
    require_imaginary_quadratic(d);
    if (class_group(fundamental_discriminant(d)).sylow_order(p) == 1)
        return Condition::holds;
    auto const L = log_lattice(d, p, N);
    if (!L.certified)
        return Condition::undetermined;
    return L.quotient_order == L.class_p_order ? Condition::holds : Condition::fails;
}

std::string RationalityVerdict::to_json(std::string const& field) const
{
    nlohmann::ordered_json j;
    j["field"] = field;
    j["p"] = p;
    j["conditions"] = {{"mu", to_string(mu)}, {"class", to_string(class_condition)}, {"regulator", to_string(regulator)}};
    j["verdict"] = overall;
    j["tp_estimate"] = tp_estimate;
    j["precision"] = precision;
    j["assumed"] = {"leopoldt"};
    j["reason"] = reason;
    return j.dump();
}

RationalityVerdict rationality_verdict(FieldDescriptor const& k, std::uint64_t p, unsigned N)
{
    if (!is_prime(p))
        throw domain_error("rationality_verdict: p must be prime");
    RationalityVerdict r;
    r.p = p;
    r.precision = N;
    if (k.degree() > 2) {
        r.mu = r.class_condition = r.regulator = Condition::not_applicable;
        r.overall = "undetermined";
        r.tp_estimate = "unknown";
        r.reason = "only Q and quadratic fields are supported";
        return r;
    }
    r.mu = condition_mu(k, p);
    r.mu_quotient = mu_quotient_order(k, p);
    std::vector<std::string> reasons;

    if (k.is_rational()) {
        r.class_condition = Condition::holds;
        r.regulator = Condition::holds;
        r.tp_order = 1;
    } else {
        std::int64_t const d = *k.quadratic_radicand();
        std::uint64_t const h = class_number(d);
        if (h % p != 0)
            r.class_condition = Condition::holds;
        else if (d < 0)
            r.class_condition = condition_class_test(d, p, N);
        else {
            r.class_condition = Condition::undetermined;
            reasons.push_back("p divides the class number of a real field");
        }
        if (r.class_condition == Condition::undetermined && d < 0)
            reasons.push_back("class lattice not certified at this precision");

        if (d < 0) {
            r.regulator = Condition::holds;
            if (h % p != 0)
                r.tp_order = r.mu_quotient;
        } else if (h % p == 0) {
            r.regulator = Condition::undetermined;
            reasons.push_back("p divides the class number");
        } else {
            r.unit = unit_log_content(d, p, N);
            if (p != 2 && d % static_cast<std::int64_t>(p) != 0)
                r.fermat = fermat_quotient_test(d, p, std::max(N, 3u));
            if (r.unit->certified) {
                r.regulator = r.unit->t == 0 ? Condition::holds : Condition::fails;
                r.tp_order = r.mu_quotient * pow_u64(p, r.unit->t);
            } else if (r.fermat) {
                r.regulator = r.fermat->regulator;
            } else {
                r.regulator = Condition::undetermined;
                reasons.push_back("unit log not certified at this precision");
            }
        }
    }

    std::vector<Condition> const cs{r.mu, r.class_condition, r.regulator};
    auto const n_fail = std::count(cs.begin(), cs.end(), Condition::fails);
    if (n_fail > 0) {
        r.overall = "not p-rational";
        if (r.tp_order)
            r.tp_estimate = std::to_string(*r.tp_order);
        else if (n_fail == 1 && r.regulator == Condition::fails && r.fermat)
            r.tp_estimate = r.fermat->tp_estimate;
        else if (n_fail == 1 && r.mu == Condition::fails)
            r.tp_estimate = ">=" + std::to_string(r.mu_quotient);
        else
            r.tp_estimate = ">=" + std::to_string(p);
    } else if (std::all_of(cs.begin(), cs.end(), [](Condition c) { return c == Condition::holds; })) {
        r.overall = "p-rational";
        r.tp_estimate = "1";
    } else {
        r.overall = "undetermined";
        r.tp_estimate = "unknown";
    }
    for (std::size_t i = 0; i < reasons.size(); ++i)
        r.reason += (i ? "; " : "") + reasons[i];
    return r;
}

} // namespace abcl
