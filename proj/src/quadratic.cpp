#include "abcl/quadratic.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>

#include "abcl/error.hpp"

namespace abcl {

namespace {

Integer floor_div(Integer const& a, Integer const& b)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer pmod(Integer const& a, Integer const& m)
{
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

bool divides(Integer const& d, Integer const& n)
{
    return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

} // namespace

FundamentalUnit fundamental_unit(std::int64_t d)
{
    if (d <= 1 || !is_squarefree(d))
        throw domain_error("fundamental_unit: d must be squarefree and > 1");
    bool const half = d % 4 == 1;
    auto const s = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(d)));
    /* continued fraction of (P + sqrt d) / Q, starting at sqrt d or (1 + sqrt d) / 2 */
    std::int64_t P = half ? 1 : 0, Q = half ? 2 : 1;
    std::int64_t const Q0 = Q;
    Integer p1 = 1, p2 = 0, q1 = 0, q2 = 1;
    for (;;) {
        std::int64_t const a = (P + s) / Q;
        Integer const p = a * p1 + p2;
        Integer const q = a * q1 + q2;
        p2 = p1;
        p1 = p;
        q2 = q1;
        q1 = q;
        P = a * Q - P;
        Q = (d - P * P) / Q;
        if (Q != Q0)
            continue;
        /* candidate p - q * conj(omega) */
        FundamentalUnit u{d, p, q, 1, 0};
        if (half) {
            u.a = 2 * p - q;
            u.denom = 2;
        }
        Integer const den2 = u.denom * u.denom;
        Integer const norm = u.a * u.a - Integer(d) * u.b * u.b;
        if (norm != den2 && norm != -den2)
            continue;
        u.norm = norm > 0 ? 1 : -1;
        if (u.denom == 2 && mpz_even_p(u.a.get_mpz_t()) && mpz_even_p(u.b.get_mpz_t())) {
            u.a /= 2;
            u.b /= 2;
            u.denom = 1;
        }
        return u;
    }
}

Form reduce(Form f)
{
    Integer const D = f.discriminant();
    if (D >= 0 || f.a <= 0)
        throw domain_error("reduce: positive definite form required");
    for (;;) {
        if (!(-f.a < f.b && f.b <= f.a)) {
            Integer const r = floor_div(f.a - f.b, 2 * f.a);
            f.b += 2 * f.a * r;
            f.c = (f.b * f.b - D) / (4 * f.a);
        }
        if (f.a > f.c) {
            std::swap(f.a, f.c);
            f.b = -f.b;
            continue;
        }
        break;
    }
    if (f.a == f.c && f.b < 0)
        f.b = -f.b;
    return f;
}

Form compose_unreduced(Form const& f, Form const& g)
{
    Form const& f1 = f.a <= g.a ? f : g;
    Form const& f2 = f.a <= g.a ? g : f;
    Integer const D = f1.discriminant();
    if (D != f2.discriminant())
        throw domain_error("compose: discriminants differ");
    Integer const s = (f1.b + f2.b) / 2;
    Integer const n = f2.b - s;
    Integer y1, d;
    if (divides(f1.a, f2.a)) {
        y1 = 0;
        d = f1.a;
    } else {
        Integer v;
        mpz_gcdext(d.get_mpz_t(), y1.get_mpz_t(), v.get_mpz_t(), f2.a.get_mpz_t(), f1.a.get_mpz_t());
    }
    Integer x2, y2, d1;
    if (divides(d, s)) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        mpz_gcdext(d1.get_mpz_t(), x2.get_mpz_t(), y2.get_mpz_t(), s.get_mpz_t(), d.get_mpz_t());
        y2 = -y2;
    }
    Integer const v1 = f1.a / d1;
    Integer const v2 = f2.a / d1;
    Integer const r = pmod(y1 * y2 * n - x2 * f2.c, v1);
    Form h;
    h.b = f2.b + 2 * v2 * r;
    h.a = v1 * v2;
    h.c = (h.b * h.b - D) / (4 * h.a);
    return h;
}

Form compose(Form const& f, Form const& g)
{
    return reduce(compose_unreduced(f, g));
}

Form inverse(Form const& f)
{
    return reduce({f.a, -f.b, f.c});
}

Form prime_form(std::int64_t D, std::uint64_t ell)
{
    auto const I = prime_ideal(D, ell);
    Integer const L = ell;
    return {L, I.b, (I.b * I.b - D) / (4 * L)};
}

PrimeIdeal prime_ideal(std::int64_t D, std::uint64_t ell)
{
    if (!is_prime(ell))
        throw domain_error("prime_ideal: ell must be prime");
    if (kronecker(D, static_cast<std::int64_t>(ell)) == -1)
        throw domain_error("prime_ideal: ell is inert");
    std::int64_t const parity = D & 1;
    if (ell == 2) {
        std::int64_t const r = ((D % 8) + 8) % 8;
        return {2, Integer(r == 1 ? 1 : r == 0 ? 0 : 2)};
    }
    auto const L = static_cast<std::int64_t>(ell);
    std::uint64_t b = sqrt_mod_prime(static_cast<std::uint64_t>(((D % L) + L) % L), ell);
    if (static_cast<std::int64_t>(b & 1) != parity)
        b = ell - b;
    return {ell, Integer(b)};
}

FormClassGroup::FormClassGroup(std::int64_t D) : D_(D)
{
    if (D >= 0 || !is_fundamental_discriminant(D))
        throw domain_error("class_group: negative fundamental discriminant required");
    for (std::int64_t a = 1; 3 * a * a <= -D; ++a)
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            if (((b - D) & 1) != 0)
                continue;
            std::int64_t const num = b * b - D;
            if (num % (4 * a) != 0)
                continue;
            std::int64_t const c = num / (4 * a);
            if (c < a || (b < 0 && a == c))
                continue;
            forms_.push_back({a, b, c});
        }
    std::sort(forms_.begin(), forms_.end());
    for (std::size_t i = 0; i < forms_.size(); ++i)
        index_[forms_[i]] = i;
}

Form FormClassGroup::identity() const
{
    return forms_.front();
}

Form FormClassGroup::power(Form const& f, std::uint64_t n) const
{
    Form r = identity();
    Form b = reduce(f);
    while (n) {
        if (n & 1)
            r = compose(r, b);
        n >>= 1;
        if (n)
            b = compose(b, b);
    }
    return r;
}

std::uint64_t FormClassGroup::order_of(Form const& f) const
{
    std::uint64_t o = order();
    Form const id = identity();
    for (auto const& pp : factor(order()))
        while (o % pp.prime == 0 && power(f, o / pp.prime) == id)
            o /= pp.prime;
    return o;
}

std::size_t FormClassGroup::index_of(Form const& f) const
{
    auto const it = index_.find(f);
    if (it == index_.end())
        throw domain_error("index_of: not a reduced form of this discriminant");
    return it->second;
}

std::uint64_t FormClassGroup::sylow_order(std::uint64_t p) const
{
    return pow_u64(p, valuation(order(), p));
}

std::vector<std::uint64_t> FormClassGroup::sylow(std::uint64_t p) const
{
    unsigned const e = valuation(order(), p);
    if (e == 0)
        return {};
    /* |G[p^k]| for k = 0..e */
    std::vector<std::uint64_t> torsion(e + 1, 0);
    for (auto const& f : forms_) {
        std::uint64_t const o = order_of(f);
        std::uint64_t const po = pow_u64(p, valuation(o, p));
        if (po != o)
            continue;
        unsigned const k = valuation(o, p);
        for (unsigned j = k; j <= e; ++j)
            ++torsion[j];
    }
    /* r_k = number of cyclic factors of order >= p^k */
    std::vector<unsigned> r(e + 2, 0);
    for (unsigned k = 1; k <= e; ++k)
        r[k] = ilog(torsion[k], p) - ilog(torsion[k - 1], p);
    std::vector<std::uint64_t> out;
    for (unsigned k = e; k >= 1; --k)
        for (unsigned i = 0; i < r[k] - r[k + 1]; ++i)
            out.push_back(pow_u64(p, k));
    return out;
}

FormClassGroup class_group(std::int64_t D)
{
    return FormClassGroup(D);
}

QuadNumber IdealClassWitness::alpha(std::int64_t D) const
{
    if (D % 4 == 0)
        return {x, 2 * y, 2};
    return {x, y, 2};
}

namespace {

/* B with B^2 = D mod 4 ell^m and B = b mod 2 ell */
Integer lift_root(std::int64_t D, PrimeIdeal const& I, unsigned m)
{
    Integer const DD = D;
    if (I.ell == 2) {
        Integer B = I.b;
        for (unsigned k = 4; k <= m + 2; ++k)
            if (!divides(pow_integer(2, k), B * B - DD))
                B += pow_integer(2, k - 2);
        return B;
    }
    Integer r = I.b;
    for (unsigned prec = 1; prec < m;) {
        prec = std::min(2 * prec, m);
        Integer const M = pow_integer(I.ell, prec);
        r = pmod(r - (r * r - DD) * invmod(pmod(2 * r, M), M), M);
    }
    Integer const lm = pow_integer(I.ell, m);
    r = pmod(r, lm);
    if (mpz_odd_p(r.get_mpz_t()) != (D & 1))
        r += lm;
    return r;
}

/* Reduce (a, B, c) tracking the substitution; if it lands on the principal form,
 * the first column (u, v) gives u a - v (-B + sqrt D) / 2 of norm a. */
bool principal_vector(Form f, Integer& u, Integer& v)
{
    Integer const D = f.discriminant();
    Integer m00 = 1, m01 = 0, m10 = 0, m11 = 1;
    auto swap_step = [&] {
        std::swap(f.a, f.c);
        f.b = -f.b;
        Integer const t0 = m00, t1 = m10;
        m00 = m01;
        m10 = m11;
        m01 = -t0;
        m11 = -t1;
    };
    for (;;) {
        if (!(-f.a < f.b && f.b <= f.a)) {
            Integer const r = floor_div(f.a - f.b, 2 * f.a);
            f.b += 2 * f.a * r;
            f.c = (f.b * f.b - D) / (4 * f.a);
            m01 += r * m00;
            m11 += r * m10;
        }
        if (f.a > f.c) {
            swap_step();
            continue;
        }
        break;
    }
    u = m00;
    v = m10;
    return f.a == 1;
}

} // namespace

IdealClassWitness principal_power_generator(std::int64_t D, PrimeIdeal const& ideal, unsigned m)
{
    if (D >= 0)
        throw domain_error("principal_power_generator: imaginary quadratic discriminant required");
    if (m == 0)
        throw domain_error("principal_power_generator: m must be positive");
    std::uint64_t const ell = ideal.ell;
    int const kr = kronecker(D, static_cast<std::int64_t>(ell));
    if (kr == -1)
        throw domain_error("principal_power_generator: ell is inert");
    IdealClassWitness w{ideal, m, 0, 0};

    Integer scale = 1, a, B;
    if (kr == 0) {
        /* the square of a ramified prime is (ell) */
        scale = pow_integer(ell, m / 2);
        if (m % 2 == 0) {
            w.x = 2 * scale;
            return w;
        }
        a = ell;
        B = ideal.b;
    } else {
        a = pow_integer(ell, m);
        B = lift_root(D, ideal, m);
    }
    Integer u, v;
    if (!principal_vector({a, B, (B * B - D) / (4 * a)}, u, v))
        throw domain_error("principal_power_generator: ideal power is not principal");
    w.x = (2 * u * a + v * B) * scale;
    w.y = -v * scale;
    if (w.y < 0 || (w.y == 0 && w.x < 0)) {
        w.x = -w.x;
        w.y = -w.y;
    }
    return w;
}

IdealClassWitness principal_power_generator(std::int64_t D, std::uint64_t ell, unsigned m)
{
    return principal_power_generator(D, prime_ideal(D, ell), m);
}

std::vector<PrimeIdeal> generating_prime_ideals(FormClassGroup const& g, std::vector<std::uint64_t> const& avoid)
{
    std::vector<PrimeIdeal> out;
    std::set<std::size_t> sub{g.index_of(g.identity())};
    std::int64_t const D = g.discriminant();
    for (std::uint64_t ell = 2; sub.size() < g.order(); ++ell) {
        if (ell > 10000000)
            throw std::logic_error("generating_prime_ideals: no generating set found");
        if (!is_prime(ell) || std::find(avoid.begin(), avoid.end(), ell) != avoid.end())
            continue;
        if (kronecker(D, static_cast<std::int64_t>(ell)) == -1)
            continue;
        Form const f = reduce(prime_form(D, ell));
        if (sub.count(g.index_of(f)))
            continue;
        out.push_back(prime_ideal(D, ell));
        std::vector<std::size_t> const base(sub.begin(), sub.end());
        for (Form power = f; power != g.identity(); power = compose(power, f))
            for (std::size_t i : base)
                sub.insert(g.index_of(compose(g.forms()[i], power)));
    }
    return out;
}

std::uint64_t narrow_class_number(std::int64_t D)
{
    if (D <= 0 || !is_fundamental_discriminant(D))
        throw domain_error("narrow_class_number: positive fundamental discriminant required");
    auto const s = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(D)));
    using Triple = std::array<std::int64_t, 3>;
    std::set<Triple> reduced;
    auto is_reduced = [&](std::int64_t a, std::int64_t b) {
        std::int64_t const A = a < 0 ? -a : a;
        return b >= 1 && b <= s && 2 * A + b >= s + 1 && 2 * A - b <= s;
    };
    for (std::int64_t b = 1; b <= s; ++b) {
        if (((b - D) & 1) != 0)
            continue;
        std::int64_t const ac = (b * b - D) / 4; /* negative */
        std::int64_t const n = -ac;
        for (std::int64_t a = 1; a <= n; ++a) {
            if (n % a != 0)
                continue;
            for (std::int64_t sa : {a, -a})
                if (is_reduced(sa, b))
                    reduced.insert({sa, b, ac / sa});
        }
    }
    /* cycles under rho(a, b, c) = (c, b', .), b' = -b mod 2|c|, s - 2|c| < b' <= s */
    std::set<Triple> seen;
    std::uint64_t cycles = 0;
    for (auto const& start : reduced) {
        if (seen.count(start))
            continue;
        ++cycles;
        Triple f = start;
        while (!seen.count(f)) {
            seen.insert(f);
            std::int64_t const c = f[2];
            std::int64_t const C = 2 * (c < 0 ? -c : c);
            std::int64_t bp = ((-f[1]) % C + C) % C;
            std::int64_t const lo = s - C + 1;
            bp += ((lo - bp + C - 1) / C) * C;
            if (bp < lo)
                bp += C;
            f = {c, bp, (bp * bp - D) / (4 * c)};
        }
    }
    return cycles;
}

std::uint64_t class_number(std::int64_t d)
{
    std::int64_t const D = fundamental_discriminant(d);
    if (D < 0)
        return class_group(D).order();
    std::uint64_t const hplus = narrow_class_number(D);
    return fundamental_unit(d).norm == -1 ? hplus : hplus / 2;
}

} // namespace abcl
