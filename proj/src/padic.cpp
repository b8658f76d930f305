#include "abcl/padic.hpp"

#include <algorithm>
#include <stdexcept>

#include "abcl/error.hpp"

namespace abcl {

namespace {

Integer mod(Integer const& x, Integer const& m)
{
    Integer r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

/* valuation of x, or cap when x = 0 */
unsigned val_or(Integer const& x, std::uint64_t p, unsigned cap)
{
    return x == 0 ? cap : valuation(x, p);
}

Integer exact_div(Integer const& x, Integer const& y)
{
    Integer q;
    mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return q;
}

using Element = LocalAlgebra::Element;

/* Z_p (scalar) or Z_p[w] with w^2 = t w + n */
struct Ring
{
    bool scalar;
    Integer t;
    Integer n;

    Element mul(Element const& a, Element const& b, Integer const& m) const
    {
        if (scalar)
            return {mod(a.c0 * b.c0, m), 0};
        Integer const bb = a.c1 * b.c1;
        return {mod(a.c0 * b.c0 + n * bb, m), mod(a.c0 * b.c1 + a.c1 * b.c0 + t * bb, m)};
    }

    Element pow(Element base, Integer e, Integer const& m) const
    {
        Element r{1, 0};
        base = {mod(base.c0, m), mod(base.c1, m)};
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t()))
                r = mul(r, base, m);
            e >>= 1;
            if (e > 0)
                base = mul(base, base, m);
        }
        return {mod(r.c0, m), mod(r.c1, m)};
    }
};

/* sum_{j<K} (-1)^(j+1) z^j / j modulo p^Nl, for z = 0 mod p^vmin componentwise */
Element log_series(Ring const& R, Element const& z, std::uint64_t p, unsigned Nl, unsigned vmin)
{
    unsigned K = 1;
    while (K * vmin < Nl + ilog(K, p))
        ++K;
    unsigned const M = Nl + ilog(K, p);
    Integer const pM = pow_integer(p, M);
    Integer const pN = pow_integer(p, Nl);
    Element const zz{mod(z.c0, pM), mod(z.c1, pM)};
    Element power = zz;
    Element sum{0, 0};
    for (unsigned j = 1; j < K; ++j) {
        if (j > 1)
            power = R.mul(power, zz, pM);
        unsigned const vj = valuation(std::uint64_t{j}, p);
        Integer const pv = pow_integer(p, vj);
        Integer const inv = invmod(Integer(j) / pv, pM);
        Integer t0 = exact_div(power.c0, pv) * inv;
        Integer t1 = exact_div(power.c1, pv) * inv;
        if (j % 2 == 0) {
            t0 = -t0;
            t1 = -t1;
        }
        sum.c0 += t0;
        sum.c1 += t1;
    }
    return {mod(sum.c0, pN), mod(sum.c1, pN)};
}

bool is_one_mod(Element const& u, bool scalar, Integer const& m)
{
    if (mod(u.c0 - 1, m) != 0)
        return false;
    return scalar || mod(u.c1, m) == 0;
}

/* log of a unit u of R (residue field size q): kill the residue torsion by
 * u^(q-1), push into 1 + p^k0 by p-th powers, sum the series, divide back. */
LogValue unit_log_core(Ring const& R, LocalType type, std::int64_t d, Element const& u, std::uint64_t p,
                       std::uint64_t q, unsigned N)
{
    unsigned const k0 = p == 2 ? 2 : 1;
    Integer const pk0 = pow_integer(p, k0);
    Element beta = R.pow(u, Integer(q - 1), pk0);
    unsigned s = 0;
    while (!is_one_mod(beta, R.scalar, pk0)) {
        beta = R.pow(beta, Integer(p), pk0);
        if (++s > 16)
            throw std::logic_error("unit_log_core: element is not a unit");
    }
    unsigned const Nl = N + s;
    unsigned K = 1;
    while (K * k0 < Nl + ilog(K, p))
        ++K;
    Integer const pM = pow_integer(p, Nl + ilog(K, p));
    Integer const e = Integer(q - 1) * pow_integer(p, s);
    beta = R.pow(u, e, pM);
    Element const z{beta.c0 - 1, beta.c1};
    Element const L = log_series(R, z, p, Nl, k0);

    LogValue out{type, p, d, Nl, 0, {L.c0}};
    if (!R.scalar)
        out.comps.push_back(L.c1);
    return out.divided(e);
}

} // namespace

PAdicInt PAdicInt::make(Integer const& v, std::uint64_t p, unsigned N)
{
    return {p, N, mod(v, pow_integer(p, N))};
}

Valuation PAdicInt::valuation() const
{
    if (value == 0)
        return {static_cast<int>(N), false};
    return {static_cast<int>(abcl::valuation(value, p)), true};
}

PAdicInt PAdicInt::operator+(PAdicInt const& o) const
{
    return make(value + o.value, p, std::min(N, o.N));
}

PAdicInt PAdicInt::operator-(PAdicInt const& o) const
{
    return make(value - o.value, p, std::min(N, o.N));
}

PAdicInt PAdicInt::operator*(PAdicInt const& o) const
{
    return make(value * o.value, p, std::min(N, o.N));
}

PAdicQuadElement PAdicQuadElement::make(Integer const& x, Integer const& y, std::int64_t d, std::uint64_t p,
                                        unsigned N)
{
    Integer const m = pow_integer(p, N);
    return {p, N, d, mod(x, m), mod(y, m)};
}

PAdicQuadElement PAdicQuadElement::one(std::int64_t d, std::uint64_t p, unsigned N)
{
    return make(1, 0, d, p, N);
}

Valuation PAdicQuadElement::valuation() const
{
    if (x == 0 && y == 0)
        return {static_cast<int>(N), false};
    return {static_cast<int>(std::min(val_or(x, p, N), val_or(y, p, N))), true};
}

PAdicQuadElement PAdicQuadElement::operator+(PAdicQuadElement const& o) const
{
    return make(x + o.x, y + o.y, d, p, std::min(N, o.N));
}

PAdicQuadElement PAdicQuadElement::operator-(PAdicQuadElement const& o) const
{
    return make(x - o.x, y - o.y, d, p, std::min(N, o.N));
}

PAdicQuadElement PAdicQuadElement::operator-() const
{
    return make(-x, -y, d, p, N);
}

PAdicQuadElement PAdicQuadElement::operator*(PAdicQuadElement const& o) const
{
    if (d != o.d || p != o.p)
        throw domain_error("PAdicQuadElement: operands from different algebras");
    return make(x * o.x + d * (y * o.y), x * o.y + y * o.x, d, p, std::min(N, o.N));
}

PAdicQuadElement PAdicQuadElement::pow(Integer const& e) const
{
    Ring const R{false, 0, Integer(d)};
    auto const r = R.pow({x, y}, e, modulus());
    return {p, N, d, r.c0, r.c1};
}

PAdicInt log1p(PAdicInt const& u)
{
    unsigned const k0 = u.p == 2 ? 2 : 1;
    if (mod(u.value - 1, pow_integer(u.p, std::min(k0, u.N))) != 0)
        throw domain_error("log1p: argument is not a principal unit");
    Ring const R{true, 0, 0};
    auto const L = log_series(R, {u.value - 1, 0}, u.p, u.N, k0);
    return {u.p, u.N, L.c0};
}

PAdicQuadElement log1p(PAdicQuadElement const& u)
{
    unsigned const k0 = u.p == 2 ? 2 : 1;
    Integer const m = pow_integer(u.p, std::min(k0, u.N));
    if (mod(u.x - 1, m) != 0 || mod(u.y, m) != 0)
        throw domain_error("log1p: argument is not a principal unit");
    Ring const R{false, 0, Integer(u.d)};
    auto const L = log_series(R, {u.x - 1, u.y}, u.p, u.N, k0);
    return {u.p, u.N, u.d, L.c0, L.c1};
}

std::string to_string(LocalType t)
{
    switch (t) {
    case LocalType::rational:
        return "rational";
    case LocalType::split:
        return "split";
    case LocalType::inert:
        return "inert";
    case LocalType::ramified:
        return "ramified";
    }
    return "?";
}

std::uint64_t sqrt_mod_prime(std::uint64_t a, std::uint64_t p)
{
    a %= p;
    if (p == 2 || a == 0)
        return a;
    if (powmod(a, (p - 1) / 2, p) != 1)
        throw domain_error("sqrt_mod_prime: not a square");
    /* Tonelli-Shanks */
    std::uint64_t q = p - 1;
    unsigned s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    std::uint64_t z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1)
        ++z;
    std::uint64_t c = powmod(z, q, p);
    std::uint64_t r = powmod(a, (q + 1) / 2, p);
    std::uint64_t t = powmod(a, q, p);
    unsigned m = s;
    while (t != 1) {
        unsigned i = 0;
        for (std::uint64_t tt = t; tt != 1; tt = mulmod(tt, tt, p))
            ++i;
        std::uint64_t b = c;
        for (unsigned j = 0; j + i + 1 < m; ++j)
            b = mulmod(b, b, p);
        r = mulmod(r, b, p);
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        m = i;
    }
    return std::min(r, p - r);
}

LocalAlgebra::LocalAlgebra(std::int64_t d, std::uint64_t p) : d_(d), p_(p)
{
    if (!is_prime(p))
        throw domain_error("LocalAlgebra: p must be prime");
    if (d == 1) {
        type_ = LocalType::rational;
        return;
    }
    std::int64_t const D = fundamental_discriminant(d);
    int const k = kronecker(D, static_cast<std::int64_t>(p));
    type_ = k == 1 ? LocalType::split : k == -1 ? LocalType::inert : LocalType::ramified;
    if (type_ == LocalType::inert && p == 2) {
        t_ = 1;
        n_ = (d - 1) / 4;
    } else {
        n_ = d;
    }
}

Integer LocalAlgebra::sqrt_d(unsigned W) const
{
    if (type_ != LocalType::split)
        throw domain_error("sqrt_d: p is not split");
    Integer const pW = pow_integer(p_, W);
    Integer const dd = d_;
    if (p_ == 2) {
        /* d = 1 mod 8: extend a root mod 2^k to mod 2^(k+1) */
        Integer s = 1;
        for (unsigned k = 3; k <= W + 1; ++k) {
            Integer const m = pow_integer(2, k + 1);
            if (mod(s * s - dd, m) != 0)
                s += pow_integer(2, k - 1);
        }
        return mod(s, pW);
    }
    Integer const dp = mod(dd, Integer(p_));
    Integer s = sqrt_mod_prime(dp.get_ui(), p_);
    /* Newton: s <- s - (s^2 - d) / (2 s) */
    for (unsigned prec = 1; prec < W;) {
        prec = std::min(2 * prec, W);
        Integer const m = pow_integer(p_, prec);
        s = mod(s - (s * s - dd) * invmod(mod(2 * s, m), m), m);
    }
    return mod(s, pW);
}

Element LocalAlgebra::one() const
{
    return {1, type_ == LocalType::split ? 1 : 0};
}

Element LocalAlgebra::mul(Element const& a, Element const& b, Integer const& m) const
{
    if (type_ == LocalType::split)
        return {mod(a.c0 * b.c0, m), mod(a.c1 * b.c1, m)};
    if (type_ == LocalType::rational)
        return {mod(a.c0 * b.c0, m), 0};
    return Ring{false, t_, n_}.mul(a, b, m);
}

Element LocalAlgebra::pow(Element const& a, Integer const& e, Integer const& m) const
{
    if (type_ == LocalType::split) {
        Ring const R{true, 0, 0};
        return {R.pow({a.c0, 0}, e, m).c0, R.pow({a.c1, 0}, e, m).c0};
    }
    return Ring{type_ == LocalType::rational, t_, n_}.pow(a, e, m);
}

Element LocalAlgebra::embed(Integer const& a, Integer const& b, unsigned W) const
{
    Integer const m = pow_integer(p_, W);
    switch (type_) {
    case LocalType::rational:
        return {mod(a, m), 0};
    case LocalType::split: {
        Integer const s = sqrt_d(W);
        return {mod(a + b * s, m), mod(a - b * s, m)};
    }
    default:
        if (t_ == 0)
            return {mod(a, m), mod(b, m)};
        /* sqrt(d) = 2 w - 1 */
        return {mod(a - b, m), mod(2 * b, m)};
    }
}

bool LocalAlgebra::is_unit(Element const& a) const
{
    Integer const P = p_;
    switch (type_) {
    case LocalType::rational:
        return mod(a.c0, P) != 0;
    case LocalType::split:
        return mod(a.c0, P) != 0 && mod(a.c1, P) != 0;
    default:
        return mod(a.c0 * a.c0 + t_ * a.c0 * a.c1 - n_ * a.c1 * a.c1, P) != 0;
    }
}

bool LocalAlgebra::is_principal(Element const& a) const
{
    Integer const P = p_;
    if (type_ == LocalType::rational)
        return mod(a.c0 - 1, P) == 0;
    if (type_ == LocalType::split)
        return mod(a.c0 - 1, P) == 0 && mod(a.c1 - 1, P) == 0;
    Element const z{a.c0 - 1, a.c1};
    auto const zz = mul(z, z, P);
    return zz.c0 == 0 && zz.c1 == 0;
}

std::vector<Element> LocalAlgebra::principal_unit_representatives() const
{
    std::uint64_t const m = pow_u64(p_, k0());
    std::vector<Element> out;
    std::uint64_t const c1_range = type_ == LocalType::rational ? 1 : m;
    for (std::uint64_t c0 = 0; c0 < m; ++c0)
        for (std::uint64_t c1 = 0; c1 < c1_range; ++c1) {
            Element const e{c0, c1};
            if (is_principal(e))
                out.push_back(e);
        }
    return out;
}

void LogValue::normalize()
{
    Integer m = pow_integer(p, N + shift);
    for (auto& c : comps)
        c = mod(c, m);
    while (shift > 0 && std::all_of(comps.begin(), comps.end(), [&](Integer const& c) {
               return mpz_divisible_ui_p(c.get_mpz_t(), p) != 0;
           })) {
        for (auto& c : comps)
            c /= p;
        --shift;
    }
    m = pow_integer(p, N + shift);
    for (auto& c : comps)
        c = mod(c, m);
}

LogValue LogValue::zero(LocalAlgebra const& A, unsigned N)
{
    std::size_t const n = A.type() == LocalType::rational ? 1 : 2;
    return {A.type(), A.p(), A.d(), N, 0, std::vector<Integer>(n, 0)};
}

LogValue LogValue::operator+(LogValue const& o) const
{
    if (type != o.type || p != o.p || d != o.d || comps.size() != o.comps.size())
        throw domain_error("LogValue: operands live in different algebras");
    unsigned const S = std::max(shift, o.shift);
    LogValue r{type, p, d, std::min(N, o.N), S, comps};
    Integer const fa = pow_integer(p, S - shift);
    Integer const fb = pow_integer(p, S - o.shift);
    for (std::size_t i = 0; i < comps.size(); ++i)
        r.comps[i] = comps[i] * fa + o.comps[i] * fb;
    r.normalize();
    return r;
}

LogValue LogValue::operator-() const
{
    LogValue r = *this;
    for (auto& c : r.comps)
        c = -c;
    r.normalize();
    return r;
}

LogValue LogValue::operator-(LogValue const& o) const
{
    return *this + (-o);
}

LogValue LogValue::scaled(Integer const& m) const
{
    LogValue r = *this;
    for (auto& c : r.comps)
        c *= m;
    r.normalize();
    return r;
}

LogValue LogValue::divided(Integer const& m) const
{
    if (m == 0)
        throw domain_error("LogValue: division by zero");
    unsigned const v = abcl::valuation(m, p);
    if (v > N)
        throw precision_error("LogValue: division exhausts the available precision");
    Integer const unit = exact_div(m, pow_integer(p, v));
    Integer const mm = pow_integer(p, N + shift);
    Integer const inv = invmod(mod(unit, mm), mm);
    LogValue r = *this;
    for (auto& c : r.comps)
        c = c * inv;
    r.shift += v;
    r.N -= v;
    r.normalize();
    return r;
}

LogValue LogValue::truncated(unsigned N_new) const
{
    if (N_new > N)
        throw precision_error("LogValue: cannot raise precision");
    LogValue r = *this;
    r.N = N_new;
    r.normalize();
    return r;
}

bool LogValue::is_zero() const
{
    return shift == 0 && std::all_of(comps.begin(), comps.end(), [](Integer const& c) { return c == 0; });
}

Valuation LogValue::valuation() const
{
    if (is_zero())
        return {static_cast<int>(N), false};
    unsigned v = N + shift;
    for (auto const& c : comps)
        v = std::min(v, val_or(c, p, N + shift));
    return {static_cast<int>(v) - static_cast<int>(shift), true};
}

Valuation LogValue::sqrt_d_valuation() const
{
    Integer y;
    int adjust = 0;
    switch (type) {
    case LocalType::rational:
        throw domain_error("sqrt_d_valuation: no sqrt(d) coordinate over Q");
    case LocalType::split:
        y = mod(comps[0] - comps[1], pow_integer(p, N + shift));
        adjust = p == 2 ? 1 : 0;
        break;
    default:
        y = comps[1];
        adjust = (p == 2 && type == LocalType::inert) ? 1 : 0;
        break;
    }
    if (y == 0)
        return {static_cast<int>(N) - adjust, false};
    return {static_cast<int>(abcl::valuation(y, p)) - static_cast<int>(shift) - adjust, true};
}

bool LogValue::operator==(LogValue const& o) const
{
    if (type != o.type || p != o.p || d != o.d)
        return false;
    unsigned const n = std::min(N, o.N);
    auto const a = truncated(n);
    auto const b = o.truncated(n);
    return a.shift == b.shift && a.comps == b.comps;
}

LogValue log_local_unit(LocalAlgebra const& A, Element const& u, unsigned N)
{
    if (!A.is_unit(u))
        throw domain_error("log_local_unit: not a unit");
    std::uint64_t const p = A.p();
    std::uint64_t const q = A.residue_size();
    if (A.type() == LocalType::rational)
        return unit_log_core(Ring{true, 0, 0}, LocalType::rational, A.d(), u, p, q, N);
    if (A.type() != LocalType::split)
        return unit_log_core(Ring{false, A.t(), A.n()}, A.type(), A.d(), u, p, q, N);

    Ring const R{true, 0, 0};
    auto const l0 = unit_log_core(R, LocalType::rational, A.d(), {u.c0, 0}, p, q, N);
    auto const l1 = unit_log_core(R, LocalType::rational, A.d(), {u.c1, 0}, p, q, N);
    unsigned const S = std::max(l0.shift, l1.shift);
    LogValue r{LocalType::split, p, A.d(), std::min(l0.N, l1.N), S,
               {l0.comps[0] * pow_integer(p, S - l0.shift), l1.comps[0] * pow_integer(p, S - l1.shift)}};
    return r.truncated(r.N);
}

LogValue iwasawa_log(std::int64_t d, QuadNumber const& alpha, std::uint64_t p, unsigned N)
{
    if (N == 0)
        throw domain_error("iwasawa_log: precision must be positive");
    if (alpha.c == 0 || (alpha.a == 0 && alpha.b == 0))
        throw domain_error("iwasawa_log: zero argument");
    if (d == 1 && alpha.b != 0)
        throw domain_error("iwasawa_log: Q element with a sqrt part");
    LocalAlgebra const A(d, p);
    Integer const P = p;
    LogValue num = LogValue::zero(A, N);

    switch (A.type()) {
    case LocalType::rational: {
        Integer x = alpha.a;
        x = exact_div(x, pow_integer(p, valuation(x, p)));
        num = log_local_unit(A, {x, 0}, N);
        break;
    }
    case LocalType::split: {
        /* v_p of either coordinate is at most v_p of the norm */
        Integer const norm = alpha.a * alpha.a - Integer(d) * alpha.b * alpha.b;
        unsigned const W = N + 48 + valuation(norm, p);
        auto e = A.embed(alpha.a, alpha.b, W);
        e.c0 = exact_div(e.c0, pow_integer(p, valuation(e.c0, p)));
        e.c1 = exact_div(e.c1, pow_integer(p, valuation(e.c1, p)));
        num = log_local_unit(A, e, N);
        break;
    }
    default: {
        Element e = A.t() == 0 ? Element{alpha.a, alpha.b} : Element{alpha.a - alpha.b, 2 * alpha.b};
        unsigned const big = 1u << 30;
        unsigned const r = std::min(val_or(e.c0, p, big), val_or(e.c1, p, big));
        Integer const pr = pow_integer(p, r);
        e = {exact_div(e.c0, pr), exact_div(e.c1, pr)};
        bool halve = false;
        if (!A.is_unit(e)) {
            /* odd power of the uniformizer: alpha^2 / p is a unit */
            Element sq{e.c0 * e.c0 + A.n() * e.c1 * e.c1, 2 * e.c0 * e.c1 + A.t() * e.c1 * e.c1};
            if (!mpz_divisible_p(sq.c0.get_mpz_t(), P.get_mpz_t()) ||
                !mpz_divisible_p(sq.c1.get_mpz_t(), P.get_mpz_t()))
                throw std::logic_error("iwasawa_log: unexpected local valuation");
            e = {exact_div(sq.c0, P), exact_div(sq.c1, P)};
            halve = true;
        }
        unsigned const Nn = N + (halve && p == 2 ? 1 : 0);
        num = log_local_unit(A, e, Nn);
        if (halve)
            num = num.divided(2);
        break;
    }
    }

    Integer cu = alpha.c < 0 ? Integer(-alpha.c) : alpha.c;
    cu = exact_div(cu, pow_integer(p, valuation(cu, p)));
    LogValue result = num;
    if (cu != 1)
        result = num - log_local_unit(A, A.embed(cu, 0, N + 48), N);
    return result.truncated(N);
}

std::uint64_t global_torsion(FieldDescriptor const& k, std::uint64_t p)
{
    if (k.is_rational())
        return p == 2 ? 2 : 1;
    auto const d = k.quadratic_radicand();
    if (!d)
        throw domain_error("global_torsion: field must be quadratic or Q");
    if (p == 2)
        return *d == -1 ? 4 : 2;
    if (p == 3)
        return *d == -3 ? 3 : 1;
    return 1;
}

std::vector<PlaceTorsion> local_torsion(FieldDescriptor const& k, std::uint64_t p)
{
    if (!is_prime(p))
        throw domain_error("local_torsion: p must be prime");
    if (k.is_rational())
        return {{LocalType::rational, p == 2 ? std::uint64_t{2} : 1}};
    auto const d = k.quadratic_radicand();
    if (!d)
        throw domain_error("local_torsion: field must be quadratic or Q");
    LocalType const type = LocalAlgebra(*d, p).type();
    std::uint64_t order = 1;
    if (p == 2) {
        /* mu_4 in K_v iff K_v = Q_2(i) */
        order = ((*d % 8) + 8) % 8 == 7 ? 4 : 2;
    } else if (p == 3) {
        /* mu_3 in K_v iff K_v = Q_3(sqrt(-3)) */
        order = (*d % 3 == 0 && (((*d / 3) % 3) + 3) % 3 == 2) ? 3 : 1;
    }
    std::size_t const places = type == LocalType::split ? 2 : 1;
    return std::vector<PlaceTorsion>(places, {type, order});
}

} // namespace abcl
