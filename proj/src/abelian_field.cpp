#include "abcl/abelian_field.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>

#include "abcl/error.hpp"

namespace abcl {

namespace {

constexpr std::uint32_t no_log = UINT32_MAX;

std::uint64_t lcm64(std::uint64_t a, std::uint64_t b)
{
    return a / std::gcd(a, b) * b;
}

/* x = a mod m1, x = b mod m2, gcd(m1, m2) = 1 */
std::uint64_t crt(std::uint64_t a, std::uint64_t m1, std::uint64_t b, std::uint64_t m2)
{
    if (m1 == 1)
        return b % m2;
    if (m2 == 1)
        return a % m1;
    std::uint64_t const m = m1 * m2;
    std::uint64_t const k = mulmod((b + m2 - a % m2) % m2, invmod(m1 % m2, m2), m2);
    return (a + mulmod(k, m1, m)) % m;
}

} // namespace

UnitGroupModF::UnitGroupModF(std::uint64_t modulus) : modulus_(modulus)
{
    if (modulus == 0)
        throw domain_error("UnitGroupModF: modulus must be positive");
    for (auto const& pp : factor(modulus)) {
        std::uint64_t const p = pp.prime;
        std::uint64_t const q = pow_u64(p, pp.exponent);
        std::uint64_t const rest = modulus / q;
        auto add = [&](std::uint64_t local, std::uint64_t order) {
            gens_.push_back({p, q, local, crt(local, q, 1, rest), order});
            exponent_ = lcm64(exponent_, order);
        };
        if (p != 2) {
            std::uint64_t const g = primitive_root(p, pp.exponent) % q;
            std::uint64_t const order = q / p * (p - 1);
            add(g, order);
            std::vector<std::uint32_t> table(q, no_log);
            std::uint64_t x = 1;
            for (std::uint64_t i = 0; i < order; ++i, x = mulmod(x, g, q))
                table[x] = static_cast<std::uint32_t>(i);
            tables_.push_back(std::move(table));
        } else if (pp.exponent == 2) {
            add(3, 2);
            tables_.emplace_back();
        } else if (pp.exponent >= 3) {
            add(q - 1, 2);
            tables_.emplace_back();
            std::uint64_t const order = q / 4;
            add(5, order);
            std::vector<std::uint32_t> table(q, no_log);
            std::uint64_t x = 1;
            for (std::uint64_t i = 0; i < order; ++i, x = x * 5 % q)
                table[x] = static_cast<std::uint32_t>(i);
            tables_.push_back(std::move(table));
        }
    }
}

std::uint64_t UnitGroupModF::order() const
{
    std::uint64_t n = 1;
    for (auto const& g : gens_)
        n *= g.order;
    return n;
}

std::vector<std::uint64_t> UnitGroupModF::log(std::uint64_t a, std::uint64_t* undefined_mask) const
{
    std::vector<std::uint64_t> out(gens_.size(), 0);
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        auto const& g = gens_[i];
        if (a % g.prime == 0) {
            mask |= std::uint64_t{1} << i;
            continue;
        }
        std::uint64_t const r = a % g.prime_power;
        if (g.prime != 2) {
            out[i] = tables_[i][r];
        } else if (g.local + 1 == g.prime_power) {
            /* the <-1> factor; the <5> factor, if any, follows */
            bool const minus = r % 4 == 3;
            out[i] = minus ? 1 : 0;
            if (i + 1 < gens_.size() && gens_[i + 1].prime == 2) {
                std::uint64_t const s = minus ? g.prime_power - r : r;
                out[i + 1] = tables_[i + 1][s];
                ++i;
            }
        }
    }
    if (undefined_mask)
        *undefined_mask = mask;
    return out;
}

DirichletCharacter::DirichletCharacter(std::shared_ptr<UnitGroupModF const> group, std::vector<std::uint64_t> exps)
    : group_(std::move(group)), exps_(std::move(exps))
{
    auto const& gens = group_->generators();
    if (exps_.size() != gens.size())
        throw domain_error("DirichletCharacter: exponent vector has wrong length");
    for (std::size_t i = 0; i < gens.size(); ++i)
        exps_[i] %= gens[i].order;
}

DirichletCharacter DirichletCharacter::trivial(std::shared_ptr<UnitGroupModF const> group)
{
    std::size_t const n = group->generators().size();
    return DirichletCharacter(std::move(group), std::vector<std::uint64_t>(n, 0));
}

std::uint64_t DirichletCharacter::value_on_log(std::vector<std::uint64_t> const& log) const
{
    auto const& gens = group_->generators();
    std::uint64_t const lambda = group_->exponent();
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (exps_[i] == 0 || log[i] == 0)
            continue;
        std::uint64_t const t = mulmod(exps_[i], log[i], gens[i].order);
        v = (v + t * (lambda / gens[i].order)) % lambda;
    }
    return v;
}

std::uint64_t DirichletCharacter::value(std::uint64_t a) const
{
    return value_on_log(group_->log(a));
}

std::uint64_t DirichletCharacter::order() const
{
    auto const& gens = group_->generators();
    std::uint64_t o = 1;
    for (std::size_t i = 0; i < gens.size(); ++i)
        o = lcm64(o, gens[i].order / std::gcd(exps_[i], gens[i].order));
    return o;
}

std::uint64_t DirichletCharacter::conductor() const
{
    auto const& gens = group_->generators();
    std::uint64_t c = 1;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        auto const& g = gens[i];
        std::uint64_t const o = g.order / std::gcd(exps_[i], g.order);
        if (g.prime != 2) {
            if (o > 1)
                c *= pow_u64(g.prime, valuation(o, g.prime) + 1);
            continue;
        }
        /* 2-part: <-1> then optionally <5> */
        bool const has_five = i + 1 < gens.size() && gens[i + 1].prime == 2;
        std::uint64_t five_order = 1;
        if (has_five) {
            auto const& h = gens[i + 1];
            five_order = h.order / std::gcd(exps_[i + 1], h.order);
            ++i;
        }
        if (five_order > 1)
            c *= pow_u64(2, valuation(five_order, 2) + 2);
        else if (o > 1)
            c *= 4;
    }
    return c;
}

bool DirichletCharacter::is_even() const
{
    if (modulus() <= 2)
        return true;
    return value(modulus() - 1) == 0;
}

bool DirichletCharacter::is_trivial() const
{
    return std::all_of(exps_.begin(), exps_.end(), [](std::uint64_t e) { return e == 0; });
}

bool DirichletCharacter::trivial_at(std::uint64_t prime) const
{
    auto const& gens = group_->generators();
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (gens[i].prime == prime && exps_[i] != 0)
            return false;
    return true;
}

DirichletCharacter DirichletCharacter::operator*(DirichletCharacter const& o) const
{
    if (group_->modulus() != o.group_->modulus())
        throw domain_error("DirichletCharacter: moduli differ");
    std::vector<std::uint64_t> e(exps_.size());
    for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = exps_[i] + o.exps_[i];
    return DirichletCharacter(group_, std::move(e));
}

DirichletCharacter DirichletCharacter::inverse() const
{
    auto const& gens = group_->generators();
    std::vector<std::uint64_t> e(exps_.size());
    for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = (gens[i].order - exps_[i]) % gens[i].order;
    return DirichletCharacter(group_, std::move(e));
}

DirichletCharacter induce(DirichletCharacter const& chi, std::shared_ptr<UnitGroupModF const> const& target)
{
    std::uint64_t const ft = target->modulus();
    std::uint64_t const fs = chi.modulus();
    if (ft % chi.conductor() != 0)
        throw domain_error("induce: conductor does not divide the target modulus");
    std::uint64_t const lambda = chi.group()->exponent();
    std::vector<std::uint64_t> e;
    for (auto const& g : target->generators()) {
        /* a representative of the generator class that is a unit mod fs too */
        std::uint64_t a = g.lift;
        while (std::gcd(a, fs) != 1)
            a += ft;
        std::uint64_t const v = chi.value(a);
        e.push_back(v * g.order / lambda);
    }
    return DirichletCharacter(target, std::move(e));
}

namespace {

using ExpSet = std::set<std::vector<std::uint64_t>>;

/* Grow a closed set by one more generator. */
void adjoin(ExpSet& closure, DirichletCharacter const& g)
{
    std::vector<std::vector<std::uint64_t>> base(closure.begin(), closure.end());
    auto const group = g.group();
    DirichletCharacter power = g;
    while (!power.is_trivial()) {
        for (auto const& x : base)
            closure.insert((DirichletCharacter(group, x) * power).exponents());
        power = power * g;
    }
}

} // namespace

FieldDescriptor::FieldDescriptor(std::shared_ptr<UnitGroupModF const> group,
                                 std::vector<DirichletCharacter> const& generators,
                                 std::string label, std::string spec)
    : group_(std::move(group)), label_(std::move(label)), spec_(std::move(spec))
{
    std::uint64_t cond = 1;
    for (auto const& g : generators) {
        if (g.modulus() != group_->modulus())
            throw domain_error("FieldDescriptor: generator modulus mismatch");
        cond = lcm64(cond, g.conductor());
    }
    conductor_ = cond;
    if (cond != group_->modulus())
        group_ = std::make_shared<UnitGroupModF const>(cond);

    ExpSet closure{std::vector<std::uint64_t>(group_->generators().size(), 0)};
    for (auto const& g0 : generators) {
        auto g = induce(g0, group_);
        if (closure.count(g.exponents()))
            continue;
        generators_.push_back(g);
        adjoin(closure, g);
    }
    for (auto const& e : closure)
        elements_.emplace_back(group_, e);

    bool const all_even = std::all_of(generators_.begin(), generators_.end(),
                                      [](DirichletCharacter const& c) { return c.is_even(); });
    auto const n = static_cast<unsigned>(elements_.size());
    r1_ = all_even ? n : 0;
    r2_ = all_even ? 0 : n / 2;
}

bool FieldDescriptor::contains(DirichletCharacter const& chi) const
{
    if (chi.modulus() != modulus())
        return false;
    return std::binary_search(elements_.begin(), elements_.end(), chi);
}

std::optional<std::int64_t> FieldDescriptor::quadratic_radicand() const
{
    if (degree() != 2)
        return std::nullopt;
    auto const& chi = generators_.front();
    auto D = static_cast<std::int64_t>(conductor_);
    if (!chi.is_even())
        D = -D;
    return D % 4 == 0 ? D / 4 : D;
}

FieldDescriptor rational_field()
{
    return FieldDescriptor(std::make_shared<UnitGroupModF const>(1), {}, "Q", "Q");
}

FieldDescriptor field_from_sqrt(std::int64_t d)
{
    if (d == 0 || d == 1 || !is_squarefree(d))
        throw domain_error("field_from_sqrt: d must be squarefree and not 0 or 1");
    std::int64_t const D = fundamental_discriminant(d);
    auto const f = static_cast<std::uint64_t>(D < 0 ? -D : D);
    if (f > default_conductor_cap)
        throw domain_error("field_from_sqrt: conductor above cap");
    auto group = std::make_shared<UnitGroupModF const>(f);
    std::vector<std::uint64_t> e;
    for (auto const& g : group->generators())
        e.push_back(kronecker(D, static_cast<std::int64_t>(g.lift)) == -1 ? g.order / 2 : 0);
    DirichletCharacter chi(group, std::move(e));
    std::string const ds = std::to_string(d);
    return FieldDescriptor(group, {chi}, "Q(sqrt(" + ds + "))", "sqrt:" + ds);
}

FieldDescriptor field_from_cyclotomic(std::uint64_t n, bool real_subfield)
{
    if (n < 3)
        throw domain_error("field_from_cyclotomic: n must be at least 3");
    if (n > default_conductor_cap)
        throw domain_error("field_from_cyclotomic: conductor above cap");
    auto group = std::make_shared<UnitGroupModF const>(n);
    std::size_t const r = group->generators().size();
    std::vector<DirichletCharacter> gens;
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<std::uint64_t> e(r, 0);
        e[i] = 1;
        gens.emplace_back(group, std::move(e));
    }
    std::string const ns = std::to_string(n);
    if (!real_subfield)
        return FieldDescriptor(group, gens, "Q(zeta_" + ns + ")", "zeta:" + ns);

    /* kernel of the parity map */
    std::vector<DirichletCharacter> even;
    std::optional<DirichletCharacter> first_odd;
    for (auto const& g : gens) {
        if (g.is_even()) {
            even.push_back(g);
        } else if (!first_odd) {
            first_odd = g;
            even.push_back(g * g);
        } else {
            even.push_back(g * *first_odd);
        }
    }
    return FieldDescriptor(group, even, "Q(zeta_" + ns + ")+", "zeta+:" + ns);
}

FieldDescriptor field_from_characters(std::uint64_t f, std::vector<std::vector<std::uint64_t>> const& exps)
{
    if (f == 0 || f > default_conductor_cap)
        throw domain_error("field_from_characters: modulus out of range");
    auto group = std::make_shared<UnitGroupModF const>(f);
    std::vector<DirichletCharacter> gens;
    std::string spec = "chars:" + std::to_string(f) + ":";
    for (std::size_t j = 0; j < exps.size(); ++j) {
        gens.emplace_back(group, exps[j]);
        if (j)
            spec += ';';
        for (std::size_t i = 0; i < exps[j].size(); ++i)
            spec += (i ? "," : "") + std::to_string(exps[j][i]);
    }
    return FieldDescriptor(group, gens, spec, spec);
}

namespace {

template <class T>
T parse_number(std::string_view s, std::string_view what)
{
    T v{};
    auto const* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (s.empty() || ec != std::errc() || ptr != end)
        throw parse_error("invalid " + std::string(what) + ": '" + std::string(s) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    for (;;) {
        auto const k = s.find(sep);
        out.push_back(s.substr(0, k));
        if (k == std::string_view::npos)
            return out;
        s.remove_prefix(k + 1);
    }
}

} // namespace

FieldDescriptor parse_field(std::string_view spec)
{
    if (spec == "Q")
        return rational_field();
    auto const colon = spec.find(':');
    if (colon == std::string_view::npos)
        throw parse_error("field spec must be Q, sqrt:<d>, zeta:<n>, zeta+:<n> or chars:<f>:<vectors>");
    auto const kind = spec.substr(0, colon);
    auto const rest = spec.substr(colon + 1);
    if (kind == "sqrt")
        return field_from_sqrt(parse_number<std::int64_t>(rest, "radicand"));
    if (kind == "zeta")
        return field_from_cyclotomic(parse_number<std::uint64_t>(rest, "cyclotomic index"), false);
    if (kind == "zeta+")
        return field_from_cyclotomic(parse_number<std::uint64_t>(rest, "cyclotomic index"), true);
    if (kind == "chars") {
        auto const c2 = rest.find(':');
        if (c2 == std::string_view::npos)
            throw parse_error("chars spec needs chars:<f>:<vectors>");
        auto const f = parse_number<std::uint64_t>(rest.substr(0, c2), "modulus");
        std::vector<std::vector<std::uint64_t>> exps;
        for (auto v : split(rest.substr(c2 + 1), ';')) {
            std::vector<std::uint64_t> e;
            for (auto x : split(v, ','))
                e.push_back(parse_number<std::uint64_t>(x, "character exponent"));
            exps.push_back(std::move(e));
        }
        if (f == 0)
            throw parse_error("chars modulus must be positive");
        std::size_t const r = UnitGroupModF(f).generators().size();
        for (auto const& e : exps)
            if (e.size() != r)
                throw parse_error("chars vector length must be " + std::to_string(r) + " for modulus " +
                                  std::to_string(f));
        return field_from_characters(f, exps);
    }
    throw parse_error("unknown field kind '" + std::string(kind) + "'");
}

std::uint64_t residue_degree_unramified(FieldDescriptor const& k, std::uint64_t ell)
{
    auto const log = k.group()->log(ell);
    std::uint64_t const lambda = k.group()->exponent();
    std::uint64_t f = 1;
    for (auto const& chi : k.generators()) {
        std::uint64_t const v = chi.value_on_log(log);
        f = lcm64(f, lambda / std::gcd(v, lambda));
    }
    return f;
}

SplittingData splitting(FieldDescriptor const& k, std::uint64_t ell)
{
    if (!is_prime(ell))
        throw domain_error("splitting: ell must be prime");
    std::uint64_t const n = k.degree();
    SplittingData s{ell, k.conductor() % ell == 0, 1, 1, n, 0};
    if (!s.ramified) {
        s.f = residue_degree_unramified(k, ell);
    } else {
        /* inertia: characters ramified at ell; Frobenius acts on the rest */
        auto const log = k.group()->log(ell);
        std::uint64_t const lambda = k.group()->exponent();
        std::uint64_t unramified = 0;
        for (auto const& chi : k.characters()) {
            if (!chi.trivial_at(ell))
                continue;
            ++unramified;
            std::uint64_t const v = chi.value_on_log(log);
            s.f = lcm64(s.f, lambda / std::gcd(v, lambda));
        }
        s.e = n / unramified;
    }
    s.g = n / (s.e * s.f);
    s.residue_order = pow_integer(ell, static_cast<unsigned>(s.f)) - 1;
    return s;
}

bool contains_mu(FieldDescriptor const& k, std::uint64_t m)
{
    if (m == 0)
        throw domain_error("contains_mu: m must be positive");
    if (m % 4 == 2)
        m /= 2;
    if (m <= 2)
        return true;
    if (k.conductor() % m != 0)
        return false;
    auto const small = std::make_shared<UnitGroupModF const>(m);
    std::size_t const r = small->generators().size();
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<std::uint64_t> e(r, 0);
        e[i] = 1;
        if (!k.contains(induce(DirichletCharacter(small, std::move(e)), k.group())))
            return false;
    }
    return true;
}

} // namespace abcl
