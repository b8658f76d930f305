#include "abcl/cft.hpp"

#include "json.hpp"

#include "abcl/error.hpp"
#include "abcl/scan_kernels.hpp"

namespace abcl {

std::string to_string(IntersectionKind k)
{
    switch (k) {
    case IntersectionKind::trivial:
        return "trivial";
    case IntersectionKind::q_nu:
        return "Q_nu";
    case IntersectionKind::q_prime_nu:
        return "Q'_nu";
    case IntersectionKind::contains_mu4:
        return "contains-mu4";
    case IntersectionKind::contains_mu_p:
        return "contains-mu_p";
    }
    return "?";
}

namespace {

bool is_p_power(std::uint64_t n, std::uint64_t p)
{
    while (n % p == 0)
        n /= p;
    return n == 1;
}

/* the cyclic character of conductor q generated by exps on (Z/qZ)^x lies in K */
bool has_character(FieldDescriptor const& k, std::uint64_t q, std::vector<std::uint64_t> exps)
{
    if (k.conductor() % q != 0)
        return false;
    auto const g = std::make_shared<UnitGroupModF const>(q);
    return k.contains(induce(DirichletCharacter(g, std::move(exps)), k.group()));
}

/* Q_nu: p odd, conductor p^(nu+1), order p^nu */
bool has_q_layer(FieldDescriptor const& k, std::uint64_t p, unsigned nu)
{
    if (p == 2)
        return has_character(k, pow_u64(2, nu + 2), {0, 1});
    return has_character(k, pow_u64(p, nu + 1), {p - 1});
}

bool has_q_prime_layer(FieldDescriptor const& k, unsigned nu)
{
    return has_character(k, pow_u64(2, nu + 2), {1, 1});
}

template <class Pred>
unsigned max_layer(Pred has)
{
    unsigned nu = 0;
    while (has(nu + 1))
        ++nu;
    return nu;
}

} // namespace

CyclotomicIntersection cyclotomic_intersection(FieldDescriptor const& k, std::uint64_t p)
{
    if (!is_prime(p))
        throw domain_error("cyclotomic_intersection: p must be prime");
    CyclotomicIntersection I{p, 0, IntersectionKind::trivial, {}};
    for (auto const& chi : k.characters())
        if (is_p_power(chi.conductor(), p))
            I.characters.push_back(chi);

    I.nu_real = max_layer([&](unsigned nu) { return has_q_layer(k, p, nu); });
    if (p == 2)
        I.nu_nonreal = max_layer([&](unsigned nu) { return has_q_prime_layer(k, nu); });

    if (p != 2) {
        I.nu = I.nu_real;
        if (contains_mu(k, p))
            I.kind = IntersectionKind::contains_mu_p;
        else if (I.degree() > 1)
            I.kind = IntersectionKind::q_nu;
        return I;
    }
    if (contains_mu(k, 4)) {
        I.kind = IntersectionKind::contains_mu4;
        I.nu = I.nu_real;
        I.nu_agreement = I.nu_real == I.nu_nonreal;
        return I;
    }
    I.nu = std::max(I.nu_real, I.nu_nonreal);
    if (I.nu_real >= 1)
        I.kind = IntersectionKind::q_nu;
    else if (I.nu_nonreal >= 1)
        I.kind = IntersectionKind::q_prime_nu;
    return I;
}

std::uint64_t StructureInvariants::w_at(std::uint64_t p) const
{
    auto const it = w_p.find(p);
    return it == w_p.end() ? 1 : it->second;
}

std::string StructureInvariants::product_type() const
{
    std::string wn = w == 1 ? "Z/nZ" : "Z/" + std::to_string(w) + "nZ";
    if (delta)
        return "prod_{n>=1} (Z/2Z x " + wn + ")";
    return "prod_{n>=1} " + wn;
}

std::string StructureInvariants::known_layer_type() const
{
    return "Zhat^" + std::to_string(r2 + 1) + " x " + product_type();
}

StructureInvariants compute_w_delta(FieldDescriptor const& k)
{
    StructureInvariants s;
    s.r2 = k.r2();
    std::vector<std::uint64_t> ps{2};
    for (auto const& pp : factor(k.degree()))
        if (pp.prime != 2)
            ps.push_back(pp.prime);
    for (std::uint64_t p : ps) {
        auto const I = cyclotomic_intersection(k, p);
        std::uint64_t wp = 1;
        if (p != 2) {
            if (I.nu >= 1)
                wp = pow_u64(p, I.nu + 1);
        } else if (I.kind == IntersectionKind::contains_mu4) {
            wp = 4 * pow_u64(2, I.nu);
        } else if (I.nu >= 1) {
            wp = 4 * pow_u64(2, I.nu);
            s.delta = 1;
        }
        if (wp != 1) {
            s.w_p[p] = wp;
            s.w *= wp;
        }
    }
    return s;
}

std::set<unsigned> forbidden_exponents(FieldDescriptor const& k, std::uint64_t p, CyclotomicIntersection const& I)
{
    (void)k;
    std::set<unsigned> out;
    if (p != 2) {
        for (unsigned j = 1; j <= I.nu; ++j)
            out.insert(j);
    } else if (I.kind == IntersectionKind::contains_mu4) {
        for (unsigned j = 1; j <= I.nu + 1; ++j)
            out.insert(j);
    } else if (I.nu >= 1) {
        for (unsigned j = 2; j <= I.nu + 1; ++j)
            out.insert(j);
    }
    return out;
}

std::set<unsigned> forbidden_exponents(FieldDescriptor const& k, std::uint64_t p)
{
    return forbidden_exponents(k, p, cyclotomic_intersection(k, p));
}

std::uint64_t ResidueTally::total() const
{
    std::uint64_t t = 0;
    for (auto const& [k, n] : counts)
        t += n;
    return t;
}

std::uint64_t ResidueTally::count(unsigned k) const
{
    auto const it = counts.find(k);
    return it == counts.end() ? 0 : it->second;
}

double ResidueTally::density_k1() const
{
    std::uint64_t all = 0, one = 0;
    for (auto const& [k, n] : norm_counts) {
        all += n;
        if (k == 1)
            one += n;
    }
    return all ? static_cast<double>(one) / static_cast<double>(all) : 0.0;
}

std::string ResidueTally::to_json() const
{
    nlohmann::ordered_json j;
    j["p"] = p;
    j["B"] = bound;
    nlohmann::ordered_json c = nlohmann::ordered_json::object();
    for (auto const& [k, n] : counts)
        c[std::to_string(k)] = n;
    j["counts"] = c;
    j["forbidden"] = forbidden;
    j["verdict"] = verdict() ? "PASS" : "FAIL";
    return j.dump();
}

namespace {

ResidueTally finish_tally(FieldDescriptor const& k, std::uint64_t p, std::uint64_t bound, unsigned k_max,
                          ResidueCounts const& rc)
{
    ResidueTally t;
    t.p = p;
    t.bound = bound;
    t.k_max = k_max;
    t.primes = rc.primes;
    for (unsigned j = 0; j < rc.by_k.size(); ++j) {
        if (rc.by_k[j])
            t.counts[j] = rc.by_k[j];
        if (rc.norm_by_k[j])
            t.norm_counts[j] = rc.norm_by_k[j];
    }
    /* real places: F_v^x = {+-1} */
    if (p == 2 && k.r1() > 0)
        t.counts[1] += k.r1();
    t.forbidden = forbidden_exponents(k, p);
    for (unsigned j : t.forbidden)
        t.forbidden_ok = t.forbidden_ok && t.count(j) == 0;
    for (unsigned j = 1; j <= k_max; ++j)
        if (!t.forbidden.count(j))
            t.allowed_ok = t.allowed_ok && t.count(j) > 0;
    return t;
}

void check_scan_args(std::uint64_t p, std::uint64_t bound)
{
    if (!is_prime(p))
        throw domain_error("residue_scan: p must be prime");
    if (bound < 100)
        throw domain_error("residue_scan: bound must be at least 100");
    if (bound > 4000000000ULL)
        throw domain_error("residue_scan: bound too large");
}

} // namespace

ResidueTally residue_scan(FieldDescriptor const& k, std::uint64_t p, std::uint64_t bound, unsigned k_max, int threads)
{
    check_scan_args(p, bound);
    auto const primes = primes_up_to(bound);
    return finish_tally(k, p, bound, k_max, residue_counts_parallel(k, p, primes, bound, threads));
}

ResidueTally residue_scan_reference(FieldDescriptor const& k, std::uint64_t p, std::uint64_t bound, unsigned k_max)
{
    check_scan_args(p, bound);
    auto const primes = primes_up_to(bound);
    return finish_tally(k, p, bound, k_max, residue_counts_serial(k, p, primes, bound));
}

GammaDescriptor gamma_descriptor(FieldDescriptor const& k, std::uint64_t p)
{
    if (k.degree() > 2)
        throw domain_error("gamma_descriptor: K must be Q or quadratic");
    auto const inv = compute_w_delta(k);
    GammaDescriptor g;
    g.p = p;
    g.w_p = inv.w_at(p);
    g.delta = p == 2 ? inv.delta : 0;
    g.places = local_torsion(k, p);
    g.local_product = 1;
    for (auto const& v : g.places) {
        g.local_product *= v.order;
        if (v.order > 1)
            g.irregular.push_back(v);
    }
    g.global = global_torsion(k, p);
    g.quotient_order = g.local_product / g.global;
    return g;
}

} // namespace abcl
