#include "abcl/cli.hpp"

#include <cstdlib>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "abcl/error.hpp"
#include "abcl/report.hpp"

namespace abcl {

namespace {

using json = nlohmann::ordered_json;

unsigned env_precision()
{
    char const* s = std::getenv("ABCL_PRECISION");
    if (!s || !*s)
        return default_precision;
    char* end = nullptr;
    unsigned long const v = std::strtoul(s, &end, 10);
    if (*end || v < 2 || v > 200)
        throw parse_error(std::string("ABCL_PRECISION: expected an integer in [2, 200], got ") + s);
    return static_cast<unsigned>(v);
}

std::int64_t real_quadratic(FieldDescriptor const& k)
{
    auto const d = k.quadratic_radicand();
    if (!d || *d < 0)
        throw domain_error(k.spec() + " is not a real quadratic field");
    return *d;
}

std::int64_t imaginary_quadratic(FieldDescriptor const& k)
{
    auto const d = k.quadratic_radicand();
    if (!d || *d > 0)
        throw domain_error(k.spec() + " is not an imaginary quadratic field");
    return *d;
}

struct Options
{
    std::string field;
    std::string field2;
    std::uint64_t p = 0;
    std::uint64_t bound = 0;
    unsigned precision = 0;
    unsigned k_max = default_k_max;
    std::uint64_t ideal = 0;
    std::int64_t disc = 0;
    std::vector<std::uint64_t> p_list;
    std::uint64_t scan_bound = 0;
    int threads = 0;
    bool json = false;
};

void cmd_invariants(Options const& o, std::ostream& out)
{
    auto const k = parse_field(o.field);
    auto const s = compute_w_delta(k);
    if (!o.json) {
        out << "delta=" << s.delta << " w=" << s.w << " r2=" << s.r2 << "\n";
        return;
    }
    json wp = json::object();
    for (auto const& [p, w] : s.w_p)
        wp[std::to_string(p)] = w;
    json j{{"field", k.spec()}, {"delta", s.delta}, {"w", s.w}, {"w_p", wp}, {"r2", s.r2},
           {"known_layer", s.known_layer_type()}};
    out << j.dump() << "\n";
}

void cmd_scan_residues(Options const& o, std::ostream& out, std::ostream& err)
{
    auto const k = parse_field(o.field);
    err << "scanning primes up to " << o.bound << "\n";
    auto const t = residue_scan(k, o.p, o.bound, o.k_max, o.threads);
    if (o.json) {
        out << t.to_json() << "\n";
        return;
    }
    for (auto const& [j, n] : t.counts)
        out << "k=" << j << " " << n << "\n";
    out << "forbidden";
    for (unsigned j : t.forbidden)
        out << " " << j;
    out << "\n";
    out << "density_k1=" << std::fixed << std::setprecision(4) << t.density_k1() << "\n";
    out << (t.verdict() ? "PASS" : "FAIL") << "\n";
}

void cmd_scan_prational(Options const& o, std::ostream& out, std::ostream& err)
{
    auto const k = parse_field(o.field);
    std::int64_t const d = real_quadratic(k);
    err << "scanning primes up to " << o.bound << "\n";
    auto const ps = fermat_quotient_scan(d, o.bound, o.threads);
    if (o.json) {
        out << json{{"field", k.spec()}, {"B", o.bound}, {"primes", ps}}.dump() << "\n";
        return;
    }
    for (std::size_t i = 0; i < ps.size(); ++i)
        out << (i ? " " : "") << ps[i];
    out << "\n";
}

void cmd_test_prational(Options const& o, std::ostream& out)
{
    auto const k = parse_field(o.field);
    auto const v = rationality_verdict(k, o.p, o.precision);
    if (o.json) {
        out << v.to_json(k.spec()) << "\n";
        return;
    }
    out << "mu=" << to_string(v.mu) << " class=" << to_string(v.class_condition)
        << " regulator=" << to_string(v.regulator) << "\n";
    if (v.fermat) {
        auto const& f = *v.fermat;
        out << "fermat exponent=" << f.exponent << " sign=" << f.sign << " v(y)=" << f.y_valuation.value
            << (f.y_valuation.exact ? "" : "+");
        if (f.a)
            out << " a=" << *f.a;
        out << "\n";
    }
    out << v.overall << " tp=" << v.tp_estimate << "\n";
    if (!v.reason.empty())
        out << "reason: " << v.reason << "\n";
}

void cmd_log_ideal(Options const& o, std::ostream& out)
{
    auto const k = parse_field(o.field);
    std::int64_t const d = imaginary_quadratic(k);
    std::int64_t const D = fundamental_discriminant(d);
    if (!is_prime(o.ideal))
        throw domain_error("--ideal must be a prime");
    if (kronecker(D, static_cast<std::int64_t>(o.ideal)) == -1)
        throw domain_error(std::to_string(o.ideal) + " is inert");
    auto const I = prime_ideal(D, o.ideal);
    auto const L = log_ideal(d, {{I, 1}}, o.p, o.precision);
    std::vector<std::string> comps;
    for (auto const& c : L.comps)
        comps.push_back(c.get_str());
    if (o.json) {
        json j{{"field", k.spec()}, {"ideal", {{"ell", I.ell}, {"b", I.b.get_str()}}}, {"p", o.p},
               {"precision", L.N}, {"frame", to_string(L.type)}, {"shift", L.shift}, {"comps", comps}};
        out << j.dump() << "\n";
        return;
    }
    out << "ideal (" << I.ell << ", (" << -I.b << " + sqrt(" << D << "))/2)\n";
    out << "frame=" << to_string(L.type) << " N=" << L.N << " shift=" << L.shift << " comps=";
    for (std::size_t i = 0; i < comps.size(); ++i)
        out << (i ? "," : "") << comps[i];
    out << "\n";
}

void cmd_classify(Options const& o, std::ostream& out)
{
    bool const r = footnote3_classifier(o.disc);
    if (o.json)
        out << json{{"D", o.disc}, {"listed", r}}.dump() << "\n";
    else
        out << (r ? "true" : "false") << "\n";
}

void cmd_report(Options const& o, std::ostream& out)
{
    auto const k = parse_field(o.field);
    ReportOptions ro;
    if (!o.p_list.empty())
        ro.p_list = o.p_list;
    for (auto p : ro.p_list)
        if (!is_prime(p))
            throw domain_error("--p-list: " + std::to_string(p) + " is not prime");
    ro.precision = o.precision;
    ro.scan_bound = o.scan_bound;
    auto const r = build_report(k, ro);
    out << (o.json ? r.to_json() + "\n" : r.to_text());
}

void cmd_compare(Options const& o, std::ostream& out)
{
    auto const c = compare_fields(parse_field(o.field), parse_field(o.field2));
    out << (o.json ? c.to_json() + "\n" : c.to_text());
}

} // namespace

int run(int argc, char const* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"abelian closure toolkit: invariants, scans and structure reports for abelian number fields", "abcl"};
    app.require_subcommand(1, 1);
    Options o;
    std::string const field_help = "sqrt:<d> | zeta:<n> | zeta+:<n> | chars:<f>:<e1,e2;...>";

    auto add_common = [&](CLI::App* c) {
        c->add_flag("--json", o.json, "JSON output");
    };
    auto add_threads = [&](CLI::App* c) { c->add_option("--threads", o.threads, "worker count, 0 for all")->check(CLI::NonNegativeNumber); };
    auto add_precision = [&](CLI::App* c) {
        c->add_option("--precision", o.precision, "p-adic precision N (default ABCL_PRECISION or 12)")
            ->check(CLI::Range(2u, 200u));
    };

    auto* inv = app.add_subcommand("invariants", "delta, w and r2 of K");
    inv->add_option("field", o.field, field_help)->required();
    add_common(inv);

    auto* sr = app.add_subcommand("scan-residues", "residue exponent tally over primes up to a bound");
    sr->add_option("field", o.field, field_help)->required();
    sr->add_option("--p", o.p, "prime p")->required();
    sr->add_option("--bound", o.bound, "prime bound B")->required();
    sr->add_option("--k-max", o.k_max, "largest exponent required to occur")->check(CLI::Range(1u, 60u));
    add_threads(sr);
    add_common(sr);

    auto* sp = app.add_subcommand("scan-prational", "primes where the unit Fermat quotient test fails");
    sp->add_option("field", o.field, field_help)->required();
    sp->add_option("--bound", o.bound, "prime bound B")->required();
    add_precision(sp);
    add_threads(sp);
    add_common(sp);

    auto* tp = app.add_subcommand("test-prational", "p-rationality verdict");
    tp->add_option("field", o.field, field_help)->required();
    tp->add_option("--p", o.p, "prime p")->required();
    add_precision(tp);
    add_common(tp);

    auto* li = app.add_subcommand("log-ideal", "Log of a prime ideal in the local frame at p");
    li->add_option("field", o.field, field_help)->required();
    li->add_option("--ideal", o.ideal, "prime ell below the ideal")->required();
    li->add_option("--p", o.p, "prime p")->required();
    add_precision(li);
    add_common(li);

    auto* cf = app.add_subcommand("classify-footnote3", "is Q(sqrt D) on the list of fields with H_2 in K~_2");
    cf->add_option("D", o.disc, "negative fundamental discriminant")->required();
    add_common(cf);

    auto* rp = app.add_subcommand("report", "structure report for Gal(Kab/K)");
    rp->add_option("field", o.field, field_help)->required();
    rp->add_option("--p-list", o.p_list, "tested primes, comma separated")->delimiter(',');
    rp->add_option("--scan-bound", o.scan_bound, "run residue scans up to this bound");
    add_precision(rp);
    add_common(rp);

    auto* cp = app.add_subcommand("compare", "compare the known layers of two fields");
    cp->add_option("field1", o.field, field_help)->required();
    cp->add_option("field2", o.field2, field_help)->required();
    add_common(cp);

    try {
        app.parse(argc, argv);
    } catch (CLI::CallForHelp const&) {
        out << app.help();
        return 0;
    } catch (CLI::CallForAllHelp const&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (CLI::ParseError const& e) {
        err << "error: " << e.what() << "\n";
        auto const subs = app.get_subcommands();
        err << (subs.empty() ? app.help() : subs.front()->help());
        return 2;
    }

    try {
        if (o.precision == 0)
            o.precision = env_precision();
        if (*inv)
            cmd_invariants(o, out);
        else if (*sr)
            cmd_scan_residues(o, out, err);
        else if (*sp)
            cmd_scan_prational(o, out, err);
        else if (*tp)
            cmd_test_prational(o, out);
        else if (*li)
            cmd_log_ideal(o, out);
        else if (*cf)
            cmd_classify(o, out);
        else if (*rp)
            cmd_report(o, out);
        else if (*cp)
            cmd_compare(o, out);
    } catch (parse_error const& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (domain_error const& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (precision_error const& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace abcl
