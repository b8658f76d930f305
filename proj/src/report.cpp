#include "abcl/report.hpp"

#include <sstream>

#include "json.hpp"

namespace abcl {

std::string to_string(Canonicity c)
{
    switch (c) {
    case Canonicity::can:
        return "can";
    case Canonicity::nc:
        return "nc";
    case Canonicity::label_only:
        return "label";
    }
    return "?";
}

namespace {

std::string join_primes(std::vector<std::uint64_t> const& ps)
{
    std::string s;
    for (std::size_t i = 0; i < ps.size(); ++i)
        s += (i ? "," : "") + std::to_string(ps[i]);
    return s;
}

std::vector<TowerEntry> towers(StructureInvariants const& inv)
{
    std::string const zhat = "Zhat^" + std::to_string(inv.r2 + 1);
    std::string const prod = inv.product_type();
    std::string const known = inv.known_layer_type();
    return {
        {"K~_inf", "K~_inf/K", zhat, Canonicity::nc},
        {"H_inf", "H_inf/K~_inf", "prod_p T_p", Canonicity::can},
        {"H_inf", "Kab/H_inf", prod, Canonicity::nc},
        {"H_inf", "H_inf/K", zhat + " x prod_p T_p", Canonicity::nc},
        {"H_inf^1", "H_inf/H_inf^1", "(prod_v mu^1_v) / mu(K)", Canonicity::can},
        {"H_inf^1", "Kab/H_inf^1", prod, Canonicity::nc},
        {"H_ta", "H_ta/K", "maximal tamely ramified abelian extension", Canonicity::label_only},
        {"M_inf", "M_inf/K", "H_inf H_ta, direct over the Hilbert class field", Canonicity::label_only},
        {"F_inf", "F_inf/K", "prod_p T_p", Canonicity::nc},
        {"F_inf", "Kab/F_inf", known, Canonicity::nc},
        {"F_inf^1", "F_inf^1/K", "prod_p T_p^1", Canonicity::nc},
        {"F_inf^1", "Kab/F_inf^1", known, Canonicity::nc},
    };
}

DefectEntry defect_entry(FieldDescriptor const& k, std::uint64_t p, ReportOptions const& opt)
{
    auto const v = rationality_verdict(k, p, opt.precision);
    DefectEntry e;
    e.p = p;
    e.verdict = v.overall;
    e.tp = v.tp_estimate;
    e.mu_quotient = v.mu_quotient;
    if (v.tp_order)
        e.tp1 = std::to_string(*v.tp_order / v.mu_quotient);
    else
        e.tp1 = "unknown";
    if (opt.scan_bound)
        e.scan_pass = residue_scan(k, p, opt.scan_bound).verdict();
    if (p == 2) {
        auto const I = cyclotomic_intersection(k, 2);
        e.special_case = I.kind == IntersectionKind::q_nu && I.nu >= 2;
    }
    return e;
}

} // namespace

GaloisStructureReport build_report(FieldDescriptor const& k, ReportOptions const& opt)
{
    GaloisStructureReport r;
    r.field = k.spec();
    r.r1 = k.r1();
    r.r2 = k.r2();
    r.invariants = compute_w_delta(k);
    r.towers = towers(r.invariants);
    r.product_form_at_tested_p = true;
    for (std::uint64_t p : opt.p_list) {
        r.defects.push_back(defect_entry(k, p, opt));
        if (r.defects.back().verdict != "p-rational")
            r.product_form_at_tested_p = false;
    }
    r.assumptions = {"leopoldt conjecture for K at every p"};

    r.hypotheses = {
        "H1: Gal(Kab/K) is isomorphic to " + r.invariants.known_layer_type() + " whatever prod_p T_p^1 is",
        "H2: for some K the extension of prod_p T_p^1 by " + r.invariants.product_type() +
            " changes the isomorphism type of Gal(Kab/K~_inf)",
    };

    r.disclaimers.push_back("defect layer computed only for p in {" + join_primes(opt.p_list) +
                            "}; T_p for untested p is not determined");
    r.disclaimers.push_back("nc isomorphisms are abstract group isomorphisms, not Galois-equivariant");
    r.disclaimers.push_back("H1 and H2 are open; this report decides neither");
    if (r.product_form_at_tested_p)
        r.disclaimers.push_back("K is p-rational at every tested p; Gal(Kab/K) of product form is not claimed for untested p");
    else
        r.disclaimers.push_back("Gal(Kab/K) is not claimed to be of product form");
    for (auto const& d : r.defects)
        if (d.special_case)
            r.disclaimers.push_back(
                "p=2 with K meet Q(mu_2^inf) = Q_nu, nu >= 2: cyclic embeddability of the local roots of unity is not "
                "asserted, and prod_v mu^1_v / mu_2(K) may have index 2 in the embeddable subgroup");
    return r;
}

std::string GaloisStructureReport::to_json() const
{
    nlohmann::ordered_json j;
    j["field"] = field;
    j["signature"] = {{"r1", r1}, {"r2", r2}};
    nlohmann::ordered_json wp = nlohmann::ordered_json::object();
    for (auto const& [p, w] : invariants.w_p)
        wp[std::to_string(p)] = w;
    j["invariants"] = {{"delta", invariants.delta}, {"w", invariants.w}, {"w_p", wp}};
    j["known_layer"] = known_layer();
    nlohmann::ordered_json tw = nlohmann::ordered_json::array();
    nlohmann::ordered_json canon = nlohmann::ordered_json::object();
    for (auto const& t : towers) {
        tw.push_back({{"label", t.label}, {"extension", t.extension}, {"group", t.group},
                      {"canonical", to_string(t.canonicity)}});
        if (t.canonicity != Canonicity::label_only)
            canon["Gal(" + t.extension + ")"] = to_string(t.canonicity);
    }
    j["towers"] = tw;
    nlohmann::ordered_json df = nlohmann::ordered_json::array();
    for (auto const& d : defects) {
        nlohmann::ordered_json e{{"p", d.p}, {"tp", d.tp}, {"tp1", d.tp1}, {"verdict", d.verdict},
                                 {"mu_quotient", d.mu_quotient}, {"special_case", d.special_case}};
        if (d.scan_pass)
            e["scan"] = *d.scan_pass ? "PASS" : "FAIL";
        df.push_back(e);
    }
    j["defects"] = df;
    j["canonical"] = canon;
    j["assumptions"] = assumptions;
    j["hypotheses"] = hypotheses;
    j["disclaimers"] = disclaimers;
    return j.dump(2);
}

std::string GaloisStructureReport::to_text() const
{
    std::ostringstream o;
    o << "field " << field << "\n";
    o << "signature r1=" << r1 << " r2=" << r2 << "\n";
    o << "delta=" << invariants.delta << " w=" << invariants.w << " r2=" << r2 << "\n";
    o << "known layer Gal(Kab/F_inf) = " << known_layer() << "\n";
    o << "towers\n";
    for (auto const& t : towers)
        o << "  " << t.extension << " : " << t.group << " [" << to_string(t.canonicity) << "]\n";
    o << "defects\n";
    for (auto const& d : defects) {
        o << "  p=" << d.p << " " << d.verdict << " tp=" << d.tp << " tp1=" << d.tp1;
        if (d.scan_pass)
            o << " scan=" << (*d.scan_pass ? "PASS" : "FAIL");
        o << "\n";
    }
    o << "assumptions\n";
    for (auto const& a : assumptions)
        o << "  " << a << "\n";
    o << "hypotheses\n";
    for (auto const& h : hypotheses)
        o << "  " << h << "\n";
    o << "disclaimers\n";
    for (auto const& d : disclaimers)
        o << "  " << d << "\n";
    return o.str();
}

FieldComparison compare_fields(FieldDescriptor const& k1, FieldDescriptor const& k2)
{
    auto const a = compute_w_delta(k1);
    auto const b = compute_w_delta(k2);
    FieldComparison c;
    c.field1 = k1.spec();
    c.field2 = k2.spec();
    c.layer1 = a.known_layer_type();
    c.layer2 = b.known_layer_type();
    auto diff = [&](std::string const& name, std::uint64_t x, std::uint64_t y) {
        if (x != y)
            c.differences.push_back(name + " " + std::to_string(x) + " vs " + std::to_string(y));
    };
    diff("r2", a.r2, b.r2);
    diff("delta", a.delta, b.delta);
    diff("w", a.w, b.w);
    c.known_isomorphic = c.differences.empty();
    return c;
}

std::string FieldComparison::to_json() const
{
    nlohmann::ordered_json j;
    j["fields"] = {field1, field2};
    j["known_layers"] = {layer1, layer2};
    j["known_layer_isomorphic"] = known_isomorphic;
    j["differences"] = differences;
    j["defect_layers"] = "unresolved";
    return j.dump(2);
}

std::string FieldComparison::to_text() const
{
    std::ostringstream o;
    o << (known_isomorphic ? "known layers isomorphic" : "known layers differ") << "\n";
    o << "  " << field1 << " : " << layer1 << "\n";
    o << "  " << field2 << " : " << layer2 << "\n";
    for (auto const& d : differences)
        o << "  " << d << "\n";
    o << "defect layers prod_p T_p^1 and the group extension are not compared\n";
    return o.str();
}

} // namespace abcl
