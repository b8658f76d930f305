#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"

#include "abcl/cli.hpp"
#include "abcl/report.hpp"

using namespace abcl;

namespace {

struct Outcome
{
    bool pass;
    std::string detail;
};

std::string run_cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "abcl");
    std::vector<char const*> argv;
    for (auto const& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    abcl::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return out.str();
}

std::string golden(std::string const& name)
{
    std::ifstream f(std::string(ABCL_GOLDEN_DIR) + "/" + name);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome invariants_exact()
{
    auto const t0 = std::chrono::steady_clock::now();
    auto is = [](FieldDescriptor const& k, unsigned delta, std::uint64_t w) {
        auto const s = compute_w_delta(k);
        return s.delta == delta && s.w == w;
    };
    bool ok = is(field_from_sqrt(2), 1, 8) && is(field_from_cyclotomic(4, false), 0, 4) &&
              is(field_from_cyclotomic(9, true), 0, 9);
    for (std::int64_t l : {7, 11, 19})
        ok = ok && is(field_from_sqrt(-l), 0, 1);
    double const dt = seconds_since(t0);
    return {ok && dt < 1.0, "time " + std::to_string(dt) + " s"};
}

Outcome prational_scan()
{
    auto const t0 = std::chrono::steady_clock::now();
    auto const out = run_cli({"scan-prational", "sqrt:2", "--bound", "2000000", "--threads", "1"});
    double const dt = seconds_since(t0);
    std::string shown = out.substr(0, out.find('\n'));
    return {out == "13 31 1546463\n" && dt <= 300.0, "output '" + shown + "' single-threaded " + std::to_string(dt) + " s"};
}

Outcome worked_example()
{
    auto const r = fermat_quotient_test(2, 13);
    auto const v = rationality_verdict(field_from_sqrt(2), 13);
    bool const ok = r.y_valuation.value == 2 && r.y_valuation.exact && r.a && *r.a % 13 != 0 && v.tp_order &&
                    *v.tp_order == 13;
    return {ok, "v=" + std::to_string(r.y_valuation.value) + " a=" + (r.a ? std::to_string(*r.a) : "?") +
                    " |T_13|=" + (v.tp_order ? std::to_string(*v.tp_order) : "?")};
}

Outcome scan_soundness()
{
    std::string detail;
    bool ok = true;
    auto timed = [&](FieldDescriptor const& k, std::uint64_t p, std::uint64_t b) {
        auto const t0 = std::chrono::steady_clock::now();
        auto t = residue_scan(k, p, b);
        double const dt = seconds_since(t0);
        ok = ok && dt < 30.0;
        detail += k.spec() + " " + std::to_string(dt) + " s; ";
        return t;
    };
    auto const a = timed(field_from_sqrt(2), 2, 100000);
    ok = ok && a.count(2) == 0 && a.count(1) > 0 && a.count(3) > 0;
    auto const b = timed(field_from_cyclotomic(4, false), 2, 100000);
    ok = ok && b.count(1) == 0;
    auto const c = timed(field_from_cyclotomic(9, true), 3, 10000);
    ok = ok && c.count(1) == 0;
    return {ok, detail};
}

Outcome density()
{
    auto const t = residue_scan(field_from_sqrt(2), 2, 100000);
    double const d = t.density_k1();
    std::uint64_t all = 0, one = 0;
    for (std::uint32_t ell : primes_up_to(100000)) {
        if (ell == 2)
            continue;
        ++all;
        if (ell % 8 == 7)
            ++one;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "places of norm <= B: %.4f (rational primes: %.4f)", d,
                  static_cast<double>(one) / static_cast<double>(all));
    return {d > 0.45 && d < 0.55, buf};
}

Outcome spot_facts()
{
    auto const q2 = field_from_sqrt(2);
    auto const q9 = field_from_cyclotomic(9, true);
    auto const s7 = splitting(q2, 7);
    auto const s5 = splitting(q2, 5);
    auto const t5 = splitting(q9, 5);
    auto const t7 = splitting(q9, 7);
    bool const ok = s7.split_completely() && s5.inert() && s5.residue_order % 8 == 0 && t5.inert() &&
                    t5.residue_order % 3 != 0 && t7.inert() && t7.residue_order % 9 == 0;
    return {ok, ""};
}

Outcome oracle_equivalences()
{
    auto const t0 = std::chrono::steady_clock::now();
    int disagree_a = 0, disagree_b = 0, disagree_c = 0;

    oracle::Rng rng(2024);
    for (int n = 0; n < 200;) {
        std::int64_t const d = static_cast<std::int64_t>(rng.uniform(2, 50));
        std::uint64_t const p = rng.uniform(3, 500);
        if (!is_squarefree(d) || !is_prime(p) || d % static_cast<std::int64_t>(p) == 0 || class_number(d) % p == 0)
            continue;
        bool const f = fermat_quotient_test(d, p).regulator == Condition::fails;
        auto const lv = iwasawa_log(d, fundamental_unit(d).as_number(), p, 6);
        disagree_a += f != (lv.sqrt_d_valuation().value >= 2);
        ++n;
    }

    for (int n = 0; n < 50;) {
        std::int64_t const d = -static_cast<std::int64_t>(rng.uniform(1, 300));
        std::uint64_t const p = std::vector<std::uint64_t>{2, 3, 5, 7}[rng.uniform(0, 3)];
        std::uint64_t const ell = rng.uniform(2, 150);
        if (!is_squarefree(d) || !is_prime(ell) || ell == p)
            continue;
        std::int64_t const D = fundamental_discriminant(d);
        if (kronecker(D, static_cast<std::int64_t>(ell)) == -1)
            continue;
        auto const I = prime_ideal(D, ell);
        auto const m = static_cast<unsigned>(class_group(D).order_of(prime_form(D, ell)));
        disagree_b += !(log_prime_ideal(d, I, m, p, 8) == log_prime_ideal(d, I, 2 * m, p, 8));
        ++n;
    }

    int fields = 0;
    for (std::int64_t D = -199; D < 0; ++D) {
        if (!is_fundamental_discriminant(D))
            continue;
        std::int64_t const d = D % 4 == 0 ? D / 4 : D;
        auto const c = condition_class_test(d, 2, 12);
        disagree_c += c == Condition::undetermined || (c == Condition::holds) != footnote3_classifier(D);
        ++fields;
    }
    double const dt = seconds_since(t0);
    bool const ok = disagree_a + disagree_b + disagree_c == 0 && dt < 120.0;
    return {ok, "disagreements " + std::to_string(disagree_a) + "/" + std::to_string(disagree_b) + "/" +
                    std::to_string(disagree_c) + " over 200/50/" + std::to_string(fields) + ", " +
                    std::to_string(dt) + " s"};
}

Outcome report_regression()
{
    auto const a = run_cli({"report", "sqrt:-7"});
    auto const b = run_cli({"report", "sqrt:3"});
    auto const c = run_cli({"compare", "sqrt:3", "sqrt:7"});
    bool ok = a == golden("report_sqrt-7.txt") && b == golden("report_sqrt3.txt") &&
              c == golden("compare_sqrt3_sqrt7.txt");
    ok = ok && run_cli({"report", "sqrt:-7", "--json"}) == golden("report_sqrt-7.json");
    ok = ok && run_cli({"report", "sqrt:3", "--json"}) == golden("report_sqrt3.json");
    ok = ok && a.find("known layer Gal(Kab/F_inf) = Zhat^2 x prod_{n>=1} Z/nZ\n") != std::string::npos;
    ok = ok && b.find("known layer Gal(Kab/F_inf) = Zhat^1 x prod_{n>=1} Z/nZ\n") != std::string::npos;
    ok = ok && c.rfind("known layers isomorphic\n", 0) == 0;
    return {ok, ""};
}

} // namespace

int main()
{
    std::vector<std::pair<std::string, std::function<Outcome()>>> const criteria{
        {"invariants exact", invariants_exact},
        {"unit scan up to 2e6", prational_scan},
        {"fermat quotient at (2, 13)", worked_example},
        {"forbidden exponents absent", scan_soundness},
        {"k=1 density", density},
        {"splitting facts", spot_facts},
        {"oracle equivalences", oracle_equivalences},
        {"report golden files", report_regression},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o{false, ""};
        try {
            o = criteria[i].second();
        } catch (std::exception const& e) {
            o.detail = std::string("exception: ") + e.what();
        }
        failed += !o.pass;
        std::printf("criterion %zu %-28s %s%s%s\n", i + 1, criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL",
                    o.detail.empty() ? "" : "  ", o.detail.c_str());
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
