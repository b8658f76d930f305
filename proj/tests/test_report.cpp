#include <algorithm>

#include "doctest.h"
#include "oracles.hpp"

#include "json.hpp"

#include "abcl/report.hpp"

using namespace abcl;

namespace {

/* type string from (r2, delta, w) alone */
std::string known_layer_from(unsigned r2, unsigned delta, std::uint64_t w)
{
    std::string cyc = w == 1 ? "Z/nZ" : "Z/" + std::to_string(w) + "nZ";
    std::string prod = delta ? "prod_{n>=1} (Z/2Z x " + cyc + ")" : "prod_{n>=1} " + cyc;
    return "Zhat^" + std::to_string(r2 + 1) + " x " + prod;
}

std::vector<FieldDescriptor> sample_fields()
{
    std::vector<FieldDescriptor> ks{rational_field()};
    for (std::int64_t d : {-1, -2, -3, -5, -7, -11, -15, -19, 2, 3, 5, 6, 7, 10, 11, 13, 17})
        ks.push_back(field_from_sqrt(d));
    for (std::uint64_t n : {5, 7, 8, 9, 12, 15, 16, 20, 24})
        for (bool real : {false, true})
            ks.push_back(field_from_cyclotomic(n, real));
    return ks;
}

} // namespace

TEST_CASE("known layer examples")
{
    CHECK(build_report(field_from_sqrt(-7)).known_layer() == "Zhat^2 x prod_{n>=1} Z/nZ");
    CHECK(build_report(field_from_sqrt(3)).known_layer() == "Zhat^1 x prod_{n>=1} Z/nZ");
    CHECK(build_report(field_from_sqrt(2)).known_layer() == "Zhat^1 x prod_{n>=1} (Z/2Z x Z/8nZ)");
    CHECK(compare_fields(field_from_sqrt(3), field_from_sqrt(7)).known_isomorphic);
    auto const c = compare_fields(field_from_sqrt(2), field_from_sqrt(3));
    CHECK_FALSE(c.known_isomorphic);
    CHECK(std::find(c.differences.begin(), c.differences.end(), "w 8 vs 1") != c.differences.end());
}

TEST_CASE("defect layer of Q(sqrt 2) contains T_13 = Z/13")
{
    auto const r = build_report(field_from_sqrt(2));
    auto const it = std::find_if(r.defects.begin(), r.defects.end(), [](auto const& d) { return d.p == 13; });
    REQUIRE(it != r.defects.end());
    CHECK(it->tp == "13");
    CHECK(it->verdict == "not p-rational");
}

TEST_CASE("type strings regenerate from the parameters")
{
    for (auto const& k : sample_fields()) {
        auto const r = build_report(k, {{2, 3}, 10, 0});
        auto const j = nlohmann::json::parse(r.to_json());
        auto const& inv = j["invariants"];
        std::string const expect =
            known_layer_from(j["signature"]["r2"].get<unsigned>(), inv["delta"].get<unsigned>(), inv["w"].get<std::uint64_t>());
        CAPTURE(k.spec());
        CHECK(j["known_layer"] == expect);
        std::uint64_t w = 1;
        for (auto const& [p, wp] : inv["w_p"].items())
            w *= wp.get<std::uint64_t>();
        CHECK(w == inv["w"].get<std::uint64_t>());
        for (auto const& t : j["towers"])
            if (t["extension"] == "Kab/F_inf" || t["extension"] == "Kab/F_inf^1")
                CHECK(t["group"] == expect);
    }
}

TEST_CASE("compare is an equivalence on the known layer")
{
    auto const ks = sample_fields();
    for (auto const& a : ks) {
        CHECK(compare_fields(a, a).known_isomorphic);
        for (auto const& b : ks) {
            bool const ab = compare_fields(a, b).known_isomorphic;
            CHECK(ab == compare_fields(b, a).known_isomorphic);
            CHECK(ab == (compute_w_delta(a).known_layer_type() == compute_w_delta(b).known_layer_type()));
            if (!ab)
                continue;
            for (auto const& c : ks)
                if (compare_fields(b, c).known_isomorphic)
                    CHECK(compare_fields(a, c).known_isomorphic);
        }
    }
}

TEST_CASE("T_p^1 divides T_p with the local roots of unity quotient")
{
    for (std::int64_t d = -40; d <= 40; ++d) {
        if (d == 0 || d == 1 || !is_squarefree(d))
            continue;
        auto const r = build_report(field_from_sqrt(d), {{2, 3, 5, 7}, 10, 0});
        for (auto const& e : r.defects) {
            CAPTURE(d);
            CAPTURE(e.p);
            if (e.tp1 == "unknown")
                continue;
            auto const tp = std::stoull(e.tp);
            auto const tp1 = std::stoull(e.tp1);
            CHECK(tp == tp1 * e.mu_quotient);
        }
    }
}

TEST_CASE("mandatory disclaimers")
{
    for (auto const& k : sample_fields()) {
        auto const r = build_report(k, {{2, 3}, 10, 0});
        REQUIRE(!r.disclaimers.empty());
        CHECK(r.disclaimers.front().find("untested p") != std::string::npos);
        CHECK(r.hypotheses.size() == 2);
        bool const all_rational = std::all_of(r.defects.begin(), r.defects.end(),
                                              [](auto const& e) { return e.verdict == "p-rational"; });
        CHECK(r.product_form_at_tested_p == all_rational);
        bool claims_not = std::find(r.disclaimers.begin(), r.disclaimers.end(),
                                    "Gal(Kab/K) is not claimed to be of product form") != r.disclaimers.end();
        CHECK(claims_not == !all_rational);
    }
}

TEST_CASE("special case flag")
{
    auto const r = build_report(field_from_cyclotomic(16, true), {{2}, 10, 0});
    CHECK(r.defects.front().special_case);
    CHECK(r.disclaimers.back().find("index 2") != std::string::npos);
    CHECK_FALSE(build_report(field_from_sqrt(2), {{2}, 10, 0}).defects.front().special_case);
    CHECK_FALSE(build_report(field_from_cyclotomic(16, false), {{2}, 10, 0}).defects.front().special_case);
}

TEST_CASE("report with residue scans")
{
    auto const r = build_report(field_from_sqrt(2), {{2, 3}, 10, 20000});
    for (auto const& e : r.defects) {
        REQUIRE(e.scan_pass.has_value());
        CHECK(*e.scan_pass);
    }
    CHECK(r.to_json().find(R"("scan": "PASS")") != std::string::npos);
}
