#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "abcl/cft.hpp"
#include "abcl/prational.hpp"

namespace abcl {

enum class Canonicity
{
    can,
    nc,
    label_only, /* field named, group not computed */
};

std::string to_string(Canonicity c);

struct TowerEntry
{
    std::string label;     /* e.g. "F_inf" */
    std::string extension; /* e.g. "Kab/F_inf" */
    std::string group;     /* type string */
    Canonicity canonicity;
};

struct DefectEntry
{
    std::uint64_t p;
    std::string verdict;
    std::string tp;  /* |T_p|, or a bound, or "unknown" */
    std::string tp1; /* |T_p^1| */
    std::uint64_t mu_quotient;
    std::optional<bool> scan_pass;
    bool special_case = false;
};

struct GaloisStructureReport
{
    std::string field;
    unsigned r1;
    unsigned r2;
    StructureInvariants invariants;
    std::vector<DefectEntry> defects;
    std::vector<TowerEntry> towers;
    std::vector<std::string> assumptions;
    std::vector<std::string> hypotheses;
    std::vector<std::string> disclaimers;
    bool product_form_at_tested_p;

    std::string known_layer() const { return invariants.known_layer_type(); }
    std::string to_json() const;
    std::string to_text() const;
};

struct ReportOptions
{
    std::vector<std::uint64_t> p_list{2, 3, 5, 7, 11, 13};
    unsigned precision = default_precision;
    std::uint64_t scan_bound = 0; /* 0: no residue scans */
};

GaloisStructureReport build_report(FieldDescriptor const& k, ReportOptions const& opt = {});

struct FieldComparison
{
    std::string field1;
    std::string field2;
    std::string layer1;
    std::string layer2;
    bool known_isomorphic;
    std::vector<std::string> differences;

    std::string to_json() const;
    std::string to_text() const;
};

/* known layers agree iff (r2, delta, w) agree */
FieldComparison compare_fields(FieldDescriptor const& k1, FieldDescriptor const& k2);

} // namespace abcl
