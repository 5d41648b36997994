#pragma once

#include <string>

#include <json.hpp>

#include "certify.hpp"
#include "constructions.hpp"
#include "group.hpp"
#include "products.hpp"

namespace pdsforge {

using ordered_json = nlohmann::ordered_json;

inline ordered_json json_ids(const ElementSet& s) {
    ordered_json arr = ordered_json::array();
    s.for_each([&](ElementId g) { arr.push_back(g); });
    return arr;
}

/// One fully censused result entry.
inline ordered_json json_certificate(const std::string& label, const Certificate& c,
                                     const ElementSet& set, bool hash_only) {
    ordered_json j;
    j["label"] = label;
    j["kind"] = to_string(c.kind);
    j["size"] = c.k;
    j["params"] = {c.v, c.k, c.lambda, c.mu};
    j["type_tags"] = c.type_tags;
    j["regular"] = c.regular;
    j["verification"] = "census";
    j["set_hash"] = c.set_hash;
    j["census_checksum"] = c.census_checksum;
    if (!hash_only) j["ids"] = json_ids(set);
    return j;
}

/// Result entry for the construction-only tier: no census, structural size
/// invariant only.
inline ordered_json json_constructed_only(const std::string& label, const ElementSet& set,
                                          std::uint64_t expected_size, bool hash_only) {
    ordered_json j;
    j["label"] = label;
    j["kind"] = "Unverified";
    j["size"] = set.size();
    j["size_invariant"] = {{"expected", expected_size},
                           {"actual", set.size()},
                           {"ok", std::uint64_t{set.size()} == expected_size}};
    j["verification"] = "constructed";
    j["set_hash"] = set.hash();
    if (!hash_only) j["ids"] = json_ids(set);
    return j;
}

inline ordered_json json_group(const GroupPtr& g) {
    ordered_json j;
    j["spec"] = g->spec_string();
    j["order"] = g->order();
    j["description"] = g->description();
    j["abelian"] = g->is_abelian();
    if (auto aff = std::dynamic_pointer_cast<const AffineGroup>(g))
        if (aff->kind() == AffineKind::G1) j["anchor"] = aff->anchor_label();
    return j;
}

inline ordered_json json_recipe(const Recipe& r) {
    ordered_json sig = ordered_json::array();
    for (const auto& s : r.signature) sig.push_back({s[0], s[1], s[2], s[3]});
    ordered_json fibers = ordered_json::array();
    for (std::size_t x = 0; x < r.fibers.size(); ++x)
        fibers.push_back({x, r.fibers[x]});
    ordered_json j;
    j["signature"] = std::move(sig);
    j["fibers"] = std::move(fibers);
    return j;
}

inline ordered_json json_scheme_constants(const SchemeConstants& sc) {
    bool symmetric = true;
    std::size_t n = sc.p.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (sc.p[i][j][k] != sc.p[j][i][k]) symmetric = false;
    ordered_json j;
    j["class_sizes"] = sc.class_sizes;
    j["p"] = sc.p;
    j["symmetric"] = symmetric;
    return j;
}

inline ordered_json json_amorphic(const AmorphicReport& rep, const std::string& mode) {
    ordered_json j;
    j["mode"] = mode;
    j["unions_checked"] = rep.unions_checked;
    j["amorphic"] = rep.amorphic;
    if (!rep.amorphic) j["first_failure"] = rep.first_failure;
    return j;
}

inline ordered_json json_error(const Error& e) {
    ordered_json j;
    j["error"] = {{"code", e.code()}, {"message", e.what()}};
    return j;
}

}  // namespace pdsforge
