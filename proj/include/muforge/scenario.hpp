#pragma once

#include "muforge/galois.hpp"
#include "muforge/intertwine.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace muforge {

struct TaskDef {
    std::string name;
    std::string op;
    nlohmann::json args;
    nlohmann::json expect;
};

/// A fully resolved scenario: validated spectral datum, named facets,
/// supports, induction data and Galois elements, plus the task list.
struct Scenario {
    int schema = 1;
    std::string name;
    SpectralDatum datum;
    std::map<std::string, ParabolicFacet> facets;
    std::map<std::string, CuspidalSupport> supports;
    std::map<std::string, InductionDatum> induction_data;
    std::map<std::string, GaloisElement> galois;
    std::vector<TaskDef> tasks;
    std::string source_hash;

    const ParabolicFacet& facet(const std::string& id) const;
    const CuspidalSupport& support(const std::string& id) const;
    const InductionDatum& datum_by_id(const std::string& id) const;
    const GaloisElement& galois_by_id(const std::string& id) const;
};

/// Scalars accept compact monomial literals ("t^2", "-t", "2/3",
/// "3*t^-1") or {"num": [...], "den": [...]} coefficient lists.
Scalar parse_scalar(const nlohmann::json& j);
nlohmann::json scalar_to_json(const Scalar& s);

TorusPoint parse_point(const nlohmann::json& j, size_t rank);
nlohmann::json point_to_json(const TorusPoint& p);

RatVec parse_rat_vec(const nlohmann::json& j, size_t rank);
nlohmann::json rat_vec_to_json(const RatVec& v);

/// Parses, resolves references and runs validate_datum; throws with the
/// validation report on failure.
Scenario parse_scenario(const std::string& text, const std::string& display_name);
Scenario load_scenario(const std::string& path);

std::string fnv1a_hex(const std::string& data);

} // namespace muforge
