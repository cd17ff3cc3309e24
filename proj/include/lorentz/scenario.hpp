#pragma once
#include <nlohmann/json.hpp>

#include "lorentz/fixtures.hpp"
#include "lorentz/variational.hpp"

namespace lorentz {

using json = nlohmann::ordered_json;

/// Resolved scenario: ambient model, named fields/immersions/bases, checks.
struct ScenarioContext {
    std::string id;
    std::uint64_t seed = 1;
    double tol_scale = 1.0;
    SpacePtr ambient;
    std::optional<GRWModel> grw;
    std::optional<HyperquadricModel> hyperquadric;
    std::map<std::string, AmbientVectorField> fields;
    std::map<std::string, SpacelikeImmersion> immersions;
    std::map<std::string, LeafSubmanifoldImmersion> bases;
    json checks; // array of check entries

    const AmbientVectorField& field(const std::string& name) const;
    const SpacelikeImmersion& immersion(const std::string& name) const;
    const LeafSubmanifoldImmersion& base(const std::string& name) const;
};

struct CheckResult {
    std::string status = "pass"; // pass | fail | skip
    std::vector<std::pair<std::string, double>> residuals;
    double tolerance = 0.0;
    std::string detail;
};

struct Report {
    std::string scenario_id;
    std::uint64_t seed = 1;
    json document; // full serialized report
    bool all_pass = true;
};

/// Parse and execute a scenario configuration document.
Report run_scenario_json(const json& config);
Report run_scenario_file(const std::string& path);

/// Named built-in scenario suites (returned as config documents).
json builtin_scenario(const std::string& name);

struct CatalogEntry {
    std::string name;
    std::string description;
};

struct Catalog {
    std::vector<CatalogEntry> models;
    std::vector<CatalogEntry> fields;
    std::vector<CatalogEntry> immersions;
    std::vector<CatalogEntry> bases;
    std::vector<CatalogEntry> suites;
    std::vector<CatalogEntry> checks; // name -> operation it exercises
};

/// Deterministically ordered catalog of built-ins.
Catalog list_builtins();

/// Serialize a report: format "json" or "text". Residuals are decimal strings
/// with 17 significant digits so identical runs are byte-identical.
std::string emit_report(const Report& report, const std::string& format);

/// Fixed-format helper shared by report serialization and tests.
std::string format_residual(double v);

/// Remove volatile fields (runtimes, environment fingerprint) so byte
/// comparisons across runs are meaningful.
json scrub_volatile(json report);

} // namespace lorentz
