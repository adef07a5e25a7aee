#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "morphwing/morphology.hpp"
#include "morphwing/synthesis.hpp"

namespace morphwing {

struct AeroBlock {
    WingGeometry geometry;
    AirfoilPolar polar;
    FlightCondition condition;
    StabilityConfig stability;
};

struct SelectionConfig {
    SelectionThresholds thresholds;
    double grid_step_deg = 1.0;
};

struct OutputConfig {
    std::string directory = "out";
    bool csv = true;
    bool json = true;
    bool gnuplot = true;
};

// Fully validated project configuration. Angles are degrees in the file and
// radians in here; that conversion happens at this boundary only.
struct ProjectConfig {
    LinkageParams linkage;
    PhaseMapping mapping;
    std::optional<AeroBlock> aero;
    std::optional<SynthesisProblem> synthesis;
    std::optional<AnchorSet> anchors;
    SelectionConfig selection;
    OutputConfig output;

    nlohmann::json canonical;  // defaults applied, overrides folded in
    std::string config_hash;   // FNV-1a 64 of the canonical dump

    // Requires the aero block; throws SchemaViolation naming it otherwise.
    MorphModel morph_model() const;
};

// "path.to.leaf=value" assignments applied to the raw JSON before binding.
// Values parse as JSON scalars, falling back to plain strings.
struct ConfigOverride {
    std::string path;
    std::string value;
};

ConfigOverride parse_override(const std::string& assignment);  // "k=v"

// Strict binding: unknown keys are rejected with their full path, types are
// checked, defaults fill in absent optionals.
ProjectConfig parse_config(const nlohmann::json& root,
                           const std::vector<ConfigOverride>& overrides = {});

// Reads and parses the file; ParseError carries the parser's position info.
ProjectConfig load_config(const std::string& path,
                          const std::vector<ConfigOverride>& overrides = {});

// The bundled reference configuration (also written by `morphwing init`-less
// flows such as tests): reference linkage, low-speed condition, reference
// anchors, default synthesis problem.
nlohmann::json example_config_json();

std::string fnv1a64_hex(const std::string& bytes);

// Degrees for JSON echoes of config-authored angles: collapses the
// deg->rad->deg conversion wobble (e.g. 60 -> 59.99999999999999) by rounding
// to 13 significant digits, far below any tolerance in play.
double echo_deg(double rad);

}  // namespace morphwing
