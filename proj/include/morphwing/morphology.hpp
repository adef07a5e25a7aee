#pragma once

#include <optional>
#include <string>
#include <vector>

#include "morphwing/aero.hpp"
#include "morphwing/linkage.hpp"

namespace morphwing {

// Everything needed to evaluate the coupled linkage + aero model at a phase.
struct MorphModel {
    LinkageParams linkage;
    PhaseMapping mapping;
    WingGeometry geometry;
    AirfoilPolar polar;
    FlightCondition condition;
    StabilityConfig stability;
};

struct StatePointValues {
    DihedralPair dihedrals;
    double lift_drag_ratio = 0.0;
    double cl_beta = 0.0;       // total, per rad
    double roll_moment = 0.0;   // N*m at the condition's sideslip
    double mu_rad = 0.0;        // transmission angle
};

// One evaluated phase. Unassemblable phases carry no values (honest gap).
struct StatePoint {
    double phase_deg = 0.0;
    std::optional<StatePointValues> values;

    bool assemblable() const { return values.has_value(); }
};

// Uniform curve over phase in [0, 360). The embedded model plus grid step is
// the full provenance: re-running the sweep on them is bit-identical.
struct MorphCurve {
    std::vector<StatePoint> points;
    double grid_step_deg = 0.0;
    MorphModel model;
};

// Solve the linkage at one phase and push the resulting dihedrals through
// the aero model. Unassemblable -> flagged gap; StallExceeded /
// FlowRegimeViolation / ZeroDrag propagate as errors.
StatePoint evaluate_phase(const MorphModel& model, double phase_deg);

// grid_step_deg in (0, 10]. Throws EmptySweep when no phase assembles.
MorphCurve sweep_morphology(const MorphModel& model, double grid_step_deg);

struct SelectionThresholds {
    double kappa = 0.3;             // high-maneuverability floor: K >= kappa * max K
    double stability_margin = 0.0;  // gliding requires cl_beta < -margin
};

struct SelectedState {
    StatePoint point;
    std::string rationale;
};

struct FlightStateSet {
    SelectedState gliding;
    SelectedState descending;
    SelectedState high_maneuverability;
};

// gliding: argmax K among laterally stable phases; descending: argmin
// cl_beta; high-maneuverability: argmax cl_beta subject to K >= kappa*maxK.
// Ties break to the smallest phase. Throws CriterionUnsatisfiable when a
// criterion has an empty feasible set or the three phases collide.
FlightStateSet select_flight_states(const MorphCurve& curve,
                                    const SelectionThresholds& thresholds);

// Reference row for one state; absent fields are skipped in comparisons.
struct StateAnchor {
    std::optional<double> phase_deg;
    std::optional<double> psi1_deg;
    std::optional<double> psi2_deg;
    std::optional<double> lift_drag_ratio;
    std::optional<double> roll_moment_nm;
};

struct AnchorSet {
    std::optional<StateAnchor> gliding;
    std::optional<StateAnchor> descending;
    std::optional<StateAnchor> high_maneuverability;
};

struct ComparisonEntry {
    std::string state;
    std::string field;
    double achieved = 0.0;
    std::optional<double> anchor;    // absent -> no reference available
    std::optional<double> delta;     // achieved - anchor
    std::optional<double> relative;  // delta / |anchor| when anchor != 0
};

struct StateComparison {
    std::vector<ComparisonEntry> entries;
};

// Achieved values of the selected states against the anchor rows; deltas are
// marked absent wherever the anchor lacks the field.
StateComparison state_report(const FlightStateSet& set, const AnchorSet& anchors);

}  // namespace morphwing
