#include "morphwing/morphology.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "morphwing/errors.hpp"

namespace morphwing {

StatePoint evaluate_phase(const MorphModel& model, double phase_deg) {
    StatePoint point;
    point.phase_deg = phase_deg;

    const double crank = model.mapping.crank_angle_at(deg_to_rad(phase_deg));
    LinkagePose pose;
    try {
        pose = solve_fourbar(model.linkage, crank, model.mapping.branch);
    } catch (const Unassemblable&) {
        return point;  // gap, not a failure
    }

    StatePointValues v;
    v.dihedrals = pose_to_dihedrals(pose, model.linkage, model.mapping);
    v.mu_rad = pose.transmission_angle;

    const AeroResult aero = evaluate_aero(model.condition, model.geometry, v.dihedrals,
                                          model.polar, model.stability);
    v.lift_drag_ratio = aero.lift_drag_ratio;
    v.cl_beta = aero.cl_beta.total;
    v.roll_moment = aero.roll_moment;
    point.values = v;
    return point;
}

MorphCurve sweep_morphology(const MorphModel& model, double grid_step_deg) {
    if (!(grid_step_deg > 0.0) || grid_step_deg > 10.0) {
        throw std::invalid_argument("grid_step_deg must lie in (0, 10]");
    }
    MorphCurve curve;
    curve.grid_step_deg = grid_step_deg;
    curve.model = model;

    bool any = false;
    for (int i = 0;; ++i) {
        const double phase_deg = i * grid_step_deg;
        if (phase_deg >= 360.0) break;
        StatePoint point = evaluate_phase(model, phase_deg);
        any = any || point.assemblable();
        curve.points.push_back(std::move(point));
    }
    if (!any) throw EmptySweep("no phase in [0, 360) deg is assemblable");
    return curve;
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

FlightStateSet select_flight_states(const MorphCurve& curve,
                                    const SelectionThresholds& thresholds) {
    int assemblable = 0;
    for (const auto& p : curve.points) {
        if (p.assemblable()) ++assemblable;
    }
    if (assemblable < 3) {
        throw CriterionUnsatisfiable("selection needs at least 3 assemblable points, got " +
                                     fmt(assemblable));
    }

    const StatePoint* gliding = nullptr;
    const StatePoint* descending = nullptr;
    const StatePoint* maneuver = nullptr;
    double max_k = -std::numeric_limits<double>::infinity();

    for (const auto& p : curve.points) {
        if (!p.assemblable()) continue;
        if (p.values->lift_drag_ratio > max_k) max_k = p.values->lift_drag_ratio;
    }

    for (const auto& p : curve.points) {
        if (!p.assemblable()) continue;
        const StatePointValues& v = *p.values;
        if (v.cl_beta < -thresholds.stability_margin &&
            (!gliding || v.lift_drag_ratio > gliding->values->lift_drag_ratio)) {
            gliding = &p;
        }
        if (!descending || v.cl_beta < descending->values->cl_beta) {
            descending = &p;
        }
        if (v.lift_drag_ratio >= thresholds.kappa * max_k &&
            (!maneuver || v.cl_beta > maneuver->values->cl_beta)) {
            maneuver = &p;
        }
    }

    if (!gliding) {
        throw CriterionUnsatisfiable(
            "gliding: no phase is laterally stable (cl_beta < -" +
            fmt(thresholds.stability_margin) + ")");
    }
    if (!maneuver) {
        throw CriterionUnsatisfiable(
            "high-maneuverability: no phase satisfies K >= " + fmt(thresholds.kappa) +
            " * max K");
    }
    if (gliding->phase_deg == descending->phase_deg ||
        gliding->phase_deg == maneuver->phase_deg ||
        descending->phase_deg == maneuver->phase_deg) {
        throw CriterionUnsatisfiable("selected phases are not distinct (" +
                                     fmt(gliding->phase_deg) + ", " +
                                     fmt(descending->phase_deg) + ", " +
                                     fmt(maneuver->phase_deg) + " deg)");
    }

    FlightStateSet set;
    set.gliding.point = *gliding;
    set.gliding.rationale =
        "argmax K over laterally stable phases: K = " + fmt(gliding->values->lift_drag_ratio) +
        ", cl_beta = " + fmt(gliding->values->cl_beta) + " /rad";
    set.descending.point = *descending;
    set.descending.rationale =
        "argmin cl_beta: cl_beta = " + fmt(descending->values->cl_beta) + " /rad";
    set.high_maneuverability.point = *maneuver;
    set.high_maneuverability.rationale =
        "argmax cl_beta subject to K >= " + fmt(thresholds.kappa) +
        " * max K: cl_beta = " + fmt(maneuver->values->cl_beta) +
        " /rad, K = " + fmt(maneuver->values->lift_drag_ratio);
    return set;
}

namespace {

void compare_state(const std::string& name, const SelectedState& state,
                   const std::optional<StateAnchor>& anchor, StateComparison& out) {
    const StatePointValues& v = *state.point.values;
    struct Field {
        const char* field;
        double achieved;
        std::optional<double> ref;
    };
    const StateAnchor none{};
    const StateAnchor& a = anchor ? *anchor : none;
    const Field fields[] = {
        {"phase_deg", state.point.phase_deg, a.phase_deg},
        {"psi1_deg", rad_to_deg(v.dihedrals.psi1), a.psi1_deg},
        {"psi2_deg", rad_to_deg(v.dihedrals.psi2), a.psi2_deg},
        {"lift_drag_ratio", v.lift_drag_ratio, a.lift_drag_ratio},
        {"roll_moment_Nm", v.roll_moment, a.roll_moment_nm},
    };
    for (const auto& f : fields) {
        ComparisonEntry e;
        e.state = name;
        e.field = f.field;
        e.achieved = f.achieved;
        if (f.ref) {
            e.anchor = *f.ref;
            e.delta = f.achieved - *f.ref;
            if (*f.ref != 0.0) e.relative = *e.delta / std::abs(*f.ref);
        }
        out.entries.push_back(std::move(e));
    }
}

}  // namespace

StateComparison state_report(const FlightStateSet& set, const AnchorSet& anchors) {
    StateComparison out;
    compare_state("gliding", set.gliding, anchors.gliding, out);
    compare_state("descending", set.descending, anchors.descending, out);
    compare_state("high_maneuverability", set.high_maneuverability,
                  anchors.high_maneuverability, out);
    return out;
}

}  // namespace morphwing
