#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "morphwing/errors.hpp"
#include "morphwing/morphology.hpp"

using namespace morphwing;

namespace {

MorphModel baseline_model() {
    MorphModel m;
    m.linkage.l1 = 26.2;
    m.linkage.l2 = 45.6;
    m.linkage.l3 = 46.9;
    m.linkage.l4 = 52.2;
    m.linkage.epsilon_rad = deg_to_rad(21.24);
    m.linkage.xi_rad = deg_to_rad(60.0);
    m.linkage.aux = {14.2, 265.6, 220.6, 178.2};
    return m;
}

// parallelogram rigged so that psi1 = psi2 = phase (rocker-referenced outer
// wing, no xi offset, mount offset 90 deg)
MorphModel cosine_model() {
    MorphModel m;
    m.linkage.l1 = 30.0;
    m.linkage.l2 = 60.0;
    m.linkage.l3 = 30.0;
    m.linkage.l4 = 60.0;
    m.linkage.epsilon_rad = deg_to_rad(90.0);
    m.linkage.xi_rad = 0.0;
    m.mapping.psi2_mode = Psi2Mode::Rocker;
    return m;
}

StatePoint synthetic_point(double phase_deg, double k, double cl_beta) {
    StatePoint p;
    p.phase_deg = phase_deg;
    StatePointValues v;
    v.lift_drag_ratio = k;
    v.cl_beta = cl_beta;
    p.values = v;
    return p;
}

}  // namespace

TEST_CASE("flat-wing phase gives K = CL/CD and zero dihedral stability") {
    const MorphModel m = cosine_model();
    const StatePoint p = evaluate_phase(m, 45.0);  // psi1 = psi2 = 45 - 45 = ...
    REQUIRE(p.assemblable());

    // at phase 45 the rigged mapping gives psi1 = psi2 = 45 deg; steer to the
    // flat configuration instead:
    MorphModel flat = m;
    flat.linkage.epsilon_rad = deg_to_rad(90.0 - 45.0);  // psi = phase - 45
    const StatePoint q = evaluate_phase(flat, 45.0);
    REQUIRE(q.assemblable());
    CHECK(std::abs(q.values->dihedrals.psi1) < 1e-12);
    CHECK(std::abs(q.values->dihedrals.psi2) < 1e-12);

    const double cl = lift_coefficient(flat.condition.alpha_rad, flat.polar);
    const double cd = drag_coefficient(cl, flat.polar);
    CHECK(q.values->lift_drag_ratio == doctest::Approx(cl / cd).epsilon(1e-12));
    CHECK(std::abs(q.values->cl_beta) < 1e-14);
    CHECK(std::abs(q.values->roll_moment) < 1e-13);
}

TEST_CASE("unassemblable phases come back flagged without values") {
    MorphModel m = baseline_model();
    m.linkage = {30, 20, 25, 28, 0.0, 0.0, {}};  // double-rocker
    bool saw_gap = false;
    for (double phase = 0.0; phase < 360.0; phase += 10.0) {
        const StatePoint p = evaluate_phase(m, phase);
        if (!p.assemblable()) {
            saw_gap = true;
            CHECK_FALSE(p.values.has_value());
        }
    }
    CHECK(saw_gap);
}

TEST_CASE("stall and flow-regime violations propagate as errors") {
    MorphModel m = baseline_model();
    m.condition.alpha_rad = deg_to_rad(20.0);  // past the 12 deg stall default
    CHECK_THROWS_AS(evaluate_phase(m, 10.0), StallExceeded);

    MorphModel fast = baseline_model();
    fast.condition.airspeed = 150.0;  // Mach 0.44
    CHECK_THROWS_AS(evaluate_phase(fast, 10.0), FlowRegimeViolation);
}

TEST_CASE("baseline sweep covers the circle with no gaps") {
    const MorphCurve curve = sweep_morphology(baseline_model(), 1.0);
    CHECK(curve.points.size() == 360);
    for (const auto& p : curve.points) CHECK(p.assemblable());
}

TEST_CASE("every sweep point equals the direct module composition") {
    const MorphModel m = baseline_model();
    const MorphCurve curve = sweep_morphology(m, 5.0);
    for (const auto& p : curve.points) {
        const StatePoint direct = evaluate_phase(m, p.phase_deg);
        REQUIRE(direct.assemblable() == p.assemblable());
        if (!p.assemblable()) continue;

        CHECK(p.values->lift_drag_ratio == direct.values->lift_drag_ratio);
        CHECK(p.values->cl_beta == direct.values->cl_beta);

        // and the direct call decomposes into the constituent modules
        const LinkagePose pose =
            solve_fourbar(m.linkage, m.mapping.crank_angle_at(deg_to_rad(p.phase_deg)),
                          m.mapping.branch);
        const DihedralPair d = pose_to_dihedrals(pose, m.linkage, m.mapping);
        CHECK(p.values->dihedrals.psi1 == d.psi1);
        CHECK(p.values->dihedrals.psi2 == d.psi2);
        CHECK(p.values->mu_rad == pose.transmission_angle);

        const AeroResult aero =
            evaluate_aero(m.condition, m.geometry, d, m.polar, m.stability);
        CHECK(p.values->lift_drag_ratio == aero.lift_drag_ratio);
        CHECK(p.values->cl_beta == aero.cl_beta.total);
        CHECK(p.values->roll_moment == aero.roll_moment);
    }
}

TEST_CASE("coarse grid is an exact subsample of the fine grid") {
    const MorphModel m = baseline_model();
    const MorphCurve fine = sweep_morphology(m, 1.0);
    const MorphCurve coarse = sweep_morphology(m, 2.0);
    REQUIRE(fine.points.size() == 2 * coarse.points.size());
    for (size_t i = 0; i < coarse.points.size(); ++i) {
        const auto& c = coarse.points[i];
        const auto& f = fine.points[2 * i];
        CHECK(c.phase_deg == f.phase_deg);
        REQUIRE(c.assemblable() == f.assemblable());
        if (c.assemblable()) {
            CHECK(c.values->lift_drag_ratio == f.values->lift_drag_ratio);
            CHECK(c.values->cl_beta == f.values->cl_beta);
            CHECK(c.values->roll_moment == f.values->roll_moment);
        }
    }
}

TEST_CASE("rigged parallelogram sweep follows the pure cosine factor") {
    const MorphModel m = cosine_model();
    const double k0 = lift_coefficient(m.condition.alpha_rad, m.polar) /
                      drag_coefficient(lift_coefficient(m.condition.alpha_rad, m.polar),
                                       m.polar);
    for (double phase = 1.0; phase <= 89.0; phase += 1.0) {
        const StatePoint p = evaluate_phase(m, phase);
        REQUIRE(p.assemblable());
        const double expect = k0 * std::cos(deg_to_rad(phase));
        CHECK(p.values->lift_drag_ratio == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("regenerating a curve from its provenance is bit-identical") {
    const MorphCurve curve = sweep_morphology(baseline_model(), 1.0);
    const MorphCurve again = sweep_morphology(curve.model, curve.grid_step_deg);
    REQUIRE(curve.points.size() == again.points.size());
    for (size_t i = 0; i < curve.points.size(); ++i) {
        const auto& a = curve.points[i];
        const auto& b = again.points[i];
        CHECK(a.phase_deg == b.phase_deg);
        REQUIRE(a.assemblable() == b.assemblable());
        if (a.assemblable()) {
            CHECK(a.values->dihedrals.psi1 == b.values->dihedrals.psi1);
            CHECK(a.values->dihedrals.psi2 == b.values->dihedrals.psi2);
            CHECK(a.values->lift_drag_ratio == b.values->lift_drag_ratio);
            CHECK(a.values->cl_beta == b.values->cl_beta);
            CHECK(a.values->roll_moment == b.values->roll_moment);
            CHECK(a.values->mu_rad == b.values->mu_rad);
        }
    }
}

TEST_CASE("selection picks planted extrema") {
    MorphCurve curve;
    curve.grid_step_deg = 10.0;
    for (double phase = 0.0; phase < 360.0; phase += 10.0) {
        // K peaks at 90 deg; cl_beta minimal at 200 deg, positive near 300
        const double k = 10.0 - std::abs(phase - 90.0) / 20.0;
        const double cl_beta =
            -0.1 + 0.00001 * (phase - 200.0) * (phase - 200.0) / 10.0;
        curve.points.push_back(synthetic_point(phase, k, cl_beta));
    }
    const FlightStateSet set = select_flight_states(curve, SelectionThresholds{});
    CHECK(set.gliding.point.phase_deg == 90.0);
    CHECK(set.descending.point.phase_deg == 200.0);
    CHECK(set.high_maneuverability.point.phase_deg != 90.0);
    CHECK_FALSE(set.gliding.rationale.empty());
}

TEST_CASE("selection fails when no phase is stable") {
    MorphCurve curve;
    for (double phase = 0.0; phase < 360.0; phase += 30.0) {
        curve.points.push_back(synthetic_point(phase, 5.0 + phase / 100.0, 0.02));
    }
    CHECK_THROWS_AS(select_flight_states(curve, SelectionThresholds{}),
                    CriterionUnsatisfiable);
}

TEST_CASE("selection needs three assemblable points") {
    MorphCurve curve;
    curve.points.push_back(synthetic_point(0.0, 5.0, -0.1));
    StatePoint gap;
    gap.phase_deg = 10.0;
    curve.points.push_back(gap);
    curve.points.push_back(synthetic_point(20.0, 6.0, -0.2));
    CHECK_THROWS_AS(select_flight_states(curve, SelectionThresholds{}),
                    CriterionUnsatisfiable);
}

TEST_CASE("kappa threshold excludes low-K phases from maneuverability") {
    MorphCurve curve;
    curve.points.push_back(synthetic_point(0.0, 10.0, -0.20));
    curve.points.push_back(synthetic_point(10.0, 9.0, -0.30));
    curve.points.push_back(synthetic_point(20.0, 1.0, +0.50));  // below 0.3 * 10
    curve.points.push_back(synthetic_point(30.0, 4.0, +0.20));
    const FlightStateSet set = select_flight_states(curve, SelectionThresholds{});
    CHECK(set.high_maneuverability.point.phase_deg == 30.0);

    SelectionThresholds permissive;
    permissive.kappa = 0.05;
    const FlightStateSet loose = select_flight_states(curve, permissive);
    CHECK(loose.high_maneuverability.point.phase_deg == 20.0);
}

TEST_CASE("scaling K by a positive factor leaves selections unchanged") {
    MorphCurve curve;
    for (double phase = 0.0; phase < 360.0; phase += 5.0) {
        const double k = 6.0 + 3.0 * std::sin(deg_to_rad(phase + 33.0));
        const double cb = -0.1 + 0.15 * std::sin(deg_to_rad(2.0 * phase));
        curve.points.push_back(synthetic_point(phase, k, cb));
    }
    const FlightStateSet base = select_flight_states(curve, SelectionThresholds{});

    MorphCurve scaled = curve;
    for (auto& p : scaled.points) p.values->lift_drag_ratio *= 3.7;
    const FlightStateSet after = select_flight_states(scaled, SelectionThresholds{});
    CHECK(base.gliding.point.phase_deg == after.gliding.point.phase_deg);
    CHECK(base.descending.point.phase_deg == after.descending.point.phase_deg);
    CHECK(base.high_maneuverability.point.phase_deg ==
          after.high_maneuverability.point.phase_deg);
}

TEST_CASE("ties break toward the smallest phase") {
    MorphCurve curve;
    curve.points.push_back(synthetic_point(0.0, 5.0, -0.1));
    curve.points.push_back(synthetic_point(10.0, 5.0, -0.1));  // same K as phase 0
    curve.points.push_back(synthetic_point(20.0, 5.0, -0.3));
    curve.points.push_back(synthetic_point(30.0, 4.0, 0.3));
    const FlightStateSet set = select_flight_states(curve, SelectionThresholds{});
    CHECK(set.gliding.point.phase_deg == 0.0);  // K tie among 0/10/20 -> earliest
    CHECK(set.descending.point.phase_deg == 20.0);
    CHECK(set.high_maneuverability.point.phase_deg == 30.0);
}

TEST_CASE("state report with anchors equal to achieved has zero deltas") {
    const MorphCurve curve = sweep_morphology(baseline_model(), 1.0);
    const FlightStateSet set = select_flight_states(curve, SelectionThresholds{});

    auto echo = [](const SelectedState& s) {
        StateAnchor a;
        a.phase_deg = s.point.phase_deg;
        a.psi1_deg = rad_to_deg(s.point.values->dihedrals.psi1);
        a.psi2_deg = rad_to_deg(s.point.values->dihedrals.psi2);
        a.lift_drag_ratio = s.point.values->lift_drag_ratio;
        a.roll_moment_nm = s.point.values->roll_moment;
        return a;
    };
    AnchorSet anchors;
    anchors.gliding = echo(set.gliding);
    anchors.descending = echo(set.descending);
    anchors.high_maneuverability = echo(set.high_maneuverability);

    const StateComparison cmp = state_report(set, anchors);
    CHECK(cmp.entries.size() == 15);
    for (const auto& e : cmp.entries) {
        REQUIRE(e.delta.has_value());
        CHECK(*e.delta == 0.0);
    }
}

TEST_CASE("missing anchor fields leave deltas absent without failing") {
    const MorphCurve curve = sweep_morphology(baseline_model(), 2.0);
    const FlightStateSet set = select_flight_states(curve, SelectionThresholds{});

    AnchorSet anchors;
    StateAnchor partial;
    partial.lift_drag_ratio = 11.3;  // reference K only
    anchors.gliding = partial;       // other two states have no anchors at all

    const StateComparison cmp = state_report(set, anchors);
    int with_delta = 0;
    for (const auto& e : cmp.entries) {
        if (e.delta.has_value()) {
            ++with_delta;
            CHECK(e.state == "gliding");
            CHECK(e.field == "lift_drag_ratio");
            CHECK(*e.delta == doctest::Approx(e.achieved - 11.3));
        }
    }
    CHECK(with_delta == 1);
    CHECK(cmp.entries.size() == 15);
}
