#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "morphwing/geom.hpp"

namespace morphwing {

// Auxiliary member lengths (mm). Echoed in reports, not used by the
// kinematic solve: their attachment points are not part of the planar loop.
struct AuxLengths {
    double de = 0.0;
    double eg = 0.0;
    double cf = 0.0;
    double mn = 0.0;  // outer-wing span member
};

// Four-bar dimensions. Lengths in mm, offsets in radians.
// l1 crank, l2 coupler, l3 rocker, l4 ground.
struct LinkageParams {
    double l1 = 0.0;
    double l2 = 0.0;
    double l3 = 0.0;
    double l4 = 0.0;
    double epsilon_rad = 0.0;  // wing-mount offset
    double xi_rad = 0.0;       // outer-wing offset
    AuxLengths aux;
};

enum class Branch { ElbowUp, ElbowDown };
enum class GrashofClass { CrankRocker, DoubleCrank, DoubleRocker, ChangePoint, TripleRocker };

std::string to_string(Branch b);
std::string to_string(GrashofClass c);
Branch branch_from_string(const std::string& s);

// One assembled configuration. All angles absolute, measured CCW from the
// ground line (crank pivot -> rocker pivot). Joints: [crank pivot,
// crank tip, coupler-rocker joint, rocker pivot], mm.
struct LinkagePose {
    double crank_angle = 0.0;
    double rocker_angle = 0.0;
    double coupler_angle = 0.0;
    std::array<Vec2, 4> joints{};
    Branch branch = Branch::ElbowUp;
    double transmission_angle = 0.0;  // from joint coordinates, in (0, pi)
};

// Inner/outer wing dihedral angles, radians.
struct DihedralPair {
    double psi1 = 0.0;
    double psi2 = 0.0;

    // Physically meaningful wings stay inside (-pi/2, pi/2). Out-of-window
    // values are kept as computed; callers decide what to do with them.
    bool physical() const {
        return psi1 > -kPi / 2 && psi1 < kPi / 2 && psi2 > -kPi / 2 && psi2 < kPi / 2;
    }
};

// Which solved member angle stands in for the outer-wing carrier when
// forming psi2 (the figure's exact topology is ambiguous, so it is a knob).
enum class Psi2Mode { Coupler, Rocker };

std::string to_string(Psi2Mode m);
Psi2Mode psi2_mode_from_string(const std::string& s);

// Phase -> crank-angle mapping plus the conventions held fixed over a sweep.
struct PhaseMapping {
    double phase_offset = 0.0;  // rad, crank angle at phase 0, in [0, 2pi)
    int rotation_sign = +1;     // +1 | -1
    Branch branch = Branch::ElbowUp;
    Psi2Mode psi2_mode = Psi2Mode::Coupler;

    double crank_angle_at(double phase_rad) const {
        return phase_offset + rotation_sign * phase_rad;
    }
};

// Throws NonPositiveLength / NeverAssemblable; returns p unchanged otherwise.
// epsilon/xi must be finite and in (-pi, pi].
LinkageParams validate_params(const LinkageParams& p);

GrashofClass grashof_classify(const LinkageParams& p);

// True iff the input crank admits a full revolution (no sweep gaps).
bool crank_fully_rotates(const LinkageParams& p);

// Forward solution at one crank angle via the loop-closure (Freudenstein)
// scalar equation. Throws Unassemblable when the configuration cannot close.
LinkagePose solve_fourbar(const LinkageParams& p, double crank_angle, Branch branch);

// Quick interval test whether the coupler/rocker circles intersect at this
// crank angle; cheaper than catching Unassemblable in dense scans.
bool crank_angle_assemblable(const LinkageParams& p, double crank_angle);

// Closed-form transmission angle arccos((l2^2+l3^2-g^2)/(2 l2 l3)) with g the
// crank-tip-to-rocker-pivot distance. Independent of solve_fourbar's route.
double transmission_angle(const LinkageParams& p, double crank_angle);

// Quality proxy: min(mu, pi - mu).
inline double transmission_quality(double mu) { return std::min(mu, kPi - mu); }

// Magnitude of the loop defect when traversing crank + coupler - ground - rocker.
double closure_residual(const LinkagePose& pose, const LinkageParams& p);

// psi1 = rocker - (90deg - epsilon); psi2 = carrier + xi - (90deg - epsilon),
// carrier selected by mapping.psi2_mode. Results wrapped to (-pi, pi].
DihedralPair pose_to_dihedrals(const LinkagePose& pose, const LinkageParams& p,
                               const PhaseMapping& m);

// Inverse of the psi1 map: the rocker angle that realizes a given psi1.
inline double rocker_angle_for_psi1(double psi1, double epsilon_rad) {
    return psi1 + kPi / 2 - epsilon_rad;
}

// One sweep sample. Unassemblable phases carry no pose (gap, not interpolated).
struct KinematicSample {
    double phase_deg = 0.0;
    std::optional<LinkagePose> pose;
    std::optional<DihedralPair> dihedrals;

    bool assemblable() const { return pose.has_value(); }
};

struct KinematicCurve {
    std::vector<KinematicSample> samples;
    double grid_step_deg = 0.0;
};

// Uniform sweep of phase over [0, 360) deg. Branch and conventions come from
// the mapping and are never flipped mid-sweep. Throws EmptySweep when no
// phase assembles; grid_step_deg must lie in (0, 10].
KinematicCurve sweep_crank(const LinkageParams& p, const PhaseMapping& m,
                           double grid_step_deg);

struct CalibrationAnchor {
    double phase_deg = 0.0;
    double psi1_deg = 0.0;
};

struct CalibrationResult {
    PhaseMapping mapping;
    double rms_residual_rad = 0.0;
};

// Fits phase_offset/branch/rotation_sign to psi1 anchors: 0.5deg grid over
// [0, 2pi) x both branches x both signs, then golden-section refinement of
// the offset to 0.01deg. Deterministic; ties keep the earliest candidate in
// scan order (sign +1 before -1, elbow-up before elbow-down, offset
// ascending). Throws NoFeasibleMapping when every candidate leaves some
// anchor unassemblable.
CalibrationResult calibrate_phase_mapping(const LinkageParams& p,
                                          const std::vector<CalibrationAnchor>& anchors);

// RMS psi1 residual (rad) of a given mapping against anchors; infinity when
// some anchor is unassemblable under it.
double mapping_rms_residual(const LinkageParams& p, const PhaseMapping& m,
                            const std::vector<CalibrationAnchor>& anchors);

}  // namespace morphwing
