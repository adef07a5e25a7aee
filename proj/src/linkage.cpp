#include "morphwing/linkage.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "morphwing/errors.hpp"

namespace morphwing {

namespace {

constexpr double kCosClampTol = 1e-10;  // slack on |cos| at assemblability boundaries

std::string fmt_deg(double rad) {
    std::ostringstream os;
    os << rad_to_deg(rad) << " deg";
    return os.str();
}

double clamp_unit(double c) { return std::clamp(c, -1.0, 1.0); }

}  // namespace

std::string to_string(Branch b) {
    return b == Branch::ElbowUp ? "elbow-up" : "elbow-down";
}

std::string to_string(GrashofClass c) {
    switch (c) {
        case GrashofClass::CrankRocker: return "crank-rocker";
        case GrashofClass::DoubleCrank: return "double-crank";
        case GrashofClass::DoubleRocker: return "double-rocker";
        case GrashofClass::ChangePoint: return "change-point";
        case GrashofClass::TripleRocker: return "triple-rocker";
    }
    return "?";
}

Branch branch_from_string(const std::string& s) {
    if (s == "elbow-up") return Branch::ElbowUp;
    if (s == "elbow-down") return Branch::ElbowDown;
    throw SchemaViolation("branch must be 'elbow-up' or 'elbow-down', got '" + s + "'");
}

std::string to_string(Psi2Mode m) {
    return m == Psi2Mode::Coupler ? "coupler" : "rocker";
}

Psi2Mode psi2_mode_from_string(const std::string& s) {
    if (s == "coupler") return Psi2Mode::Coupler;
    if (s == "rocker") return Psi2Mode::Rocker;
    throw SchemaViolation("psi2_mode must be 'coupler' or 'rocker', got '" + s + "'");
}

LinkageParams validate_params(const LinkageParams& p) {
    auto check_positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            std::ostringstream os;
            os << name << " = " << v << " (must be finite and > 0)";
            throw NonPositiveLength(os.str());
        }
    };
    check_positive(p.l1, "l1");
    check_positive(p.l2, "l2");
    check_positive(p.l3, "l3");
    check_positive(p.l4, "l4");

    auto check_aux = [](double v, const char* name) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            std::ostringstream os;
            os << name << " = " << v << " (must be finite and >= 0)";
            throw NonPositiveLength(os.str());
        }
    };
    check_aux(p.aux.de, "aux.de");
    check_aux(p.aux.eg, "aux.eg");
    check_aux(p.aux.cf, "aux.cf");
    check_aux(p.aux.mn, "aux.mn");

    auto check_offset = [](double v, const char* name) {
        if (!std::isfinite(v) || v <= -kPi || v > kPi) {
            std::ostringstream os;
            os << name << " = " << rad_to_deg(v) << " deg (must be in (-180, 180])";
            throw SchemaViolation(os.str());
        }
    };
    check_offset(p.epsilon_rad, "epsilon");
    check_offset(p.xi_rad, "xi");

    // The crank-tip to rocker-pivot gap spans [|l4-l1|, l4+l1]; the coupler
    // plus rocker can close gaps in [|l2-l3|, l2+l3]. The linkage assembles
    // somewhere iff the intervals intersect.
    const double gap_lo = std::abs(p.l4 - p.l1);
    const double gap_hi = p.l4 + p.l1;
    const double close_lo = std::abs(p.l2 - p.l3);
    const double close_hi = p.l2 + p.l3;
    if (gap_lo > close_hi || close_lo > gap_hi) {
        std::ostringstream os;
        os << "no crank angle admits closure: gap range [" << gap_lo << ", " << gap_hi
           << "] mm vs closable range [" << close_lo << ", " << close_hi << "] mm";
        throw NeverAssemblable(os.str());
    }
    return p;
}

GrashofClass grashof_classify(const LinkageParams& p) {
    const double s = std::min(std::min(p.l1, p.l2), std::min(p.l3, p.l4));
    const double l = std::max(std::max(p.l1, p.l2), std::max(p.l3, p.l4));
    const double pq = p.l1 + p.l2 + p.l3 + p.l4 - s - l;

    if (s + l == pq) return GrashofClass::ChangePoint;
    if (s + l > pq) return GrashofClass::TripleRocker;
    // Grashof proper: class set by the shortest link's position.
    if (s == p.l4) return GrashofClass::DoubleCrank;
    if (s == p.l1 || s == p.l3) return GrashofClass::CrankRocker;
    return GrashofClass::DoubleRocker;  // shortest is the coupler
}

bool crank_fully_rotates(const LinkageParams& p) {
    // Every crank angle is assemblable iff the reachable gap interval lies
    // inside the closable interval.
    return p.l1 + p.l4 <= p.l2 + p.l3 &&
           std::abs(p.l4 - p.l1) >= std::abs(p.l2 - p.l3);
}

LinkagePose solve_fourbar(const LinkageParams& p, double crank_angle, Branch branch) {
    // Loop-closure scalar equation in the rocker angle:
    //   K2 cos(rocker) - K1 cos(crank) + K3 = cos(crank - rocker)
    // with K1 = l4/l3, K2 = l4/l1, K3 = (l1^2 + l3^2 + l4^2 - l2^2)/(2 l1 l3).
    // Rearranged to E cos(rocker) + F sin(rocker) + G = 0 and solved in
    // phase-amplitude form.
    const double k1 = p.l4 / p.l3;
    const double k2 = p.l4 / p.l1;
    const double k3 =
        (p.l1 * p.l1 + p.l3 * p.l3 + p.l4 * p.l4 - p.l2 * p.l2) / (2.0 * p.l1 * p.l3);

    const double cphi = std::cos(crank_angle);
    const double sphi = std::sin(crank_angle);
    const double e = k2 - cphi;
    const double f = -sphi;
    const double g = k3 - k1 * cphi;

    const double r = std::hypot(e, f);
    if (r < 1e-14 * (1.0 + std::abs(k2))) {
        // Crank tip sits on the rocker pivot; the rocker angle is not defined.
        throw Unassemblable("degenerate configuration at crank angle " + fmt_deg(crank_angle) +
                            " (crank tip coincides with rocker pivot)");
    }

    const double c = -g / r;
    if (c > 1.0 + kCosClampTol || c < -1.0 - kCosClampTol) {
        std::ostringstream os;
        os << "coupler and rocker circles do not intersect at crank angle "
           << fmt_deg(crank_angle) << " (|cos| exceeds 1 by " << std::abs(c) - 1.0 << ")";
        throw Unassemblable(os.str());
    }
    const double delta = std::acos(clamp_unit(c));
    const double theta = std::atan2(f, e);

    const Vec2 crank_pivot{0.0, 0.0};
    const Vec2 crank_tip{p.l1 * cphi, p.l1 * sphi};
    const Vec2 rocker_pivot{p.l4, 0.0};

    auto make_pose = [&](double rocker_angle) {
        LinkagePose pose;
        pose.crank_angle = crank_angle;
        pose.rocker_angle = rocker_angle;
        pose.branch = branch;
        const Vec2 joint = rocker_pivot +
                           Vec2{p.l3 * std::cos(rocker_angle), p.l3 * std::sin(rocker_angle)};
        pose.joints = {crank_pivot, crank_tip, joint, rocker_pivot};
        const Vec2 coupler_vec = joint - crank_tip;
        pose.coupler_angle = coupler_vec.angle();
        const Vec2 rocker_vec = joint - rocker_pivot;
        const double cmu =
            clamp_unit(dot(coupler_vec, rocker_vec) / (coupler_vec.norm() * rocker_vec.norm()));
        pose.transmission_angle = std::acos(cmu);
        return pose;
    };

    const LinkagePose up_candidate = make_pose(theta + delta);
    if (delta == 0.0) {
        // Singular (collinear) configuration: both branches coincide.
        return up_candidate;
    }
    const double s_up = cross(up_candidate.joints[2] - up_candidate.joints[1],
                              up_candidate.joints[2] - up_candidate.joints[3]);
    const bool up_is_positive = s_up > 0.0;
    if ((branch == Branch::ElbowUp) == up_is_positive) return up_candidate;
    return make_pose(theta - delta);
}

bool crank_angle_assemblable(const LinkageParams& p, double crank_angle) {
    const double g2 =
        p.l1 * p.l1 + p.l4 * p.l4 - 2.0 * p.l1 * p.l4 * std::cos(crank_angle);
    const double g = std::sqrt(std::max(0.0, g2));
    const double slack = kCosClampTol * (p.l2 + p.l3);
    return g <= p.l2 + p.l3 + slack && g >= std::abs(p.l2 - p.l3) - slack;
}

double transmission_angle(const LinkageParams& p, double crank_angle) {
    const double g2 =
        p.l1 * p.l1 + p.l4 * p.l4 - 2.0 * p.l1 * p.l4 * std::cos(crank_angle);
    const double c = (p.l2 * p.l2 + p.l3 * p.l3 - g2) / (2.0 * p.l2 * p.l3);
    if (c > 1.0 + kCosClampTol || c < -1.0 - kCosClampTol) {
        throw Unassemblable("no transmission angle at crank angle " + fmt_deg(crank_angle));
    }
    return std::acos(clamp_unit(c));
}

double closure_residual(const LinkagePose& pose, const LinkageParams& p) {
    const Vec2 via_coupler =
        pose.joints[1] + Vec2{p.l2 * std::cos(pose.coupler_angle),
                              p.l2 * std::sin(pose.coupler_angle)};
    const Vec2 via_rocker =
        Vec2{p.l4, 0.0} + Vec2{p.l3 * std::cos(pose.rocker_angle),
                               p.l3 * std::sin(pose.rocker_angle)};
    return (via_coupler - via_rocker).norm();
}

DihedralPair pose_to_dihedrals(const LinkagePose& pose, const LinkageParams& p,
                               const PhaseMapping& m) {
    const double mount = kPi / 2 - p.epsilon_rad;
    const double carrier =
        m.psi2_mode == Psi2Mode::Coupler ? pose.coupler_angle : pose.rocker_angle;
    DihedralPair d;
    d.psi1 = wrap_pi(pose.rocker_angle - mount);
    d.psi2 = wrap_pi(carrier + p.xi_rad - mount);
    return d;
}

KinematicCurve sweep_crank(const LinkageParams& p, const PhaseMapping& m,
                           double grid_step_deg) {
    if (!(grid_step_deg > 0.0) || grid_step_deg > 10.0) {
        throw std::invalid_argument("grid_step_deg must lie in (0, 10]");
    }
    KinematicCurve curve;
    curve.grid_step_deg = grid_step_deg;

    bool any = false;
    for (int i = 0;; ++i) {
        const double phase_deg = i * grid_step_deg;
        if (phase_deg >= 360.0) break;
        KinematicSample sample;
        sample.phase_deg = phase_deg;
        const double crank = m.crank_angle_at(deg_to_rad(phase_deg));
        try {
            LinkagePose pose = solve_fourbar(p, crank, m.branch);
            sample.dihedrals = pose_to_dihedrals(pose, p, m);
            sample.pose = std::move(pose);
            any = true;
        } catch (const Unassemblable&) {
            // gap: sample kept without a pose
        }
        curve.samples.push_back(std::move(sample));
    }
    if (!any) throw EmptySweep("no phase in [0, 360) deg is assemblable");
    return curve;
}

double mapping_rms_residual(const LinkageParams& p, const PhaseMapping& m,
                            const std::vector<CalibrationAnchor>& anchors) {
    double acc = 0.0;
    for (const auto& a : anchors) {
        const double crank = m.crank_angle_at(deg_to_rad(a.phase_deg));
        LinkagePose pose;
        try {
            pose = solve_fourbar(p, crank, m.branch);
        } catch (const Unassemblable&) {
            return std::numeric_limits<double>::infinity();
        }
        const double psi1 = pose_to_dihedrals(pose, p, m).psi1;
        const double err = angle_diff(psi1, deg_to_rad(a.psi1_deg));
        acc += err * err;
    }
    return std::sqrt(acc / static_cast<double>(anchors.size()));
}

namespace {

// Golden-section minimization of f over [a, b] down to a bracket of width
// `tol`; returns the best point actually evaluated.
std::pair<double, double> golden_section_min(const std::function<double(double)>& f,
                                             double a, double b, double tol) {
    static const double inv_gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_gr * (b - a);
    double d = a + inv_gr * (b - a);
    double fc = f(c);
    double fd = f(d);
    double best_x = fc <= fd ? c : d;
    double best_f = std::min(fc, fd);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_gr * (b - a);
            fd = f(d);
        }
        if (fc < best_f) {
            best_f = fc;
            best_x = c;
        }
        if (fd < best_f) {
            best_f = fd;
            best_x = d;
        }
    }
    return {best_x, best_f};
}

}  // namespace

CalibrationResult calibrate_phase_mapping(const LinkageParams& p,
                                          const std::vector<CalibrationAnchor>& anchors) {
    if (anchors.empty()) throw EmptySweep("no calibration anchors provided");

    constexpr double kGridStepDeg = 0.5;
    constexpr double kRefineTolDeg = 0.01;

    PhaseMapping best;
    double best_f = std::numeric_limits<double>::infinity();
    bool found = false;

    for (int sign : {+1, -1}) {
        for (Branch branch : {Branch::ElbowUp, Branch::ElbowDown}) {
            for (int k = 0; k * kGridStepDeg < 360.0; ++k) {
                PhaseMapping m;
                m.phase_offset = deg_to_rad(k * kGridStepDeg);
                m.rotation_sign = sign;
                m.branch = branch;
                const double f = mapping_rms_residual(p, m, anchors);
                if (std::isfinite(f) && f < best_f) {
                    best_f = f;
                    best = m;
                    found = true;
                }
            }
        }
    }
    if (!found) {
        throw NoFeasibleMapping(
            "every candidate mapping leaves some anchor unassemblable");
    }

    // Local refinement of the offset; branch/sign stay at the grid winner.
    auto f_of_offset = [&](double offset_rad) {
        PhaseMapping m = best;
        m.phase_offset = offset_rad;
        return mapping_rms_residual(p, m, anchors);
    };
    const double half = deg_to_rad(kGridStepDeg);
    auto [refined_x, refined_f] = golden_section_min(
        f_of_offset, best.phase_offset - half, best.phase_offset + half,
        deg_to_rad(kRefineTolDeg));
    if (refined_f < best_f) {
        best_f = refined_f;
        best.phase_offset = refined_x;
    }
    best.phase_offset = wrap_two_pi(best.phase_offset);
    return {best, best_f};
}

}  // namespace morphwing
