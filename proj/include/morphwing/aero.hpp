#pragma once

#include "morphwing/geom.hpp"
#include "morphwing/linkage.hpp"

namespace morphwing {

// Linear lift / parabolic drag polar. The defaults are a placeholder thin
// airfoil (cl_alpha = 2*pi, alpha0 = 0, stall at 12 deg) with the customary
// low-speed constants cd0 = 0.02 and induced factor 0.2. They are not
// measured data for any particular airfoil; real polars belong in the config.
struct AirfoilPolar {
    double cl_alpha = 2.0 * kPi;          // per rad
    double alpha0_rad = 0.0;              // zero-lift angle
    double alpha_s_rad = deg_to_rad(12);  // stall angle
    double cd0 = 0.02;
    double induced_factor = 0.2;
};

struct FlightCondition {
    double rho = 1.225;               // kg/m^3
    double airspeed = 10.0;           // m/s
    double alpha_rad = deg_to_rad(5);
    double beta_rad = deg_to_rad(5);
    double speed_of_sound = 340.0;    // m/s
    double reynolds = 0.0;            // metadata only

    double mach() const { return airspeed / speed_of_sound; }
};

// Two-panel semi-wing planform: rectangular inner panel, half-ellipse outer
// panel. Areas are per side; the symmetric factor of two lives in the force
// and moment formulas.
struct WingGeometry {
    double inner_span = 0.4;         // b1, m
    double inner_chord = 0.2;        // c1, m
    double outer_span = 0.275;       // b2, m
    double outer_root_chord = 0.2;   // c2, m

    double inner_area() const { return inner_span * inner_chord; }
    double outer_area() const { return kPi / 4.0 * outer_root_chord * outer_span; }
    double semispan() const { return inner_span + outer_span; }
    double full_span() const { return 2.0 * semispan(); }
    double total_area() const { return 2.0 * (inner_area() + outer_area()); }
};

// Non-wing contributions to the lateral-stability derivative, per rad.
// All default to zero; a conventional vertical tail would contribute a
// negative cl_beta_vt.
struct StabilityConfig {
    double cl_beta_vt = 0.0;
    double cl_beta_fuselage = 0.0;
    double cl_beta_tip = 0.0;  // non-swept wing term; negligible for an elliptical tip
};

struct ClBetaBreakdown {
    double dihedral = 0.0;  // wing term from psi1/psi2
    double tip = 0.0;
    double fuselage = 0.0;
    double vertical_tail = 0.0;
    double total = 0.0;
};

struct PanelCentroids {
    double inner = 0.0;  // normalized by total semispan
    double outer = 0.0;
};

struct AeroResult {
    double cl = 0.0;
    double cd = 0.0;
    double lift = 0.0;         // N
    double drag = 0.0;         // N
    double lift_drag_ratio = 0.0;
    ClBetaBreakdown cl_beta;
    double roll_moment = 0.0;  // N*m at the condition's sideslip
};

AirfoilPolar validate_polar(const AirfoilPolar& p);
FlightCondition validate_condition(const FlightCondition& c);
WingGeometry validate_geometry(const WingGeometry& g);
StabilityConfig validate_stability(const StabilityConfig& s);

// CL = cl_alpha * (alpha - alpha0), valid on [alpha0 - pi/4, alpha_s].
// Outside that window the linear model does not apply and StallExceeded is
// thrown; there is no silent extrapolation.
double lift_coefficient(double alpha_rad, const AirfoilPolar& polar);

// CD = cd0 + induced_factor * CL^2
double drag_coefficient(double cl, const AirfoilPolar& polar);

// (S1 cos psi1 + S2 cos psi2) / (S1 + S2)
double morphing_area_factor(const DihedralPair& d, const WingGeometry& g);

struct Forces {
    double lift = 0.0;
    double drag = 0.0;
};

// L = q * CL * (S1 cos psi1 + S2 cos psi2) * 2,  D = q * CD * (S1 + S2) * 2
// with q = rho * U^2 / 2. Checks the flow regime and the stall window.
Forces morphing_forces(const FlightCondition& cond, const WingGeometry& geom,
                       const DihedralPair& dihedrals, const AirfoilPolar& polar);

// K = (CL/CD) * morphing_area_factor. Throws ZeroDrag when CD <= 0.
double lift_drag_ratio(const DihedralPair& dihedrals, const WingGeometry& geom,
                       double cl, double cd);

// Spanwise area-centroid arm of each panel, normalized by the total
// semispan: the rectangle sits at b1/2, the half-ellipse at b1 + 4 b2/(3 pi).
PanelCentroids panel_centroids(const WingGeometry& geom);

// cl_beta breakdown: dihedral term -1/2 cl_alpha (ybar1 psi1 + ybar2 psi2)
// plus the configured tip/fuselage/vertical-tail constants.
ClBetaBreakdown dihedral_stability(const DihedralPair& dihedrals, const WingGeometry& geom,
                                   const AirfoilPolar& polar, const StabilityConfig& cfg);

// Dimensional roll moment q * S_total * b_full * cl_beta * beta.
double roll_moment(const FlightCondition& cond, const WingGeometry& geom,
                   double cl_beta_total);

// Polar constants are only constants below Mach 0.3 (inclusive).
bool flow_regime_valid(const FlightCondition& cond);
void check_flow_regime(const FlightCondition& cond);  // throws FlowRegimeViolation

// Full quasi-steady evaluation at one wing configuration.
AeroResult evaluate_aero(const FlightCondition& cond, const WingGeometry& geom,
                         const DihedralPair& dihedrals, const AirfoilPolar& polar,
                         const StabilityConfig& cfg);

}  // namespace morphwing
