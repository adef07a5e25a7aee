#include "morphwing/aero.hpp"

#include <cmath>
#include <sstream>

#include "morphwing/errors.hpp"

namespace morphwing {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw SchemaViolation(what);
}

std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

AirfoilPolar validate_polar(const AirfoilPolar& p) {
    require(std::isfinite(p.cl_alpha) && p.cl_alpha > 0.0,
            "polar.cl_alpha_per_rad must be > 0, got " + num(p.cl_alpha));
    require(std::isfinite(p.alpha0_rad) && std::isfinite(p.alpha_s_rad) &&
                p.alpha_s_rad > p.alpha0_rad,
            "polar stall angle must exceed the zero-lift angle");
    require(std::isfinite(p.cd0) && p.cd0 >= 0.0, "polar.cd0 must be >= 0, got " + num(p.cd0));
    require(std::isfinite(p.induced_factor) && p.induced_factor >= 0.0,
            "polar.induced_factor must be >= 0, got " + num(p.induced_factor));
    return p;
}

FlightCondition validate_condition(const FlightCondition& c) {
    require(std::isfinite(c.rho) && c.rho > 0.0, "condition.rho_kg_m3 must be > 0");
    require(std::isfinite(c.airspeed) && c.airspeed >= 0.0,
            "condition.airspeed_m_s must be >= 0");
    require(std::isfinite(c.speed_of_sound) && c.speed_of_sound > 0.0,
            "condition.speed_of_sound_m_s must be > 0");
    require(std::isfinite(c.alpha_rad) && std::isfinite(c.beta_rad),
            "condition angles must be finite");
    return c;
}

WingGeometry validate_geometry(const WingGeometry& g) {
    require(std::isfinite(g.inner_span) && g.inner_span > 0.0,
            "geometry.inner_span_m must be > 0");
    require(std::isfinite(g.outer_span) && g.outer_span > 0.0,
            "geometry.outer_span_m must be > 0");
    require(std::isfinite(g.inner_chord) && g.inner_chord > 0.0,
            "geometry.inner_chord_m must be > 0");
    require(std::isfinite(g.outer_root_chord) && g.outer_root_chord > 0.0,
            "geometry.outer_root_chord_m must be > 0");
    return g;
}

StabilityConfig validate_stability(const StabilityConfig& s) {
    require(std::isfinite(s.cl_beta_vt) && std::isfinite(s.cl_beta_fuselage) &&
                std::isfinite(s.cl_beta_tip),
            "stability contributions must be finite");
    return s;
}

double lift_coefficient(double alpha_rad, const AirfoilPolar& polar) {
    if (alpha_rad > polar.alpha_s_rad) {
        std::ostringstream os;
        os << "alpha = " << rad_to_deg(alpha_rad) << " deg exceeds the stall angle "
           << rad_to_deg(polar.alpha_s_rad) << " deg; the linear polar is invalid there";
        throw StallExceeded(os.str());
    }
    const double floor = polar.alpha0_rad - kPi / 4.0;
    if (alpha_rad < floor) {
        std::ostringstream os;
        os << "alpha = " << rad_to_deg(alpha_rad)
           << " deg is below the linear-polar window floor " << rad_to_deg(floor) << " deg";
        throw StallExceeded(os.str());
    }
    return polar.cl_alpha * (alpha_rad - polar.alpha0_rad);
}

double drag_coefficient(double cl, const AirfoilPolar& polar) {
    return polar.cd0 + polar.induced_factor * cl * cl;
}

double morphing_area_factor(const DihedralPair& d, const WingGeometry& g) {
    const double s1 = g.inner_area();
    const double s2 = g.outer_area();
    return (s1 * std::cos(d.psi1) + s2 * std::cos(d.psi2)) / (s1 + s2);
}

Forces morphing_forces(const FlightCondition& cond, const WingGeometry& geom,
                       const DihedralPair& dihedrals, const AirfoilPolar& polar) {
    check_flow_regime(cond);
    const double cl = lift_coefficient(cond.alpha_rad, polar);
    const double cd = drag_coefficient(cl, polar);
    const double q = 0.5 * cond.rho * cond.airspeed * cond.airspeed;
    const double s1 = geom.inner_area();
    const double s2 = geom.outer_area();
    Forces f;
    f.lift = q * cl * (s1 * std::cos(dihedrals.psi1) + s2 * std::cos(dihedrals.psi2)) * 2.0;
    f.drag = q * cd * (s1 + s2) * 2.0;
    return f;
}

double lift_drag_ratio(const DihedralPair& dihedrals, const WingGeometry& geom,
                       double cl, double cd) {
    if (!(cd > 0.0)) throw ZeroDrag("lift-drag ratio undefined for CD = " + num(cd));
    return cl / cd * morphing_area_factor(dihedrals, geom);
}

PanelCentroids panel_centroids(const WingGeometry& geom) {
    const double semispan = geom.inner_span + geom.outer_span;
    PanelCentroids c;
    c.inner = (geom.inner_span / 2.0) / semispan;
    c.outer = (geom.inner_span + 4.0 * geom.outer_span / (3.0 * kPi)) / semispan;
    return c;
}

ClBetaBreakdown dihedral_stability(const DihedralPair& dihedrals, const WingGeometry& geom,
                                   const AirfoilPolar& polar, const StabilityConfig& cfg) {
    const PanelCentroids arms = panel_centroids(geom);
    ClBetaBreakdown out;
    out.dihedral = -0.5 * polar.cl_alpha *
                   (arms.inner * dihedrals.psi1 + arms.outer * dihedrals.psi2);
    out.tip = cfg.cl_beta_tip;
    out.fuselage = cfg.cl_beta_fuselage;
    out.vertical_tail = cfg.cl_beta_vt;
    out.total = out.dihedral + out.tip + out.fuselage + out.vertical_tail;
    return out;
}

double roll_moment(const FlightCondition& cond, const WingGeometry& geom,
                   double cl_beta_total) {
    const double q = 0.5 * cond.rho * cond.airspeed * cond.airspeed;
    return q * geom.total_area() * geom.full_span() * cl_beta_total * cond.beta_rad;
}

bool flow_regime_valid(const FlightCondition& cond) { return cond.mach() <= 0.3; }

void check_flow_regime(const FlightCondition& cond) {
    if (!flow_regime_valid(cond)) {
        std::ostringstream os;
        os << "Mach " << cond.mach()
           << " is outside the low-speed regime (Ma <= 0.3) where the polar constants hold";
        throw FlowRegimeViolation(os.str());
    }
}

AeroResult evaluate_aero(const FlightCondition& cond, const WingGeometry& geom,
                         const DihedralPair& dihedrals, const AirfoilPolar& polar,
                         const StabilityConfig& cfg) {
    check_flow_regime(cond);
    AeroResult r;
    r.cl = lift_coefficient(cond.alpha_rad, polar);
    r.cd = drag_coefficient(r.cl, polar);
    const Forces f = morphing_forces(cond, geom, dihedrals, polar);
    r.lift = f.lift;
    r.drag = f.drag;
    r.lift_drag_ratio = lift_drag_ratio(dihedrals, geom, r.cl, r.cd);
    r.cl_beta = dihedral_stability(dihedrals, geom, polar, cfg);
    r.roll_moment = roll_moment(cond, geom, r.cl_beta.total);
    return r;
}

}  // namespace morphwing
