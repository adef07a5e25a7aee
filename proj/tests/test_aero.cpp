#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "morphwing/aero.hpp"
#include "morphwing/errors.hpp"

using namespace morphwing;

namespace {

// midpoint-rule quadrature of int y*c(y) dy / int c(y) dy
double quadrature_centroid(const std::function<double(double)>& chord, double y0, double y1,
                           int n) {
    const double h = (y1 - y0) / n;
    double num = 0.0;
    double den = 0.0;
    for (int i = 0; i < n; ++i) {
        const double y = y0 + (i + 0.5) * h;
        const double c = chord(y);
        num += y * c;
        den += c;
    }
    return num / den;
}

DihedralPair dihedrals_deg(double psi1_deg, double psi2_deg) {
    return {deg_to_rad(psi1_deg), deg_to_rad(psi2_deg)};
}

WingGeometry geometry_with_areas(double s1, double s2) {
    // rectangle 0.5 m x (s1/0.5); half-ellipse span 0.5 m with root chord
    // solving (pi/4) c2 b2 = s2
    WingGeometry g;
    g.inner_span = 0.5;
    g.inner_chord = s1 / g.inner_span;
    g.outer_span = 0.5;
    g.outer_root_chord = s2 * 4.0 / (kPi * g.outer_span);
    return g;
}

}  // namespace

TEST_CASE("lift coefficient vanishes at the zero-lift angle") {
    AirfoilPolar polar;
    polar.alpha0_rad = deg_to_rad(-2.0);
    CHECK(lift_coefficient(polar.alpha0_rad, polar) == 0.0);
}

TEST_CASE("thin-airfoil slope at 0.1 rad") {
    AirfoilPolar polar;  // cl_alpha = 2*pi, alpha0 = 0
    CHECK(lift_coefficient(0.1, polar) == doctest::Approx(0.6283185307).epsilon(1e-9));
}

TEST_CASE("lift coefficient refuses to extrapolate past stall") {
    AirfoilPolar polar;
    CHECK_THROWS_AS(lift_coefficient(polar.alpha_s_rad + 0.01, polar), StallExceeded);
    // total exactly at the boundary
    CHECK_NOTHROW(lift_coefficient(polar.alpha_s_rad, polar));
    CHECK_NOTHROW(lift_coefficient(polar.alpha0_rad - kPi / 4.0, polar));
    CHECK_THROWS_AS(lift_coefficient(polar.alpha0_rad - kPi / 4.0 - 0.01, polar),
                    StallExceeded);
}

TEST_CASE("drag polar with the customary low-speed constants") {
    AirfoilPolar polar;  // cd0 = 0.02, induced = 0.2
    CHECK(drag_coefficient(0.0, polar) == doctest::Approx(0.02));
    CHECK(drag_coefficient(1.0, polar) == doctest::Approx(0.22));
}

TEST_CASE("no induced term means constant drag") {
    AirfoilPolar polar;
    polar.induced_factor = 0.0;
    for (double cl : {-1.0, 0.0, 0.3, 1.2}) {
        CHECK(drag_coefficient(cl, polar) == doctest::Approx(polar.cd0));
    }
}

TEST_CASE("no dynamic pressure means no forces") {
    FlightCondition cond;
    cond.airspeed = 0.0;
    const Forces f = morphing_forces(cond, WingGeometry{}, dihedrals_deg(3, 40),
                                     AirfoilPolar{});
    CHECK(f.lift == 0.0);
    CHECK(f.drag == 0.0);
}

TEST_CASE("flat wing recovers the unmorphed lift") {
    FlightCondition cond;
    WingGeometry geom;
    AirfoilPolar polar;
    const Forces f = morphing_forces(cond, geom, dihedrals_deg(0, 0), polar);
    const double q = 0.5 * cond.rho * cond.airspeed * cond.airspeed;
    const double cl = lift_coefficient(cond.alpha_rad, polar);
    CHECK(f.lift ==
          doctest::Approx(q * cl * 2.0 * (geom.inner_area() + geom.outer_area()))
              .epsilon(1e-14));
}

TEST_CASE("worked morphing lift example") {
    FlightCondition cond;
    cond.rho = 1.225;
    cond.airspeed = 10.0;
    cond.alpha_rad = 0.1;
    AirfoilPolar polar;
    polar.cl_alpha = 5.0;  // CL = 0.5 at alpha = 0.1
    const WingGeometry geom = geometry_with_areas(0.1, 0.1);
    REQUIRE(geom.inner_area() == doctest::Approx(0.1).epsilon(1e-14));
    REQUIRE(geom.outer_area() == doctest::Approx(0.1).epsilon(1e-14));

    const Forces f = morphing_forces(cond, geom, dihedrals_deg(0, 60), polar);
    CHECK(f.lift == doctest::Approx(9.1875).epsilon(1e-9));
}

TEST_CASE("flat-wing lift-drag ratio is CL/CD exactly") {
    const WingGeometry geom;
    CHECK(lift_drag_ratio(dihedrals_deg(0, 0), geom, 0.8, 0.05) ==
          doctest::Approx(16.0).epsilon(1e-14));
}

TEST_CASE("equal-area geometric factor with one panel at 60 deg") {
    const WingGeometry geom = geometry_with_areas(0.2, 0.2);
    CHECK(morphing_area_factor(dihedrals_deg(0, 60), geom) ==
          doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("area-ratio monotonicity of the geometric factor") {
    // cos(psi2)/cos(psi1) < 1: growing the inner panel raises the factor
    const DihedralPair d = dihedrals_deg(0, 60);
    CHECK(morphing_area_factor(d, geometry_with_areas(0.1, 0.1)) ==
          doctest::Approx(0.75).epsilon(1e-12));
    CHECK(morphing_area_factor(d, geometry_with_areas(0.4, 0.1)) ==
          doctest::Approx(0.9).epsilon(1e-12));

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ang(-deg_to_rad(80), deg_to_rad(80));
    std::uniform_real_distribution<double> ratio(0.2, 5.0);
    for (int i = 0; i < 300; ++i) {
        const DihedralPair pair{ang(rng), ang(rng)};
        const double r1 = ratio(rng);
        const double r2 = r1 * 1.3;
        const double f1 = morphing_area_factor(pair, geometry_with_areas(r1 * 0.1, 0.1));
        const double f2 = morphing_area_factor(pair, geometry_with_areas(r2 * 0.1, 0.1));
        const double c_ratio = std::cos(pair.psi2) / std::cos(pair.psi1);
        if (c_ratio < 1.0 - 1e-12) {
            CHECK(f2 > f1);
        } else if (c_ratio > 1.0 + 1e-12) {
            CHECK(f2 < f1);
        } else {
            CHECK(f2 == doctest::Approx(f1).epsilon(1e-12));
        }
    }
}

TEST_CASE("geometric factor stays in (0, 1] and peaks only flat") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> ang(-deg_to_rad(89.9), deg_to_rad(89.9));
    const WingGeometry geom;
    for (int i = 0; i < 1000; ++i) {
        const DihedralPair d{ang(rng), ang(rng)};
        const double f = morphing_area_factor(d, geom);
        CHECK(f > 0.0);
        CHECK(f <= 1.0);
    }
    CHECK(morphing_area_factor(dihedrals_deg(0, 0), geom) == 1.0);
    CHECK(morphing_area_factor(dihedrals_deg(0, 1e-3), geom) < 1.0);
}

TEST_CASE("K from the ratio formula equals L/D from the force formulas") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> ang(-deg_to_rad(80), deg_to_rad(80));
    std::uniform_real_distribution<double> span(0.05, 1.5);
    std::uniform_real_distribution<double> alpha(-0.05, 0.2);
    for (int i = 0; i < 500; ++i) {
        FlightCondition cond;
        cond.airspeed = 3.0 + 20.0 * std::generate_canonical<double, 53>(rng);
        cond.alpha_rad = alpha(rng);
        WingGeometry geom;
        geom.inner_span = span(rng);
        geom.inner_chord = span(rng);
        geom.outer_span = span(rng);
        geom.outer_root_chord = span(rng);
        const DihedralPair d{ang(rng), ang(rng)};
        AirfoilPolar polar;

        const Forces f = morphing_forces(cond, geom, d, polar);
        const double cl = lift_coefficient(cond.alpha_rad, polar);
        const double cd = drag_coefficient(cl, polar);
        const double k = lift_drag_ratio(d, geom, cl, cd);
        const double k_forces = f.lift / f.drag;
        CHECK(std::abs(k - k_forces) <= 1e-12 * std::abs(k_forces));
    }
}

TEST_CASE("zero drag is rejected") {
    CHECK_THROWS_AS(lift_drag_ratio(dihedrals_deg(0, 0), WingGeometry{}, 0.5, 0.0),
                    ZeroDrag);
}

TEST_CASE("panel centroids: single-rectangle limit") {
    WingGeometry g;
    g.inner_span = 0.8;
    g.outer_span = 0.0;
    CHECK(panel_centroids(g).inner == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("panel centroids: half-ellipse alone sits at 4/(3 pi)") {
    WingGeometry g;
    g.inner_span = 0.0;
    g.outer_span = 0.6;
    CHECK(panel_centroids(g).outer ==
          doctest::Approx(4.0 / (3.0 * kPi)).epsilon(1e-14));
}

TEST_CASE("panel centroids: equal-span composite") {
    WingGeometry g;
    g.inner_span = 0.5;
    g.outer_span = 0.5;
    const PanelCentroids c = panel_centroids(g);
    CHECK(c.inner == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(c.outer == doctest::Approx(0.5 + 0.42441318157 * 0.5).epsilon(1e-9));
}

TEST_CASE("panel centroids match numeric quadrature") {
    WingGeometry g;
    g.inner_span = 0.37;
    g.inner_chord = 0.21;
    g.outer_span = 0.29;
    g.outer_root_chord = 0.18;
    const PanelCentroids c = panel_centroids(g);
    const double semispan = g.semispan();

    const double inner_q =
        quadrature_centroid([&](double) { return g.inner_chord; }, 0.0, g.inner_span,
                            200000) /
        semispan;
    const double u0 = g.inner_span;
    const double outer_q =
        quadrature_centroid(
            [&](double y) {
                const double u = (y - u0) / g.outer_span;
                return g.outer_root_chord * std::sqrt(std::max(0.0, 1.0 - u * u));
            },
            u0, u0 + g.outer_span, 2000000) /
        semispan;

    CHECK(std::abs(c.inner - inner_q) < 1e-6);
    CHECK(std::abs(c.outer - outer_q) < 1e-6);
    CHECK(0.0 < c.inner);
    CHECK(c.inner < c.outer);
    CHECK(c.outer < 1.0);
}

TEST_CASE("flat wing has no dihedral stability term") {
    const ClBetaBreakdown b = dihedral_stability(dihedrals_deg(0, 0), WingGeometry{},
                                                 AirfoilPolar{}, StabilityConfig{});
    CHECK(b.dihedral == 0.0);
    CHECK(b.total == 0.0);
}

TEST_CASE("reference dihedral pairs give the documented stability signs") {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> slope(0.5, 8.0);
    const WingGeometry geom;
    for (int i = 0; i < 100; ++i) {
        AirfoilPolar polar;
        polar.cl_alpha = slope(rng);
        const StabilityConfig cfg;
        const double gliding =
            dihedral_stability(dihedrals_deg(-1.0, 27.1), geom, polar, cfg).dihedral;
        const double descending =
            dihedral_stability(dihedrals_deg(37.8, 38.1), geom, polar, cfg).dihedral;
        const double maneuver =
            dihedral_stability(dihedrals_deg(-21.4, -23.2), geom, polar, cfg).dihedral;
        CHECK(gliding < 0.0);       // laterally stable
        CHECK(descending < 0.0);    // most stable
        CHECK(maneuver > 0.0);      // deliberately unstable
        CHECK(std::abs(descending) > std::abs(gliding));
        CHECK(descending < gliding);
    }
}

TEST_CASE("dihedral stability is linear, decreasing and odd") {
    const WingGeometry geom;
    const AirfoilPolar polar;
    const StabilityConfig cfg;
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> ang(-deg_to_rad(45), deg_to_rad(45));
    for (int i = 0; i < 300; ++i) {
        const DihedralPair d{ang(rng), ang(rng)};
        const double f0 = dihedral_stability(d, geom, polar, cfg).dihedral;
        const double d1 =
            dihedral_stability({d.psi1 + 0.01, d.psi2}, geom, polar, cfg).dihedral;
        const double d2 =
            dihedral_stability({d.psi1, d.psi2 + 0.01}, geom, polar, cfg).dihedral;
        CHECK(d1 < f0);
        CHECK(d2 < f0);
        const double neg =
            dihedral_stability({-d.psi1, -d.psi2}, geom, polar, cfg).dihedral;
        CHECK(neg == doctest::Approx(-f0).epsilon(1e-12));
    }
}

TEST_CASE("stability constants add into the total") {
    StabilityConfig cfg;
    cfg.cl_beta_vt = -0.07;
    cfg.cl_beta_fuselage = 0.01;
    cfg.cl_beta_tip = -0.002;
    const ClBetaBreakdown b =
        dihedral_stability(dihedrals_deg(2, 20), WingGeometry{}, AirfoilPolar{}, cfg);
    CHECK(b.total ==
          doctest::Approx(b.dihedral - 0.07 + 0.01 - 0.002).epsilon(1e-14));
}

TEST_CASE("roll moment vanishes without sideslip or without cl_beta") {
    FlightCondition cond;
    cond.beta_rad = 0.0;
    CHECK(roll_moment(cond, WingGeometry{}, -0.1) == 0.0);
    FlightCondition cond2;
    CHECK(roll_moment(cond2, WingGeometry{}, 0.0) == 0.0);
}

TEST_CASE("worked roll moment example") {
    FlightCondition cond;
    cond.rho = 1.225;
    cond.airspeed = 10.0;
    cond.beta_rad = deg_to_rad(5.0);
    // S_total = 0.3 m^2 and full span 1.35 m
    WingGeometry geom;
    geom.inner_span = 0.4;
    geom.inner_chord = 0.2;                           // S1 = 0.08
    geom.outer_span = 0.275;                          // semispan 0.675
    geom.outer_root_chord = 0.07 * 4.0 / (kPi * 0.275);  // S2 = 0.07
    REQUIRE(geom.total_area() == doctest::Approx(0.3).epsilon(1e-12));
    REQUIRE(geom.full_span() == doctest::Approx(1.35).epsilon(1e-12));

    CHECK(roll_moment(cond, geom, -0.1) == doctest::Approx(-0.216475).epsilon(1e-5));
}

TEST_CASE("flow regime accepts the boundary and rejects beyond") {
    FlightCondition cond;
    cond.airspeed = 10.0;
    cond.speed_of_sound = 340.0;
    CHECK(flow_regime_valid(cond));
    CHECK(cond.mach() == doctest::Approx(0.0294118).epsilon(1e-5));

    cond.airspeed = 102.0;  // Mach 0.3 exactly
    CHECK(flow_regime_valid(cond));
    CHECK_NOTHROW(check_flow_regime(cond));

    cond.airspeed = 170.0;  // Mach 0.5
    CHECK_FALSE(flow_regime_valid(cond));
    CHECK_THROWS_AS(check_flow_regime(cond), FlowRegimeViolation);
}

TEST_CASE("forces respect the flow regime gate") {
    FlightCondition cond;
    cond.airspeed = 200.0;
    CHECK_THROWS_AS(
        morphing_forces(cond, WingGeometry{}, dihedrals_deg(0, 0), AirfoilPolar{}),
        FlowRegimeViolation);
}

TEST_CASE("full aero evaluation is self-consistent") {
    FlightCondition cond;
    WingGeometry geom;
    AirfoilPolar polar;
    StabilityConfig cfg;
    const DihedralPair d = dihedrals_deg(-1, 27.1);
    const AeroResult r = evaluate_aero(cond, geom, d, polar, cfg);
    CHECK(r.drag > 0.0);
    CHECK(r.lift_drag_ratio == doctest::Approx(r.lift / r.drag).epsilon(1e-12));
    CHECK(r.roll_moment == doctest::Approx(roll_moment(cond, geom, r.cl_beta.total))
                               .epsilon(1e-14));
}

TEST_CASE("validators reject out-of-domain blocks") {
    AirfoilPolar polar;
    polar.cl_alpha = -1.0;
    CHECK_THROWS_AS(validate_polar(polar), SchemaViolation);

    FlightCondition cond;
    cond.rho = 0.0;
    CHECK_THROWS_AS(validate_condition(cond), SchemaViolation);

    WingGeometry geom;
    geom.inner_span = 0.0;
    CHECK_THROWS_AS(validate_geometry(geom), SchemaViolation);

    StabilityConfig cfg;
    cfg.cl_beta_vt = std::nan("");
    CHECK_THROWS_AS(validate_stability(cfg), SchemaViolation);
}
