#include "morphwing/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "morphwing/errors.hpp"

namespace morphwing {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFeasibleTolRad = 1e-9;

double interval_violation(double x, double lo, double hi) {
    if (x < lo) return lo - x;
    if (x > hi) return x - hi;
    return 0.0;
}

// Band violation of one dihedral pair against one target band.
double band_violation(const DihedralPair& d, const TargetBand& band, double link_tol) {
    double v = interval_violation(d.psi1, band.psi1_lo_rad, band.psi1_hi_rad);
    if (band.psi2_same_as_psi1) {
        v += std::max(std::abs(angle_diff(d.psi2, d.psi1)) - link_tol, 0.0);
    } else {
        v += interval_violation(d.psi2, band.psi2_lo_rad, band.psi2_hi_rad);
    }
    return v;
}

// Gaussian elimination with partial pivoting on a 3x3 system.
std::array<double, 3> solve3(std::array<std::array<double, 4>, 3> m) {
    double scale = 0.0;
    for (const auto& row : m) {
        for (int c = 0; c < 3; ++c) scale = std::max(scale, std::abs(row[c]));
    }
    const double tol = 1e-10 * std::max(scale, 1e-300);

    for (int k = 0; k < 3; ++k) {
        int pivot = k;
        for (int r = k + 1; r < 3; ++r) {
            if (std::abs(m[r][k]) > std::abs(m[pivot][k])) pivot = r;
        }
        if (std::abs(m[pivot][k]) < tol) {
            throw SingularSystem("degenerate pose triple: the closure-coefficient system "
                                 "has rank < 3");
        }
        std::swap(m[k], m[pivot]);
        for (int r = k + 1; r < 3; ++r) {
            const double f = m[r][k] / m[k][k];
            for (int c = k; c < 4; ++c) m[r][c] -= f * m[k][c];
        }
    }
    std::array<double, 3> x{};
    for (int k = 2; k >= 0; --k) {
        double acc = m[k][3];
        for (int c = k + 1; c < 3; ++c) acc -= m[k][c] * x[c];
        x[k] = acc / m[k][k];
    }
    return x;
}

double golden_min_scalar(const std::function<double(double)>& f, double a, double b,
                         double tol, double seed_x, double seed_f) {
    static const double inv_gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double best_x = seed_x;
    double best_f = seed_f;
    double c = b - inv_gr * (b - a);
    double d = a + inv_gr * (b - a);
    double fc = f(c);
    double fd = f(d);
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
    return best_x;
}

}  // namespace

StateTargets default_state_targets() {
    StateTargets t;
    t.bands[0] = {"gliding", deg_to_rad(-2), deg_to_rad(2), false, deg_to_rad(20),
                  deg_to_rad(30)};
    t.bands[1] = {"descending", deg_to_rad(35), deg_to_rad(45), true, 0.0, 0.0};
    t.bands[2] = {"high-maneuverability", deg_to_rad(-30), deg_to_rad(-20), true, 0.0, 0.0};
    return t;
}

SynthesisProblem validate_problem(const SynthesisProblem& problem) {
    for (const auto& band : problem.targets.bands) {
        if (!(band.psi1_lo_rad <= band.psi1_hi_rad)) {
            throw SchemaViolation("synthesis target '" + band.name + "' has an empty psi1 band");
        }
        if (!band.psi2_same_as_psi1 && !(band.psi2_lo_rad <= band.psi2_hi_rad)) {
            throw SchemaViolation("synthesis target '" + band.name + "' has an empty psi2 band");
        }
    }
    if (!(problem.targets.link_tol_rad >= 0.0)) {
        throw SchemaViolation("synthesis link tolerance must be >= 0");
    }
    if (!(problem.bounds.min_mm > 0.0) || !(problem.bounds.max_mm >= problem.bounds.min_mm)) {
        throw SchemaViolation("synthesis length bounds must be positive and ordered");
    }
    if (!(problem.weights.band >= 0.0) || !(problem.weights.transmission >= 0.0) ||
        !(problem.weights.compactness >= 0.0)) {
        throw SchemaViolation("synthesis weights must be >= 0");
    }
    if (!(problem.min_transmission_rad >= 0.0) || problem.min_transmission_rad > kPi / 2) {
        throw SchemaViolation("synthesis min transmission angle must lie in [0, 90] deg");
    }
    if (problem.starts < 1 || problem.local_budget < 1) {
        throw SchemaViolation("synthesis starts and local budget must be >= 1");
    }
    return problem;
}

LinkageParams freudenstein_three_position(const std::array<PosePair, 3>& pairs,
                                          double ground_length) {
    if (!(ground_length > 0.0)) {
        throw NonPositiveLength("ground length must be > 0");
    }
    std::array<std::array<double, 4>, 3> m{};
    for (int i = 0; i < 3; ++i) {
        const double phi = pairs[i].crank_rad;
        const double rocker = pairs[i].rocker_rad;
        m[i] = {-std::cos(phi), std::cos(rocker), 1.0, std::cos(phi - rocker)};
    }
    const auto k = solve3(m);
    const double k1 = k[0];
    const double k2 = k[1];
    const double k3 = k[2];
    if (!(k1 > 0.0) || !(k2 > 0.0)) {
        std::ostringstream os;
        os << "closure coefficients give non-positive link lengths (K1 = " << k1
           << ", K2 = " << k2 << ")";
        throw NegativeLink(os.str());
    }
    LinkageParams p;
    p.l4 = ground_length;
    p.l1 = ground_length / k2;
    p.l3 = ground_length / k1;
    const double l2sq = p.l1 * p.l1 + p.l3 * p.l3 + p.l4 * p.l4 - 2.0 * p.l1 * p.l3 * k3;
    if (!(l2sq > 0.0)) {
        std::ostringstream os;
        os << "coupler length squared = " << l2sq << " mm^2";
        throw ImaginaryCoupler(os.str());
    }
    p.l2 = std::sqrt(l2sq);
    return p;
}

CandidateReport evaluate_candidate(const LinkageParams& params,
                                   const SynthesisProblem& problem,
                                   const PhaseMapping& mapping) {
    validate_params(params);

    CandidateReport report;
    report.params = params;

    // phase -> dihedral violation per band, +inf at gaps
    auto dihedrals_at = [&](double phase_deg) -> std::optional<DihedralPair> {
        const double crank = mapping.crank_angle_at(deg_to_rad(phase_deg));
        if (!crank_angle_assemblable(params, crank)) return std::nullopt;
        try {
            return pose_to_dihedrals(solve_fourbar(params, crank, mapping.branch), params,
                                     mapping);
        } catch (const Unassemblable&) {
            return std::nullopt;
        }
    };

    // dense 1-deg scan shared by all bands
    constexpr int kGrid = 360;
    std::array<std::optional<DihedralPair>, kGrid> scan;
    double min_quality = kInf;
    int assemblable = 0;
    for (int i = 0; i < kGrid; ++i) {
        const double crank = mapping.crank_angle_at(deg_to_rad(double(i)));
        if (!crank_angle_assemblable(params, crank)) continue;
        try {
            const LinkagePose pose = solve_fourbar(params, crank, mapping.branch);
            scan[i] = pose_to_dihedrals(pose, params, mapping);
            min_quality = std::min(min_quality, transmission_quality(pose.transmission_angle));
            ++assemblable;
        } catch (const Unassemblable&) {
        }
    }
    if (assemblable == 0) throw EmptySweep("candidate assembles at no phase");
    report.min_transmission_rad = min_quality;

    double total_violation = 0.0;
    for (size_t b = 0; b < problem.targets.bands.size(); ++b) {
        const TargetBand& band = problem.targets.bands[b];
        auto violation_at = [&](double phase_deg) {
            const auto d = dihedrals_at(phase_deg);
            return d ? band_violation(*d, band, problem.targets.link_tol_rad) : kInf;
        };

        int best_i = -1;
        double best_v = kInf;
        for (int i = 0; i < kGrid; ++i) {
            if (!scan[i]) continue;
            const double v = band_violation(*scan[i], band, problem.targets.link_tol_rad);
            if (v < best_v) {
                best_v = v;
                best_i = i;
            }
        }
        double best_phase = double(best_i);
        if (best_v > 0.0) {
            // refine inside the +-1 deg bracket around the grid argmin
            const double refined = golden_min_scalar(violation_at, best_phase - 1.0,
                                                     best_phase + 1.0, 1e-3, best_phase,
                                                     best_v);
            const double rv = violation_at(refined);
            if (rv < best_v) {
                best_v = rv;
                best_phase = refined;
            }
        }

        StateAchievement s;
        s.name = band.name;
        s.dihedrals = *dihedrals_at(best_phase);
        s.phase_deg = std::fmod(best_phase + 360.0, 360.0);
        s.violation_rad = best_v;
        report.states[b] = s;
        total_violation += best_v;
    }

    const double shortfall = std::max(problem.min_transmission_rad - min_quality, 0.0);
    const double length_sum_m = (params.l1 + params.l2 + params.l3 + params.l4) / 1000.0;
    report.objective.band = problem.weights.band * total_violation;
    report.objective.transmission = problem.weights.transmission * shortfall;
    report.objective.compactness = problem.weights.compactness * length_sum_m;
    report.objective.total = report.objective.band + report.objective.transmission +
                             report.objective.compactness;
    report.feasible = total_violation <= kFeasibleTolRad;
    return report;
}

namespace {

// In-bounds crank-rocker used when a seed cannot be built from the pose
// triple; keeps every start refinable.
LinkageParams fallback_params(const SynthesisProblem& problem) {
    const double lo = problem.bounds.min_mm;
    const double w = problem.bounds.max_mm - problem.bounds.min_mm;
    LinkageParams p;
    p.l1 = lo + 0.15 * w;
    p.l2 = lo + 0.55 * w;
    p.l3 = lo + 0.60 * w;
    p.l4 = lo + 0.75 * w;
    p.epsilon_rad = problem.epsilon_rad;
    p.xi_rad = problem.xi_rad;
    return p;
}

}  // namespace

CandidateReport synthesize_constrained(const SynthesisProblem& problem) {
    validate_problem(problem);

    std::mt19937_64 rng(problem.rng_seed);
    std::uniform_real_distribution<double> length(problem.bounds.min_mm, problem.bounds.max_mm);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);

    auto objective_of = [&](const LinkageParams& p) -> double {
        try {
            return evaluate_candidate(p, problem, problem.mapping).objective.total;
        } catch (const Error&) {
            return kInf;
        }
    };

    LinkageParams best_params = fallback_params(problem);
    double best_f = objective_of(best_params);

    for (int start = 0; start < problem.starts; ++start) {
        // pose triple through the band midpoints at random crank angles
        std::array<PosePair, 3> pairs{};
        for (int i = 0; i < 3; ++i) {
            const TargetBand& band = problem.targets.bands[i];
            const double psi1_mid = 0.5 * (band.psi1_lo_rad + band.psi1_hi_rad);
            pairs[i].crank_rad = angle(rng);
            pairs[i].rocker_rad = rocker_angle_for_psi1(psi1_mid, problem.epsilon_rad);
        }
        const double l4 = length(rng);

        LinkageParams seed;
        try {
            seed = freudenstein_three_position(pairs, l4);
            seed.l1 = std::clamp(seed.l1, problem.bounds.min_mm, problem.bounds.max_mm);
            seed.l2 = std::clamp(seed.l2, problem.bounds.min_mm, problem.bounds.max_mm);
            seed.l3 = std::clamp(seed.l3, problem.bounds.min_mm, problem.bounds.max_mm);
            seed.epsilon_rad = problem.epsilon_rad;
            seed.xi_rad = problem.xi_rad;
            validate_params(seed);
        } catch (const Error&) {
            seed = fallback_params(problem);
        }

        // coordinate descent with shrinking step, bounded evaluation budget
        int evals = 0;
        double f_cur = objective_of(seed);
        ++evals;
        LinkageParams cur = seed;
        double step = 0.25 * (problem.bounds.max_mm - problem.bounds.min_mm);
        if (step <= 0.0) step = 1.0;

        auto coord = [](LinkageParams& p, int i) -> double& {
            switch (i) {
                case 0: return p.l1;
                case 1: return p.l2;
                case 2: return p.l3;
                default: return p.l4;
            }
        };

        while (step > 1e-4 && evals < problem.local_budget) {
            bool moved = false;
            for (int i = 0; i < 4 && evals < problem.local_budget; ++i) {
                for (double dir : {+1.0, -1.0}) {
                    if (evals >= problem.local_budget) break;
                    LinkageParams cand = cur;
                    coord(cand, i) = std::clamp(coord(cand, i) + dir * step,
                                                problem.bounds.min_mm, problem.bounds.max_mm);
                    if (coord(cand, i) == coord(cur, i)) continue;
                    const double f = objective_of(cand);
                    ++evals;
                    if (f < f_cur) {
                        cur = cand;
                        f_cur = f;
                        moved = true;
                        break;
                    }
                }
            }
            if (!moved) step *= 0.5;
        }

        if (f_cur < best_f) {
            best_f = f_cur;
            best_params = cur;
        }
    }

    return evaluate_candidate(best_params, problem, problem.mapping);
}

}  // namespace morphwing
