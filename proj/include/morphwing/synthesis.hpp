#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "morphwing/linkage.hpp"

namespace morphwing {

// One flight-state target band. psi2 is either an explicit interval or
// linked to psi1 ("same as psi1" within link_tol).
struct TargetBand {
    std::string name;
    double psi1_lo_rad = 0.0;
    double psi1_hi_rad = 0.0;
    bool psi2_same_as_psi1 = false;
    double psi2_lo_rad = 0.0;
    double psi2_hi_rad = 0.0;
};

struct StateTargets {
    std::array<TargetBand, 3> bands;  // gliding, descending, high-maneuverability
    double link_tol_rad = deg_to_rad(3.0);
};

// The reference target set: psi1 in [-2,2] / [35,45] / [-30,-20] deg with
// psi2 in [20,30] deg for the first state and linked for the other two.
StateTargets default_state_targets();

struct LengthBounds {
    double min_mm = 10.0;
    double max_mm = 80.0;
};

struct ObjectiveWeights {
    double band = 10.0;          // per rad of total band violation
    double transmission = 1.0;   // per rad of transmission shortfall
    double compactness = 0.0;    // per meter of summed link length, off by default
};

struct SynthesisProblem {
    StateTargets targets = default_state_targets();
    LengthBounds bounds;
    double min_transmission_rad = deg_to_rad(40.0);
    ObjectiveWeights weights;
    double epsilon_rad = deg_to_rad(21.24);
    double xi_rad = deg_to_rad(60.0);
    PhaseMapping mapping;  // conventions used when evaluating candidates
    std::uint64_t rng_seed = 0;
    int starts = 64;
    int local_budget = 500;  // objective evaluations per start
};

SynthesisProblem validate_problem(const SynthesisProblem& problem);

struct StateAchievement {
    std::string name;
    double phase_deg = 0.0;
    DihedralPair dihedrals;
    double violation_rad = 0.0;
};

struct ObjectiveBreakdown {
    double band = 0.0;
    double transmission = 0.0;
    double compactness = 0.0;
    double total = 0.0;
};

struct CandidateReport {
    LinkageParams params;
    std::array<StateAchievement, 3> states{};
    double min_transmission_rad = 0.0;  // min quality over assemblable phases
    ObjectiveBreakdown objective;
    bool feasible = false;  // all band violations at zero
};

// Exact three-position synthesis: solves the linear system in the
// loop-closure coefficients (K1, K2, K3) for three (crank, rocker) pairs and
// extracts l1 = l4/K2, l3 = l4/K1, l2 = sqrt(l1^2+l3^2+l4^2-2 l1 l3 K3).
// Throws SingularSystem / NegativeLink / ImaginaryCoupler.
struct PosePair {
    double crank_rad = 0.0;
    double rocker_rad = 0.0;
};

LinkageParams freudenstein_three_position(const std::array<PosePair, 3>& pairs,
                                          double ground_length);

// Scores a candidate against the problem: per band, the phase minimizing the
// (psi1, psi2) violation via a 1-deg sweep plus golden-section refinement;
// min transmission quality over all assemblable phases; weighted objective.
CandidateReport evaluate_candidate(const LinkageParams& params,
                                   const SynthesisProblem& problem,
                                   const PhaseMapping& mapping);

// Seeded multi-start search: pose triples built from band midpoints seed the
// exact synthesis, then coordinate descent with shrinking steps refines all
// four lengths inside the bounds. Deterministic for a fixed rng_seed; ties
// keep the earliest start. Never throws for feasibility reasons: when no
// candidate meets the bands the best report comes back with feasible=false.
CandidateReport synthesize_constrained(const SynthesisProblem& problem);

}  // namespace morphwing
