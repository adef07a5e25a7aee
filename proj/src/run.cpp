#include "morphwing/run.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "morphwing/errors.hpp"

namespace morphwing {

using nlohmann::json;

namespace {

std::string iso8601_utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

// Collects emitted files and writes each one in a single buffered shot, so a
// file is either absent or complete; the manifest still records a failed
// write as incomplete.
class Emitter {
public:
    explicit Emitter(std::filesystem::path dir) : dir_(std::move(dir)) {
        std::filesystem::create_directories(dir_);
    }

    void write(const std::string& name, const std::string& content) {
        std::ofstream out(dir_ / name, std::ios::binary | std::ios::trunc);
        if (!out) {
            entries_.push_back({name, "incomplete"});
            throw Error("IoError", "cannot open '" + (dir_ / name).string() + "' for writing");
        }
        out << content;
        out.flush();
        if (!out) {
            entries_.push_back({name, "incomplete"});
            throw Error("IoError", "short write to '" + (dir_ / name).string() + "'");
        }
        entries_.push_back({name, "complete"});
    }

    void write_json(const std::string& name, const json& value) {
        write(name, value.dump(2) + "\n");
    }

    const std::vector<ManifestEntry>& entries() const { return entries_; }
    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
    std::vector<ManifestEntry> entries_;
};

json linkage_params_json(const LinkageParams& p) {
    return {{"l1_mm", p.l1},
            {"l2_mm", p.l2},
            {"l3_mm", p.l3},
            {"l4_mm", p.l4},
            {"epsilon_deg", echo_deg(p.epsilon_rad)},
            {"xi_deg", echo_deg(p.xi_rad)},
            {"aux_mm",
             {{"de", p.aux.de}, {"eg", p.aux.eg}, {"cf", p.aux.cf}, {"mn", p.aux.mn}}}};
}

json mapping_json(const PhaseMapping& m) {
    return {{"phase_offset_deg", rad_to_deg(m.phase_offset)},
            {"rotation_sign", m.rotation_sign},
            {"branch", to_string(m.branch)},
            {"psi2_mode", to_string(m.psi2_mode)}};
}

json pose_json(const LinkagePose& pose) {
    json joints = json::array();
    for (const Vec2& j : pose.joints) joints.push_back({j.x, j.y});
    return {{"crank_angle_deg", rad_to_deg(pose.crank_angle)},
            {"rocker_angle_deg", rad_to_deg(pose.rocker_angle)},
            {"coupler_angle_deg", rad_to_deg(pose.coupler_angle)},
            {"branch", to_string(pose.branch)},
            {"transmission_angle_deg", rad_to_deg(pose.transmission_angle)},
            {"joints_mm", joints}};
}

json state_point_json(const StatePoint& p, bool with_aero) {
    json o;
    o["phase_deg"] = p.phase_deg;
    o["assemblable"] = p.assemblable();
    if (p.assemblable()) {
        o["psi1_deg"] = rad_to_deg(p.values->dihedrals.psi1);
        o["psi2_deg"] = rad_to_deg(p.values->dihedrals.psi2);
        o["physical_dihedrals"] = p.values->dihedrals.physical();
        o["mu_deg"] = rad_to_deg(p.values->mu_rad);
        if (with_aero) {
            o["lift_drag_ratio"] = p.values->lift_drag_ratio;
            o["cl_beta_per_rad"] = p.values->cl_beta;
            o["roll_moment_Nm"] = p.values->roll_moment;
        }
    }
    return o;
}

json comparison_json(const StateComparison& cmp) {
    json rows = json::array();
    for (const auto& e : cmp.entries) {
        json row;
        row["state"] = e.state;
        row["field"] = e.field;
        row["achieved"] = e.achieved;
        row["anchor"] = e.anchor ? json(*e.anchor) : json(nullptr);
        row["delta"] = e.delta ? json(*e.delta) : json(nullptr);
        row["relative"] = e.relative ? json(*e.relative) : json(nullptr);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string morph_curve_csv(const MorphCurve& curve) {
    std::ostringstream os;
    os << "phase_deg,psi1_deg,psi2_deg,K,cl_beta_per_rad,roll_moment_Nm,mu_deg,assemblable\n";
    for (const auto& p : curve.points) {
        os << fmt(p.phase_deg) << ',';
        if (p.assemblable()) {
            os << fmt(rad_to_deg(p.values->dihedrals.psi1)) << ','
               << fmt(rad_to_deg(p.values->dihedrals.psi2)) << ','
               << fmt(p.values->lift_drag_ratio) << ',' << fmt(p.values->cl_beta) << ','
               << fmt(p.values->roll_moment) << ',' << fmt(rad_to_deg(p.values->mu_rad))
               << ",1\n";
        } else {
            os << ",,,,,,0\n";
        }
    }
    return os.str();
}

std::string kinematic_curve_csv(const KinematicCurve& curve) {
    std::ostringstream os;
    os << "phase_deg,psi1_deg,psi2_deg,mu_deg,assemblable\n";
    for (const auto& s : curve.samples) {
        os << fmt(s.phase_deg) << ',';
        if (s.assemblable()) {
            os << fmt(rad_to_deg(s.dihedrals->psi1)) << ','
               << fmt(rad_to_deg(s.dihedrals->psi2)) << ','
               << fmt(rad_to_deg(s.pose->transmission_angle)) << ",1\n";
        } else {
            os << ",,,0\n";
        }
    }
    return os.str();
}

// two-column plot file; gaps become blank lines so plots break honestly
std::string gnuplot_curve(const MorphCurve& curve, const char* what,
                          double StatePointValues::*field) {
    std::ostringstream os;
    os << "# phase_deg " << what << "\n";
    for (const auto& p : curve.points) {
        if (p.assemblable()) {
            os << fmt(p.phase_deg) << ' ' << fmt((*p.values).*field) << "\n";
        } else {
            os << "\n";
        }
    }
    return os.str();
}

std::vector<CalibrationAnchor> calibration_anchors(const ProjectConfig& cfg) {
    if (!cfg.anchors) {
        throw SchemaViolation("anchors: block required for calibration but missing");
    }
    std::vector<CalibrationAnchor> anchors;
    auto add = [&](const std::optional<StateAnchor>& a) {
        if (a && a->phase_deg && a->psi1_deg) anchors.push_back({*a->phase_deg, *a->psi1_deg});
    };
    add(cfg.anchors->gliding);
    add(cfg.anchors->descending);
    add(cfg.anchors->high_maneuverability);
    if (anchors.empty()) {
        throw SchemaViolation("anchors: no row carries both phase_deg and psi1_deg");
    }
    return anchors;
}

void do_classify(Emitter& em, const ProjectConfig& cfg) {
    json o;
    o["params"] = linkage_params_json(cfg.linkage);
    o["grashof_class"] = to_string(grashof_classify(cfg.linkage));
    o["crank_fully_rotates"] = crank_fully_rotates(cfg.linkage);
    em.write_json("classify.json", o);
}

void do_solve(Emitter& em, const ProjectConfig& cfg, const RunOptions& opts) {
    if (!opts.phase_deg) {
        throw SchemaViolation("solve requires --phase <deg>");
    }
    const double phase = *opts.phase_deg;
    json o;
    o["phase_deg"] = phase;
    const double crank = cfg.mapping.crank_angle_at(deg_to_rad(phase));
    o["crank_angle_deg"] = rad_to_deg(crank);
    try {
        const LinkagePose pose = solve_fourbar(cfg.linkage, crank, cfg.mapping.branch);
        o["assemblable"] = true;
        o["pose"] = pose_json(pose);
        const DihedralPair d = pose_to_dihedrals(pose, cfg.linkage, cfg.mapping);
        o["psi1_deg"] = rad_to_deg(d.psi1);
        o["psi2_deg"] = rad_to_deg(d.psi2);
        o["physical_dihedrals"] = d.physical();
        if (cfg.aero) {
            const AeroResult aero = evaluate_aero(cfg.aero->condition, cfg.aero->geometry, d,
                                                  cfg.aero->polar, cfg.aero->stability);
            o["lift_drag_ratio"] = aero.lift_drag_ratio;
            o["cl_beta_per_rad"] = aero.cl_beta.total;
            o["cl_beta_breakdown"] = {{"dihedral", aero.cl_beta.dihedral},
                                      {"tip", aero.cl_beta.tip},
                                      {"fuselage", aero.cl_beta.fuselage},
                                      {"vertical_tail", aero.cl_beta.vertical_tail}};
            o["roll_moment_Nm"] = aero.roll_moment;
            o["lift_N"] = aero.lift;
            o["drag_N"] = aero.drag;
        }
    } catch (const Unassemblable&) {
        o["assemblable"] = false;
    }
    em.write_json("solve.json", o);
}

void do_sweep(Emitter& em, const ProjectConfig& cfg) {
    if (cfg.aero) {
        const MorphCurve curve = sweep_morphology(cfg.morph_model(), cfg.selection.grid_step_deg);
        if (cfg.output.csv) em.write("curve.csv", morph_curve_csv(curve));
        if (cfg.output.gnuplot) {
            em.write("liftdrag_curve.dat",
                     gnuplot_curve(curve, "lift_drag_ratio", &StatePointValues::lift_drag_ratio));
            em.write("rollmoment_curve.dat",
                     gnuplot_curve(curve, "roll_moment_Nm", &StatePointValues::roll_moment));
        }
    } else {
        const KinematicCurve curve =
            sweep_crank(cfg.linkage, cfg.mapping, cfg.selection.grid_step_deg);
        if (cfg.output.csv) em.write("curve.csv", kinematic_curve_csv(curve));
    }
}

void do_calibrate(Emitter& em, const ProjectConfig& cfg) {
    const auto anchors = calibration_anchors(cfg);
    const CalibrationResult result = calibrate_phase_mapping(cfg.linkage, anchors);
    const double uncal = mapping_rms_residual(cfg.linkage, PhaseMapping{}, anchors);

    json o;
    o["mapping"] = mapping_json(result.mapping);
    o["rms_residual_deg"] = rad_to_deg(result.rms_residual_rad);
    o["uncalibrated_rms_deg"] = rad_to_deg(uncal);
    if (uncal > 0.0) {
        o["residual_reduction"] = 1.0 - result.rms_residual_rad / uncal;
    }
    json rows = json::array();
    for (const auto& a : anchors) {
        rows.push_back({{"phase_deg", a.phase_deg}, {"psi1_deg", a.psi1_deg}});
    }
    o["anchors"] = rows;
    em.write_json("calibrate.json", o);
}

void do_synthesize(Emitter& em, const ProjectConfig& cfg, const RunOptions& opts) {
    if (!cfg.synthesis) {
        throw SchemaViolation("synthesis: block required for synthesize but missing");
    }
    SynthesisProblem problem = *cfg.synthesis;
    if (opts.seed) problem.rng_seed = *opts.seed;
    const CandidateReport report = synthesize_constrained(problem);

    json o;
    json params = linkage_params_json(report.params);
    o["params"] = params;
    o["grashof_class"] = to_string(grashof_classify(report.params));
    o["feasible"] = report.feasible;
    o["min_transmission_deg"] = rad_to_deg(report.min_transmission_rad);
    o["objective"] = {{"band", report.objective.band},
                      {"transmission", report.objective.transmission},
                      {"compactness", report.objective.compactness},
                      {"total", report.objective.total}};
    json states = json::array();
    for (const auto& s : report.states) {
        states.push_back({{"name", s.name},
                          {"phase_deg", s.phase_deg},
                          {"psi1_deg", rad_to_deg(s.dihedrals.psi1)},
                          {"psi2_deg", rad_to_deg(s.dihedrals.psi2)},
                          {"violation_deg", rad_to_deg(s.violation_rad)}});
    }
    o["states"] = states;
    o["rng_seed"] = problem.rng_seed;
    em.write_json("synthesis.json", o);
}

std::string states_text(const FlightStateSet& set, const StateComparison& cmp) {
    std::ostringstream os;
    os << "flight states\n=============\n";
    auto describe = [&](const char* name, const SelectedState& s) {
        const StatePointValues& v = *s.point.values;
        os << "\n" << name << "\n";
        os << "  phase:        " << fmt(s.point.phase_deg) << " deg\n";
        os << "  psi1 / psi2:  " << fmt(rad_to_deg(v.dihedrals.psi1)) << " / "
           << fmt(rad_to_deg(v.dihedrals.psi2)) << " deg\n";
        os << "  K:            " << fmt(v.lift_drag_ratio) << "\n";
        os << "  cl_beta:      " << fmt(v.cl_beta) << " /rad\n";
        os << "  roll moment:  " << fmt(v.roll_moment) << " N*m\n";
        os << "  rule:         " << s.rationale << "\n";
    };
    describe("gliding", set.gliding);
    describe("descending", set.descending);
    describe("high-maneuverability", set.high_maneuverability);

    os << "\ncomparison against reference anchors\n";
    os << std::left << std::setw(22) << "state" << std::setw(18) << "field" << std::right
       << std::setw(14) << "achieved" << std::setw(14) << "anchor" << std::setw(14)
       << "delta" << "\n";
    for (const auto& e : cmp.entries) {
        os << std::left << std::setw(22) << e.state << std::setw(18) << e.field << std::right
           << std::setw(14) << fmt(e.achieved) << std::setw(14)
           << (e.anchor ? fmt(*e.anchor) : "-") << std::setw(14)
           << (e.delta ? fmt(*e.delta) : "-") << "\n";
    }
    return os.str();
}

void do_states(Emitter& em, const ProjectConfig& cfg) {
    const MorphCurve curve = sweep_morphology(cfg.morph_model(), cfg.selection.grid_step_deg);
    const FlightStateSet set = select_flight_states(curve, cfg.selection.thresholds);
    const AnchorSet anchors = cfg.anchors ? *cfg.anchors : AnchorSet{};
    const StateComparison cmp = state_report(set, anchors);

    json o;
    auto state_json = [&](const SelectedState& s) {
        json v = state_point_json(s.point, true);
        v["rationale"] = s.rationale;
        return v;
    };
    o["gliding"] = state_json(set.gliding);
    o["descending"] = state_json(set.descending);
    o["high_maneuverability"] = state_json(set.high_maneuverability);
    o["comparison"] = comparison_json(cmp);
    o["thresholds"] = {{"kappa", cfg.selection.thresholds.kappa},
                       {"stability_margin", cfg.selection.thresholds.stability_margin}};
    em.write_json("states.json", o);
    em.write("states.txt", states_text(set, cmp));
}

void dispatch(Emitter& em, const RunOptions& opts, const ProjectConfig& cfg) {
    const std::string& cmd = opts.command;
    if (cmd == "classify") {
        do_classify(em, cfg);
    } else if (cmd == "solve") {
        do_solve(em, cfg, opts);
    } else if (cmd == "sweep") {
        do_sweep(em, cfg);
    } else if (cmd == "calibrate") {
        do_calibrate(em, cfg);
    } else if (cmd == "synthesize") {
        do_synthesize(em, cfg, opts);
    } else if (cmd == "states") {
        do_states(em, cfg);
    } else if (cmd == "report") {
        do_classify(em, cfg);
        if (opts.phase_deg) do_solve(em, cfg, opts);
        do_sweep(em, cfg);
        if (cfg.anchors) do_calibrate(em, cfg);
        do_states(em, cfg);
        if (cfg.synthesis) do_synthesize(em, cfg, opts);
    } else {
        throw SchemaViolation("unknown command '" + cmd + "'");
    }
}

}  // namespace

json manifest_to_json(const RunManifest& m) {
    json outputs = json::array();
    for (const auto& e : m.outputs) {
        outputs.push_back({{"path", e.path}, {"status", e.status}});
    }
    json o;
    o["tool_version"] = m.tool_version;
    o["config_hash"] = m.config_hash;
    o["command"] = m.command;
    o["started_at"] = m.started_at;
    o["finished_at"] = m.finished_at;
    o["outputs"] = outputs;
    if (m.error) o["error"] = *m.error;
    return o;
}

RunManifest run_command(const RunOptions& options, const ProjectConfig& config) {
    RunManifest manifest;
    manifest.tool_version = kToolVersion;
    manifest.config_hash = config.config_hash;
    manifest.command = options.command;
    manifest.started_at = iso8601_utc_now();

    Emitter em(options.out_dir ? *options.out_dir : config.output.directory);
    auto finalize = [&]() {
        manifest.finished_at = iso8601_utc_now();
        manifest.outputs = em.entries();
        manifest.outputs.push_back({"manifest.json", "complete"});
        std::ofstream out(em.dir() / "manifest.json", std::ios::binary | std::ios::trunc);
        out << manifest_to_json(manifest).dump(2) << "\n";
    };

    try {
        dispatch(em, options, config);
    } catch (const Error& e) {
        manifest.error = e.what();
        finalize();
        throw;
    } catch (const std::exception& e) {
        manifest.error = e.what();
        finalize();
        throw;
    }
    finalize();
    return manifest;
}

}  // namespace morphwing
