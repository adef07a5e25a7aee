#include "morphwing/config.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "morphwing/errors.hpp"

namespace morphwing {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& reason) {
    throw SchemaViolation(path + ": " + reason);
}

void require_object(const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "expected an object");
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed) {
            if (key == a) {
                known = true;
                break;
            }
        }
        if (!known) fail(path + "." + key, "unknown key");
    }
}

double get_number(const json& obj, const std::string& path, const char* key, double def) {
    if (!obj.contains(key)) return def;
    const json& v = obj.at(key);
    if (!v.is_number()) fail(path + "." + key, "expected a number");
    return v.get<double>();
}

std::optional<double> get_optional_number(const json& obj, const std::string& path,
                                          const char* key) {
    if (!obj.contains(key)) return std::nullopt;
    const json& v = obj.at(key);
    if (!v.is_number()) fail(path + "." + key, "expected a number");
    return v.get<double>();
}

long long get_integer(const json& obj, const std::string& path, const char* key,
                      long long def) {
    if (!obj.contains(key)) return def;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
    return v.get<long long>();
}

std::string get_string(const json& obj, const std::string& path, const char* key,
                       const std::string& def) {
    if (!obj.contains(key)) return def;
    const json& v = obj.at(key);
    if (!v.is_string()) fail(path + "." + key, "expected a string");
    return v.get<std::string>();
}

std::pair<double, double> get_band_deg(const json& obj, const std::string& path,
                                       const char* key, std::pair<double, double> def) {
    if (!obj.contains(key)) return def;
    const json& v = obj.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        fail(path + "." + key, "expected [lo, hi] in degrees");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

PhaseMapping bind_mapping(const json& obj, const std::string& path) {
    require_object(obj, path);
    reject_unknown(obj, path, {"phase_offset_deg", "rotation_sign", "branch", "psi2_mode"});
    PhaseMapping m;
    m.phase_offset = wrap_two_pi(deg_to_rad(get_number(obj, path, "phase_offset_deg", 0.0)));
    const long long sign = get_integer(obj, path, "rotation_sign", 1);
    if (sign != 1 && sign != -1) fail(path + ".rotation_sign", "must be 1 or -1");
    m.rotation_sign = static_cast<int>(sign);
    try {
        m.branch = branch_from_string(get_string(obj, path, "branch", "elbow-up"));
        m.psi2_mode = psi2_mode_from_string(get_string(obj, path, "psi2_mode", "coupler"));
    } catch (const SchemaViolation& e) {
        fail(path, e.what());
    }
    return m;
}

void bind_linkage(const json& obj, const std::string& path, LinkageParams& params,
                  PhaseMapping& mapping) {
    require_object(obj, path);
    reject_unknown(obj, path, {"l1_mm", "l2_mm", "l3_mm", "l4_mm", "epsilon_deg", "xi_deg",
                               "aux_mm", "mapping"});
    params.l1 = get_number(obj, path, "l1_mm", 26.2);
    params.l2 = get_number(obj, path, "l2_mm", 45.6);
    params.l3 = get_number(obj, path, "l3_mm", 46.9);
    params.l4 = get_number(obj, path, "l4_mm", 52.2);
    params.epsilon_rad = deg_to_rad(get_number(obj, path, "epsilon_deg", 21.24));
    params.xi_rad = deg_to_rad(get_number(obj, path, "xi_deg", 60.0));
    params.aux = {14.2, 265.6, 220.6, 178.2};
    if (obj.contains("aux_mm")) {
        const json& aux = obj.at("aux_mm");
        const std::string aux_path = path + ".aux_mm";
        require_object(aux, aux_path);
        reject_unknown(aux, aux_path, {"de", "eg", "cf", "mn"});
        params.aux.de = get_number(aux, aux_path, "de", params.aux.de);
        params.aux.eg = get_number(aux, aux_path, "eg", params.aux.eg);
        params.aux.cf = get_number(aux, aux_path, "cf", params.aux.cf);
        params.aux.mn = get_number(aux, aux_path, "mn", params.aux.mn);
    }
    if (obj.contains("mapping")) {
        mapping = bind_mapping(obj.at("mapping"), path + ".mapping");
    }
    try {
        validate_params(params);
    } catch (const Error& e) {
        fail(path, e.what());
    }
}

AeroBlock bind_aero(const json& obj, const std::string& path) {
    require_object(obj, path);
    reject_unknown(obj, path, {"geometry", "polar", "condition", "stability"});
    AeroBlock block;

    if (obj.contains("geometry")) {
        const json& g = obj.at("geometry");
        const std::string p = path + ".geometry";
        require_object(g, p);
        reject_unknown(g, p, {"inner_span_m", "inner_chord_m", "outer_span_m",
                              "outer_root_chord_m"});
        block.geometry.inner_span = get_number(g, p, "inner_span_m", 0.4);
        block.geometry.inner_chord = get_number(g, p, "inner_chord_m", 0.2);
        block.geometry.outer_span = get_number(g, p, "outer_span_m", 0.275);
        block.geometry.outer_root_chord = get_number(g, p, "outer_root_chord_m", 0.2);
    }
    if (obj.contains("polar")) {
        const json& g = obj.at("polar");
        const std::string p = path + ".polar";
        require_object(g, p);
        reject_unknown(g, p,
                       {"cl_alpha_per_rad", "alpha0_deg", "stall_deg", "cd0",
                        "induced_factor"});
        block.polar.cl_alpha = get_number(g, p, "cl_alpha_per_rad", 2.0 * kPi);
        block.polar.alpha0_rad = deg_to_rad(get_number(g, p, "alpha0_deg", 0.0));
        block.polar.alpha_s_rad = deg_to_rad(get_number(g, p, "stall_deg", 12.0));
        block.polar.cd0 = get_number(g, p, "cd0", 0.02);
        block.polar.induced_factor = get_number(g, p, "induced_factor", 0.2);
    }
    if (obj.contains("condition")) {
        const json& g = obj.at("condition");
        const std::string p = path + ".condition";
        require_object(g, p);
        reject_unknown(g, p, {"rho_kg_m3", "airspeed_m_s", "alpha_deg", "beta_deg",
                              "speed_of_sound_m_s", "reynolds"});
        block.condition.rho = get_number(g, p, "rho_kg_m3", 1.225);
        block.condition.airspeed = get_number(g, p, "airspeed_m_s", 10.0);
        block.condition.alpha_rad = deg_to_rad(get_number(g, p, "alpha_deg", 5.0));
        block.condition.beta_rad = deg_to_rad(get_number(g, p, "beta_deg", 5.0));
        block.condition.speed_of_sound = get_number(g, p, "speed_of_sound_m_s", 340.0);
        block.condition.reynolds = get_number(g, p, "reynolds", 0.0);
    }
    if (obj.contains("stability")) {
        const json& g = obj.at("stability");
        const std::string p = path + ".stability";
        require_object(g, p);
        reject_unknown(g, p, {"cl_beta_vt_per_rad", "cl_beta_fuselage_per_rad",
                              "cl_beta_tip_per_rad"});
        block.stability.cl_beta_vt = get_number(g, p, "cl_beta_vt_per_rad", 0.0);
        block.stability.cl_beta_fuselage = get_number(g, p, "cl_beta_fuselage_per_rad", 0.0);
        block.stability.cl_beta_tip = get_number(g, p, "cl_beta_tip_per_rad", 0.0);
    }
    try {
        validate_geometry(block.geometry);
        validate_polar(block.polar);
        validate_condition(block.condition);
        validate_stability(block.stability);
    } catch (const Error& e) {
        fail(path, e.what());
    }
    return block;
}

TargetBand bind_target(const json& parent, const std::string& parent_path, const char* key,
                       const TargetBand& def) {
    if (!parent.contains(key)) return def;
    const json& obj = parent.at(key);
    const std::string path = parent_path + "." + key;
    require_object(obj, path);
    reject_unknown(obj, path, {"psi1_deg", "psi2_deg"});

    TargetBand band = def;
    const auto psi1 = get_band_deg(obj, path, "psi1_deg",
                                   {rad_to_deg(def.psi1_lo_rad), rad_to_deg(def.psi1_hi_rad)});
    band.psi1_lo_rad = deg_to_rad(psi1.first);
    band.psi1_hi_rad = deg_to_rad(psi1.second);

    if (obj.contains("psi2_deg")) {
        const json& v = obj.at("psi2_deg");
        if (v.is_string()) {
            if (v.get<std::string>() != "same") {
                fail(path + ".psi2_deg", "expected [lo, hi] or \"same\"");
            }
            band.psi2_same_as_psi1 = true;
        } else {
            const auto psi2 = get_band_deg(obj, path, "psi2_deg", {0.0, 0.0});
            band.psi2_same_as_psi1 = false;
            band.psi2_lo_rad = deg_to_rad(psi2.first);
            band.psi2_hi_rad = deg_to_rad(psi2.second);
        }
    }
    return band;
}

SynthesisProblem bind_synthesis(const json& obj, const std::string& path,
                                const LinkageParams& linkage, const PhaseMapping& mapping) {
    require_object(obj, path);
    reject_unknown(obj, path,
                   {"targets", "bounds_mm", "min_transmission_deg", "weights", "epsilon_deg",
                    "xi_deg", "rng_seed", "starts", "local_budget"});
    SynthesisProblem problem;
    problem.mapping = mapping;
    problem.epsilon_rad = linkage.epsilon_rad;
    problem.xi_rad = linkage.xi_rad;

    if (obj.contains("targets")) {
        const json& t = obj.at("targets");
        const std::string p = path + ".targets";
        require_object(t, p);
        reject_unknown(t, p, {"link_tol_deg", "gliding", "descending",
                              "high_maneuverability"});
        problem.targets.link_tol_rad =
            deg_to_rad(get_number(t, p, "link_tol_deg", 3.0));
        const StateTargets defaults = default_state_targets();
        problem.targets.bands[0] = bind_target(t, p, "gliding", defaults.bands[0]);
        problem.targets.bands[1] = bind_target(t, p, "descending", defaults.bands[1]);
        problem.targets.bands[2] =
            bind_target(t, p, "high_maneuverability", defaults.bands[2]);
    }
    if (obj.contains("bounds_mm")) {
        const json& b = obj.at("bounds_mm");
        const std::string p = path + ".bounds_mm";
        require_object(b, p);
        reject_unknown(b, p, {"min", "max"});
        problem.bounds.min_mm = get_number(b, p, "min", 10.0);
        problem.bounds.max_mm = get_number(b, p, "max", 80.0);
    }
    problem.min_transmission_rad =
        deg_to_rad(get_number(obj, path, "min_transmission_deg", 40.0));
    if (obj.contains("weights")) {
        const json& w = obj.at("weights");
        const std::string p = path + ".weights";
        require_object(w, p);
        reject_unknown(w, p, {"band", "transmission", "compactness"});
        problem.weights.band = get_number(w, p, "band", 10.0);
        problem.weights.transmission = get_number(w, p, "transmission", 1.0);
        problem.weights.compactness = get_number(w, p, "compactness", 0.0);
    }
    if (obj.contains("epsilon_deg")) {
        problem.epsilon_rad = deg_to_rad(get_number(obj, path, "epsilon_deg", 21.24));
    }
    if (obj.contains("xi_deg")) {
        problem.xi_rad = deg_to_rad(get_number(obj, path, "xi_deg", 60.0));
    }
    const long long seed = get_integer(obj, path, "rng_seed", 0);
    if (seed < 0) fail(path + ".rng_seed", "must be >= 0");
    problem.rng_seed = static_cast<std::uint64_t>(seed);
    const long long starts = get_integer(obj, path, "starts", 64);
    const long long budget = get_integer(obj, path, "local_budget", 500);
    if (starts < 1) fail(path + ".starts", "must be >= 1");
    if (budget < 1) fail(path + ".local_budget", "must be >= 1");
    problem.starts = static_cast<int>(starts);
    problem.local_budget = static_cast<int>(budget);
    try {
        validate_problem(problem);
    } catch (const Error& e) {
        fail(path, e.what());
    }
    return problem;
}

std::optional<StateAnchor> bind_anchor(const json& parent, const std::string& parent_path,
                                       const char* key) {
    if (!parent.contains(key)) return std::nullopt;
    const json& obj = parent.at(key);
    const std::string path = parent_path + "." + key;
    require_object(obj, path);
    reject_unknown(obj, path,
                   {"phase_deg", "psi1_deg", "psi2_deg", "lift_drag_ratio", "roll_moment_Nm"});
    StateAnchor a;
    a.phase_deg = get_optional_number(obj, path, "phase_deg");
    a.psi1_deg = get_optional_number(obj, path, "psi1_deg");
    a.psi2_deg = get_optional_number(obj, path, "psi2_deg");
    a.lift_drag_ratio = get_optional_number(obj, path, "lift_drag_ratio");
    a.roll_moment_nm = get_optional_number(obj, path, "roll_moment_Nm");
    return a;
}

SelectionConfig bind_selection(const json& obj, const std::string& path) {
    require_object(obj, path);
    reject_unknown(obj, path, {"kappa", "stability_margin", "grid_step_deg"});
    SelectionConfig sel;
    sel.thresholds.kappa = get_number(obj, path, "kappa", 0.3);
    sel.thresholds.stability_margin = get_number(obj, path, "stability_margin", 0.0);
    sel.grid_step_deg = get_number(obj, path, "grid_step_deg", 1.0);
    if (!(sel.thresholds.kappa >= 0.0)) fail(path + ".kappa", "must be >= 0");
    if (!(sel.grid_step_deg > 0.0) || sel.grid_step_deg > 10.0) {
        fail(path + ".grid_step_deg", "must lie in (0, 10]");
    }
    return sel;
}

OutputConfig bind_output(const json& obj, const std::string& path) {
    require_object(obj, path);
    reject_unknown(obj, path, {"directory", "formats"});
    OutputConfig out;
    out.directory = get_string(obj, path, "directory", "out");
    if (obj.contains("formats")) {
        const json& f = obj.at("formats");
        if (!f.is_array()) fail(path + ".formats", "expected an array of strings");
        out.csv = out.json = out.gnuplot = false;
        for (const auto& v : f) {
            if (!v.is_string()) fail(path + ".formats", "expected an array of strings");
            const std::string s = v.get<std::string>();
            if (s == "csv") {
                out.csv = true;
            } else if (s == "json") {
                out.json = true;
            } else if (s == "gnuplot") {
                out.gnuplot = true;
            } else {
                fail(path + ".formats", "unknown format '" + s + "'");
            }
        }
    }
    return out;
}

json serialize_mapping(const PhaseMapping& m) {
    return {{"phase_offset_deg", echo_deg(m.phase_offset)},
            {"rotation_sign", m.rotation_sign},
            {"branch", to_string(m.branch)},
            {"psi2_mode", to_string(m.psi2_mode)}};
}

json serialize_band(const TargetBand& band) {
    json b;
    b["psi1_deg"] = {echo_deg(band.psi1_lo_rad), echo_deg(band.psi1_hi_rad)};
    if (band.psi2_same_as_psi1) {
        b["psi2_deg"] = "same";
    } else {
        b["psi2_deg"] = {echo_deg(band.psi2_lo_rad), echo_deg(band.psi2_hi_rad)};
    }
    return b;
}

json serialize_anchor(const StateAnchor& a) {
    json o = json::object();
    if (a.phase_deg) o["phase_deg"] = *a.phase_deg;
    if (a.psi1_deg) o["psi1_deg"] = *a.psi1_deg;
    if (a.psi2_deg) o["psi2_deg"] = *a.psi2_deg;
    if (a.lift_drag_ratio) o["lift_drag_ratio"] = *a.lift_drag_ratio;
    if (a.roll_moment_nm) o["roll_moment_Nm"] = *a.roll_moment_nm;
    return o;
}

json serialize_config(const ProjectConfig& cfg) {
    json root;
    root["linkage"] = {{"l1_mm", cfg.linkage.l1},
                       {"l2_mm", cfg.linkage.l2},
                       {"l3_mm", cfg.linkage.l3},
                       {"l4_mm", cfg.linkage.l4},
                       {"epsilon_deg", echo_deg(cfg.linkage.epsilon_rad)},
                       {"xi_deg", echo_deg(cfg.linkage.xi_rad)},
                       {"aux_mm",
                        {{"de", cfg.linkage.aux.de},
                         {"eg", cfg.linkage.aux.eg},
                         {"cf", cfg.linkage.aux.cf},
                         {"mn", cfg.linkage.aux.mn}}},
                       {"mapping", serialize_mapping(cfg.mapping)}};
    if (cfg.aero) {
        root["aero"] = {
            {"geometry",
             {{"inner_span_m", cfg.aero->geometry.inner_span},
              {"inner_chord_m", cfg.aero->geometry.inner_chord},
              {"outer_span_m", cfg.aero->geometry.outer_span},
              {"outer_root_chord_m", cfg.aero->geometry.outer_root_chord}}},
            {"polar",
             {{"cl_alpha_per_rad", cfg.aero->polar.cl_alpha},
              {"alpha0_deg", echo_deg(cfg.aero->polar.alpha0_rad)},
              {"stall_deg", echo_deg(cfg.aero->polar.alpha_s_rad)},
              {"cd0", cfg.aero->polar.cd0},
              {"induced_factor", cfg.aero->polar.induced_factor}}},
            {"condition",
             {{"rho_kg_m3", cfg.aero->condition.rho},
              {"airspeed_m_s", cfg.aero->condition.airspeed},
              {"alpha_deg", echo_deg(cfg.aero->condition.alpha_rad)},
              {"beta_deg", echo_deg(cfg.aero->condition.beta_rad)},
              {"speed_of_sound_m_s", cfg.aero->condition.speed_of_sound},
              {"reynolds", cfg.aero->condition.reynolds}}},
            {"stability",
             {{"cl_beta_vt_per_rad", cfg.aero->stability.cl_beta_vt},
              {"cl_beta_fuselage_per_rad", cfg.aero->stability.cl_beta_fuselage},
              {"cl_beta_tip_per_rad", cfg.aero->stability.cl_beta_tip}}}};
    }
    if (cfg.synthesis) {
        const SynthesisProblem& s = *cfg.synthesis;
        root["synthesis"] = {
            {"targets",
             {{"link_tol_deg", echo_deg(s.targets.link_tol_rad)},
              {"gliding", serialize_band(s.targets.bands[0])},
              {"descending", serialize_band(s.targets.bands[1])},
              {"high_maneuverability", serialize_band(s.targets.bands[2])}}},
            {"bounds_mm", {{"min", s.bounds.min_mm}, {"max", s.bounds.max_mm}}},
            {"min_transmission_deg", echo_deg(s.min_transmission_rad)},
            {"weights",
             {{"band", s.weights.band},
              {"transmission", s.weights.transmission},
              {"compactness", s.weights.compactness}}},
            {"epsilon_deg", echo_deg(s.epsilon_rad)},
            {"xi_deg", echo_deg(s.xi_rad)},
            {"rng_seed", s.rng_seed},
            {"starts", s.starts},
            {"local_budget", s.local_budget}};
    }
    if (cfg.anchors) {
        json a = json::object();
        if (cfg.anchors->gliding) a["gliding"] = serialize_anchor(*cfg.anchors->gliding);
        if (cfg.anchors->descending) {
            a["descending"] = serialize_anchor(*cfg.anchors->descending);
        }
        if (cfg.anchors->high_maneuverability) {
            a["high_maneuverability"] = serialize_anchor(*cfg.anchors->high_maneuverability);
        }
        root["anchors"] = a;
    }
    root["selection"] = {{"kappa", cfg.selection.thresholds.kappa},
                         {"stability_margin", cfg.selection.thresholds.stability_margin},
                         {"grid_step_deg", cfg.selection.grid_step_deg}};
    root["output"] = {{"directory", cfg.output.directory},
                      {"formats", [&] {
                           json f = json::array();
                           if (cfg.output.csv) f.push_back("csv");
                           if (cfg.output.gnuplot) f.push_back("gnuplot");
                           if (cfg.output.json) f.push_back("json");
                           return f;
                       }()}};
    return root;
}

void apply_override(json& root, const ConfigOverride& ov) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : ov.path) {
        if (c == '.') {
            if (cur.empty()) fail("--set " + ov.path, "empty path segment");
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (cur.empty()) fail("--set " + ov.path, "empty path segment");
    parts.push_back(cur);

    json value;
    try {
        value = json::parse(ov.value);
    } catch (const json::parse_error&) {
        value = ov.value;  // plain string
    }
    if (value.is_object()) {
        fail("--set " + ov.path, "override values must be scalars or arrays");
    }

    json* node = &root;
    for (size_t i = 0; i + 1 < parts.size(); ++i) {
        if (!node->is_object()) fail("--set " + ov.path, "'" + parts[i] + "' is not an object");
        node = &(*node)[parts[i]];
        if (node->is_null()) *node = json::object();
    }
    if (!node->is_object()) fail("--set " + ov.path, "parent is not an object");
    const std::string& leaf = parts.back();
    if (node->contains(leaf) && (*node)[leaf].is_object()) {
        fail("--set " + ov.path, "cannot replace an object block");
    }
    (*node)[leaf] = value;
}

}  // namespace

MorphModel ProjectConfig::morph_model() const {
    if (!aero) {
        throw SchemaViolation("aero: block required for this analysis but missing");
    }
    MorphModel m;
    m.linkage = linkage;
    m.mapping = mapping;
    m.geometry = aero->geometry;
    m.polar = aero->polar;
    m.condition = aero->condition;
    m.stability = aero->stability;
    return m;
}

ConfigOverride parse_override(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw SchemaViolation("--set expects path=value, got '" + assignment + "'");
    }
    return {assignment.substr(0, eq), assignment.substr(eq + 1)};
}

double echo_deg(double rad) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.13g", rad_to_deg(rad));
    return std::strtod(buf, nullptr);
}

std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

ProjectConfig parse_config(const json& root, const std::vector<ConfigOverride>& overrides) {
    json tree = root;
    require_object(tree, "config");
    for (const auto& ov : overrides) apply_override(tree, ov);

    reject_unknown(tree, "config",
                   {"linkage", "aero", "synthesis", "anchors", "selection", "output"});

    ProjectConfig cfg;
    bind_linkage(tree.contains("linkage") ? tree.at("linkage") : json::object(), "linkage",
                 cfg.linkage, cfg.mapping);
    if (tree.contains("aero")) cfg.aero = bind_aero(tree.at("aero"), "aero");
    if (tree.contains("synthesis")) {
        cfg.synthesis = bind_synthesis(tree.at("synthesis"), "synthesis", cfg.linkage,
                                       cfg.mapping);
    }
    if (tree.contains("anchors")) {
        const json& a = tree.at("anchors");
        require_object(a, "anchors");
        reject_unknown(a, "anchors", {"gliding", "descending", "high_maneuverability"});
        AnchorSet set;
        set.gliding = bind_anchor(a, "anchors", "gliding");
        set.descending = bind_anchor(a, "anchors", "descending");
        set.high_maneuverability = bind_anchor(a, "anchors", "high_maneuverability");
        cfg.anchors = set;
    }
    if (tree.contains("selection")) {
        cfg.selection = bind_selection(tree.at("selection"), "selection");
    }
    if (tree.contains("output")) cfg.output = bind_output(tree.at("output"), "output");

    cfg.canonical = serialize_config(cfg);
    cfg.config_hash = fnv1a64_hex(cfg.canonical.dump());
    return cfg;
}

ProjectConfig load_config(const std::string& path,
                          const std::vector<ConfigOverride>& overrides) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open config file '" + path + "'");
    json tree;
    try {
        tree = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string(e.what()) + " in '" + path + "'");
    }
    return parse_config(tree, overrides);
}

nlohmann::json example_config_json() {
    // reference linkage, low-speed test condition, reference state anchors
    return json::parse(R"({
  "linkage": {
    "l1_mm": 26.2, "l2_mm": 45.6, "l3_mm": 46.9, "l4_mm": 52.2,
    "epsilon_deg": 21.24, "xi_deg": 60.0,
    "aux_mm": {"de": 14.2, "eg": 265.6, "cf": 220.6, "mn": 178.2},
    "mapping": {"phase_offset_deg": 0.0, "rotation_sign": 1,
                "branch": "elbow-up", "psi2_mode": "coupler"}
  },
  "aero": {
    "geometry": {"inner_span_m": 0.4, "inner_chord_m": 0.2,
                 "outer_span_m": 0.275, "outer_root_chord_m": 0.2},
    "polar": {"cl_alpha_per_rad": 6.283185307179586, "alpha0_deg": 0.0,
              "stall_deg": 12.0, "cd0": 0.02, "induced_factor": 0.2},
    "condition": {"rho_kg_m3": 1.225, "airspeed_m_s": 10.0, "alpha_deg": 5.0,
                  "beta_deg": 5.0, "speed_of_sound_m_s": 340.0},
    "stability": {"cl_beta_vt_per_rad": 0.0, "cl_beta_fuselage_per_rad": 0.0,
                  "cl_beta_tip_per_rad": 0.0}
  },
  "synthesis": {
    "targets": {
      "link_tol_deg": 3.0,
      "gliding": {"psi1_deg": [-2.0, 2.0], "psi2_deg": [20.0, 30.0]},
      "descending": {"psi1_deg": [35.0, 45.0], "psi2_deg": "same"},
      "high_maneuverability": {"psi1_deg": [-30.0, -20.0], "psi2_deg": "same"}
    },
    "bounds_mm": {"min": 10.0, "max": 80.0},
    "min_transmission_deg": 40.0,
    "weights": {"band": 10.0, "transmission": 1.0, "compactness": 0.0},
    "rng_seed": 42, "starts": 64, "local_budget": 500
  },
  "anchors": {
    "gliding": {"phase_deg": 0.0, "psi1_deg": -1.0, "psi2_deg": 27.1,
                "lift_drag_ratio": 11.3, "roll_moment_Nm": 0.46},
    "descending": {"phase_deg": 48.0, "psi1_deg": 37.8, "psi2_deg": 38.1,
                   "lift_drag_ratio": 6.3, "roll_moment_Nm": -0.32},
    "high_maneuverability": {"phase_deg": 256.0, "psi1_deg": -21.4, "psi2_deg": -23.2,
                             "lift_drag_ratio": 4.26, "roll_moment_Nm": 0.74}
  },
  "selection": {"kappa": 0.3, "stability_margin": 0.0, "grid_step_deg": 1.0},
  "output": {"directory": "out", "formats": ["csv", "json", "gnuplot"]}
})");
}

}  // namespace morphwing
