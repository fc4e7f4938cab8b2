#include "spinorbit/cli/scene.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "spinorbit/topology.hpp"

namespace spinorbit::cli {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void schema_error(const std::string& message) { throw Error(ErrorKind::SchemaError, message); }

void reject_unknown_keys(const Json& object, const std::set<std::string>& allowed, const std::string& where) {
    if (!object.is_object()) schema_error(where + " must be an object");
    for (const auto& item : object.items())
        if (!allowed.contains(item.key())) schema_error("unknown key '" + item.key() + "' in " + where);
}

double finite_number(const Json& value, const std::string& key) {
    if (!value.is_number()) schema_error("'" + key + "' must be a number");
    const double v = value.get<double>();
    if (!std::isfinite(v)) schema_error("'" + key + "' must be finite");
    return v;
}

std::size_t positive_count(const Json& value, const std::string& key) {
    if (!value.is_number_integer() || value.get<long long>() <= 0)
        schema_error("'" + key + "' must be a positive integer");
    return static_cast<std::size_t>(value.get<long long>());
}

InputSpec parse_input(const Json& node) {
    reject_unknown_keys(node, {"eps", "hwp_a_deg", "hwp_b_deg", "sphere"}, "input");
    const bool eps = node.contains("eps");
    const bool hwp = node.contains("hwp_a_deg") || node.contains("hwp_b_deg");
    const bool sphere = node.contains("sphere");
    if (int(eps) + int(hwp) + int(sphere) != 1)
        schema_error("input must hold exactly one of 'eps', 'hwp_a_deg'/'hwp_b_deg', 'sphere'");
    if (eps) return EpsilonInput{finite_number(node["eps"], "eps")};
    if (hwp) {
        if (!node.contains("hwp_a_deg")) schema_error("missing key 'hwp_a_deg'");
        if (!node.contains("hwp_b_deg")) schema_error("missing key 'hwp_b_deg'");
        return HwpInput{finite_number(node["hwp_a_deg"], "hwp_a_deg"),
                        finite_number(node["hwp_b_deg"], "hwp_b_deg")};
    }
    const Json& s = node["sphere"];
    reject_unknown_keys(s, {"a_deg", "k"}, "input.sphere");
    if (!s.contains("a_deg")) schema_error("missing key 'a_deg'");
    if (!s.contains("k")) schema_error("missing key 'k'");
    SphereInput out;
    out.a_deg = finite_number(s["a_deg"], "a_deg");
    if (!s["k"].is_array() || s["k"].size() != 3) schema_error("'k' must be an array of three numbers");
    for (std::size_t i = 0; i < 3; ++i) out.k[i] = finite_number(s["k"][i], "k");
    return out;
}

std::vector<ArmElement> parse_arm(const Json& node, const std::string& where) {
    if (!node.is_array()) schema_error(where + " must be an array of elements");
    std::vector<ArmElement> arm;
    for (std::size_t i = 0; i < node.size(); ++i) {
        const std::string at = where + "[" + std::to_string(i) + "]";
        const Json& e = node[i];
        reject_unknown_keys(e, {"type", "angle_deg"}, at);
        if (!e.contains("type") || !e["type"].is_string()) schema_error("missing key 'type' in " + at);
        const std::string type = e["type"].get<std::string>();
        const auto kind = element_kind_from_string(type);
        if (!kind) schema_error("unknown element type '" + type + "' in " + at);
        if (!e.contains("angle_deg")) schema_error("missing key 'angle_deg' in " + at);
        arm.push_back({*kind, finite_number(e["angle_deg"], "angle_deg")});
    }
    return arm;
}

GridSpec parse_grid(const Json& node) {
    reject_unknown_keys(node, {"nx", "ny", "extent", "waist"}, "grid");
    GridSpec g;
    if (node.contains("nx")) g.nx = positive_count(node["nx"], "nx");
    if (node.contains("ny")) g.ny = positive_count(node["ny"], "ny");
    if (node.contains("extent")) g.extent = finite_number(node["extent"], "extent");
    if (node.contains("waist")) g.waist = finite_number(node["waist"], "waist");
    if (g.nx < 16 || g.ny < 16) schema_error("'nx' and 'ny' must be at least 16");
    if (!(g.extent > 0.0)) schema_error("'extent' must be positive");
    if (!(g.waist > 0.0)) schema_error("'waist' must be positive");
    return g;
}

std::string line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

Json element_json(const ArmElement& e) {
    return Json{{"type", to_string(e.kind)}, {"angle_deg", e.angle_deg}};
}

}  // namespace

SceneConfig parse_scene(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::ParseError, "malformed JSON at " + line_column(text, e.byte) + ": " + e.what());
    }
    reject_unknown_keys(doc,
                        {"input", "arms", "tilt", "arm_phase_rad", "grid", "scan_y", "samples_per_element",
                         "photon", "sweep", "outputs"},
                        "scene");

    SceneConfig config;
    if (!doc.contains("input")) schema_error("missing key 'input'");
    config.input = parse_input(doc["input"]);

    if (!doc.contains("arms")) schema_error("missing key 'arms'");
    const Json& arms = doc["arms"];
    if (!arms.is_array() || arms.size() != 2) schema_error("'arms' must be an array of exactly two arms");
    config.arm1 = parse_arm(arms[0], "arms[0]");
    config.arm2 = parse_arm(arms[1], "arms[1]");

    if (doc.contains("tilt")) config.tilt = finite_number(doc["tilt"], "tilt");
    if (doc.contains("arm_phase_rad")) config.arm_phase_rad = finite_number(doc["arm_phase_rad"], "arm_phase_rad");
    if (doc.contains("grid")) config.grid = parse_grid(doc["grid"]);
    if (doc.contains("scan_y")) config.scan_y = finite_number(doc["scan_y"], "scan_y");
    if (doc.contains("samples_per_element"))
        config.samples_per_element = positive_count(doc["samples_per_element"], "samples_per_element");

    if (doc.contains("photon")) {
        const Json& p = doc["photon"];
        reject_unknown_keys(p, {"n_total", "seed"}, "photon");
        PhotonSpec photon;
        if (!p.contains("n_total")) schema_error("missing key 'n_total'");
        photon.n_total = finite_number(p["n_total"], "n_total");
        if (!(photon.n_total >= 1.0)) schema_error("'n_total' must be at least 1");
        if (!p.contains("seed")) schema_error("missing key 'seed'");
        if (!p["seed"].is_number_unsigned()) schema_error("'seed' must be a non-negative integer");
        photon.seed = p["seed"].get<std::uint64_t>();
        config.photon = photon;
    }

    if (doc.contains("sweep")) {
        const Json& s = doc["sweep"];
        reject_unknown_keys(s, {"hwp_deg"}, "sweep");
        if (!s.contains("hwp_deg") || !s["hwp_deg"].is_array() || s["hwp_deg"].empty())
            schema_error("'hwp_deg' must be a nonempty array");
        std::vector<double> angles;
        for (const auto& v : s["hwp_deg"]) angles.push_back(finite_number(v, "hwp_deg"));
        config.sweep_hwp_deg = angles;
    }

    if (doc.contains("outputs")) {
        const Json& o = doc["outputs"];
        reject_unknown_keys(o, {"image", "csv", "report"}, "outputs");
        for (const char* key : {"image", "csv", "report"}) {
            if (!o.contains(key)) continue;
            if (!o[key].is_string() || o[key].get<std::string>().empty())
                schema_error(std::string("'") + key + "' must be a nonempty file name");
            const std::string name = o[key].get<std::string>();
            if (std::string(key) == "image") config.outputs.image = name;
            if (std::string(key) == "csv") config.outputs.csv = name;
            if (std::string(key) == "report") config.outputs.report = name;
        }
    }
    return config;
}

SceneConfig load_scene(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot open scene file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scene(buffer.str());
}

std::string serialize_scene(const SceneConfig& config) {
    Json doc;
    std::visit(
        [&](const auto& in) {
            using T = std::decay_t<decltype(in)>;
            if constexpr (std::is_same_v<T, EpsilonInput>) {
                doc["input"] = Json{{"eps", in.eps}};
            } else if constexpr (std::is_same_v<T, HwpInput>) {
                doc["input"] = Json{{"hwp_a_deg", in.theta_a_deg}, {"hwp_b_deg", in.theta_b_deg}};
            } else {
                doc["input"] = Json{{"sphere", Json{{"a_deg", in.a_deg}, {"k", in.k}}}};
            }
        },
        config.input);

    Json arms = Json::array();
    for (const auto* arm : {&config.arm1, &config.arm2}) {
        Json elements = Json::array();
        for (const auto& e : *arm) elements.push_back(element_json(e));
        arms.push_back(elements);
    }
    doc["arms"] = arms;
    if (config.tilt) doc["tilt"] = *config.tilt;
    if (config.arm_phase_rad) doc["arm_phase_rad"] = *config.arm_phase_rad;
    doc["grid"] = Json{{"nx", config.grid.nx}, {"ny", config.grid.ny}, {"extent", config.grid.extent},
                       {"waist", config.grid.waist}};
    if (config.scan_y) doc["scan_y"] = *config.scan_y;
    if (config.samples_per_element) doc["samples_per_element"] = *config.samples_per_element;
    if (config.photon) doc["photon"] = Json{{"n_total", config.photon->n_total}, {"seed", config.photon->seed}};
    if (config.sweep_hwp_deg) doc["sweep"] = Json{{"hwp_deg", *config.sweep_hwp_deg}};
    Json outputs = Json::object();
    if (config.outputs.image) outputs["image"] = *config.outputs.image;
    if (config.outputs.csv) outputs["csv"] = *config.outputs.csv;
    if (config.outputs.report) outputs["report"] = *config.outputs.report;
    if (!outputs.empty()) doc["outputs"] = outputs;
    return doc.dump(2) + "\n";
}

SpinOrbitState resolve_input(const InputSpec& input) {
    return std::visit(
        [](const auto& in) -> SpinOrbitState {
            using T = std::decay_t<decltype(in)>;
            if constexpr (std::is_same_v<T, EpsilonInput>) {
                return epsilon_state(in.eps);
            } else if constexpr (std::is_same_v<T, HwpInput>) {
                return prepare_stage(Angle::degrees(in.theta_a_deg), Angle::degrees(in.theta_b_deg));
            } else {
                return mns_from_point(SpherePoint(Angle::degrees(in.a_deg).rad(), in.k));
            }
        },
        input);
}

}  // namespace spinorbit::cli
