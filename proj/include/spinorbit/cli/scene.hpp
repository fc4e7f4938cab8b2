#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "spinorbit/optics.hpp"

namespace spinorbit::cli {

struct EpsilonInput {
    double eps = 0.5;
    bool operator==(const EpsilonInput&) const = default;
};

struct HwpInput {
    double theta_a_deg = 22.5;
    double theta_b_deg = 22.5;
    bool operator==(const HwpInput&) const = default;
};

struct SphereInput {
    double a_deg = 0.0;
    std::array<double, 3> k{0.0, 0.0, 1.0};
    bool operator==(const SphereInput&) const = default;
};

using InputSpec = std::variant<EpsilonInput, HwpInput, SphereInput>;

/// Element as written in a scene document; the angle stays in degrees so a
/// parse/serialize cycle is exact.
struct ArmElement {
    ElementKind kind = ElementKind::Hwp;
    double angle_deg = 0.0;

    ElementSpec spec() const { return {kind, Angle::degrees(angle_deg)}; }
    bool operator==(const ArmElement&) const = default;
};

struct GridSpec {
    std::size_t nx = 256;
    std::size_t ny = 256;
    double extent = 5.0;
    double waist = 1.0;
    bool operator==(const GridSpec&) const = default;
};

struct PhotonSpec {
    double n_total = 1e5;
    std::uint64_t seed = 1;
    bool operator==(const PhotonSpec&) const = default;
};

struct OutputSpec {
    std::optional<std::string> image;
    std::optional<std::string> csv;
    std::optional<std::string> report;
    bool operator==(const OutputSpec&) const = default;
};

/**
 * Bench description read from a JSON scene document.
 *
 * Only grid receives defaults during parsing. An absent tilt means four
 * fringe periods across whatever grid the run finally uses. Other absent
 * optionals are resolved by the subcommand that needs them.
 */
struct SceneConfig {
    InputSpec input;
    std::vector<ArmElement> arm1;
    std::vector<ArmElement> arm2;
    std::optional<double> tilt;
    std::optional<double> arm_phase_rad;
    GridSpec grid;
    std::optional<double> scan_y;
    std::optional<std::size_t> samples_per_element;
    std::optional<PhotonSpec> photon;
    std::optional<std::vector<double>> sweep_hwp_deg;
    OutputSpec outputs;

    bool operator==(const SceneConfig&) const = default;
};

SceneConfig parse_scene(const std::string& text);
SceneConfig load_scene(const std::filesystem::path& path);
std::string serialize_scene(const SceneConfig& config);

/// Unit-norm state described by the input block.
SpinOrbitState resolve_input(const InputSpec& input);

}  // namespace spinorbit::cli
