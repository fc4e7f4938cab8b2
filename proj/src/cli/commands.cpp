#include "spinorbit/cli/commands.hpp"

#include <cmath>
#include <numeric>

#include <json.hpp>

#include "spinorbit/cli/writers.hpp"
#include "spinorbit/interferometer.hpp"
#include "spinorbit/photostats.hpp"
#include "spinorbit/topology.hpp"

namespace spinorbit::cli {

using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kConvention =
    "symmetric-phase retarders (det +1); mirror acts as identity on (H,V) in the lab frame";

struct Bench {
    SpinOrbitState input;
    std::vector<ElementSpec> arm1;
    std::vector<ElementSpec> arm2;
    JonesMatrix total1;
    JonesMatrix total2;
    TransverseGrid grid;
    double tilt;
    double arm_phase;
    double scan_y;  ///< physical
};

std::vector<ElementSpec> specs(const std::vector<ArmElement>& arm) {
    std::vector<ElementSpec> out;
    for (const auto& e : arm) out.push_back(e.spec());
    return out;
}

JonesMatrix total(const std::vector<ElementSpec>& arm) {
    if (arm.empty()) return JonesMatrix::identity();
    return compose(to_jones(arm));
}

Bench make_bench(const SceneConfig& config) {
    const TransverseGrid grid(config.grid.nx, config.grid.ny, config.grid.extent, config.grid.waist);
    Bench b{resolve_input(config.input),
            specs(config.arm1),
            specs(config.arm2),
            {},
            {},
            grid,
            config.tilt.value_or(default_tilt(grid)),
            config.arm_phase_rad.value_or(0.0),
            config.scan_y.value_or(0.5) * grid.waist()};
    b.total1 = total(b.arm1);
    b.total2 = total(b.arm2);
    return b;
}

std::filesystem::path output_path(const RunOptions& options, const std::optional<std::string>& name,
                                  const char* fallback) {
    return options.out_dir / name.value_or(fallback);
}

Json scene_json(const SceneConfig& config) { return Json::parse(serialize_scene(config)); }

Json matrix_json(const JonesMatrix& m) {
    auto c = [](Complex z) { return Json::array({z.real(), z.imag()}); };
    return Json{{"hh", c(m.hh)}, {"hv", c(m.hv)}, {"vh", c(m.vh)}, {"vv", c(m.vv)}};
}

void write_json(const std::filesystem::path& path, const Json& doc, CommandResult& result) {
    write_file_atomic(path, doc.dump(2) + "\n");
    result.written.push_back(path);
}

void write_image(const std::filesystem::path& path, std::span<const double> values, const Bench& bench,
                 CommandResult& result) {
    const PgmImage image = encode_pgm16(values, bench.grid.nx(), bench.grid.ny());
    write_file_atomic(path, image.bytes);
    result.written.push_back(path);
    Json sidecar{{"format", "pgm-p5-16bit-big-endian"},
                 {"nx", bench.grid.nx()},
                 {"ny", bench.grid.ny()},
                 {"min", image.min},
                 {"max", image.max},
                 {"mapping", "sample = round((value - min) / (max - min) * 65535)"},
                 {"row_order", "first row is largest y"},
                 {"extent", bench.grid.extent()},
                 {"waist", bench.grid.waist()},
                 {"tilt_rad_per_length", bench.tilt}};
    std::filesystem::path side = path;
    side += ".json";
    write_json(side, sidecar, result);
}

void record_error(CommandResult& result, const Error& e) {
    if (result.exit_code == 0) result.exit_code = exit_code(e.kind());
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ZeroState: return 10;
        case ErrorKind::NotNormalized: return 11;
        case ErrorKind::DomainError: return 12;
        case ErrorKind::EmptySequence: return 13;
        case ErrorKind::NotMaximallyNonseparable: return 14;
        case ErrorKind::StepTooCoarse: return 15;
        case ErrorKind::NotClosed: return 16;
        case ErrorKind::FitDiverged: return 17;
        case ErrorKind::DegeneratePattern: return 18;
        case ErrorKind::InvalidArgument: return 19;
        case ErrorKind::ParseError: return 20;
        case ErrorKind::SchemaError: return 21;
        case ErrorKind::IoError: return 22;
    }
    return kExitUnexpected;
}

SceneConfig apply_overrides(SceneConfig config, const RunOptions& options) {
    if (options.grid) {
        const auto [nx, ny] = *options.grid;
        if (nx < 16 || ny < 16) throw Error(ErrorKind::InvalidArgument, "--grid needs at least 16 pixels per axis");
        config.grid.nx = nx;
        config.grid.ny = ny;
    }
    if (options.seed) {
        PhotonSpec photon = config.photon.value_or(PhotonSpec{});
        photon.seed = *options.seed;
        config.photon = photon;
    }
    if (options.closure_deg) {
        if (config.arm2.empty()) throw Error(ErrorKind::InvalidArgument, "--closure needs a nonempty arm 2");
        config.arm2.back().angle_deg = *options.closure_deg;
    }
    return config;
}

CommandResult run_render(const SceneConfig& config, const RunOptions& options) {
    CommandResult result;
    const Bench bench = make_bench(config);
    const Interferogram pattern = michelson(bench.input, bench.total1, bench.total2, bench.tilt, bench.grid,
                                            bench.arm_phase);
    write_image(output_path(options, config.outputs.image, "render.pgm"), pattern.intensity, bench, result);

    const FringeScan scan = extract_scan(pattern, bench.scan_y);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < scan.x.size(); ++i)
        rows.push_back({format_double(scan.x[i]), format_double(scan.intensity[i])});
    const auto csv_path = output_path(options, config.outputs.csv, "render_scan.csv");
    write_file_atomic(csv_path, csv_table({"x", "intensity"}, rows));
    result.written.push_back(csv_path);

    Json report;
    report["command"] = "render";
    report["scene"] = scene_json(config);
    report["concurrence"] = concurrence(bench.input);
    report["tilt_rad_per_length"] = bench.tilt;
    report["arm_phase_rad"] = bench.arm_phase;
    report["scan_y"] = scan.y;
    report["fringe_model"] = to_string(scan.model.kind);
    report["fringe_model_offset_rad"] = scan.model.angular_offset;

    std::optional<FringeReport> fit;
    try {
        fit = visibility_fit(scan, bench.tilt);
    } catch (const Error& e) {
        record_error(result, e);
        report["fit_error"] = e.what();
    }
    report["visibility"] = fit ? Json(fit->visibility) : Json(nullptr);
    report["fringe_phase_rad"] = fit ? Json(fit->fringe_phase) : Json(nullptr);
    report["residual"] = fit ? Json(fit->residual) : Json(nullptr);
    report["relative_residual"] = fit ? Json(fit->relative_residual) : Json(nullptr);

    try {
        report["vortex_parity"] = to_string(vortex_parity(pattern, config.scan_y.value_or(0.5)));
    } catch (const Error& e) {
        record_error(result, e);
        report["vortex_parity"] = nullptr;
        report["vortex_parity_error"] = e.what();
    }

    // Reference: both arms identical, i.e. the same homotopy class by construction.
    std::optional<double> reference_phase;
    std::optional<double> shift;
    try {
        const Interferogram ref = michelson(bench.input, bench.total1, bench.total1, bench.tilt, bench.grid,
                                            bench.arm_phase);
        const FringeScan ref_scan = extract_scan(ref, bench.scan_y);
        const FringeReport ref_fit = visibility_fit(ref_scan, bench.tilt);
        reference_phase = ref_fit.fringe_phase;
        if (fit && ref_scan.model == scan.model) shift = phase_shift(ref_fit, *fit);
    } catch (const Error& e) {
        report["reference_error"] = e.what();
    }
    report["reference_fringe_phase_rad"] = optional_number(reference_phase);
    report["phase_shift_rad"] = optional_number(shift);

    try {
        const auto j1 = to_jones(bench.arm1);
        const auto j2 = to_jones(bench.arm2);
        report["relative_class"] = to_string(relative_class(j1, j2));
    } catch (const Error&) {
        report["relative_class"] = nullptr;
    }
    report["warnings"] = pattern.warnings;
    write_json(output_path(options, config.outputs.report, "render_report.json"), report, result);

    result.summary = "render: visibility " + (fit ? format_double(fit->visibility) : std::string("n/a")) +
                     ", parity " + (report["vortex_parity"].is_null() ? std::string("n/a")
                                                                       : report["vortex_parity"].get<std::string>());
    return result;
}

CommandResult run_sweep(const SceneConfig& config, const RunOptions& options) {
    if (!config.sweep_hwp_deg) throw Error(ErrorKind::SchemaError, "sweep needs key 'sweep'");
    if (!config.photon) throw Error(ErrorKind::SchemaError, "sweep needs key 'photon'");
    CommandResult result;
    SweepSettings settings;
    settings.nx = config.grid.nx;
    settings.ny = config.grid.ny;
    settings.extent = config.grid.extent;
    settings.waist = config.grid.waist;
    settings.tilt = config.tilt;
    settings.scan_y = config.scan_y.value_or(0.5);
    settings.arm_phase = config.arm_phase_rad.value_or(0.0);
    const auto table = sweep_visibility(*config.sweep_hwp_deg, config.photon->n_total, config.photon->seed, settings);

    std::vector<std::vector<std::string>> rows;
    double ss = 0.0;
    double sigma = 0.0;
    for (const auto& r : table) {
        const double c = concurrence(epsilon_state(r.eps));
        rows.push_back({format_double(r.theta_deg), format_double(r.eps), format_double(r.visibility),
                        format_double(r.sigma_visibility), format_double(c)});
        ss += (r.visibility - c) * (r.visibility - c);
        sigma += r.sigma_visibility;
    }
    const auto path = output_path(options, config.outputs.csv, "sweep.csv");
    write_file_atomic(path, csv_table({"theta_deg", "eps", "visibility", "sigma_visibility", "concurrence"}, rows));
    result.written.push_back(path);
    const double n = static_cast<double>(table.size());
    result.summary = "sweep: " + std::to_string(table.size()) + " rows, rms |V - C| " +
                     format_double(std::sqrt(ss / n)) + ", mean sigma_V " + format_double(sigma / n);
    return result;
}

CommandResult run_classify(const SceneConfig& config, const RunOptions& options) {
    CommandResult result;
    const Bench bench = make_bench(config);
    const std::size_t samples = config.samples_per_element.value_or(64);

    Json report;
    report["command"] = "classify";
    report["convention"] = kConvention;
    report["scene"] = scene_json(config);
    Json arms = Json::array();
    bool all_closed = true;
    for (const auto* arm : {&bench.arm1, &bench.arm2}) {
        Json entry;
        const JonesMatrix t = total(*arm);
        entry["endpoint_matrix"] = matrix_json(t);
        try {
            const auto jones = to_jones(*arm);
            const HomotopyClass c = homotopy_class(jones);
            entry["endpoint"] = c == HomotopyClass::ZeroType ? "+I" : "-I";
            entry["class"] = to_string(c);
        } catch (const Error& e) {
            record_error(result, e);
            all_closed = false;
            entry["endpoint"] = "open";
            entry["class"] = nullptr;
        }
        try {
            const SpherePath path = lift_path(bench.input, *arm, samples);
            entry["path"] = Json{{"samples", path.samples.size()},
                                 {"samples_per_element", samples},
                                 {"crossings", path.crossings},
                                 {"crossing_parity", path.crossings % 2 == 0 ? "even" : "odd"},
                                 {"closed", path.closed}};
        } catch (const Error& e) {
            record_error(result, e);
            entry["path"] = nullptr;
            entry["path_error"] = e.what();
        }
        arms.push_back(entry);
    }
    report["arms"] = arms;
    if (all_closed) {
        const auto j1 = to_jones(bench.arm1);
        const auto j2 = to_jones(bench.arm2);
        report["relative_class"] = to_string(relative_class(j1, j2));
    } else {
        report["relative_class"] = nullptr;
    }
    write_json(output_path(options, config.outputs.report, "classify.json"), report, result);
    result.summary = "classify: relative class " +
                     (report["relative_class"].is_null() ? std::string("n/a")
                                                         : report["relative_class"].get<std::string>());
    return result;
}

CommandResult run_photon(const SceneConfig& config, const RunOptions& options) {
    if (!config.photon) throw Error(ErrorKind::SchemaError, "photon needs key 'photon'");
    CommandResult result;
    const Bench bench = make_bench(config);
    const PhotonSpec photon = *config.photon;

    const Interferogram pattern = michelson(bench.input, bench.total1, bench.total2, bench.tilt, bench.grid,
                                            bench.arm_phase);
    const Interferogram reference = michelson(bench.input, bench.total1, bench.total1, bench.tilt, bench.grid,
                                              bench.arm_phase);
    const CountScan counts = sample_counts(pattern, bench.scan_y, photon.n_total, photon.seed);
    const CountScan ref_counts = sample_counts(reference, bench.scan_y, photon.n_total, splitmix64(photon.seed));

    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < counts.x.size(); ++i)
        rows.push_back({format_double(counts.x[i]), std::to_string(counts.counts[i]),
                        std::to_string(ref_counts.counts[i])});
    const auto csv_path = output_path(options, config.outputs.csv, "photon_counts.csv");
    write_file_atomic(csv_path, csv_table({"x", "count", "reference_count"}, rows));
    result.written.push_back(csv_path);

    Json report;
    report["command"] = "photon";
    report["scene"] = scene_json(config);
    report["rng_algorithm"] = counts.rng_algorithm;
    report["seed"] = counts.seed;
    report["reference_seed"] = ref_counts.seed;
    report["n_total"] = counts.n_total;
    report["scan_y"] = counts.y;
    report["total_counts"] = counts.total();
    report["reference_total_counts"] = ref_counts.total();
    report["fringe_model"] = to_string(counts.model.kind);

    std::optional<FringeReport> fit;
    std::optional<FringeReport> ref_fit;
    try {
        fit = fit_counts(counts, bench.tilt);
        ref_fit = fit_counts(ref_counts, bench.tilt);
    } catch (const Error& e) {
        record_error(result, e);
        report["fit_error"] = e.what();
    }
    auto field = [](const std::optional<FringeReport>& f, auto get) -> Json {
        return f ? Json(get(*f)) : Json(nullptr);
    };
    report["visibility"] = field(fit, [](const FringeReport& f) { return f.visibility; });
    report["sigma_visibility"] = field(fit, [](const FringeReport& f) { return f.uncertainty->visibility; });
    report["fringe_phase_rad"] = field(fit, [](const FringeReport& f) { return f.fringe_phase; });
    report["sigma_fringe_phase_rad"] = field(fit, [](const FringeReport& f) { return f.uncertainty->fringe_phase; });
    report["reference_visibility"] = field(ref_fit, [](const FringeReport& f) { return f.visibility; });
    report["reference_fringe_phase_rad"] = field(ref_fit, [](const FringeReport& f) { return f.fringe_phase; });
    if (fit && ref_fit && counts.model == ref_counts.model) {
        report["phase_shift_rad"] = phase_shift(*ref_fit, *fit);
        report["sigma_phase_shift_rad"] = std::hypot(fit->uncertainty->fringe_phase, ref_fit->uncertainty->fringe_phase);
    } else {
        report["phase_shift_rad"] = nullptr;
        report["sigma_phase_shift_rad"] = nullptr;
    }
    write_json(output_path(options, config.outputs.report, "photon_report.json"), report, result);
    result.summary = "photon: " + std::to_string(counts.total()) + " counts, phase shift " +
                     (report["phase_shift_rad"].is_null() ? std::string("n/a")
                                                          : format_double(report["phase_shift_rad"].get<double>())) +
                     " rad";
    return result;
}

CommandResult run_oracle(const SceneConfig& config, const RunOptions& options) {
    CommandResult result;
    const Bench bench = make_bench(config);
    const SpinOrbitState& s = bench.input;
    const double tol = 1e-12;
    const bool eps_family = std::abs(s.beta) < tol && std::abs(s.gamma) < tol && std::abs(s.alpha.imag()) < tol &&
                            std::abs(s.delta.imag()) < tol && s.alpha.real() > -tol && s.delta.real() > -tol;
    if (!eps_family) throw Error(ErrorKind::DomainError, "oracle needs an input of the form sqrt(eps) psi+H + sqrt(1-eps) psi-V");
    const double eps = std::clamp(std::norm(s.alpha), 0.0, 1.0);
    const auto image = analytic_image(eps, bench.grid, bench.tilt, bench.arm_phase);
    write_image(output_path(options, config.outputs.image, "oracle.pgm"), image, bench, result);
    result.summary = "oracle: eps " + format_double(eps);
    return result;
}

}  // namespace spinorbit::cli
