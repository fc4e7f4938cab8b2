#include "spinorbit/interferometer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Dense>

namespace spinorbit {

double Interferogram::peak() const {
    return intensity.empty() ? 0.0 : *std::max_element(intensity.begin(), intensity.end());
}

double default_tilt(const TransverseGrid& grid) { return 8.0 * kPi / (2.0 * grid.half_width()); }

Interferogram michelson(const SpinOrbitState& input, const JonesMatrix& arm1, const JonesMatrix& arm2,
                        double tilt, const TransverseGrid& grid, double arm_phase) {
    if (std::abs(input.norm() - 1.0) > kNormTolerance)
        throw Error(ErrorKind::NotNormalized, "interferometer input must be unit norm");

    Interferogram out{grid, std::vector<double>(grid.size()), tilt, arm_phase, input, arm1, arm2, {}};
    const double periods = std::abs(tilt) * 2.0 * grid.half_width() / (2.0 * kPi);
    if (periods < 4.0)
        out.warnings.push_back("only " + std::to_string(periods) + " fringe periods fit in the grid");

    const VectorField f1 = evaluate_field(apply_polarization(input, arm1), grid);
    const VectorField f2 = evaluate_field(apply_polarization(input, arm2), grid);
    for (std::size_t j = 0; j < grid.ny(); ++j) {
        for (std::size_t i = 0; i < grid.nx(); ++i) {
            const std::size_t k = grid.index(i, j);
            const Complex tilt_phase = std::polar(1.0, tilt * grid.x(i) + arm_phase);
            out.intensity[k] = std::norm(f1.e_h[k] + tilt_phase * f2.e_h[k]) +
                               std::norm(f1.e_v[k] + tilt_phase * f2.e_v[k]);
        }
    }
    return out;
}

double analytic_pattern(double eps, double x, double y, double tilt, double phase_offset, double waist) {
    if (!(eps >= 0.0 && eps <= 1.0))
        throw Error(ErrorKind::DomainError, "eps must lie in [0, 1], got " + std::to_string(eps));
    const double r2 = x * x + y * y;
    const double sin2phi = r2 > 0.0 ? 2.0 * x * y / r2 : 0.0;
    const double contrast = 2.0 * std::sqrt(eps * (1.0 - eps));
    return 2.0 * lg_intensity(x, y, waist) * (1.0 + contrast * sin2phi * std::sin(tilt * x + phase_offset));
}

std::vector<double> analytic_image(double eps, const TransverseGrid& grid, double tilt, double phase_offset) {
    std::vector<double> image(grid.size());
    for (std::size_t j = 0; j < grid.ny(); ++j)
        for (std::size_t i = 0; i < grid.nx(); ++i)
            image[grid.index(i, j)] = analytic_pattern(eps, grid.x(i), grid.y(j), tilt, phase_offset, grid.waist());
    return image;
}

std::vector<ElementSpec> rotation_sequence() {
    return {{ElementKind::Hwp, Angle::degrees(0.0)},
            {ElementKind::Hwp, Angle::degrees(-45.0)},
            {ElementKind::Hwp, Angle::degrees(90.0)}};
}

std::vector<ElementSpec> experiment_arm(Angle closure) {
    auto arm = rotation_sequence();
    arm.push_back({ElementKind::QwpDouble, closure});
    return arm;
}

double FringeModel::modulation(double x, double y) const {
    if (kind == Kind::Uniform) return 1.0;
    return std::cos(2.0 * std::atan2(y, x) + angular_offset);
}

const char* to_string(FringeModel::Kind kind) {
    return kind == FringeModel::Kind::Uniform ? "uniform" : "standing";
}

FringeModel fringe_model_for(const SpinOrbitState& input, const JonesMatrix& arm1, const JonesMatrix& arm2) {
    // E = psi+ u + psi- v, so conj(F1).F2 = |psi|^2 [c0 + c_minus e^{-2i phi} + c_plus e^{2i phi}]
    // with T = arm1^dagger arm2.
    const JonesMatrix t = arm1.adjoint() * arm2;
    auto form = [&](Complex a1, Complex a2, Complex b1, Complex b2) {
        const auto [t1, t2] = t.apply(b1, b2);
        return std::conj(a1) * t1 + std::conj(a2) * t2;
    };
    const Complex c0 = form(input.alpha, input.beta, input.alpha, input.beta) +
                       form(input.gamma, input.delta, input.gamma, input.delta);
    const Complex c_minus = form(input.alpha, input.beta, input.gamma, input.delta);
    const Complex c_plus = form(input.gamma, input.delta, input.alpha, input.beta);

    const double h0 = std::abs(c0);
    const double h2 = std::abs(c_minus) + std::abs(c_plus);
    if (h2 <= 1e-12 || h0 >= h2) return FringeModel::uniform();
    return FringeModel::standing(0.5 * (std::arg(c_plus) - std::arg(c_minus)));
}

FringeScan extract_scan(const Interferogram& pattern, double y) {
    const auto& grid = pattern.grid;
    const std::size_t row = grid.nearest_row(y);
    FringeScan scan;
    scan.y = grid.y(row);
    scan.waist = grid.waist();
    scan.model = fringe_model_for(pattern.input, pattern.arm1, pattern.arm2);
    scan.x.resize(grid.nx());
    scan.intensity.resize(grid.nx());
    for (std::size_t i = 0; i < grid.nx(); ++i) {
        scan.x[i] = grid.x(i);
        scan.intensity[i] = pattern.at(i, row);
    }
    return scan;
}

const char* to_string(VortexParity p) {
    switch (p) {
        case VortexParity::Bright: return "Bright";
        case VortexParity::Dark: return "Dark";
        case VortexParity::Indeterminate: return "Indeterminate";
    }
    return "?";
}

namespace {

void check_sampling(std::span<const double> x, double tilt) {
    if (x.size() < 8) throw Error(ErrorKind::InvalidArgument, "fringe fit needs at least 8 samples");
    if (!(std::abs(tilt) > 0.0) || !std::isfinite(tilt))
        throw Error(ErrorKind::InvalidArgument, "fringe fit needs a nonzero tilt");
    const double period = 2.0 * kPi / std::abs(tilt);
    double widest = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) widest = std::max(widest, std::abs(x[i] - x[i - 1]));
    if (widest > period / 8.0 * (1.0 + 1e-9))
        throw Error(ErrorKind::InvalidArgument, "scan has fewer than 8 samples per fringe period");
}

}  // namespace

FringeReport fit_fringes(const FringeFitInput& in, double tilt) {
    check_sampling(in.x, tilt);
    if (in.values.size() != in.x.size() || (!in.weights.empty() && in.weights.size() != in.x.size()))
        throw Error(ErrorKind::InvalidArgument, "scan arrays differ in length");
    if (!(std::abs(in.y) > 0.0))
        throw Error(ErrorKind::InvalidArgument, "scan line passes through the vortex core");

    const auto n = static_cast<Eigen::Index>(in.x.size());
    Eigen::MatrixXd design(n, 4);
    Eigen::VectorXd data(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double x = in.x[static_cast<std::size_t>(i)];
        const double env = lg_intensity(x, in.y, in.waist);
        const double fringe = env * in.model.modulation(x, in.y);
        design(i, 0) = env;
        design(i, 1) = fringe * std::sin(tilt * x);
        design(i, 2) = fringe * std::cos(tilt * x);
        design(i, 3) = 1.0;
        data(i) = in.values[static_cast<std::size_t>(i)];
    }

    Eigen::MatrixXd weighted = design;
    Eigen::VectorXd weighted_data = data;
    if (!in.weights.empty()) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double s = std::sqrt(in.weights[static_cast<std::size_t>(i)]);
            weighted.row(i) *= s;
            weighted_data(i) *= s;
        }
    }

    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(weighted);
    if (qr.rank() < 4) throw Error(ErrorKind::FitDiverged, "fringe model is degenerate on this scan");
    const Eigen::Vector4d c = qr.solve(weighted_data);

    FringeReport report;
    if (!(c(0) > 0.0)) throw Error(ErrorKind::FitDiverged, "fitted envelope amplitude is not positive");
    const double fringe_amp = std::hypot(c(1), c(2));
    report.amplitude = c(0);
    report.offset = c(3);
    report.visibility = std::clamp(fringe_amp / c(0), 0.0, 1.0);
    report.fringe_phase = canonical_phase(std::atan2(c(2), c(1)));

    const Eigen::VectorXd model = design * c;
    const Eigen::VectorXd resid = data - model;
    const double ss_resid = resid.squaredNorm();
    const double ss_data = data.squaredNorm();
    report.residual = std::sqrt(ss_resid / static_cast<double>(n));
    if (!(ss_data > 0.0)) throw Error(ErrorKind::FitDiverged, "scan carries no signal");
    double excess = ss_resid;
    if (in.poisson) {
        // Subtract the Poisson variance the residual would carry for a perfect model.
        const double expected = model.cwiseMax(0.0).sum();
        excess = std::max(0.0, ss_resid - expected);
    }
    report.relative_residual = std::sqrt(excess / ss_data);
    if (!(report.relative_residual <= kMaxRelativeResidual))
        throw Error(ErrorKind::FitDiverged,
                    "relative residual " + std::to_string(report.relative_residual) + " exceeds 0.2");

    if (!in.weights.empty()) {
        const Eigen::Matrix4d normal = weighted.transpose() * weighted;
        const Eigen::Matrix4d cov = normal.inverse();
        Eigen::Vector4d dv = Eigen::Vector4d::Zero();
        Eigen::Vector4d dphi = Eigen::Vector4d::Zero();
        dv(0) = -fringe_amp / (c(0) * c(0));
        if (fringe_amp > 0.0) {
            dv(1) = c(1) / (c(0) * fringe_amp);
            dv(2) = c(2) / (c(0) * fringe_amp);
            dphi(1) = -c(2) / (fringe_amp * fringe_amp);
            dphi(2) = c(1) / (fringe_amp * fringe_amp);
        } else {
            dv(1) = dv(2) = 1.0 / (c(0) * std::sqrt(2.0));
        }
        const double var_phi = dphi.dot(cov * dphi);
        report.uncertainty = FringeUncertainty{std::sqrt(std::max(0.0, dv.dot(cov * dv))),
                                               fringe_amp > 0.0 ? std::sqrt(std::max(0.0, var_phi)) : kPi};
    }
    return report;
}

FringeReport visibility_fit(const FringeScan& scan, double tilt) {
    return fit_fringes({scan.x, scan.intensity, {}, scan.y, scan.waist, scan.model, false}, tilt);
}

double phase_shift(const FringeReport& report1, const FringeReport& report2) {
    return canonical_phase(report2.fringe_phase - report1.fringe_phase);
}

VortexParity vortex_parity(const Interferogram& pattern, double line_offset) {
    const double periods = std::abs(pattern.tilt) * 2.0 * pattern.grid.half_width() / (2.0 * kPi);
    if (periods < 4.0 - 1e-9)
        throw Error(ErrorKind::InvalidArgument, "vortex parity needs at least 4 resolved fringe periods");

    const double offset = std::abs(line_offset) * pattern.grid.waist();
    double signal = 0.0;
    double visibility = 0.0;
    for (double y : {offset, -offset}) {
        const FringeScan scan = extract_scan(pattern, y);
        const FringeReport fit = visibility_fit(scan, pattern.tilt);
        // Fitted fringe at the singularity column, normalized by its visibility.
        signal += 0.5 * scan.model.modulation(0.0, scan.y) * std::sin(fit.fringe_phase);
        visibility += 0.5 * fit.visibility;
    }
    if (visibility < kParityMinVisibility || std::abs(signal) < 0.5) return VortexParity::Indeterminate;
    return signal > 0.0 ? VortexParity::Bright : VortexParity::Dark;
}

}  // namespace spinorbit
