#include "spinorbit/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace spinorbit {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ZeroState: return "ZeroState";
        case ErrorKind::NotNormalized: return "NotNormalized";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::EmptySequence: return "EmptySequence";
        case ErrorKind::NotMaximallyNonseparable: return "NotMaximallyNonseparable";
        case ErrorKind::StepTooCoarse: return "StepTooCoarse";
        case ErrorKind::NotClosed: return "NotClosed";
        case ErrorKind::FitDiverged: return "FitDiverged";
        case ErrorKind::DegeneratePattern: return "DegeneratePattern";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::SchemaError: return "SchemaError";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

double canonical_phase(double phase) {
    double p = std::remainder(phase, 2.0 * kPi);
    if (p <= -kPi) p += 2.0 * kPi;
    return p;
}

double SpinOrbitState::norm_squared() const {
    return std::norm(alpha) + std::norm(beta) + std::norm(gamma) + std::norm(delta);
}

double SpinOrbitState::norm() const { return std::sqrt(norm_squared()); }

SpinOrbitState SpinOrbitState::operator*(Complex s) const {
    return {alpha * s, beta * s, gamma * s, delta * s};
}

SpinOrbitState SpinOrbitState::operator+(const SpinOrbitState& o) const {
    return {alpha + o.alpha, beta + o.beta, gamma + o.gamma, delta + o.delta};
}

double max_abs_difference(const SpinOrbitState& a, const SpinOrbitState& b) {
    return std::max({std::abs(a.alpha - b.alpha), std::abs(a.beta - b.beta),
                     std::abs(a.gamma - b.gamma), std::abs(a.delta - b.delta)});
}

namespace modes {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const Complex kMinusI{0.0, -1.0};
}  // namespace

SpinOrbitState e1() { return {kInvSqrt2, 0.0, 0.0, kInvSqrt2}; }
SpinOrbitState e2() { return {kMinusI * kInvSqrt2, 0.0, 0.0, -kMinusI * kInvSqrt2}; }
SpinOrbitState e3() { return {0.0, kMinusI * kInvSqrt2, kMinusI * kInvSqrt2, 0.0}; }
SpinOrbitState e4() { return {0.0, kInvSqrt2, -kInvSqrt2, 0.0}; }

}  // namespace modes

SpinOrbitState normalize(const SpinOrbitState& state) {
    const auto c = state.coefficients();
    const bool all_zero = std::all_of(c.begin(), c.end(), [](Complex z) { return std::abs(z) < 1e-15; });
    if (all_zero) throw Error(ErrorKind::ZeroState, "cannot normalize a zero state");
    const double n = state.norm();
    // A state whose norm is 1 to within rounding is returned untouched, so
    // normalize(normalize(s)) == normalize(s) bit-for-bit.
    if (std::abs(n - 1.0) <= 1e-15) return state;
    return {state.alpha / n, state.beta / n, state.gamma / n, state.delta / n};
}

double concurrence(const SpinOrbitState& state) {
    const double n2 = state.norm_squared();
    if (std::abs(std::sqrt(n2) - 1.0) > kNormTolerance)
        throw Error(ErrorKind::NotNormalized, "concurrence requires a unit-norm state, norm = " +
                                                  std::to_string(std::sqrt(n2)));
    return std::min(1.0, 2.0 * std::abs(state.alpha * state.delta - state.beta * state.gamma));
}

SpinOrbitState product_state(std::pair<Complex, Complex> spatial,
                             std::pair<Complex, Complex> polarization) {
    auto is_zero = [](std::pair<Complex, Complex> p) {
        return std::abs(p.first) < 1e-15 && std::abs(p.second) < 1e-15;
    };
    if (is_zero(spatial)) throw Error(ErrorKind::ZeroState, "zero spatial pair");
    if (is_zero(polarization)) throw Error(ErrorKind::ZeroState, "zero polarization pair");
    const auto [cp, cm] = spatial;
    const auto [ch, cv] = polarization;
    return normalize({cp * ch, cp * cv, cm * ch, cm * cv});
}

SpinOrbitState epsilon_state(double eps) {
    if (!(eps >= 0.0 && eps <= 1.0))
        throw Error(ErrorKind::DomainError, "eps must lie in [0, 1], got " + std::to_string(eps));
    return {std::sqrt(eps), 0.0, 0.0, std::sqrt(1.0 - eps)};
}

double epsilon_from_hwp(Angle theta) {
    const double c = std::cos(2.0 * theta.rad());
    return c * c;
}

Complex lg_profile(double x, double y, Vortex sign, double waist) {
    if (!(waist > 0.0)) throw Error(ErrorKind::InvalidArgument, "waist must be positive");
    const double r2 = (x * x + y * y) / (waist * waist);
    const double norm = 2.0 / (waist * std::sqrt(kPi));
    const double radial = norm * std::exp(-r2);
    // (r/w) e^{+-i phi} = (x +- i y) / w, which is exact at the origin.
    const Complex azimuthal = sign == Vortex::Plus ? Complex{x, y} : Complex{x, -y};
    return radial * azimuthal / waist;
}

double lg_intensity(double x, double y, double waist) {
    return std::norm(lg_profile(x, y, Vortex::Plus, waist));
}

TransverseGrid::TransverseGrid(std::size_t nx, std::size_t ny, double extent, double waist)
    : nx_(nx), ny_(ny), extent_(extent), waist_(waist) {
    if (nx < 16 || ny < 16)
        throw Error(ErrorKind::InvalidArgument, "grid needs at least 16 pixels per axis");
    if (!(extent > 0.0) || !std::isfinite(extent))
        throw Error(ErrorKind::InvalidArgument, "grid extent must be positive");
    if (!(waist > 0.0) || !std::isfinite(waist))
        throw Error(ErrorKind::InvalidArgument, "waist must be positive");
}

std::size_t TransverseGrid::nearest_row(double y) const {
    const double j = std::round((y + half_width()) / dy() - 0.5);
    return static_cast<std::size_t>(std::clamp(j, 0.0, static_cast<double>(ny_ - 1)));
}

double VectorField::power() const {
    double sum = 0.0;
    for (std::size_t k = 0; k < e_h.size(); ++k) sum += std::norm(e_h[k]) + std::norm(e_v[k]);
    return sum * grid.pixel_area();
}

VectorField evaluate_field(const SpinOrbitState& state, const TransverseGrid& grid) {
    VectorField field{grid, std::vector<Complex>(grid.size()), std::vector<Complex>(grid.size())};
    for (std::size_t j = 0; j < grid.ny(); ++j) {
        const double y = grid.y(j);
        for (std::size_t i = 0; i < grid.nx(); ++i) {
            const double x = grid.x(i);
            const Complex plus = lg_profile(x, y, Vortex::Plus, grid.waist());
            const Complex minus = lg_profile(x, y, Vortex::Minus, grid.waist());
            const std::size_t k = grid.index(i, j);
            field.e_h[k] = state.alpha * plus + state.gamma * minus;
            field.e_v[k] = state.beta * plus + state.delta * minus;
        }
    }
    return field;
}

Complex grid_inner_product(Vortex a, Vortex b, const TransverseGrid& grid) {
    Complex sum{};
    for (std::size_t j = 0; j < grid.ny(); ++j)
        for (std::size_t i = 0; i < grid.nx(); ++i)
            sum += std::conj(lg_profile(grid.x(i), grid.y(j), a, grid.waist())) *
                   lg_profile(grid.x(i), grid.y(j), b, grid.waist());
    return sum * grid.pixel_area();
}

}  // namespace spinorbit
