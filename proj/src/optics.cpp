#include "spinorbit/optics.hpp"

#include <cmath>

namespace spinorbit {

JonesMatrix JonesMatrix::operator*(const JonesMatrix& o) const {
    return {hh * o.hh + hv * o.vh, hh * o.hv + hv * o.vv,
            vh * o.hh + vv * o.vh, vh * o.hv + vv * o.vv};
}

double distance(const JonesMatrix& a, const JonesMatrix& b) {
    const JonesMatrix d = a - b;
    return std::sqrt(std::norm(d.hh) + std::norm(d.hv) + std::norm(d.vh) + std::norm(d.vv));
}

double unitarity_defect(const JonesMatrix& m) {
    return distance(m.adjoint() * m, JonesMatrix::identity());
}

JonesMatrix retarder(double retardance, Angle axis) {
    const double c = std::cos(0.5 * retardance);
    const double s = std::sin(0.5 * retardance);
    const double c2 = std::cos(2.0 * axis.rad());
    const double s2 = std::sin(2.0 * axis.rad());
    const Complex off{0.0, -s * s2};
    return {Complex{c, -s * c2}, off, off, Complex{c, s * c2}};
}

JonesMatrix hwp(Angle axis) { return retarder(kPi, axis); }

JonesMatrix qwp(Angle axis) { return retarder(0.5 * kPi, axis); }

JonesMatrix polarizer(PolarizerAxis axis) {
    return axis == PolarizerAxis::H ? JonesMatrix{1.0, 0.0, 0.0, 0.0} : JonesMatrix{0.0, 0.0, 0.0, 1.0};
}

JonesMatrix linear_polarizer(Angle axis) {
    const double c = std::cos(axis.rad());
    const double s = std::sin(axis.rad());
    return {c * c, c * s, c * s, s * s};
}

SpinOrbitState apply_polarization(const SpinOrbitState& state, const JonesMatrix& j) {
    const auto [a, b] = j.apply(state.alpha, state.beta);
    const auto [g, d] = j.apply(state.gamma, state.delta);
    return {a, b, g, d};
}

JonesMatrix double_pass_arm(Angle qwp_axis) {
    const JonesMatrix plate = qwp(qwp_axis);
    const JonesMatrix mirror = JonesMatrix::identity();
    return plate * mirror * plate;
}

JonesMatrix compose(std::span<const JonesMatrix> elements) {
    if (elements.empty()) throw Error(ErrorKind::EmptySequence, "compose needs at least one element");
    JonesMatrix total = elements.front();
    for (std::size_t k = 1; k < elements.size(); ++k) total = elements[k] * total;
    return total;
}

SpinOrbitState prepare_stage(Angle theta_a, Angle theta_b) {
    // hwp(theta) (0, 1) = -i (sin 2theta, -cos 2theta). The -i is common to
    // both arms and the lossless BS-1 port carrying psi- contributes the
    // reflection sign that cancels the minus on the V projection.
    const double plus_h = std::sin(2.0 * theta_a.rad());
    const double minus_v = std::cos(2.0 * theta_b.rad());
    if (std::abs(plus_h) < 1e-15 && std::abs(minus_v) < 1e-15)
        throw Error(ErrorKind::ZeroState, "both polarizers block their arm");
    return normalize({plus_h, 0.0, 0.0, minus_v});
}

JonesMatrix ElementSpec::jones() const {
    switch (kind) {
        case ElementKind::Hwp: return hwp(axis);
        case ElementKind::Qwp: return qwp(axis);
        case ElementKind::QwpDouble: return double_pass_arm(axis);
        case ElementKind::Polarizer: return linear_polarizer(axis);
    }
    return JonesMatrix::identity();
}

std::optional<double> ElementSpec::retardance() const {
    switch (kind) {
        case ElementKind::Hwp: return kPi;
        case ElementKind::Qwp: return 0.5 * kPi;
        case ElementKind::QwpDouble: return kPi;
        default: return std::nullopt;
    }
}

std::string to_string(ElementKind kind) {
    switch (kind) {
        case ElementKind::Hwp: return "hwp";
        case ElementKind::Qwp: return "qwp";
        case ElementKind::QwpDouble: return "qwp-double";
        case ElementKind::Polarizer: return "polarizer";
    }
    return "?";
}

std::optional<ElementKind> element_kind_from_string(const std::string& name) {
    for (auto kind : {ElementKind::Hwp, ElementKind::Qwp, ElementKind::QwpDouble, ElementKind::Polarizer})
        if (to_string(kind) == name) return kind;
    return std::nullopt;
}

std::vector<JonesMatrix> to_jones(std::span<const ElementSpec> elements) {
    std::vector<JonesMatrix> out;
    out.reserve(elements.size());
    for (const auto& e : elements) out.push_back(e.jones());
    return out;
}

}  // namespace spinorbit
