#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spinorbit/common.hpp"
#include "spinorbit/core.hpp"

namespace spinorbit {

/// 2x2 Jones matrix on the (H, V) polarization amplitudes.
struct JonesMatrix {
    Complex hh{1.0};
    Complex hv{};
    Complex vh{};
    Complex vv{1.0};

    static JonesMatrix identity() { return {}; }
    static JonesMatrix zero() { return {0.0, 0.0, 0.0, 0.0}; }

    Complex determinant() const { return hh * vv - hv * vh; }
    JonesMatrix adjoint() const { return {std::conj(hh), std::conj(vh), std::conj(hv), std::conj(vv)}; }

    JonesMatrix operator*(const JonesMatrix& o) const;
    JonesMatrix operator*(Complex s) const { return {hh * s, hv * s, vh * s, vv * s}; }
    JonesMatrix operator+(const JonesMatrix& o) const { return {hh + o.hh, hv + o.hv, vh + o.vh, vv + o.vv}; }
    JonesMatrix operator-(const JonesMatrix& o) const { return {hh - o.hh, hv - o.hv, vh - o.vh, vv - o.vv}; }

    /// (H, V) -> J (H, V)
    std::pair<Complex, Complex> apply(Complex h, Complex v) const {
        return {hh * h + hv * v, vh * h + vv * v};
    }

    bool operator==(const JonesMatrix&) const = default;
};

/// Frobenius norm of a - b.
double distance(const JonesMatrix& a, const JonesMatrix& b);

/// Frobenius norm of U^dagger U - I.
double unitarity_defect(const JonesMatrix& m);

/// Symmetric-phase linear retarder R(theta) diag(e^{-i gamma/2}, e^{+i gamma/2}) R(-theta).
/// Always in SU(2).
JonesMatrix retarder(double retardance, Angle axis);

JonesMatrix hwp(Angle axis);
JonesMatrix qwp(Angle axis);

enum class PolarizerAxis { H, V };

JonesMatrix polarizer(PolarizerAxis axis);

/// Projector onto linear polarization at the given angle from H.
JonesMatrix linear_polarizer(Angle axis);

/// Acts on the polarization index of both spatial sectors: (alpha, beta) and
/// (gamma, delta) each transform as column vectors.
SpinOrbitState apply_polarization(const SpinOrbitState& state, const JonesMatrix& j);

/// Michelson arm: quarter-wave plate passed twice with a mirror in between.
/// The mirror acts as the identity on (H, V) in the fixed lab frame, so the
/// arm equals retarder(pi, axis).
JonesMatrix double_pass_arm(Angle qwp_axis);

/// Product in optical order: the last element is applied last (leftmost).
JonesMatrix compose(std::span<const JonesMatrix> elements);

/// Grating + HWP-A/HWP-B + Pol-H/Pol-V + BS-1, idealized. A vertically
/// polarized input is rotated by each half-wave plate; the psi+ arm keeps
/// the H projection, the psi- arm the V projection. Returns the normalized
/// state sin(2 theta_A) psi+ eH + cos(2 theta_B) psi- eV with the common
/// arm phase removed.
SpinOrbitState prepare_stage(Angle theta_a, Angle theta_b);

/// Element kinds that can appear in an interferometer arm description.
enum class ElementKind { Hwp, Qwp, QwpDouble, Polarizer };

/// Optical element given by its kind and fast-axis orientation.
struct ElementSpec {
    ElementKind kind = ElementKind::Hwp;
    Angle axis{};

    JonesMatrix jones() const;

    /// Total retardance when the element is a retarder; empty for polarizers.
    std::optional<double> retardance() const;

    bool operator==(const ElementSpec&) const = default;
};

std::string to_string(ElementKind kind);
std::optional<ElementKind> element_kind_from_string(const std::string& name);

std::vector<JonesMatrix> to_jones(std::span<const ElementSpec> elements);

}  // namespace spinorbit
