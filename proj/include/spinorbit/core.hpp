#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "spinorbit/common.hpp"

namespace spinorbit {

/**
 * First-order spin-orbit mode
 *
 *   E(r) = alpha psi+ eH + beta psi+ eV + gamma psi- eH + delta psi- eV
 *
 * The coefficient order follows the spatial index first, polarization
 * second: (psi+ H, psi+ V, psi- H, psi- V).
 */
struct SpinOrbitState {
    Complex alpha{};
    Complex beta{};
    Complex gamma{};
    Complex delta{};

    double norm_squared() const;
    double norm() const;

    std::array<Complex, 4> coefficients() const { return {alpha, beta, gamma, delta}; }

    SpinOrbitState operator*(Complex s) const;
    SpinOrbitState operator+(const SpinOrbitState& o) const;
    bool operator==(const SpinOrbitState&) const = default;
};

/// Largest coefficient-wise distance between two states.
double max_abs_difference(const SpinOrbitState& a, const SpinOrbitState& b);

/// Named maximally nonseparable basis modes E1..E4.
namespace modes {
SpinOrbitState e1();
SpinOrbitState e2();
SpinOrbitState e3();
SpinOrbitState e4();
}  // namespace modes

inline constexpr double kNormTolerance = 1e-9;

SpinOrbitState normalize(const SpinOrbitState& state);

/// 2|alpha delta - beta gamma|. Requires a unit-norm state.
double concurrence(const SpinOrbitState& state);

/// Outer product of a spatial pair (c+, c-) with a polarization pair (cH, cV), normalized.
SpinOrbitState product_state(std::pair<Complex, Complex> spatial,
                             std::pair<Complex, Complex> polarization);

/// sqrt(eps) psi+ eH + sqrt(1 - eps) psi- eV
SpinOrbitState epsilon_state(double eps);

/// cos^2(2 theta)
double epsilon_from_hwp(Angle theta);

enum class Vortex { Plus, Minus };

/// Normalized first-order Laguerre-Gaussian profile at the waist,
/// N (r/w) exp(+-i phi) exp(-r^2/w^2) with N = 2 / (w sqrt(pi)).
Complex lg_profile(double x, double y, Vortex sign, double waist);

/// |psi+-|^2, the common doughnut envelope of both vortices.
double lg_intensity(double x, double y, double waist);

/// Cell-centred sampling plane. Pixel (i, j) sits at
/// x = -extent + (i + 1/2) dx, y = -extent + (j + 1/2) dy, with extent in units of the waist.
class TransverseGrid {
  public:
    TransverseGrid(std::size_t nx, std::size_t ny, double extent, double waist = 1.0);

    std::size_t nx() const { return nx_; }
    std::size_t ny() const { return ny_; }
    double extent() const { return extent_; }
    double waist() const { return waist_; }

    /// Physical half-width.
    double half_width() const { return extent_ * waist_; }
    double dx() const { return 2.0 * half_width() / static_cast<double>(nx_); }
    double dy() const { return 2.0 * half_width() / static_cast<double>(ny_); }
    double pixel_area() const { return dx() * dy(); }
    double x(std::size_t i) const { return -half_width() + (static_cast<double>(i) + 0.5) * dx(); }
    double y(std::size_t j) const { return -half_width() + (static_cast<double>(j) + 0.5) * dy(); }
    std::size_t size() const { return nx_ * ny_; }
    std::size_t index(std::size_t i, std::size_t j) const { return j * nx_ + i; }

    /// Row whose centre is closest to the physical y coordinate.
    std::size_t nearest_row(double y) const;

    bool operator==(const TransverseGrid&) const = default;

  private:
    std::size_t nx_;
    std::size_t ny_;
    double extent_;
    double waist_;
};

/// Row-major (j * nx + i) samples of the two polarization components.
struct VectorField {
    TransverseGrid grid;
    std::vector<Complex> e_h;
    std::vector<Complex> e_v;

    /// Midpoint-rule integral of |E_H|^2 + |E_V|^2.
    double power() const;
};

VectorField evaluate_field(const SpinOrbitState& state, const TransverseGrid& grid);

/// Midpoint-rule inner product <psi_a, psi_b> over the grid.
Complex grid_inner_product(Vortex a, Vortex b, const TransverseGrid& grid);

}  // namespace spinorbit
