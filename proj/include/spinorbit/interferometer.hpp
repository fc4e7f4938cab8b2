#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spinorbit/core.hpp"
#include "spinorbit/optics.hpp"

namespace spinorbit {

/// Tilted Michelson output. intensity is row-major (j * nx + i).
struct Interferogram {
    TransverseGrid grid;
    std::vector<double> intensity;
    double tilt = 0.0;       ///< delta k along x, radians per length unit
    double arm_phase = 0.0;  ///< extra phase of arm 2, radians
    SpinOrbitState input;
    JonesMatrix arm1;
    JonesMatrix arm2;
    std::vector<std::string> warnings;

    double at(std::size_t i, std::size_t j) const { return intensity[grid.index(i, j)]; }
    double peak() const;
};

/// delta k giving four full fringe periods across the grid width.
double default_tilt(const TransverseGrid& grid);

/// I = sum_p |F1_p + exp(i (tilt x + arm_phase)) F2_p|^2, F_n = field of input after arm n.
Interferogram michelson(const SpinOrbitState& input, const JonesMatrix& arm1, const JonesMatrix& arm2,
                        double tilt, const TransverseGrid& grid, double arm_phase = 0.0);

/// Closed-form interferogram of the eps-family with the closure plate at 0 deg:
/// 2|psi|^2 [1 + 2 sqrt(eps(1-eps)) sin(2 phi) sin(tilt x + phase_offset)].
double analytic_pattern(double eps, double x, double y, double tilt, double phase_offset, double waist = 1.0);

std::vector<double> analytic_image(double eps, const TransverseGrid& grid, double tilt, double phase_offset);

/// Three half-wave plates at 0, -45 and 90 deg.
std::vector<ElementSpec> rotation_sequence();

/// rotation_sequence() followed by a double-passed quarter-wave plate at the closure angle.
std::vector<ElementSpec> experiment_arm(Angle closure);

/**
 * Shape of the fringe term along a scan line. The cross term between the
 * two arms of a first-order mode only carries the angular harmonics
 * e^{0}, e^{+-2i phi}; Uniform keeps the first, Standing keeps
 * cos(2 phi + offset).
 */
struct FringeModel {
    enum class Kind { Uniform, Standing };
    Kind kind = Kind::Uniform;
    double angular_offset = 0.0;

    static FringeModel uniform() { return {}; }
    static FringeModel standing(double offset) { return {Kind::Standing, offset}; }
    /// The sin(2 phi) profile of the closed-form pattern.
    static FringeModel sin_two_phi() { return standing(-0.5 * kPi); }

    double modulation(double x, double y) const;
    bool operator==(const FringeModel&) const = default;
};

const char* to_string(FringeModel::Kind kind);

/// Dominant angular harmonic of conj(F1) . F2 for the given input and arm totals.
FringeModel fringe_model_for(const SpinOrbitState& input, const JonesMatrix& arm1, const JonesMatrix& arm2);

/// Samples along one row of an interferogram, with what the fit needs to know about the row.
struct FringeScan {
    double y = 0.0;
    double waist = 1.0;
    FringeModel model;
    std::vector<double> x;
    std::vector<double> intensity;
};

/// Row nearest to y, with the fringe model implied by the pattern's input and arms.
FringeScan extract_scan(const Interferogram& pattern, double y);

enum class VortexParity { Bright, Dark, Indeterminate };

const char* to_string(VortexParity p);

struct FringeUncertainty {
    double visibility = 0.0;
    double fringe_phase = 0.0;
};

struct FringeReport {
    double visibility = 0.0;    ///< clamped to [0, 1]
    double fringe_phase = 0.0;  ///< (-pi, pi]
    double amplitude = 0.0;     ///< envelope scale A
    double offset = 0.0;        ///< background B
    double residual = 0.0;      ///< RMS of data - model
    double relative_residual = 0.0;
    std::optional<VortexParity> vortex_parity;
    std::optional<FringeUncertainty> uncertainty;  ///< count data only
};

inline constexpr double kMaxRelativeResidual = 0.2;

/// Samples, optional inverse-variance weights and the fitted row geometry.
struct FringeFitInput {
    std::span<const double> x;
    std::span<const double> values;
    std::span<const double> weights;  ///< empty = unweighted
    double y = 0.0;
    double waist = 1.0;
    FringeModel model;
    bool poisson = false;
};

/// Least squares fit of A env(x) [1 + V m(x) sin(tilt x + phase)] + B.
/// Shared by the intensity and photocount fits.
FringeReport fit_fringes(const FringeFitInput& input, double tilt);

FringeReport visibility_fit(const FringeScan& scan, double tilt);

/// Canonicalized fringe_phase(report2) - fringe_phase(report1).
double phase_shift(const FringeReport& report1, const FringeReport& report2);

/// Minimum fitted visibility for a parity call.
inline constexpr double kParityMinVisibility = 1e-2;

/// Fits rows at +-line_offset and reads the fitted fringe at x = 0.
VortexParity vortex_parity(const Interferogram& pattern, double line_offset = 0.5);

}  // namespace spinorbit
