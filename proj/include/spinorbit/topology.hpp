#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "spinorbit/core.hpp"
#include "spinorbit/optics.hpp"

namespace spinorbit {

/**
 * Point a k of the solid SO(3) ball: rotation angle a in [0, pi] about the
 * unit axis k. Surface antipodes are identified; the stored representative
 * on the surface has kz > 0, or ky > 0 when kz = 0, or kx > 0 when both vanish.
 * The centre stores k = +z.
 */
class SpherePoint {
  public:
    SpherePoint() = default;

    /// Canonicalizes: normalizes k, folds a into [0, pi], picks the surface representative.
    SpherePoint(double a, std::array<double, 3> k);

    double a() const { return a_; }
    const std::array<double, 3>& k() const { return k_; }

    /// The vector a k.
    std::array<double, 3> vector() const { return {a_ * k_[0], a_ * k_[1], a_ * k_[2]}; }

    /// Unit quaternion (cos a/2, sin a/2 k) with non-negative scalar part.
    std::array<double, 4> quaternion() const;
    static SpherePoint from_quaternion(std::array<double, 4> q);

    bool on_surface() const;

  private:
    double a_ = 0.0;
    std::array<double, 3> k_{0.0, 0.0, 1.0};
};

/// Rotation angle of p^{-1} q, i.e. the SO(3) geodesic distance. Respects antipode identification.
double rotation_distance(const SpherePoint& p, const SpherePoint& q);

/// (alpha, beta, -beta*, alpha*) / sqrt(2) with alpha = cos(a/2) - i kz sin(a/2), beta = -(ky + i kx) sin(a/2).
SpinOrbitState mns_from_point(const SpherePoint& p);

/// Inverse of mns_from_point up to a global phase. Requires concurrence > 1 - 1e-9.
SpherePoint point_from_mns(const SpinOrbitState& state);

struct SpherePath {
    std::vector<SpherePoint> samples;
    bool closed = false;
    /// Number of passages through the surface a = pi of the continuously lifted path.
    int crossings = 0;
    /// Scalar part of the continuous SU(2) lift at each sample; starts non-negative.
    std::vector<double> lifted_scalar;
};

inline constexpr double kDefaultStepBound = kPi / 8.0;

/// Ramps the retardance of every element from 0 to its full value in
/// samples_per_element steps and maps each intermediate mode into the ball.
SpherePath lift_path(const SpinOrbitState& start, std::span<const ElementSpec> elements,
                     std::size_t samples_per_element, double step_bound = kDefaultStepBound);

enum class HomotopyClass { ZeroType, PiType };
enum class RelativeClass { Same, Different };

const char* to_string(HomotopyClass c);
const char* to_string(RelativeClass c);

inline constexpr double kClosureTolerance = 1e-9;

/// +I -> ZeroType, -I -> PiType; anything else is not a closed loop.
HomotopyClass homotopy_class(std::span<const JonesMatrix> elements);

RelativeClass relative_class(std::span<const JonesMatrix> arm1, std::span<const JonesMatrix> arm2);

}  // namespace spinorbit
