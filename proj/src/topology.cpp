#include "spinorbit/topology.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace spinorbit {

namespace {

constexpr double kSurfaceTolerance = 1e-12;

using Quaternion = std::array<double, 4>;

double dot(const Quaternion& p, const Quaternion& q) {
    return p[0] * q[0] + p[1] * q[1] + p[2] * q[2] + p[3] * q[3];
}

int side(double w) {
    if (std::abs(w) <= kSurfaceTolerance) return 0;
    return w > 0.0 ? 1 : -1;
}

}  // namespace

SpherePoint::SpherePoint(double a, std::array<double, 3> k) {
    const double len = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
    if (!(len > 0.0) || !std::isfinite(len) || !std::isfinite(a))
        throw Error(ErrorKind::InvalidArgument, "sphere point needs a finite angle and nonzero axis");
    for (auto& c : k) c /= len;
    const double h = 0.5 * a;
    *this = from_quaternion({std::cos(h), std::sin(h) * k[0], std::sin(h) * k[1], std::sin(h) * k[2]});
}

std::array<double, 4> SpherePoint::quaternion() const {
    const double h = 0.5 * a_;
    const double s = std::sin(h);
    return {std::cos(h), s * k_[0], s * k_[1], s * k_[2]};
}

SpherePoint SpherePoint::from_quaternion(std::array<double, 4> q) {
    const double n = std::sqrt(dot(q, q));
    for (auto& c : q) c /= n;
    if (q[0] < 0.0)
        for (auto& c : q) c = -c;
    SpherePoint p;
    const double v = std::sqrt(q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
    if (v < 1e-300) return p;
    p.a_ = 2.0 * std::atan2(v, q[0]);
    p.k_ = {q[1] / v, q[2] / v, q[3] / v};
    if (q[0] <= kSurfaceTolerance) {
        p.a_ = kPi;
        auto& k = p.k_;
        const bool flip = k[2] < -kSurfaceTolerance ||
                          (std::abs(k[2]) <= kSurfaceTolerance &&
                           (k[1] < -kSurfaceTolerance ||
                            (std::abs(k[1]) <= kSurfaceTolerance && k[0] < 0.0)));
        if (flip)
            for (auto& c : k) c = -c;
    }
    return p;
}

bool SpherePoint::on_surface() const { return std::cos(0.5 * a_) <= kSurfaceTolerance; }

double rotation_distance(const SpherePoint& p, const SpherePoint& q) {
    // Relative rotation conj(p) q; atan2 stays accurate for nearly equal points.
    const Quaternion a = p.quaternion();
    const Quaternion b = q.quaternion();
    const double w = a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
    const double x = a[0] * b[1] - a[1] * b[0] - a[2] * b[3] + a[3] * b[2];
    const double y = a[0] * b[2] + a[1] * b[3] - a[2] * b[0] - a[3] * b[1];
    const double z = a[0] * b[3] - a[1] * b[2] + a[2] * b[1] - a[3] * b[0];
    return 2.0 * std::atan2(std::sqrt(x * x + y * y + z * z), std::abs(w));
}

SpinOrbitState mns_from_point(const SpherePoint& p) {
    const auto [w, x, y, z] = p.quaternion();
    const Complex alpha{w, -z};
    const Complex beta{-y, -x};
    const double r = 1.0 / std::sqrt(2.0);
    return {alpha * r, beta * r, -std::conj(beta) * r, std::conj(alpha) * r};
}

SpherePoint point_from_mns(const SpinOrbitState& state) {
    const double c = concurrence(state);
    if (c < 1.0 - 1e-9)
        throw Error(ErrorKind::NotMaximallyNonseparable,
                    "concurrence " + std::to_string(c) + " has no single SO(3) point");
    // sqrt(2) times the coefficient matrix [[alpha, gamma], [beta, delta]] is
    // e^{i chi} U with U in SU(2); dividing by sqrt(det) removes e^{i chi} up to sign.
    const double r = std::sqrt(2.0);
    const Complex m00 = state.alpha * r;
    const Complex m10 = state.beta * r;
    const Complex m01 = state.gamma * r;
    const Complex m11 = state.delta * r;
    const Complex phase = std::sqrt(m00 * m11 - m01 * m10);
    // Average the redundant entries: alpha = conj(delta), beta = -conj(gamma).
    const Complex alpha = 0.5 * (m00 / phase + std::conj(m11 / phase));
    const Complex beta = 0.5 * (m10 / phase - std::conj(m01 / phase));
    return SpherePoint::from_quaternion({alpha.real(), -beta.imag(), -beta.real(), -alpha.imag()});
}

SpherePath lift_path(const SpinOrbitState& start, std::span<const ElementSpec> elements,
                     std::size_t samples_per_element, double step_bound) {
    if (samples_per_element == 0 && !elements.empty())
        throw Error(ErrorKind::InvalidArgument, "samples_per_element must be positive");

    SpherePath path;
    const SpherePoint origin = point_from_mns(start);
    path.samples.push_back(origin);

    Quaternion lifted = origin.quaternion();
    path.lifted_scalar.push_back(lifted[0]);
    int last_side = side(lifted[0]);

    SpinOrbitState segment_start = start;
    for (const auto& element : elements) {
        const auto retardance = element.retardance();
        if (!retardance)
            throw Error(ErrorKind::NotMaximallyNonseparable,
                        "a " + to_string(element.kind) + " cannot be ramped along an SO(3) path");
        for (std::size_t n = 1; n <= samples_per_element; ++n) {
            const double fraction = static_cast<double>(n) / static_cast<double>(samples_per_element);
            const JonesMatrix ramp = retarder(*retardance * fraction, element.axis);
            const SpherePoint p = point_from_mns(apply_polarization(segment_start, ramp));

            Quaternion q = p.quaternion();
            if (dot(q, lifted) < 0.0)
                for (auto& c : q) c = -c;
            const double step = 2.0 * std::acos(std::min(1.0, dot(q, lifted)));
            if (step > step_bound)
                throw Error(ErrorKind::StepTooCoarse, "consecutive path samples are " + std::to_string(step) +
                                                          " rad apart; raise samples_per_element");
            lifted = q;

            const int s = side(lifted[0]);
            if (s != 0) {
                if (last_side != 0 && s != last_side) ++path.crossings;
                last_side = s;
            }
            path.samples.push_back(p);
            path.lifted_scalar.push_back(lifted[0]);
        }
        segment_start = apply_polarization(segment_start, element.jones());
    }
    path.closed = rotation_distance(path.samples.front(), path.samples.back()) < kClosureTolerance;
    return path;
}

const char* to_string(HomotopyClass c) { return c == HomotopyClass::ZeroType ? "ZeroType" : "PiType"; }

const char* to_string(RelativeClass c) { return c == RelativeClass::Same ? "Same" : "Different"; }

HomotopyClass homotopy_class(std::span<const JonesMatrix> elements) {
    const JonesMatrix total = elements.empty() ? JonesMatrix::identity() : compose(elements);
    const JonesMatrix identity = JonesMatrix::identity();
    if (distance(total, identity) <= kClosureTolerance) return HomotopyClass::ZeroType;
    if (distance(total, identity * -1.0) <= kClosureTolerance) return HomotopyClass::PiType;
    throw Error(ErrorKind::NotClosed, "sequence does not compose to +I or -I");
}

RelativeClass relative_class(std::span<const JonesMatrix> arm1, std::span<const JonesMatrix> arm2) {
    homotopy_class(arm1);
    homotopy_class(arm2);
    const JonesMatrix t1 = arm1.empty() ? JonesMatrix::identity() : compose(arm1);
    const JonesMatrix t2 = arm2.empty() ? JonesMatrix::identity() : compose(arm2);
    const JonesMatrix relative = t1 * t2.adjoint();
    return distance(relative, JonesMatrix::identity() * -1.0) <= kClosureTolerance ? RelativeClass::Different
                                                                                  : RelativeClass::Same;
}

}  // namespace spinorbit
