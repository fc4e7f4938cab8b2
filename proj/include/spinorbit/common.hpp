#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace spinorbit {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/// Failure categories. Each maps to a distinct process exit code in the CLI.
enum class ErrorKind {
    ZeroState,
    NotNormalized,
    DomainError,
    EmptySequence,
    NotMaximallyNonseparable,
    StepTooCoarse,
    NotClosed,
    FitDiverged,
    DegeneratePattern,
    InvalidArgument,
    ParseError,
    SchemaError,
    IoError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

/// Plane angle. Stored in radians; degrees only appear at I/O boundaries.
class Angle {
  public:
    constexpr Angle() = default;

    static constexpr Angle radians(double r) { return Angle(r); }
    static constexpr Angle degrees(double d) { return Angle(d * (kPi / 180.0)); }

    constexpr double rad() const { return rad_; }
    constexpr double deg() const { return rad_ * (180.0 / kPi); }

    constexpr Angle operator-() const { return Angle(-rad_); }
    constexpr Angle operator+(Angle o) const { return Angle(rad_ + o.rad_); }
    constexpr Angle operator-(Angle o) const { return Angle(rad_ - o.rad_); }
    constexpr Angle operator*(double s) const { return Angle(rad_ * s); }
    constexpr bool operator==(const Angle&) const = default;

  private:
    constexpr explicit Angle(double r) : rad_(r) {}
    double rad_ = 0.0;
};

/// Wraps a phase into (-pi, pi].
double canonical_phase(double phase);

}  // namespace spinorbit
