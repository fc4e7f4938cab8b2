#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spinorbit/interferometer.hpp"

namespace spinorbit {

/// Identifier recorded with every count scan.
inline constexpr const char* kRngAlgorithm = "splitmix64-keyed(seed,bin)/ptrs-poisson";

/// SplitMix64 stream keyed by (seed, stream index). Each scan position draws
/// from its own stream, so counts do not depend on evaluation order.
class KeyedRng {
  public:
    KeyedRng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();
    /// Uniform on [0, 1) with 53 random bits.
    double next_double();

  private:
    std::uint64_t state_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Poisson variate: multiplication method below mean 10, Hormann's PTRS above.
std::uint64_t sample_poisson(double mean, KeyedRng& rng);

struct CountScan {
    std::vector<double> x;
    std::vector<std::uint64_t> counts;
    double n_total = 0.0;
    std::uint64_t seed = 0;
    std::string rng_algorithm = kRngAlgorithm;
    double y = 0.0;
    double waist = 1.0;
    FringeModel model;

    std::uint64_t total() const;
    bool operator==(const CountScan&) const = default;
};

/// Photocounter scanned along the row nearest y_scan: bin i receives
/// Poisson(n_total I_i / sum I) counts.
CountScan sample_counts(const Interferogram& pattern, double y_scan, double n_total, std::uint64_t seed);

/// Fringe fit weighted by 1 / max(count, 1); reports standard errors.
FringeReport fit_counts(const CountScan& scan, double tilt);

struct SweepSettings {
    std::size_t nx = 256;
    std::size_t ny = 256;
    double extent = 5.0;
    double waist = 1.0;
    std::optional<double> tilt;  ///< default_tilt(grid) when empty
    double scan_y = 0.5;         ///< in units of the waist
    double arm_phase = 0.0;
};

struct SweepRow {
    double theta_deg = 0.0;
    double eps = 0.0;
    double visibility = 0.0;
    double sigma_visibility = 0.0;
};

/// eps = cos^2(2 theta) for every HWP angle, closure plate at 0 deg, counts sampled then fitted.
/// Row r uses seed splitmix64(seed + r).
std::vector<SweepRow> sweep_visibility(const std::vector<double>& theta_deg, double n_total, std::uint64_t seed,
                                       const SweepSettings& settings = {});

}  // namespace spinorbit
