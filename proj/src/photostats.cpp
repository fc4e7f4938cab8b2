#include "spinorbit/photostats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace spinorbit {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

KeyedRng::KeyedRng(std::uint64_t seed, std::uint64_t stream)
    : state_(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL)) {}

std::uint64_t KeyedRng::next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double KeyedRng::next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

std::uint64_t sample_poisson(double mean, KeyedRng& rng) {
    if (!(mean >= 0.0) || !std::isfinite(mean))
        throw Error(ErrorKind::InvalidArgument, "Poisson mean must be finite and non-negative");
    if (mean == 0.0) return 0;

    if (mean < 10.0) {
        const double limit = std::exp(-mean);
        std::uint64_t k = 0;
        double prod = rng.next_double();
        while (prod > limit) {
            ++k;
            prod *= rng.next_double();
        }
        return k;
    }

    // Transformed rejection with squeeze (Hormann 1993).
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    while (true) {
        const double u = rng.next_double() - 0.5;
        const double v = rng.next_double();
        const double us = 0.5 - std::abs(u);
        const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
        if (k < 0.0 || (us < 0.013 && v > us)) continue;
        if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
            -mean + k * loglam - std::lgamma(k + 1.0))
            return static_cast<std::uint64_t>(k);
    }
}

std::uint64_t CountScan::total() const { return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}); }

CountScan sample_counts(const Interferogram& pattern, double y_scan, double n_total, std::uint64_t seed) {
    if (!(n_total >= 1.0) || !std::isfinite(n_total))
        throw Error(ErrorKind::InvalidArgument, "n_total must be at least 1");
    const FringeScan line = extract_scan(pattern, y_scan);
    double sum = 0.0;
    for (double v : line.intensity) {
        if (!std::isfinite(v) || v < 0.0) throw Error(ErrorKind::DegeneratePattern, "pattern has invalid intensity");
        sum += v;
    }
    if (!(sum > 0.0)) throw Error(ErrorKind::DegeneratePattern, "scan line carries zero intensity");

    CountScan scan;
    scan.x = line.x;
    scan.counts.resize(line.x.size());
    scan.n_total = n_total;
    scan.seed = seed;
    scan.y = line.y;
    scan.waist = line.waist;
    scan.model = line.model;
    for (std::size_t i = 0; i < line.x.size(); ++i) {
        KeyedRng rng(seed, i);
        scan.counts[i] = sample_poisson(n_total * line.intensity[i] / sum, rng);
    }
    return scan;
}

FringeReport fit_counts(const CountScan& scan, double tilt) {
    if (scan.total() < 100) throw Error(ErrorKind::InvalidArgument, "count fit needs at least 100 counts");
    std::vector<double> values(scan.counts.size());
    std::vector<double> weights(scan.counts.size());
    for (std::size_t i = 0; i < scan.counts.size(); ++i) {
        values[i] = static_cast<double>(scan.counts[i]);
        weights[i] = 1.0 / std::max(values[i], 1.0);
    }
    return fit_fringes({scan.x, values, weights, scan.y, scan.waist, scan.model, true}, tilt);
}

std::vector<SweepRow> sweep_visibility(const std::vector<double>& theta_deg, double n_total, std::uint64_t seed,
                                       const SweepSettings& settings) {
    if (theta_deg.empty()) throw Error(ErrorKind::InvalidArgument, "sweep needs at least one HWP angle");
    const TransverseGrid grid(settings.nx, settings.ny, settings.extent, settings.waist);
    const double tilt = settings.tilt.value_or(default_tilt(grid));
    const auto reference = to_jones(experiment_arm(Angle::degrees(-45.0)));
    const auto closure_zero = to_jones(experiment_arm(Angle::degrees(0.0)));
    const JonesMatrix arm1 = compose(reference);
    const JonesMatrix arm2 = compose(closure_zero);

    std::vector<SweepRow> rows;
    rows.reserve(theta_deg.size());
    for (std::size_t r = 0; r < theta_deg.size(); ++r) {
        const double eps = epsilon_from_hwp(Angle::degrees(theta_deg[r]));
        const Interferogram pattern = michelson(epsilon_state(eps), arm1, arm2, tilt, grid, settings.arm_phase);
        const CountScan scan = sample_counts(pattern, settings.scan_y * grid.waist(), n_total, splitmix64(seed + r));
        const FringeReport fit = fit_counts(scan, tilt);
        rows.push_back({theta_deg[r], eps, fit.visibility, fit.uncertainty ? fit.uncertainty->visibility : 0.0});
    }
    return rows;
}

}  // namespace spinorbit
