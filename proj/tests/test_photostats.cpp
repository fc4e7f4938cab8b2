#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "spinorbit/photostats.hpp"
#include "support.hpp"

using namespace spinorbit;

namespace {

const TransverseGrid kGrid(256, 256, 5.0);

JonesMatrix arm_total(double closure_deg) { return compose(to_jones(experiment_arm(Angle::degrees(closure_deg)))); }

Interferogram pattern(double eps, double closure1, double closure2, double arm_phase = 0.0) {
    return michelson(epsilon_state(eps), arm_total(closure1), arm_total(closure2), default_tilt(kGrid), kGrid, arm_phase);
}

Interferogram flat_pattern(std::size_t bins) {
    const TransverseGrid grid(bins, 16, 5.0);
    Interferogram p{grid, std::vector<double>(grid.size(), 1.0), default_tilt(grid), 0.0,
                    modes::e1(), JonesMatrix::identity(), JonesMatrix::identity(), {}};
    return p;
}

FringeReport counts_fit(const Interferogram& p, double n_total, std::uint64_t seed) {
    return fit_counts(sample_counts(p, 0.5, n_total, seed), p.tilt);
}

double sigma_v(const FringeReport& r) { return r.uncertainty.value().visibility; }

}  // namespace

TEST_CASE("poisson sampler moments") {
    for (double mean : {0.3, 2.5, 9.9, 10.0, 37.0, 1e4}) {
        const int n = 40000;
        double sum = 0.0;
        double sum2 = 0.0;
        for (int i = 0; i < n; ++i) {
            KeyedRng rng(99, static_cast<std::uint64_t>(i));
            const double k = static_cast<double>(sample_poisson(mean, rng));
            sum += k;
            sum2 += k * k;
        }
        const double m = sum / n;
        const double var = sum2 / n - m * m;
        CHECK(std::abs(m - mean) < 5.0 * std::sqrt(mean / n));
        // Variance of the sample variance is about (2 mean^2 + mean) / n.
        CHECK(std::abs(var - mean) < 5.0 * std::sqrt((2.0 * mean * mean + mean) / n));
    }
}

TEST_CASE("poisson sampler follows the probability mass function") {
    for (double mean : {4.0, 15.0}) {
        const int n = 200000;
        std::map<std::uint64_t, int> hist;
        for (int i = 0; i < n; ++i) {
            KeyedRng rng(7, static_cast<std::uint64_t>(i));
            ++hist[sample_poisson(mean, rng)];
        }
        double tv = 0.0;
        double pmf = std::exp(-mean);
        double covered = 0.0;
        for (std::uint64_t k = 0; k < 80; ++k) {
            if (k > 0) pmf *= mean / static_cast<double>(k);
            covered += pmf;
            tv += std::abs(static_cast<double>(hist[k]) / n - pmf);
        }
        CHECK(covered > 1.0 - 1e-12);
        CHECK(0.5 * tv < 0.01);
    }
    KeyedRng rng(1, 1);
    CHECK(sample_poisson(0.0, rng) == 0);
    CHECK_THROWS_AS(sample_poisson(-1.0, rng), Error);
}

TEST_CASE("keyed streams are reproducible and distinct") {
    KeyedRng a(5, 3);
    KeyedRng b(5, 3);
    KeyedRng c(5, 4);
    KeyedRng d(6, 3);
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next_u64();
        CHECK(x == b.next_u64());
        CHECK(x != c.next_u64());
        CHECK(x != d.next_u64());
    }
    for (int i = 0; i < 1000; ++i) {
        const double u = a.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("uniform intensity spreads counts evenly") {
    const Interferogram flat = flat_pattern(100);
    const CountScan scan = sample_counts(flat, 0.0, 1e6, 42);
    REQUIRE(scan.counts.size() == 100);
    for (auto c : scan.counts) CHECK(std::abs(static_cast<double>(c) - 1e4) < 5.0 * 100.0);
    CHECK(scan.rng_algorithm == std::string(kRngAlgorithm));
    CHECK(static_cast<double>(scan.total()) <= 1e6 * (1.0 + 5.0 / 1e3));
}

TEST_CASE("property: count totals respect the Poisson sanity bound") {
    const Interferogram p = pattern(0.5, -45.0, 45.0);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        for (double n : {1e2, 1e4, 1e6}) {
            const CountScan scan = sample_counts(p, 0.5, n, seed);
            CHECK(static_cast<double>(scan.total()) <= n * (1.0 + 5.0 / std::sqrt(n)));
        }
    }
}

TEST_CASE("fixed seed reproduces the scan bit for bit") {
    const Interferogram p = pattern(0.3, -45.0, 0.0);
    const CountScan a = sample_counts(p, 0.5, 1e5, 2006);
    const CountScan b = sample_counts(p, 0.5, 1e5, 2006);
    const CountScan c = sample_counts(p, 0.5, 1e5, 2007);
    CHECK(a == b);
    CHECK(a.counts != c.counts);
}

TEST_CASE("degenerate patterns are rejected") {
    Interferogram dark = flat_pattern(64);
    std::fill(dark.intensity.begin(), dark.intensity.end(), 0.0);
    try {
        sample_counts(dark, 0.0, 1e4, 1);
        FAIL("expected DegeneratePattern");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegeneratePattern);
    }
    CHECK_THROWS_AS(sample_counts(flat_pattern(64), 0.0, 0.0, 1), Error);
    CHECK_THROWS_AS(fit_counts(sample_counts(pattern(0.5, -45.0, 45.0), 0.5, 50.0, 1), 1.0), Error);
}

TEST_CASE("counts from the maximally nonseparable mode reach full visibility") {
    for (std::uint64_t seed : {1, 2, 3}) {
        const FringeReport r = counts_fit(pattern(0.5, -45.0, -45.0), 1e5, seed);
        CHECK(std::abs(r.visibility - 1.0) < 3.0 * sigma_v(r));
        const FringeReport s = counts_fit(pattern(0.5, -45.0, 0.0), 1e5, seed);
        CHECK(std::abs(s.visibility - 1.0) < 3.0 * sigma_v(s));
    }
}

TEST_CASE("count fit phase shift between the two closures") {
    for (std::uint64_t seed : {11, 12, 13}) {
        const FringeReport a = counts_fit(pattern(0.5, -45.0, -45.0), 1e5, seed);
        const FringeReport b = counts_fit(pattern(0.5, -45.0, 45.0), 1e5, seed + 100);
        const double shift = phase_shift(a, b);
        const double err = std::hypot(a.uncertainty->fringe_phase, b.uncertainty->fringe_phase);
        CHECK(std::abs(canonical_phase(shift - kPi)) < 3.0 * err);
        CHECK(std::abs(canonical_phase(shift - kPi)) < 0.05);
    }
}

TEST_CASE("count fits of a separable input are consistent with zero visibility") {
    // |V| from a fringe-free scan is Rayleigh distributed: P(V > 3 sigma) = exp(-4.5), about 1.1 %.
    const Interferogram p = pattern(1.0, -45.0, 0.0);
    int within = 0;
    const int seeds = 400;
    for (int seed = 0; seed < seeds; ++seed) {
        const FringeReport r = counts_fit(p, 1e5, static_cast<std::uint64_t>(seed));
        if (r.visibility < 3.0 * sigma_v(r)) ++within;
    }
    CHECK(static_cast<double>(within) / seeds >= 0.97);
}

TEST_CASE("count fits of a partially nonseparable input") {
    const double eps = epsilon_from_hwp(Angle::degrees(15.0));
    CHECK(eps == doctest::Approx(0.75).epsilon(1e-12));
    for (std::uint64_t seed : {21, 22, 23}) {
        const FringeReport part = counts_fit(pattern(eps, -45.0, 0.0), 1e5, seed);
        CHECK(std::abs(part.visibility - 2.0 * std::sqrt(eps * (1.0 - eps))) < 3.0 * sigma_v(part));
    }
}

TEST_CASE("count fits converge on the deterministic visibility") {
    const Interferogram p = pattern(0.75, -45.0, 0.0);
    const double v_inf = visibility_fit(extract_scan(p, 0.5), p.tilt).visibility;
    double previous = 1.0;
    for (double n : {1e4, 1e6, 1e8}) {
        double err = 0.0;
        for (std::uint64_t seed = 0; seed < 20; ++seed) err += std::abs(counts_fit(p, n, seed).visibility - v_inf);
        err /= 20.0;
        CHECK(err < previous);
        previous = err;
    }
    CHECK(previous < 1e-3);
}

TEST_CASE("sweep_visibility") {
    const std::vector<double> angles{0.0, 7.5, 15.0, 22.5, 30.0, 37.5, 45.0};
    const auto rows = sweep_visibility(angles, 1e5, 4);
    REQUIRE(rows.size() == angles.size());
    CHECK(rows[0].eps == 1.0);
    CHECK(rows[0].visibility < 3.0 * rows[0].sigma_visibility);
    CHECK(rows[3].eps == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(rows[3].visibility - 1.0) < 3.0 * rows[3].sigma_visibility);
    double sq = 0.0;
    double sigma = 0.0;
    for (const auto& r : rows) {
        sq += std::pow(r.visibility - 2.0 * std::sqrt(r.eps * (1.0 - r.eps)), 2);
        sigma += r.sigma_visibility;
        CHECK(r.sigma_visibility > 0.0);
    }
    CHECK(std::sqrt(sq / rows.size()) < 3.0 * sigma / rows.size());

    const auto again = sweep_visibility(angles, 1e5, 4);
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].visibility == again[i].visibility);
    CHECK_THROWS_AS(sweep_visibility({}, 1e5, 4), Error);
}
