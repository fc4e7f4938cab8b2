#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "spinorbit/interferometer.hpp"
#include "spinorbit/optics.hpp"
#include "support.hpp"

using namespace spinorbit;
using spinorbit::testing::random_state;
using spinorbit::testing::random_unitary;
using spinorbit::testing::uniform;

namespace {

const Complex I(0.0, 1.0);

// Independent construction: rotate into the axis frame, apply the phase plate, rotate back.
JonesMatrix rotated_plate(double gamma, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const JonesMatrix rot{c, -s, s, c};
    const JonesMatrix back{c, s, -s, c};
    const JonesMatrix plate{std::polar(1.0, -gamma / 2.0), 0.0, 0.0, std::polar(1.0, gamma / 2.0)};
    return rot * plate * back;
}

JonesMatrix product(std::initializer_list<JonesMatrix> right_to_left) {
    JonesMatrix m = JonesMatrix::identity();
    for (const auto& j : right_to_left) m = m * j;
    return m;
}

}  // namespace

TEST_CASE("retarder examples") {
    for (double theta : {0.0, 0.3, -1.2}) CHECK(distance(retarder(0.0, Angle::radians(theta)), JonesMatrix::identity()) < 1e-15);
    CHECK(distance(retarder(kPi, Angle::radians(0.0)), JonesMatrix{-I, 0.0, 0.0, I}) < 1e-15);
    const JonesMatrix q = retarder(kPi / 2.0, Angle::radians(0.0));
    CHECK(distance(q * q, retarder(kPi, Angle::radians(0.0))) < 1e-12);
}

TEST_CASE("retarder matches rotated phase plate") {
    for (int n = 0; n < 1000; ++n) {
        const double gamma = uniform(-2.0 * kPi, 2.0 * kPi);
        const double theta = uniform(-kPi, kPi);
        CHECK(distance(retarder(gamma, Angle::radians(theta)), rotated_plate(gamma, theta)) < 1e-12);
    }
}

TEST_CASE("property: retarders are in SU(2)") {
    for (int n = 0; n < 10000; ++n) {
        const JonesMatrix r = retarder(uniform(-4.0 * kPi, 4.0 * kPi), Angle::radians(uniform(-kPi, kPi)));
        CHECK(unitarity_defect(r) < 1e-12);
        CHECK(std::abs(r.determinant() - 1.0) < 1e-12);
    }
}

TEST_CASE("property: retardances add on a common axis") {
    for (int n = 0; n < 1000; ++n) {
        const double g1 = uniform(-kPi, kPi);
        const double g2 = uniform(-kPi, kPi);
        const Angle th = Angle::radians(uniform(-kPi, kPi));
        CHECK(distance(retarder(g1, th) * retarder(g2, th), retarder(g1 + g2, th)) < 1e-12);
    }
}

TEST_CASE("hwp and qwp") {
    CHECK(distance(hwp(Angle::degrees(0.0)), retarder(kPi, Angle::degrees(0.0))) == 0.0);
    const auto [h, v] = hwp(Angle::degrees(45.0)).apply(1.0, 0.0);
    CHECK(std::abs(h) < 1e-15);
    CHECK(std::abs(v - (-I)) < 1e-15);
    for (int n = 0; n < 100; ++n) CHECK(unitarity_defect(qwp(Angle::radians(uniform(-kPi, kPi)))) < 1e-12);
    const JonesMatrix q = qwp(Angle::degrees(30.0));
    CHECK(distance(q * q, hwp(Angle::degrees(30.0))) < 1e-12);
}

TEST_CASE("hwp(0) maps E1 to E2 including the phase") {
    const SpinOrbitState out = apply_polarization(modes::e1(), hwp(Angle::degrees(0.0)));
    CHECK(max_abs_difference(out, modes::e2()) < 1e-15);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(max_abs_difference(modes::e2(), SpinOrbitState{-I * r, 0.0, 0.0, I * r}) < 1e-15);
}

TEST_CASE("polarizers") {
    const JonesMatrix ph = polarizer(PolarizerAxis::H);
    const JonesMatrix pv = polarizer(PolarizerAxis::V);
    CHECK(ph.apply(1.0, 0.0) == std::pair<Complex, Complex>{1.0, 0.0});
    CHECK(ph.apply(0.0, 1.0) == std::pair<Complex, Complex>{0.0, 0.0});
    CHECK(ph * pv == JonesMatrix::zero());
    for (int n = 0; n < 100; ++n) {
        const JonesMatrix p = linear_polarizer(Angle::radians(uniform(-kPi, kPi)));
        CHECK(distance(p * p, p) < 1e-12);
        CHECK(distance(p.adjoint(), p) < 1e-12);
    }
    CHECK(distance(linear_polarizer(Angle::degrees(90.0)), pv) < 1e-15);
}

TEST_CASE("apply_polarization") {
    const SpinOrbitState s = random_state();
    CHECK(apply_polarization(s, JonesMatrix::identity()) == s);
    const SpinOrbitState hv = apply_polarization({1.0, 2.0, 3.0, 4.0}, JonesMatrix{1.0, 10.0, 100.0, 1000.0});
    CHECK(hv == SpinOrbitState{21.0, 2100.0, 43.0, 4300.0});
}

TEST_CASE("property: unitaries preserve norm and concurrence") {
    for (int n = 0; n < 1000; ++n) {
        const SpinOrbitState s = random_state();
        const JonesMatrix u = random_unitary();
        const SpinOrbitState t = apply_polarization(s, u);
        CHECK(std::abs(t.norm() - 1.0) < 1e-12);
        CHECK(std::abs(concurrence(t) - concurrence(s)) < 1e-12);
    }
}

TEST_CASE("double_pass_arm") {
    CHECK(distance(double_pass_arm(Angle::degrees(0.0)), JonesMatrix{-I, 0.0, 0.0, I}) < 1e-15);
    const JonesMatrix w = product({hwp(Angle::degrees(90.0)), hwp(Angle::degrees(-45.0)), hwp(Angle::degrees(0.0))});
    const JonesMatrix plus = double_pass_arm(Angle::degrees(-45.0)) * w;
    const JonesMatrix minus = double_pass_arm(Angle::degrees(45.0)) * w;
    CHECK(distance(plus, JonesMatrix::identity()) < 1e-12);
    CHECK(distance(minus, JonesMatrix::identity() * -1.0) < 1e-12);
    CHECK(distance(plus, minus * -1.0) < 1e-12);
}

TEST_CASE("compose examples") {
    const JonesMatrix j = hwp(Angle::degrees(17.0));
    CHECK(compose(std::vector{j}) == j);
    const std::vector pair{hwp(Angle::degrees(0.0)), hwp(Angle::degrees(0.0))};
    CHECK(distance(compose(pair), JonesMatrix::identity() * -1.0) < 1e-15);
    CHECK_THROWS_AS(compose(std::vector<JonesMatrix>{}), Error);

    // Optical order: first element acts first.
    const JonesMatrix a = hwp(Angle::degrees(10.0));
    const JonesMatrix b = qwp(Angle::degrees(40.0));
    CHECK(distance(compose(std::vector{a, b}), b * a) < 1e-15);

    const auto arm = to_jones(experiment_arm(Angle::degrees(45.0)));
    CHECK(distance(compose(arm), JonesMatrix::identity() * -1.0) < 1e-12);
}

TEST_CASE("property: compositions of unitaries stay unitary") {
    for (int n = 0; n < 500; ++n) {
        std::vector<JonesMatrix> seq;
        const int len = 1 + n % 12;
        for (int k = 0; k < len; ++k) seq.push_back(random_unitary());
        CHECK(unitarity_defect(compose(seq)) < 1e-12);
    }
}

TEST_CASE("prepare_stage") {
    const SpinOrbitState e1 = prepare_stage(Angle::degrees(22.5), Angle::degrees(22.5));
    CHECK(max_abs_difference(e1, modes::e1()) < 1e-12);

    const SpinOrbitState sep = prepare_stage(Angle::degrees(45.0), Angle::degrees(45.0));
    CHECK(std::abs(std::abs(sep.alpha) - 1.0) < 1e-12);
    CHECK(concurrence(sep) < 1e-12);

    const SpinOrbitState v = prepare_stage(Angle::degrees(0.0), Angle::degrees(0.0));
    CHECK(std::abs(v.alpha) < 1e-15);
    CHECK(std::abs(v.beta) < 1e-15);
    CHECK(std::abs(v.gamma) < 1e-15);
    CHECK(std::abs(std::abs(v.delta) - 1.0) < 1e-15);

    try {
        prepare_stage(Angle::degrees(0.0), Angle::degrees(45.0));
        FAIL("expected ZeroState");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ZeroState);
    }
}

TEST_CASE("element specs") {
    for (auto kind : {ElementKind::Hwp, ElementKind::Qwp, ElementKind::QwpDouble, ElementKind::Polarizer})
        CHECK(element_kind_from_string(to_string(kind)) == kind);
    CHECK_FALSE(element_kind_from_string("dove").has_value());
    const ElementSpec dp{ElementKind::QwpDouble, Angle::degrees(30.0)};
    CHECK(distance(dp.jones(), double_pass_arm(Angle::degrees(30.0))) == 0.0);
    CHECK(dp.retardance() == doctest::Approx(kPi));
    CHECK((ElementSpec{ElementKind::Qwp, {}}.retardance()) == doctest::Approx(kPi / 2.0));
    CHECK_FALSE((ElementSpec{ElementKind::Polarizer, {}}.retardance()).has_value());
}
