#include <catch_amalgamated.hpp>

#include "mottsim/ferroelectric.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace mottsim;
using Catch::Approx;

namespace {

// Closed-form major-loop branch, written out independently of the model.
double major(double v, bool rising, const PreisachParams& p) {
    const double w = p.v_c / std::log((p.p_s + p.p_r) / (p.p_s - p.p_r));
    return p.p_s * std::tanh((v + (rising ? -p.v_c : p.v_c)) / (2.0 * w));
}

}  // namespace

TEST_CASE("major loop crosses the axes at the coercive and remnant points", "[ferroelectric]") {
    const PreisachParams p;
    CHECK(p.branch_width() == Approx(1.0 / std::log(3.0)).epsilon(1e-15));
    CHECK(saturation_branch(p.v_c, SweepDirection::up, p) == Approx(0.0).margin(1e-12));
    CHECK(saturation_branch(-p.v_c, SweepDirection::down, p) == Approx(0.0).margin(1e-12));
    CHECK(saturation_branch(0.0, SweepDirection::up, p) == Approx(-p.p_r).epsilon(1e-12));
    CHECK(saturation_branch(0.0, SweepDirection::down, p) == Approx(p.p_r).epsilon(1e-12));
}

TEST_CASE("virgin curve is odd and starts at the origin", "[ferroelectric]") {
    const PreisachParams p;
    CHECK(virgin_branch(0.0, p) == 0.0);
    for (double v : {0.3, 1.0, 2.5, 7.0}) CHECK(virgin_branch(-v, p) == Approx(-virgin_branch(v, p)).epsilon(1e-14));
    PreisachState s(p);
    CHECK(s.polarization() == 0.0);
    CHECK(s.on_virgin_base());
    s.apply_voltage(0.8);
    CHECK(s.polarization() == Approx(virgin_branch(0.8, p)).epsilon(1e-14));
}

TEST_CASE("saturated factory holds the remnant polarization", "[ferroelectric]") {
    const PreisachParams p;
    CHECK(PreisachState::saturated(p, +1).polarization() == Approx(p.p_r));
    CHECK(PreisachState::saturated(p, -1).polarization() == Approx(-p.p_r));
    CHECK(remnant(PreisachState::saturated(p, +1)) == Approx(p.p_r));
}

TEST_CASE("first reversal from saturation follows the affine image of the rising branch", "[ferroelectric]") {
    const PreisachParams p;
    PreisachState s = PreisachState::saturated(p, +1);
    s.apply_voltage(-0.5);
    const double p1 = major(-0.5, false, p);
    CHECK(s.polarization() == Approx(p1).epsilon(1e-13));
    for (double v : {-0.2, 0.4, 1.1, 2.0}) {
        const double expected = p1 + (major(v, true, p) - major(-0.5, true, p)) * (p.p_s - p1) / (p.p_s - major(-0.5, true, p));
        s.apply_voltage(v);
        CHECK(s.polarization() == Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("minor loop closes on its turning point and wipes it out", "[ferroelectric]") {
    const PreisachParams p;
    PreisachState s = PreisachState::saturated(p, -1);
    s.apply_voltage(1.4);
    const double p_top = s.polarization();
    s.apply_voltage(-0.3);
    REQUIRE(s.turning_points().size() == 1);
    s.apply_voltage(0.9);
    CHECK(s.turning_points().size() == 2);
    s.apply_voltage(1.4);
    CHECK(s.polarization() == Approx(p_top).epsilon(1e-12));
    CHECK(s.turning_points().empty());
    s.apply_voltage(1.9);
    // Past the wiped loop the film continues on the outer branch.
    PreisachState direct = PreisachState::saturated(p, -1);
    direct.apply_voltage(1.9);
    CHECK(s.polarization() == Approx(direct.polarization()).epsilon(1e-12));
}

TEST_CASE("large excursions saturate and never exceed the saturation polarization", "[ferroelectric]") {
    const PreisachParams p;
    PreisachState s(p);
    s.apply_voltage(50.0 * p.v_c);
    CHECK(s.polarization() >= p.p_s * (1.0 - 1e-6));
    s.apply_voltage(-50.0 * p.v_c);
    CHECK(s.polarization() <= -p.p_s * (1.0 - 1e-6));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> volts(-6.0, 6.0);
    for (int i = 0; i < 2000; ++i) {
        s.apply_voltage(volts(rng));
        REQUIRE(std::abs(s.polarization()) <= p.p_s);
    }
}

TEST_CASE("polarization is monotone along a single sweep", "[ferroelectric]") {
    const PreisachParams p;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> volts(-3.0, 3.0);
    PreisachState s(p);
    for (int leg = 0; leg < 200; ++leg) {
        const double start = s.voltage();
        const double end = volts(rng);
        double last = s.polarization();
        for (int k = 1; k <= 20; ++k) {
            s.apply_voltage(start + (end - start) * k / 20.0);
            if (end > start) REQUIRE(s.polarization() >= last - 1e-12);
            else REQUIRE(s.polarization() <= last + 1e-12);
            last = s.polarization();
        }
    }
}

TEST_CASE("probe leaves the history untouched", "[ferroelectric]") {
    PreisachState s = PreisachState::saturated(PreisachParams{}, -1);
    s.apply_voltage(1.2);
    s.apply_voltage(0.1);
    const auto before = std::vector<TurningPoint>(s.turning_points().begin(), s.turning_points().end());
    const double p_before = s.polarization();
    (void)s.probe(3.0);
    (void)s.probe(-3.0);
    CHECK(s.polarization() == p_before);
    REQUIRE(s.turning_points().size() == before.size());
}

TEST_CASE("mirrored histories give mirrored polarization", "[ferroelectric]") {
    const PreisachParams p;
    PreisachState a(p);
    PreisachState b(p);
    for (double v : {1.7, -0.4, 1.1, -2.3, 0.6, 0.0}) {
        a.apply_voltage(v);
        b.apply_voltage(-v);
        CHECK(a.polarization() == Approx(-b.polarization()).epsilon(1e-12).margin(1e-12));
    }
}

TEST_CASE("invalid film parameters are rejected", "[ferroelectric]") {
    PreisachParams p;
    p.p_r = p.p_s;
    CHECK_THROWS_AS(PreisachState(p), ConfigError);
    p = {};
    p.v_c = 0.0;
    CHECK_THROWS_AS(PreisachState(p), ConfigError);
}
