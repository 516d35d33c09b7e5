#include <catch_amalgamated.hpp>

#include "mottsim/device.hpp"

#include <cmath>
#include <limits>

using namespace mottsim;
using Catch::Approx;

TEST_CASE("a virgin device sweeps like the bare channel", "[device]") {
    const MottFeFet dev(DeviceConfig{}, 5);
    CHECK(dev.read_psi() == 0.0);
    const IvTrace a = ids_vds_sweep(dev, 9);
    DomainGrid grid = dev.grid();
    Rng rng = make_rng(9, 0, Stream::steps);
    const IvTrace b = sweep_iv(grid, triangle_waveform(2.0, 0.01), 0.0, rng, RelaxOptions{5, 10000, 6.5e3});
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t k = 0; k < a.points.size(); ++k) CHECK(a.points[k].current == b.points[k].current);
}

TEST_CASE("programming polarity orders the surface potential and the threshold", "[device]") {
    const MottFeFet dev(DeviceConfig{}, 3);
    const MottFeFet one = programmed_copy(dev, 20.0);
    const MottFeFet zero = programmed_copy(dev, 20.0, -20.0);
    CHECK(one.read_psi() == Approx(0.3354439655).epsilon(1e-8));
    CHECK(zero.read_psi() == Approx(-0.3354439655).epsilon(1e-8));
    int lower = 0;
    for (std::uint64_t k = 0; k < 5; ++k) {
        const auto t1 = member_threshold(dev, k, one.read_psi());
        const auto t0 = member_threshold(dev, k, zero.read_psi());
        REQUIRE(t1.has_value());
        if (!t0 || *t1 < *t0) ++lower;
    }
    CHECK(lower == 5);
}

TEST_CASE("member grids are distinct but reproducible", "[device]") {
    const MottFeFet dev(DeviceConfig{}, 77);
    const DomainGrid a = dev.member_grid(1);
    const DomainGrid b = dev.member_grid(1);
    const DomainGrid c = dev.member_grid(2);
    CHECK(a.edge(0).r_ins == b.edge(0).r_ins);
    CHECK(a.edge(0).r_ins != c.edge(0).r_ins);
    CHECK(dev.grid().edge(5).r_ins == dev.member_grid(0).edge(5).r_ins);
}

TEST_CASE("state-0 read current is the ohmic insulating current", "[device]") {
    const MottFeFet dev(DeviceConfig{}, 1);
    const double psi0 = programmed_copy(dev, 20.0, -20.0).read_psi();
    const double v_read = 1.44;
    for (std::uint64_t k = 0; k < 4; ++k) {
        const double r_dev = solve_network(dev.member_grid(k), 1.0).device_resistance;
        const double ohmic = v_read / (r_dev + 6.5e3);
        CHECK(member_read_current(dev, k, psi0, v_read) == Approx(ohmic).epsilon(0.10));
    }
}

TEST_CASE("characterization opens a window with a large read ratio", "[device]") {
    const MottFeFet dev(DeviceConfig{}, 42);
    const Characterization c = characterize(dev, std::nullopt, 7);
    CHECK(c.v_t_state1 < c.v_t_state0);
    CHECK(c.delta_v_t > 0.25);
    CHECK(c.v_read == Approx(0.5 * (c.v_t_state1 + c.v_t_state0)).epsilon(1e-12));
    CHECK(c.read_point_valid);
    CHECK(c.ratio >= 100.0);
    CHECK(c.samples_state1.size() == 7u);
    CHECK(c.currents_state0.size() == 7u);
}

TEST_CASE("a read point outside the window is rejected", "[device]") {
    const MottFeFet dev(DeviceConfig{}, 42);
    CHECK_THROWS_AS(characterize(dev, 0.5, 3), InvalidReadPoint);
}

TEST_CASE("window widens with program voltage while the read ratio holds", "[device]") {
    const MottFeFet dev(DeviceConfig{}, 42);
    const std::vector<double> v_prog{8.0, 14.0, 20.0};
    const auto points = ratio_vs_program_voltage(dev, v_prog, 1.44, 5);
    REQUIRE(points.size() == 3u);
    CHECK(points[0].result.delta_v_t <= points[1].result.delta_v_t);
    CHECK(points[1].result.delta_v_t <= points[2].result.delta_v_t);
    for (const auto& p : points) CHECK(p.result.ratio > 100.0);
    const std::vector<double> too_low{5.0};
    CHECK_THROWS_AS(ratio_vs_program_voltage(dev, too_low, 1.44, 3), ConfigError);
}

TEST_CASE("thresholds spread across members of a warm channel", "[device]") {
    const MottFeFet dev(DeviceConfig{}, 2);
    const ThresholdSummary s = threshold_distribution(dev, 8);
    CHECK(s.fired == 8);
    CHECK(s.sigma > 0.0);
    CHECK_THROWS_AS(threshold_distribution(dev, 1), ConfigError);
}

TEST_CASE("a cold uniform channel has no threshold spread", "[device]") {
    DeviceConfig cfg;
    cfg.channel.temperature = 1.0;
    cfg.channel.r_ins_sigma = 0.0;
    cfg.sweep.r_series = 0.0;
    const MottFeFet dev(cfg, 2);
    const ThresholdSummary s = threshold_distribution(dev, 5);
    CHECK(s.fired == 5);
    CHECK(s.sigma == 0.0);
    CHECK(s.median == Approx(1.86).margin(1e-9));
}

TEST_CASE("threshold summary counts missing samples as infinite", "[device]") {
    const ThresholdSummary s = summarize_thresholds({1.0, std::nullopt, 3.0, std::nullopt, std::nullopt});
    CHECK(s.fired == 2);
    CHECK(s.mean == 2.0);
    CHECK(s.sigma == Approx(std::sqrt(2.0)));
    CHECK(std::isinf(s.median));
    const std::vector<std::optional<double>> even{1.0, 2.0, 4.0, std::nullopt};
    CHECK(median_or_inf(even) == 3.0);
    const std::vector<double> odd{5.0, 1.0, 3.0};
    CHECK(median(odd) == 3.0);
}

TEST_CASE("invalid sweep settings are rejected", "[device]") {
    DeviceConfig cfg;
    cfg.sweep.v_step = 0.0;
    CHECK_THROWS_AS(MottFeFet(cfg, 1), ConfigError);
}
