#include <catch_amalgamated.hpp>

#include "mottsim/config.hpp"

#include <set>
#include <sstream>

using namespace mottsim;

namespace {

std::string resolved(const RunConfig& cfg) {
    std::ostringstream os;
    write_resolved_config(os, cfg);
    return os.str();
}

}  // namespace

TEST_CASE("defaults validate", "[config]") {
    const RunConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.device.channel.e_b == 1.24);
    CHECK(cfg.device.sweep.r_series == 6.5e3);
    CHECK(cfg.array_config().cell.channel.e_c == cfg.device.channel.e_c);
}

TEST_CASE("every key is documented and unique", "[config]") {
    std::set<std::string> names;
    for (const auto& k : config_keys()) {
        CHECK_FALSE(k.doc.empty());
        CHECK(k.name.find('.') != std::string::npos);
        CHECK(names.insert(k.name).second);
    }
    CHECK(names.count("network.e_b") == 1);
    CHECK(names.count("array.wlw_inactive") == 1);
}

TEST_CASE("ini sections set the matching parameters", "[config]") {
    RunConfig cfg;
    std::istringstream in(
        "[run]\nexperiment = characterize\nseed = 9\n"
        "[network]\nalpha = 0\nrows = 10\n"
        "[device]\nv_read = 1.5\npsi_list = 0, 0.2\n"
        "[array]\nwlw_inactive = auto\n");
    apply_ini(cfg, in);
    CHECK(cfg.experiment == Experiment::characterize);
    CHECK(cfg.seed == 9u);
    CHECK(cfg.device.channel.alpha == 0.0);
    CHECK(cfg.device.rows == 10);
    CHECK(cfg.v_read == 1.5);
    CHECK(cfg.psi_list == std::vector<double>{0.0, 0.2});
    CHECK_FALSE(cfg.array.wlw_inactive.has_value());
}

TEST_CASE("unknown keys and malformed values are rejected", "[config]") {
    RunConfig cfg;
    std::istringstream unknown("[network]\nbarrier = 1\n");
    CHECK_THROWS_AS(apply_ini(cfg, unknown), ConfigError);
    std::istringstream orphan("seed = 3\n");
    CHECK_THROWS_AS(apply_ini(cfg, orphan), ConfigError);
    CHECK_THROWS_AS(set_key(cfg, "network.e_b", "1.2x"), ConfigError);
    CHECK_THROWS_AS(set_key(cfg, "network.rows", "2.5"), ConfigError);
    CHECK_THROWS_AS(set_key(cfg, "run.experiment", "bogus"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/run.ini"), ConfigError);
}

TEST_CASE("command-line overrides use section.key=value", "[config]") {
    RunConfig cfg;
    apply_override(cfg, "--network.e_c=1.5");
    apply_override(cfg, "sweep.r_series = 0");
    CHECK(cfg.device.channel.e_c == 1.5);
    CHECK(cfg.device.sweep.r_series == 0.0);
    CHECK_THROWS_AS(apply_override(cfg, "--network.e_c"), ConfigError);
}

TEST_CASE("validation catches inconsistent physics", "[config]") {
    RunConfig cfg;
    set_key(cfg, "network.e_c", "1.24");
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    set_key(cfg, "ferroelectric.p_r", "25");
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    set_key(cfg, "device.n_seeds", "1");
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("resolved config reads back to the same configuration", "[config]") {
    RunConfig cfg;
    set_key(cfg, "network.gamma", "0.0812345678901");
    set_key(cfg, "device.v_prog_list", "9,12.5,20");
    set_key(cfg, "array.wlw_active", "22.25");
    set_key(cfg, "run.seed", "18446744073709551615");
    const std::string text = resolved(cfg);
    RunConfig back;
    std::istringstream in(text);
    apply_ini(back, in);
    CHECK(resolved(back) == text);
    CHECK(back.device.channel.gamma == cfg.device.channel.gamma);
    CHECK(back.seed == cfg.seed);
    CHECK(back.array.wlw_active == 22.25);
    CHECK(text.find("out =") == std::string::npos);
}

TEST_CASE("experiment names round-trip", "[config]") {
    for (const auto e : {Experiment::iv_sweep, Experiment::characterize, Experiment::ratio_sweep,
                         Experiment::threshold_dist, Experiment::array_demo, Experiment::array_exhaustive}) {
        CHECK(parse_experiment(to_string(e)) == e);
    }
}
