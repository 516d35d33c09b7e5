// mott-sim: run experiments or the acceptance check.
//
//   mott-sim run   [--config PATH] [--experiment NAME] [--seed N] [--out DIR] [--section.key=value ...]
//   mott-sim check [--config PATH] [--section.key=value ...]
//
// Exit status: 0 success, 2 configuration error, 3 simulation failure,
// 4 acceptance failure, 1 anything else.

#include "mottsim/acceptance.hpp"
#include "mottsim/config.hpp"
#include "mottsim/errors.hpp"
#include "mottsim/experiments.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

enum ExitCode { ok = 0, other = 1, config_error = 2, simulation_error = 3, check_failed = 4 };

int fail(ExitCode code, const char* kind, const std::string& message) {
    std::cerr << nlohmann::json{{"error", kind}, {"message", message}}.dump() << '\n';
    return code;
}

struct Options {
    std::optional<std::string> config;
    std::optional<std::string> experiment;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
};

mottsim::RunConfig resolve(const Options& opt, const std::vector<std::string>& extras) {
    mottsim::RunConfig cfg = opt.config ? mottsim::load_config(*opt.config) : mottsim::RunConfig{};
    if (opt.experiment) cfg.experiment = mottsim::parse_experiment(*opt.experiment);
    if (opt.seed) cfg.seed = *opt.seed;
    if (opt.out) cfg.out = *opt.out;
    for (const auto& e : extras) {
        if (e.rfind("--", 0) != 0) throw mottsim::ConfigError("unexpected argument '" + e + "'");
        mottsim::apply_override(cfg, e);
    }
    cfg.validate();
    return cfg;
}

void write_artifacts(const std::string& dir, const mottsim::Artifacts& artifacts) {
    std::filesystem::create_directories(dir);
    for (const auto& a : artifacts) {
        const auto path = std::filesystem::path(dir) / a.name;
        std::ofstream os(path, std::ios::binary);
        os << a.content;
        if (!os) throw std::runtime_error("cannot write " + path.string());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mott-FeFET device and array simulator"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config, "INI configuration file");
        sub->allow_extras();
    };
    CLI::App* run = app.add_subcommand("run", "Run one experiment and write its artifacts");
    add_common(run);
    run->add_option("--experiment", opt.experiment,
                    "iv_sweep | characterize | ratio_sweep | threshold_dist | array_demo | array_exhaustive");
    run->add_option("--seed", opt.seed, "Master seed");
    run->add_option("--out", opt.out, "Output directory");
    CLI::App* check = app.add_subcommand("check", "Run the acceptance suite");
    add_common(check);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        return fail(config_error, "config", e.what());
    }

    mottsim::RunConfig cfg;
    try {
        const CLI::App* active = run->parsed() ? run : check;
        cfg = resolve(opt, active->remaining());
    } catch (const mottsim::ConfigError& e) {
        return fail(config_error, "config", e.what());
    }

    if (check->parsed()) {
        const auto results = mottsim::acceptance::run_all(cfg, [](const mottsim::acceptance::CriterionResult& r) {
            std::cout << mottsim::acceptance::format_line(r) << std::endl;
        });
        int failed = 0;
        for (const auto& r : results) failed += r.passed ? 0 : 1;
        std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << '\n';
        return failed == 0 ? ok : check_failed;
    }

    try {
        const mottsim::Artifacts artifacts = mottsim::run_experiment(cfg);
        write_artifacts(cfg.out, artifacts);
        for (const auto& a : artifacts) std::cout << (std::filesystem::path(cfg.out) / a.name).string() << '\n';
    } catch (const mottsim::ConfigError& e) {
        return fail(config_error, "config", e.what());
    } catch (const mottsim::ConvergenceError& e) {
        return fail(simulation_error, "convergence", e.what());
    } catch (const mottsim::InvalidReadPoint& e) {
        return fail(simulation_error, "read_point", e.what());
    } catch (const mottsim::WriteFailure& e) {
        return fail(simulation_error, "write", e.what());
    } catch (const std::exception& e) {
        return fail(other, "internal", e.what());
    }
    return ok;
}
