#pragma once

// Experiment drivers. Each one returns its artifacts as in-memory files so
// the caller can write them all at once (or compare runs byte for byte).

#include "mottsim/array.hpp"
#include "mottsim/config.hpp"
#include "mottsim/device.hpp"
#include "mottsim/sha256.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace mottsim {

struct Artifact {
    std::string name;
    std::string content;
};

using Artifacts = std::vector<Artifact>;

namespace detail {

inline nlohmann::json optional_json(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

inline nlohmann::json finite_json(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

inline std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

inline std::string format_optional_csv(const std::optional<double>& v) { return v ? fmt::format("{:.6f}", *v) : ""; }

inline nlohmann::json characterization_json(const Characterization& c) {
    nlohmann::json s1 = nlohmann::json::array();
    nlohmann::json s0 = nlohmann::json::array();
    for (const auto& x : c.samples_state1) s1.push_back(optional_json(x));
    for (const auto& x : c.samples_state0) s0.push_back(optional_json(x));
    return {{"psi_state1", c.psi_state1},
            {"psi_state0", c.psi_state0},
            {"v_t_state1", finite_json(c.v_t_state1)},
            {"v_t_state0", finite_json(c.v_t_state0)},
            {"delta_v_t", finite_json(c.delta_v_t)},
            {"v_read", finite_json(c.v_read)},
            {"read_point_valid", c.read_point_valid},
            {"i_bit1", c.i_bit1},
            {"i_bit0", c.i_bit0},
            {"ratio", finite_json(c.ratio)},
            {"thresholds_state1", s1},
            {"thresholds_state0", s0},
            {"currents_state1", c.currents_state1},
            {"currents_state0", c.currents_state0}};
}

}  // namespace detail

/// Up-down sweep of ensemble member `unit` at surface potential psi_s.
[[nodiscard]] inline IvTrace member_loop_sweep(const MottFeFet& dev, std::uint64_t unit, double psi_s,
                                               const SweepObserver& observe = {}) {
    DomainGrid grid = dev.member_grid(unit);
    Rng rng = make_rng(dev.master_seed(), unit, Stream::steps);
    const auto waveform = dev.config().sweep.loop_waveform();
    return sweep_iv(grid, waveform, psi_s, rng, dev.config().sweep.relax_options(), observe);
}

/// Median IMT threshold over n_seeds members at each surface potential.
struct ModulationPoint {
    double psi_s = 0.0;
    ThresholdSummary summary;
};

[[nodiscard]] inline std::vector<ModulationPoint> threshold_vs_psi(const MottFeFet& dev, std::span<const double> psi_list,
                                                                   int n_seeds) {
    std::vector<ModulationPoint> out;
    for (const double psi : psi_list) {
        auto samples = parallel_map(static_cast<std::size_t>(n_seeds),
                                    [&](std::size_t k) { return member_threshold(dev, k, psi); });
        out.push_back({psi, summarize_thresholds(std::move(samples))});
    }
    return out;
}

inline Artifacts run_iv_sweep(const RunConfig& cfg) {
    const MottFeFet dev(cfg.device, cfg.seed);
    const std::size_t peak = cfg.device.sweep.up_waveform().size() - 1;
    std::string peak_grid;
    std::string final_grid;
    const std::size_t last = cfg.device.sweep.loop_waveform().size() - 1;
    const IvTrace trace = member_loop_sweep(dev, 0, dev.read_psi(), [&](std::size_t k, const DomainGrid& g) {
        std::ostringstream os;
        if (k == peak) {
            write_grid_snapshot_csv(os, g);
            peak_grid = os.str();
        } else if (k == last) {
            write_grid_snapshot_csv(os, g);
            final_grid = os.str();
        }
    });
    const Thresholds th = extract_thresholds(trace, cfg.device.sweep.jump_factor);

    std::ostringstream iv;
    write_iv_csv(iv, trace);
    const auto& pk = trace.points[peak];
    const nlohmann::json summary{{"experiment", "iv_sweep"},
                                 {"seed", cfg.seed},
                                 {"psi_s", dev.read_psi()},
                                 {"v_t", detail::optional_json(th.v_t)},
                                 {"v_h", detail::optional_json(th.v_h)},
                                 {"r_off", trace.points[1].device_resistance},
                                 {"r_on", pk.device_resistance},
                                 {"r_off_over_r_on", trace.points[1].device_resistance / pk.device_resistance},
                                 {"peak_metallic_domains", pk.n_metallic},
                                 {"peak_filament", pk.filament}};
    return {{"iv_sweep.csv", iv.str()},
            {"grid_peak.csv", peak_grid},
            {"grid_final.csv", final_grid},
            {"iv_summary.json", detail::dump(summary)}};
}

inline Artifacts run_characterize(const RunConfig& cfg) {
    const MottFeFet dev(cfg.device, cfg.seed);
    const Characterization c = characterize(dev, cfg.v_read, cfg.n_seeds);

    std::string fig2b = "state,v_applied,current_A,n_metallic,direction\n";
    for (const auto& [label, psi] : {std::pair{"1", c.psi_state1}, std::pair{"0", c.psi_state0}}) {
        for (const auto& p : member_loop_sweep(dev, 0, psi).points) {
            fig2b += fmt::format("{},{:.6f},{:.9e},{},{}\n", label, p.v_applied, p.current, p.n_metallic, to_string(p.leg));
        }
    }

    const auto modulation = threshold_vs_psi(dev, cfg.psi_list, cfg.n_seeds);
    std::string fig1d = "psi_s,v_t_median,v_t_mean,v_t_sigma,fired\n";
    for (const auto& m : modulation) {
        fig1d += fmt::format("{:.6f},{:.6f},{:.6f},{:.6f},{}\n", m.psi_s, m.summary.median, m.summary.mean,
                             m.summary.sigma, m.summary.fired);
    }

    nlohmann::json summary = detail::characterization_json(c);
    summary["experiment"] = "characterize";
    summary["seed"] = cfg.seed;
    summary["n_seeds"] = cfg.n_seeds;
    return {{"characterization.json", detail::dump(summary)}, {"fig1d.csv", fig1d}, {"fig2b.csv", fig2b}};
}

inline Artifacts run_ratio_sweep(const RunConfig& cfg) {
    const MottFeFet dev(cfg.device, cfg.seed);
    double v_read;
    if (cfg.v_read) {
        v_read = *cfg.v_read;
    } else {
        v_read = characterize(dev, std::nullopt, cfg.n_seeds).v_read;
    }
    const auto points = ratio_vs_program_voltage(dev, cfg.v_prog_list, v_read, cfg.n_seeds);
    std::string fig2c = "v_prog,delta_v_t,i_bit1,i_bit0,ratio\n";
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& p : points) {
        fig2c += fmt::format("{:.6f},{:.6f},{:.9e},{:.9e},{:.6f}\n", p.v_prog, p.result.delta_v_t, p.result.i_bit1,
                             p.result.i_bit0, p.result.ratio);
        nlohmann::json e = detail::characterization_json(p.result);
        e["v_prog"] = p.v_prog;
        entries.push_back(e);
    }
    const nlohmann::json summary{{"experiment", "ratio_sweep"}, {"seed", cfg.seed}, {"n_seeds", cfg.n_seeds},
                                 {"v_read", v_read},          {"entries", entries}};
    return {{"fig2c.csv", fig2c}, {"ratio_sweep.json", detail::dump(summary)}};
}

inline Artifacts run_threshold_dist(const RunConfig& cfg) {
    const MottFeFet bare(cfg.device, cfg.seed);
    const double v_write = cfg.device.v_write;
    const std::vector<std::pair<std::string, MottFeFet>> populations{
        {"bare", bare}, {"state1", programmed_copy(bare, v_write)}, {"state0", programmed_copy(bare, v_write, -v_write)}};
    std::string fig = "population,sweep,v_t\n";
    nlohmann::json summary{{"experiment", "threshold_dist"}, {"seed", cfg.seed}, {"n_sweeps", cfg.n_seeds}};
    for (const auto& [name, dev] : populations) {
        const ThresholdSummary s = threshold_distribution(dev, cfg.n_seeds);
        for (std::size_t k = 0; k < s.samples.size(); ++k) {
            fig += fmt::format("{},{},{}\n", name, k, detail::format_optional_csv(s.samples[k]));
        }
        summary[name] = {{"psi_s", dev.read_psi()}, {"mean", s.mean},     {"sigma", s.sigma},
                         {"median", detail::finite_json(s.median)},     {"fired", s.fired}};
    }
    return {{"figS1.csv", fig}, {"figS1_summary.json", detail::dump(summary)}};
}

/// Demo sequence: row 1 is cleared, cell (1, 1) is rewritten to 1, then row 1 is read back.
inline Artifacts run_array_demo(const RunConfig& cfg) {
    const ArrayConfig acfg = cfg.array_config();
    if (acfg.rows < 2 || acfg.cols < 3) throw ConfigError("array_demo: needs at least 2 rows and 3 columns");
    ArrayState state(acfg, cfg.seed);
    const int row = 1;
    nlohmann::json ops = nlohmann::json::array();
    auto write = [&](int c, int bit) {
        const DisturbReport rep = write_bit(state, row, c, bit);
        ops.push_back({{"op", "write"}, {"cell", {row, c}}, {"bit", bit}, {"worst_non_target_delta_p", rep.worst_non_target()}});
    };
    write(0, 0);
    write(2, 0);
    write(1, 0);
    write(1, 1);
    const auto bits = read_row_bits(state, row);

    std::string fig3h = "col,i_sl,bit,v_out\n";
    std::vector<int> readback;
    for (std::size_t c = 0; c < bits.size(); ++c) {
        fig3h += fmt::format("{},{:.9e},{},{:.6f}\n", c, bits[c].i_sl, bits[c].bit, bits[c].v_out);
        readback.push_back(bits[c].bit);
    }
    std::ostringstream transcript;
    write_transcript(transcript, state);
    std::vector<int> expected(static_cast<std::size_t>(acfg.cols), 0);
    expected[1] = 1;
    const nlohmann::json summary{{"experiment", "array_demo"}, {"seed", cfg.seed}, {"row", row},
                                 {"expected", expected},      {"readback", readback}, {"match", readback == expected},
                                 {"operations", ops}};
    return {{"array_demo.json", detail::dump(summary)}, {"fig3h.csv", fig3h}, {"transcript.jsonl", transcript.str()}};
}

struct ExhaustiveResult {
    std::uint64_t patterns = 0;
    std::uint64_t mismatches = 0;
    std::uint64_t writes = 0;
    double worst_delta_p = 0.0;  // over every non-target cell of every write, uC/cm^2
    std::string csv;
};

/// Writes every bit pattern cell by cell into one array and reads it back row by row.
[[nodiscard]] inline ExhaustiveResult exhaustive_round_trip(const ArrayConfig& acfg, std::uint64_t seed) {
    const int n = acfg.rows * acfg.cols;
    if (n > 16) throw ConfigError("array_exhaustive: at most 16 cells");
    ArrayState state(acfg, seed);
    ExhaustiveResult res;
    res.csv = "pattern,readback,match,worst_delta_p\n";
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t pattern = 0; pattern < total; ++pattern) {
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            const int bit = static_cast<int>((pattern >> (n - 1 - i)) & 1U);
            worst = std::max(worst, write_bit(state, i / acfg.cols, i % acfg.cols, bit).worst_non_target());
            ++res.writes;
        }
        std::string want;
        std::string got;
        for (int i = 0; i < n; ++i) want += ((pattern >> (n - 1 - i)) & 1U) ? '1' : '0';
        for (int r = 0; r < acfg.rows; ++r) {
            for (const auto& s : read_row_bits(state, r)) got += s.bit ? '1' : '0';
        }
        const bool match = want == got;
        res.mismatches += match ? 0 : 1;
        res.worst_delta_p = std::max(res.worst_delta_p, worst);
        res.csv += fmt::format("{},{},{},{:.6e}\n", want, got, match ? 1 : 0, worst);
        ++res.patterns;
    }
    return res;
}

inline Artifacts run_array_exhaustive(const RunConfig& cfg) {
    const ArrayConfig acfg = cfg.array_config();
    const ExhaustiveResult r = exhaustive_round_trip(acfg, cfg.seed);
    const double p_r = acfg.cell.ferroelectric.p_r;
    const nlohmann::json summary{{"experiment", "array_exhaustive"},
                                 {"seed", cfg.seed},
                                 {"patterns", r.patterns},
                                 {"writes", r.writes},
                                 {"mismatches", r.mismatches},
                                 {"worst_delta_p", r.worst_delta_p},
                                 {"worst_delta_p_over_p_r", r.worst_delta_p / p_r}};
    return {{"array_exhaustive.csv", r.csv}, {"array_exhaustive.json", detail::dump(summary)}};
}

[[nodiscard]] inline Artifacts run_experiment(const RunConfig& cfg) {
    cfg.validate();
    Artifacts a;
    switch (cfg.experiment) {
        case Experiment::iv_sweep: a = run_iv_sweep(cfg); break;
        case Experiment::characterize: a = run_characterize(cfg); break;
        case Experiment::ratio_sweep: a = run_ratio_sweep(cfg); break;
        case Experiment::threshold_dist: a = run_threshold_dist(cfg); break;
        case Experiment::array_demo: a = run_array_demo(cfg); break;
        case Experiment::array_exhaustive: a = run_array_exhaustive(cfg); break;
    }
    std::ostringstream resolved;
    write_resolved_config(resolved, cfg);
    a.push_back({"resolved_config.ini", resolved.str()});
    std::sort(a.begin(), a.end(), [](const Artifact& x, const Artifact& y) { return x.name < y.name; });

    nlohmann::json files = nlohmann::json::array();
    for (const auto& f : a) files.push_back({{"name", f.name}, {"bytes", f.content.size()}, {"sha256", sha256_hex(f.content)}});
    a.push_back({"manifest.json", detail::dump({{"experiment", to_string(cfg.experiment)}, {"seed", cfg.seed}, {"files", files}})});
    return a;
}

}  // namespace mottsim
