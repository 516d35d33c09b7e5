#pragma once

// Acceptance suite shared by `mott-sim check` and the acceptance test binary.

#include "mottsim/array.hpp"
#include "mottsim/config.hpp"
#include "mottsim/device.hpp"
#include "mottsim/experiments.hpp"
#include "mottsim/ferroelectric.hpp"
#include "mottsim/oracle/spanning_tree.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace mottsim::acceptance {

inline constexpr int ensemble = 25;

struct Outcome {
    bool passed = false;
    std::string detail;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

/// Work shared between criteria, computed on first use.
class Context {
public:
    explicit Context(RunConfig cfg) : cfg_(std::move(cfg)) {}

    [[nodiscard]] const RunConfig& config() const noexcept { return cfg_; }
    [[nodiscard]] MottFeFet bare() const { return MottFeFet(cfg_.device, cfg_.seed); }

    const std::vector<IvTrace>& loop_traces() {
        if (!loops_) {
            const MottFeFet dev = bare();
            loops_ = parallel_map(ensemble, [&](std::size_t k) { return member_loop_sweep(dev, k, 0.0); });
        }
        return *loops_;
    }

    const Characterization& characterization() {
        if (!characterization_) characterization_ = characterize(bare(), cfg_.v_read, ensemble);
        return *characterization_;
    }

private:
    RunConfig cfg_;
    std::optional<std::vector<IvTrace>> loops_;
    std::optional<Characterization> characterization_;
};

namespace detail {

inline double max_over_min(const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi / *lo;
}

inline std::string list(const std::vector<double>& v, const char* fmt_spec = "{:.3f}") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt::format(fmt::runtime(fmt_spec), v[i]);
    return s;
}

}  // namespace detail

/// 1. Nodal solver against spanning-tree enumeration on every grid up to 3x3.
inline Outcome solver_oracle(Context&) {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> log_r(2.0, 7.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    int cases = 0;
    for (int rows = 1; rows <= 3; ++rows) {
        for (int cols = 1; cols <= 3; ++cols) {
            for (int trial = 0; trial < 40; ++trial) {
                ImtParams p;
                p.r_met = 5.0;
                p.r_ins_mean = 1e6;
                p.r_ins_sigma = 0.0;
                DomainGrid grid(rows, cols, p, 0);
                for (std::size_t i = 0; i < grid.edge_count(); ++i) {
                    grid.set_insulating_resistance(i, std::pow(10.0, log_r(rng)));
                    if (unit(rng) < 0.3) grid.set_phase(i, DomainPhase::metallic);
                }
                const double r_series = trial % 2 == 0 ? 0.0 : std::pow(10.0, log_r(rng));
                const double v = 0.1 + 2.0 * unit(rng);
                const double expected = v / (oracle::electrode_resistance(grid) + r_series);
                const NetworkSolution sol = solve_network(grid, v, r_series);
                worst = std::max({worst, std::abs(sol.terminal_current - expected) / expected,
                                  std::abs(sol.bottom_current - expected) / expected});
                ++cases;
            }
        }
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {worst <= 1e-8 && seconds < 10.0,
            fmt::format("{} grids, worst relative error {:.2e} (limit 1e-8), {:.2f} s (limit 10 s)", cases, worst, seconds)};
}

/// 2. Every up-sweep jumps >= jump_factor and median v_t >= median v_h.
inline Outcome abrupt_hysteretic_imt(Context& ctx) {
    const auto& traces = ctx.loop_traces();
    const double jump = ctx.config().device.sweep.jump_factor;
    std::vector<std::optional<double>> vt;
    std::vector<std::optional<double>> vh;
    int fired = 0;
    int held = 0;
    for (const auto& t : traces) {
        const Thresholds th = extract_thresholds(t, jump);
        vt.push_back(th.v_t);
        vh.push_back(th.v_h);
        fired += th.v_t ? 1 : 0;
        held += th.v_h ? 1 : 0;
    }
    const double med_t = median_or_inf(vt);
    // A missing hold transition sorts below every observed one.
    std::vector<double> h;
    for (const auto& x : vh) h.push_back(x.value_or(-std::numeric_limits<double>::infinity()));
    const double med_h = median(h);
    const bool ok = fired == ensemble && std::isfinite(med_h) && med_t >= med_h;
    return {ok, fmt::format("{}/{} traces jump on the up-sweep, {}/{} show an MIT; median v_t {:.3f} V, median v_h {:.3f} V",
                            fired, ensemble, held, ensemble, med_t, med_h)};
}

/// 3. R_OFF / R_ON of the relaxed channel above 1e4.
inline Outcome on_off_ratio(Context& ctx) {
    const auto& traces = ctx.loop_traces();
    const std::size_t peak = ctx.config().device.sweep.up_waveform().size() - 1;
    std::vector<double> ratios;
    for (const auto& t : traces) ratios.push_back(t.points[1].device_resistance / t.points[peak].device_resistance);
    const double worst = *std::min_element(ratios.begin(), ratios.end());
    return {worst > 1e4, fmt::format("smallest R_OFF/R_ON over {} devices {:.3e}, median {:.3e} (limit 1e4)",
                                     ratios.size(), worst, median(ratios))};
}

/// 4. Median v_t strictly decreasing in psi_s.
inline Outcome gate_modulation(Context& ctx) {
    const std::vector<double> psi{0.0, 0.1, 0.2, 0.3};
    const auto points = threshold_vs_psi(ctx.bare(), psi, ensemble);
    std::vector<double> med;
    for (const auto& p : points) med.push_back(p.summary.median);
    bool ok = std::all_of(med.begin(), med.end(), [](double x) { return std::isfinite(x); });
    for (std::size_t i = 1; i < med.size(); ++i) ok = ok && med[i] < med[i - 1];
    return {ok, fmt::format("median v_t at psi_s = 0, 0.1, 0.2, 0.3 V: {} V", detail::list(med))};
}

/// 5. Memory window after saturating writes.
inline Outcome memory_window(Context& ctx) {
    const Characterization& c = ctx.characterization();
    const bool ok = c.v_t_state1 < c.v_t_state0 && c.delta_v_t >= 0.25 && c.delta_v_t <= 0.75;
    return {ok, fmt::format("median v_t state1 {:.3f} V, state0 {:.3f} V, window {:.3f} V (target 0.5 +/- 0.25 V)",
                            c.v_t_state1, c.v_t_state0, c.delta_v_t)};
}

/// 6. Read ratio flat across program voltages while the window varies.
inline Outcome ratio_window_decoupling(Context& ctx) {
    const auto& cfg = ctx.config();
    const double v_read = ctx.characterization().v_read;
    const auto points = ratio_vs_program_voltage(ctx.bare(), cfg.v_prog_list, v_read, ensemble);
    std::vector<double> ratios;
    std::vector<double> windows;
    bool valid = points.size() >= 4;
    for (const auto& p : points) {
        ratios.push_back(p.result.ratio);
        windows.push_back(p.result.delta_v_t);
        valid = valid && p.result.read_point_valid && p.result.delta_v_t > 0.0;
    }
    const double ratio_spread = detail::max_over_min(ratios);
    const double window_spread = valid ? detail::max_over_min(windows) : 0.0;
    return {valid && ratio_spread <= 1.25 && window_spread >= 2.0,
            fmt::format("v_prog {} V: ratio spread {:.3f} (limit 1.25), window spread {:.2f} (limit 2), windows {} V",
                        detail::list(cfg.v_prog_list, "{:g}"), ratio_spread, window_spread, detail::list(windows))};
}

/// 7. Read currents at the default read point.
inline Outcome read_distinguishability(Context& ctx) {
    const Characterization& c = ctx.characterization();
    const bool ok = c.ratio >= 100.0 && c.i_bit1 >= 225e-6 / 2 && c.i_bit1 <= 225e-6 * 2 && c.i_bit0 >= 450e-9 / 2 &&
                    c.i_bit0 <= 450e-9 * 2;
    return {ok, fmt::format("v_read {:.3f} V: i_bit1 {:.1f} uA (225 within 2x), i_bit0 {:.1f} nA (450 within 2x), ratio {:.0f}",
                            c.v_read, c.i_bit1 * 1e6, c.i_bit0 * 1e9, c.ratio)};
}

/// 8. Threshold distributions of both states are spread and separated.
inline Outcome stochasticity(Context& ctx) {
    const MottFeFet bare = ctx.bare();
    const double v_write = ctx.config().device.v_write;
    const ThresholdSummary s1 = threshold_distribution(programmed_copy(bare, v_write), ensemble);
    const ThresholdSummary s0 = threshold_distribution(programmed_copy(bare, v_write, -v_write), ensemble);
    const bool ok = s1.fired >= 2 && s0.fired >= 2 && s1.sigma > 0.0 && s0.sigma > 0.0 && s1.median < s0.median;
    return {ok, fmt::format("state1 median {:.3f} V sigma {:.4f} V; state0 median {:.3f} V sigma {:.4f} V", s1.median,
                            s1.sigma, s0.median, s0.sigma)};
}

/// 9. No write disturbs any non-target cell by 1% of p_r.
inline Outcome write_isolation(Context& ctx) {
    const ArrayConfig acfg = ctx.config().array_config();
    const int n = acfg.rows * acfg.cols;
    const double limit = 0.01 * acfg.cell.ferroelectric.p_r;
    double worst_row = 0.0;
    double worst_off = 0.0;
    int ops = 0;
    // Backgrounds: all 0, all 1, and both checkerboards.
    for (int background = 0; background < 4; ++background) {
        ArrayState base(acfg, ctx.config().seed);
        for (int i = 0; i < n; ++i) {
            const int r = i / acfg.cols;
            const int c = i % acfg.cols;
            const int bit = background < 2 ? background : ((r + c + background) % 2);
            write_bit(base, r, c, bit);
        }
        for (int i = 0; i < n; ++i) {
            for (int bit = 0; bit <= 1; ++bit) {
                ArrayState s = base;
                const DisturbReport rep = write_bit(s, i / acfg.cols, i % acfg.cols, bit);
                for (const auto& d : rep.cells) {
                    if (d.role == CellRole::half_row) worst_row = std::max(worst_row, std::abs(d.delta_p));
                    if (d.role == CellRole::half_column || d.role == CellRole::unaccessed) {
                        worst_off = std::max(worst_off, std::abs(d.delta_p));
                    }
                }
                ++ops;
            }
        }
    }
    const ExhaustiveResult all = exhaustive_round_trip(acfg, ctx.config().seed);
    return {worst_row < limit && worst_off < limit && all.worst_delta_p < limit,
            fmt::format("{} writes: worst |dP| HAR {:.2e}, HAC/UA {:.2e}; {} pattern writes: worst {:.2e} uC/cm^2 "
                        "(limit {:.2e})",
                        ops, worst_row, worst_off, all.writes, all.worst_delta_p, limit)};
}

/// 10. Every pattern reads back exactly, and the demo row reads 0,1,0.
inline Outcome array_round_trip(Context& ctx) {
    const auto start = std::chrono::steady_clock::now();
    const ArrayConfig acfg = ctx.config().array_config();
    const ExhaustiveResult r = exhaustive_round_trip(acfg, ctx.config().seed);
    const Artifacts demo = run_array_demo(ctx.config());
    const bool demo_ok = std::any_of(demo.begin(), demo.end(), [](const Artifact& a) {
        return a.name == "array_demo.json" && nlohmann::json::parse(a.content).at("match").get<bool>();
    });
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {r.mismatches == 0 && demo_ok && seconds < 300.0,
            fmt::format("{} patterns, {} mismatches, row 2 reads 0,1,0: {}, {:.1f} s (limit 300 s)", r.patterns,
                        r.mismatches, demo_ok ? "yes" : "no", seconds)};
}

/// 11. Same seed, byte-identical artifacts.
inline Outcome determinism(Context& ctx) {
    std::vector<std::string> checked;
    bool ok = true;
    for (const Experiment e : {Experiment::iv_sweep, Experiment::threshold_dist, Experiment::array_demo}) {
        RunConfig cfg = ctx.config();
        cfg.experiment = e;
        cfg.n_seeds = 5;
        const Artifacts a = run_experiment(cfg);
        const Artifacts b = run_experiment(cfg);
        bool same = a.size() == b.size();
        for (std::size_t i = 0; same && i < a.size(); ++i) same = a[i].name == b[i].name && a[i].content == b[i].content;
        ok = ok && same;
        checked.push_back(std::string(to_string(e)) + (same ? " identical" : " DIFFERS"));
    }
    std::string detail;
    for (std::size_t i = 0; i < checked.size(); ++i) detail += (i ? ", " : "") + checked[i];
    return {ok, detail};
}

/// 12. Return-point memory, saturation clamp and remanence symmetry over random histories.
inline Outcome preisach_properties(Context& ctx) {
    const PreisachParams base = ctx.config().device.ferroelectric;
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    constexpr int sequences = 1000;
    int rpm_fail = 0;
    int clamp_fail = 0;
    int sym_fail = 0;

    auto random_history = [&](PreisachState& s, int length, double span) {
        for (int i = 0; i < length; ++i) s.apply_voltage(span * (2.0 * unit(rng) - 1.0));
    };

    for (int n = 0; n < sequences; ++n) {
        const double span = base.v_c * (0.5 + 3.0 * unit(rng));
        // Return-point memory: a reversal that stops short of the branch target
        // and comes back leaves polarization and history untouched.
        PreisachState s(base);
        random_history(s, 2 + static_cast<int>(unit(rng) * 12), span);
        const double v_a = s.voltage();
        const double p_a = s.polarization();
        const auto turns = s.turning_points();
        double gap = std::abs(v_a) * 2.0;
        if (!turns.empty()) gap = std::abs(v_a - turns.back().v);
        else if (!s.on_virgin_base()) gap = 2.0 * base.v_c;
        if (gap > 1e-6 && s.direction()) {
            const double sign = *s.direction() == SweepDirection::up ? -1.0 : 1.0;
            PreisachState reference = s;
            std::vector<TurningPoint> before(turns.begin(), turns.end());
            s.apply_voltage(v_a + sign * gap * (0.05 + 0.9 * unit(rng)));
            s.apply_voltage(v_a);
            bool ok = std::abs(s.polarization() - p_a) <= 1e-9 * base.p_s && s.turning_points().size() == before.size();
            const double ahead = v_a - sign * span * unit(rng);
            s.apply_voltage(ahead);
            reference.apply_voltage(ahead);
            ok = ok && std::abs(s.polarization() - reference.polarization()) <= 1e-9 * base.p_s;
            rpm_fail += ok ? 0 : 1;
        }

        // Saturation clamp, including far overdrive.
        PreisachState c(base);
        bool clamp_ok = true;
        for (int i = 0; i < 30; ++i) {
            c.apply_voltage(20.0 * base.v_c * (2.0 * unit(rng) - 1.0));
            clamp_ok = clamp_ok && std::abs(c.polarization()) <= base.p_s;
        }
        c.apply_voltage(50.0 * base.v_c);
        clamp_ok = clamp_ok && c.polarization() <= base.p_s && c.polarization() >= base.p_s * (1.0 - 1e-6);
        clamp_fail += clamp_ok ? 0 : 1;

        // Remanence symmetry: saturated states sit at +/-p_r, and mirrored
        // histories give mirrored polarization.
        PreisachParams q = base;
        q.p_s = base.p_s * (0.5 + unit(rng));
        q.p_r = q.p_s * (0.1 + 0.8 * unit(rng));
        q.v_c = base.v_c * (0.5 + unit(rng));
        bool sym_ok = std::abs(remnant(PreisachState::saturated(q, 1)) - q.p_r) <= 1e-9 * q.p_s &&
                      std::abs(remnant(PreisachState::saturated(q, -1)) + q.p_r) <= 1e-9 * q.p_s;
        PreisachState up(q);
        PreisachState down(q);
        for (int i = 0; i < 12; ++i) {
            const double v = 3.0 * q.v_c * (2.0 * unit(rng) - 1.0);
            up.apply_voltage(v);
            down.apply_voltage(-v);
            sym_ok = sym_ok && std::abs(up.polarization() + down.polarization()) <= 1e-12 * q.p_s;
        }
        sym_fail += sym_ok ? 0 : 1;
    }
    return {rpm_fail == 0 && clamp_fail == 0 && sym_fail == 0,
            fmt::format("{} sequences each: return-point failures {}, clamp failures {}, symmetry failures {}", sequences,
                        rpm_fail, clamp_fail, sym_fail)};
}

struct Criterion {
    int id;
    const char* name;
    Outcome (*run)(Context&);
};

inline const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list{
        {1, "network solver matches spanning-tree oracle", solver_oracle},
        {2, "abrupt hysteretic IMT", abrupt_hysteretic_imt},
        {3, "R_OFF/R_ON above 1e4", on_off_ratio},
        {4, "gate modulation of v_t", gate_modulation},
        {5, "memory window", memory_window},
        {6, "read ratio independent of program voltage", ratio_window_decoupling},
        {7, "read distinguishability", read_distinguishability},
        {8, "threshold stochasticity", stochasticity},
        {9, "array write isolation", write_isolation},
        {10, "array pattern round trip", array_round_trip},
        {11, "seeded determinism", determinism},
        {12, "Preisach property suite", preisach_properties},
    };
    return list;
}

/// Runs every criterion; `report` is called after each one.
inline std::vector<CriterionResult> run_all(const RunConfig& cfg,
                                            const std::function<void(const CriterionResult&)>& report = {}) {
    Context ctx(cfg);
    std::vector<CriterionResult> out;
    for (const auto& c : criteria()) {
        const auto start = std::chrono::steady_clock::now();
        CriterionResult r{c.id, c.name, false, {}, 0.0};
        try {
            const Outcome o = c.run(ctx);
            r.passed = o.passed;
            r.detail = o.detail;
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("error: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (report) report(r);
        out.push_back(std::move(r));
    }
    return out;
}

[[nodiscard]] inline std::string format_line(const CriterionResult& r) {
    return fmt::format("[{}] {:>2}. {} ({:.1f} s): {}", r.passed ? "PASS" : "FAIL", r.id, r.name, r.seconds, r.detail);
}

}  // namespace mottsim::acceptance
