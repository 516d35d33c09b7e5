#pragma once

// NOR array of Mott-FeFET cells.
//
// Wiring: WLR_r drives the drains of row r, SL_c collects the sources of
// column c at virtual ground, and an n-type access transistor gated by WLW_r
// connects BL_c to the ferroelectric gate of cell (r, c). The transistor's
// source is whichever of BL and gate node is lower.

#include "mottsim/device.hpp"
#include "mottsim/errors.hpp"
#include "mottsim/sense_amp.hpp"

#include <nlohmann/json.hpp>

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

namespace mottsim {

struct AccessParams {
    double v_th = 0.4;        // V
    double r_on = 10e3;       // ohm
    double i_leak = 100e-12;  // A
    double band = 0.05;       // width of the off/on blend, V

    void validate() const {
        if (!(r_on > 0.0)) throw ConfigError("access: require r_on > 0");
        if (!(i_leak >= 0.0)) throw ConfigError("access: require i_leak >= 0");
        if (!(band > 0.0)) throw ConfigError("access: require band > 0");
    }
};

/// On-fraction of the access device: 0 below v_th - band/2, 1 above
/// v_th + band/2, C1 smoothstep between.
[[nodiscard]] inline double conduction(double v_gs, const AccessParams& p) {
    const double x = (v_gs - (p.v_th - 0.5 * p.band)) / p.band;
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return x * x * (3.0 - 2.0 * x);
}

/// Behavioral pass-transistor current: ohmic when on, saturating leakage when off.
[[nodiscard]] inline double access_transistor(double v_gs, double v_ds, const AccessParams& p) {
    const double s = conduction(v_gs, p);
    return s * v_ds / p.r_on + (1.0 - s) * p.i_leak * std::tanh(v_ds / 0.025);
}

/// Steady gate-node voltage behind an access device with word line `v_wl`
/// and bit line `v_bl`. An off device leaves the node at 0 V.
[[nodiscard]] inline double gate_node_voltage(double v_wl, double v_bl, const AccessParams& p) {
    if (v_bl == 0.0) return 0.0;
    auto excess = [&](double node) { return node - conduction(v_wl - std::min(v_bl, node), p) * v_bl; };
    double lo = std::min(0.0, v_bl);
    double hi = std::max(0.0, v_bl);
    if (excess(lo) >= 0.0) return lo;
    if (excess(hi) <= 0.0) return hi;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(v_bl)); ++i) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

struct ArrayConfig {
    int rows = 3;
    int cols = 3;
    double v_dd = 1.2;
    double v_write = 20.0;
    double v_read = 1.4;
    std::optional<double> wlw_active;    // default v_dd + v_write
    std::optional<double> wlw_inactive;  // default -v_write
    DeviceConfig cell;
    AccessParams access;
    CsaParams csa;
    double write_duration = 100e-9;  // s
    double read_duration = 50e-9;    // s

    [[nodiscard]] double wlw_on() const { return wlw_active.value_or(v_dd + v_write); }
    [[nodiscard]] double wlw_off() const { return wlw_inactive.value_or(-v_write); }

    void validate() const {
        if (rows < 1 || cols < 1) throw ConfigError("array: rows and cols must be >= 1");
        if (!(v_dd > 0.0)) throw ConfigError("array: require v_dd > 0");
        if (!(v_write > 0.0)) throw ConfigError("array: require v_write > 0");
        if (!(v_read > 0.0)) throw ConfigError("array: require v_read > 0");
        if (!(write_duration > 0.0 && read_duration > 0.0)) throw ConfigError("array: durations must be > 0");
        cell.validate();
        access.validate();
        csa.validate();
    }
};

struct BiasAssignment {
    std::vector<double> wlw;
    std::vector<double> wlr;
    std::vector<double> bl;
    std::vector<double> sl;
    double t_start = 0.0;   // s
    double duration = 0.0;  // s
};

[[nodiscard]] inline BiasAssignment idle_bias(const ArrayConfig& cfg) {
    BiasAssignment b;
    b.wlw.assign(static_cast<std::size_t>(cfg.rows), cfg.wlw_off());
    b.wlr.assign(static_cast<std::size_t>(cfg.rows), 0.0);
    b.bl.assign(static_cast<std::size_t>(cfg.cols), 0.0);
    b.sl.assign(static_cast<std::size_t>(cfg.cols), 0.0);
    return b;
}

inline void check_cell(const ArrayConfig& cfg, int r, int c) {
    if (r < 0 || r >= cfg.rows || c < 0 || c >= cfg.cols) {
        throw std::out_of_range("array: cell (" + std::to_string(r) + ", " + std::to_string(c) + ") out of range");
    }
}

[[nodiscard]] inline BiasAssignment bias_for_write(const ArrayConfig& cfg, int r, int c, int bit) {
    check_cell(cfg, r, c);
    if (bit != 0 && bit != 1) throw std::invalid_argument("array: bit must be 0 or 1");
    BiasAssignment b = idle_bias(cfg);
    b.wlw[static_cast<std::size_t>(r)] = cfg.wlw_on();
    b.bl[static_cast<std::size_t>(c)] = bit == 1 ? cfg.v_write : -cfg.v_write;
    b.duration = cfg.write_duration;
    return b;
}

[[nodiscard]] inline BiasAssignment bias_for_read(const ArrayConfig& cfg, int r) {
    check_cell(cfg, r, 0);
    BiasAssignment b = idle_bias(cfg);
    b.wlr[static_cast<std::size_t>(r)] = cfg.v_read;
    b.duration = cfg.read_duration;
    return b;
}

enum class CellRole { target, half_row, half_column, unaccessed };

[[nodiscard]] constexpr const char* to_string(CellRole role) noexcept {
    switch (role) {
        case CellRole::target: return "target";
        case CellRole::half_row: return "HAR";
        case CellRole::half_column: return "HAC";
        case CellRole::unaccessed: return "UA";
    }
    return "?";
}

struct CellDisturb {
    int row = 0;
    int col = 0;
    CellRole role = CellRole::unaccessed;
    double delta_p = 0.0;  // change of remnant polarization, uC/cm^2
};

struct DisturbReport {
    std::vector<CellDisturb> cells;

    /// Largest |dP| over every cell other than the target.
    [[nodiscard]] double worst_non_target() const {
        double worst = 0.0;
        for (const auto& d : cells) {
            if (d.role != CellRole::target) worst = std::max(worst, std::abs(d.delta_p));
        }
        return worst;
    }
};

struct SenseRead {
    double i_sl = 0.0;
    int bit = 0;
    double v_out = 0.0;
};

class ArrayState {
public:
    ArrayState(ArrayConfig cfg, std::uint64_t master_seed) : cfg_((cfg.validate(), cfg)), seed_(master_seed) {
        cells_.reserve(static_cast<std::size_t>(cfg_.rows * cfg_.cols));
        for (int i = 0; i < cfg_.rows * cfg_.cols; ++i) {
            cells_.emplace_back(cfg_.cell, derive_seed(seed_, static_cast<std::uint64_t>(i), Stream::grid));
        }
        for (int c = 0; c < cfg_.cols; ++c) amps_.emplace_back(cfg_.csa);
    }

    [[nodiscard]] const ArrayConfig& config() const noexcept { return cfg_; }
    [[nodiscard]] const MottFeFet& cell(int r, int c) const { return cells_.at(index(r, c)); }
    [[nodiscard]] MottFeFet& cell(int r, int c) { return cells_.at(index(r, c)); }
    [[nodiscard]] const std::vector<std::string>& transcript() const noexcept { return transcript_; }
    [[nodiscard]] double clock() const noexcept { return clock_; }

    [[nodiscard]] std::vector<std::vector<double>> remnant_snapshot() const {
        std::vector<std::vector<double>> p(static_cast<std::size_t>(cfg_.rows),
                                           std::vector<double>(static_cast<std::size_t>(cfg_.cols)));
        for (int r = 0; r < cfg_.rows; ++r) {
            for (int c = 0; c < cfg_.cols; ++c) p[r][c] = remnant(cell(r, c).stack().fe());
        }
        return p;
    }

    /// Read current of one cell at drain bias v_drain, memoized on the exact
    /// (cell, surface potential, bias) triple since a read is a pure function of it.
    [[nodiscard]] double cell_current(int r, int c, double v_drain) {
        const MottFeFet& dev = cell(r, c);
        const double psi = dev.read_psi();
        const auto key = std::tuple{index(r, c), std::bit_cast<std::uint64_t>(psi), std::bit_cast<std::uint64_t>(v_drain)};
        if (const auto it = read_cache_.find(key); it != read_cache_.end()) return it->second;
        const double i = member_read_current(dev, 0, psi, v_drain);
        read_cache_.emplace(key, i);
        return i;
    }

    std::vector<CurrentSenseAmp>& amps() noexcept { return amps_; }

    void log(const nlohmann::json& record) { transcript_.push_back(record.dump()); }
    double advance(double duration) {
        const double t = clock_;
        clock_ += duration;
        return t;
    }

private:
    [[nodiscard]] std::size_t index(int r, int c) const {
        check_cell(cfg_, r, c);
        return static_cast<std::size_t>(r * cfg_.cols + c);
    }

    ArrayConfig cfg_;
    std::uint64_t seed_;
    std::vector<MottFeFet> cells_;
    std::vector<CurrentSenseAmp> amps_;
    std::vector<std::string> transcript_;
    std::map<std::tuple<std::size_t, std::uint64_t, std::uint64_t>, double> read_cache_;
    double clock_ = 0.0;
};

namespace detail {

inline nlohmann::json bias_json(const BiasAssignment& b) {
    return {{"wlw", b.wlw}, {"wlr", b.wlr}, {"bl", b.bl}, {"sl", b.sl}, {"t_start", b.t_start}, {"duration", b.duration}};
}

inline CellRole role_of(int r, int c, int tr, int tc) {
    if (r == tr && c == tc) return CellRole::target;
    if (r == tr) return CellRole::half_row;
    if (c == tc) return CellRole::half_column;
    return CellRole::unaccessed;
}

}  // namespace detail

/// Applies the write pulse for (r, c, bit) to every cell through its access
/// device. Throws WriteFailure if the target's remnant polarization does not
/// take the commanded sign.
inline DisturbReport write_bit(ArrayState& state, int r, int c, int bit) {
    const ArrayConfig& cfg = state.config();
    BiasAssignment bias = bias_for_write(cfg, r, c, bit);
    bias.t_start = state.advance(bias.duration);
    const auto before = state.remnant_snapshot();

    const std::vector<double> bl_pulse = write_pulse(1.0);
    for (int i = 0; i < cfg.rows; ++i) {
        for (int j = 0; j < cfg.cols; ++j) {
            const double wl = bias.wlw[static_cast<std::size_t>(i)];
            const double bl = bias.bl[static_cast<std::size_t>(j)];
            std::vector<double> gate;
            gate.reserve(bl_pulse.size());
            bool driven = false;
            for (const double shape : bl_pulse) {
                const double v = gate_node_voltage(wl, shape * bl, cfg.access);
                driven = driven || v != 0.0;
                gate.push_back(v);
            }
            if (driven) program(state.cell(i, j).stack(), gate);
        }
    }

    const auto after = state.remnant_snapshot();
    DisturbReport report;
    nlohmann::json dp = nlohmann::json::array();
    for (int i = 0; i < cfg.rows; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < cfg.cols; ++j) {
            const double d = after[i][j] - before[i][j];
            report.cells.push_back({i, j, detail::role_of(i, j, r, c), d});
            row.push_back(d);
        }
        dp.push_back(row);
    }
    state.log({{"op", "write"},
               {"phase", "program"},
               {"target", {r, c}},
               {"bit", bit},
               {"bias", detail::bias_json(bias)},
               {"p_before", before},
               {"p_after", after},
               {"delta_p", dp}});

    const double p_target = after[r][c];
    if ((bit == 1 && !(p_target > 0.0)) || (bit == 0 && !(p_target < 0.0))) {
        throw WriteFailure("array: cell (" + std::to_string(r) + ", " + std::to_string(c) + ") did not take bit " +
                           std::to_string(bit) + " (remnant " + std::to_string(p_target) + " uC/cm^2)");
    }
    return report;
}

/// SL currents for one row read. Each SL sums the currents of every cell on
/// its column at that cell's row drain bias; the gates float at 0 V.
inline std::vector<double> read_row(ArrayState& state, int r) {
    const ArrayConfig& cfg = state.config();
    BiasAssignment bias = bias_for_read(cfg, r);
    bias.t_start = state.advance(bias.duration);
    const auto before = state.remnant_snapshot();
    std::vector<double> sl(static_cast<std::size_t>(cfg.cols), 0.0);
    for (int c = 0; c < cfg.cols; ++c) {
        for (int i = 0; i < cfg.rows; ++i) {
            const double v_drain = bias.wlr[static_cast<std::size_t>(i)] - bias.sl[static_cast<std::size_t>(c)];
            if (v_drain == 0.0) continue;
            sl[static_cast<std::size_t>(c)] += state.cell_current(i, c, v_drain);
        }
    }
    const auto after = state.remnant_snapshot();
    state.log({{"op", "read"},
               {"phase", "sense"},
               {"row", r},
               {"bias", detail::bias_json(bias)},
               {"p_before", before},
               {"p_after", after},
               {"sl_current", sl}});
    return sl;
}

/// Row read followed by one sense amplifier per SL.
inline std::vector<SenseRead> read_row_bits(ArrayState& state, int r) {
    const auto sl = read_row(state, r);
    std::vector<SenseRead> out;
    nlohmann::json csa = nlohmann::json::array();
    for (std::size_t c = 0; c < sl.size(); ++c) {
        const SenseResult s = state.amps()[c].sense(sl[c]);
        out.push_back({sl[c], s.bit, s.v_out});
        csa.push_back({{"i_sl", sl[c]}, {"bit", s.bit}, {"v_out", s.v_out}});
    }
    state.log({{"op", "read"}, {"phase", "csa"}, {"row", r}, {"csa", csa}});
    return out;
}

inline void write_transcript(std::ostream& os, const ArrayState& state) {
    for (const auto& line : state.transcript()) os << line << '\n';
}

}  // namespace mottsim
