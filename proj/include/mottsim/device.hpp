#pragma once

// Mott-FeFET: a ferroelectric gate stack over a VO2 resistor-network channel.
// The read-time surface potential set by the stored polarization shifts the
// channel's IMT threshold.

#include "mottsim/errors.hpp"
#include "mottsim/gate_stack.hpp"
#include "mottsim/mott_network.hpp"
#include "mottsim/parallel.hpp"
#include "mottsim/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace mottsim {

/// Drain sweep and relaxation settings shared by every channel measurement.
struct SweepConfig {
    double v_max = 2.0;       // V
    double v_step = 0.01;     // V
    double r_series = 6.5e3;  // load resistor, ohm
    int k_quiet = 5;
    int max_steps = 10000;
    double jump_factor = 10.0;

    void validate() const {
        if (!(v_step > 0.0)) throw ConfigError("sweep: require v_step > 0");
        if (!(v_max > v_step)) throw ConfigError("sweep: require v_max > v_step");
        if (!(r_series >= 0.0)) throw ConfigError("sweep: require r_series >= 0");
        if (k_quiet < 1) throw ConfigError("sweep: require k_quiet >= 1");
        if (max_steps < k_quiet) throw ConfigError("sweep: require max_steps >= k_quiet");
        if (!(jump_factor > 1.0)) throw ConfigError("sweep: require jump_factor > 1");
    }

    [[nodiscard]] RelaxOptions relax_options() const { return {k_quiet, max_steps, r_series}; }
    [[nodiscard]] std::vector<double> up_waveform() const { return ramp_waveform(v_max, v_step); }
    [[nodiscard]] std::vector<double> loop_waveform() const { return triangle_waveform(v_max, v_step); }
};

struct DeviceConfig {
    int rows = 20;
    int cols = 20;
    ImtParams channel;
    PreisachParams ferroelectric;
    GateStackParams stack;
    SweepConfig sweep;
    double v_write = 20.0;  // saturating program amplitude, V

    void validate() const {
        if (rows < 1 || cols < 1) throw ConfigError("device: grid dimensions must be >= 1");
        channel.validate();
        ferroelectric.validate();
        stack.validate();
        sweep.validate();
        if (!(v_write > 0.0)) throw ConfigError("device: require v_write > 0");
    }
};

class MottFeFet {
public:
    MottFeFet(DeviceConfig cfg, std::uint64_t master_seed)
        : cfg_((cfg.validate(), cfg)),
          master_seed_(master_seed),
          stack_(PreisachState(cfg_.ferroelectric), cfg_.stack),
          grid_(member_grid(0)) {}

    [[nodiscard]] const DeviceConfig& config() const noexcept { return cfg_; }
    [[nodiscard]] std::uint64_t master_seed() const noexcept { return master_seed_; }
    [[nodiscard]] const GateStack& stack() const noexcept { return stack_; }
    [[nodiscard]] GateStack& stack() noexcept { return stack_; }
    [[nodiscard]] const DomainGrid& grid() const noexcept { return grid_; }

    /// Channel of ensemble member `unit`; member 0 is this device's own grid.
    [[nodiscard]] DomainGrid member_grid(std::uint64_t unit) const {
        return build_grid(cfg_.rows, cfg_.cols, cfg_.channel, derive_seed(master_seed_, unit, Stream::grid));
    }

    /// Gate pulse of the given amplitude, returning the stack transient.
    std::vector<StackSample> program(double amplitude) { return mottsim::program(stack_, write_pulse(amplitude)); }

    /// Surface potential with the gate grounded.
    [[nodiscard]] double read_psi() const { return read_surface_potential(stack_); }

private:
    DeviceConfig cfg_;
    std::uint64_t master_seed_;
    GateStack stack_;
    DomainGrid grid_;
};

/// Device with its film driven by `first` then `second` (either may be 0 for none).
[[nodiscard]] inline MottFeFet programmed_copy(const MottFeFet& dev, double first, double second = 0.0) {
    MottFeFet copy = dev;
    if (first != 0.0) copy.program(first);
    if (second != 0.0) copy.program(second);
    return copy;
}

/// Up-down drain sweep of the device channel at its current read potential.
[[nodiscard]] inline IvTrace ids_vds_sweep(const MottFeFet& dev, std::uint64_t seed) {
    DomainGrid grid = dev.grid();
    Rng rng = make_rng(seed, 0, Stream::steps);
    const auto waveform = dev.config().sweep.loop_waveform();
    return sweep_iv(grid, waveform, dev.read_psi(), rng, dev.config().sweep.relax_options());
}

/// Threshold of ensemble member `unit` at surface potential `psi_s`; nullopt if the ramp never fires.
[[nodiscard]] inline std::optional<double> member_threshold(const MottFeFet& dev, std::uint64_t unit, double psi_s) {
    DomainGrid grid = dev.member_grid(unit);
    Rng rng = make_rng(dev.master_seed(), unit, Stream::steps);
    const auto& sweep = dev.config().sweep;
    const auto waveform = sweep.up_waveform();
    return ramp_to_threshold(grid, waveform, psi_s, rng, sweep.relax_options(), sweep.jump_factor);
}

/// Relaxed channel current of ensemble member `unit` with v_read stepped onto an insulating channel.
[[nodiscard]] inline double member_read_current(const MottFeFet& dev, std::uint64_t unit, double psi_s, double v_read) {
    DomainGrid grid = dev.member_grid(unit);
    Rng rng = make_rng(dev.master_seed(), unit, Stream::read);
    const RelaxResult r = relax(grid, v_read, psi_s, rng, dev.config().sweep.relax_options());
    if (!r.converged) throw ConvergenceError("read: relaxation did not settle");
    return r.solution.terminal_current;
}

/// Median with missing samples counted as +infinity.
[[nodiscard]] inline double median_or_inf(std::span<const std::optional<double>> samples) {
    if (samples.empty()) throw std::invalid_argument("median of an empty sample");
    std::vector<double> v;
    v.reserve(samples.size());
    for (const auto& s : samples) v.push_back(s.value_or(std::numeric_limits<double>::infinity()));
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

[[nodiscard]] inline double median(std::span<const double> samples) {
    if (samples.empty()) throw std::invalid_argument("median of an empty sample");
    std::vector<double> v(samples.begin(), samples.end());
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

class InvalidReadPoint : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Characterization {
    double psi_state1 = 0.0;
    double psi_state0 = 0.0;
    double v_t_state1 = 0.0;  // median
    double v_t_state0 = 0.0;  // median
    double delta_v_t = 0.0;
    double v_read = 0.0;
    double i_bit1 = 0.0;  // median, A
    double i_bit0 = 0.0;  // median, A
    double ratio = 0.0;
    bool read_point_valid = false;
    std::vector<std::optional<double>> samples_state1;
    std::vector<std::optional<double>> samples_state0;
    std::vector<double> currents_state1;
    std::vector<double> currents_state0;
};

/// Threshold and read statistics of a device whose two stored states sit at
/// read potentials psi1 and psi0. Both states use the same channel members
/// and step streams, so they differ only through the surface potential.
/// Without v_read the midpoint of the median thresholds is used.
[[nodiscard]] inline Characterization characterize_states(const MottFeFet& dev, double psi1, double psi0,
                                                          std::optional<double> v_read, int n_seeds) {
    if (n_seeds < 1) throw ConfigError("characterize: require n_seeds >= 1");
    const auto n = static_cast<std::size_t>(n_seeds);
    Characterization c;
    c.psi_state1 = psi1;
    c.psi_state0 = psi0;
    const auto pairs = parallel_map(n, [&](std::size_t k) {
        return std::pair{member_threshold(dev, k, psi1), member_threshold(dev, k, psi0)};
    });
    for (const auto& [t1, t0] : pairs) {
        c.samples_state1.push_back(t1);
        c.samples_state0.push_back(t0);
    }
    c.v_t_state1 = median_or_inf(c.samples_state1);
    c.v_t_state0 = median_or_inf(c.samples_state0);
    c.delta_v_t = c.v_t_state0 - c.v_t_state1;
    c.v_read = v_read.value_or(0.5 * (c.v_t_state1 + c.v_t_state0));
    c.read_point_valid = std::isfinite(c.v_read) && c.v_t_state1 < c.v_read && c.v_read < c.v_t_state0;
    if (!std::isfinite(c.v_read) || !(c.v_read > 0.0)) return c;

    const auto reads = parallel_map(n, [&](std::size_t k) {
        return std::pair{member_read_current(dev, k, psi1, c.v_read), member_read_current(dev, k, psi0, c.v_read)};
    });
    for (const auto& [i1, i0] : reads) {
        c.currents_state1.push_back(i1);
        c.currents_state0.push_back(i0);
    }
    c.i_bit1 = median(c.currents_state1);
    c.i_bit0 = median(c.currents_state0);
    c.ratio = c.i_bit0 > 0.0 ? c.i_bit1 / c.i_bit0 : std::numeric_limits<double>::infinity();
    return c;
}

/// Programs state 1 with +v_write, reprograms state 0 with -v_write, and
/// measures both. Throws InvalidReadPoint when v_read falls outside the
/// median threshold window.
[[nodiscard]] inline Characterization characterize(const MottFeFet& dev, std::optional<double> v_read, int n_seeds) {
    const double v_write = dev.config().v_write;
    const double psi1 = programmed_copy(dev, v_write).read_psi();
    const double psi0 = programmed_copy(dev, v_write, -v_write).read_psi();
    Characterization c = characterize_states(dev, psi1, psi0, v_read, n_seeds);
    if (!c.read_point_valid) {
        throw InvalidReadPoint("read voltage invalid: " + std::to_string(c.v_read) + " V is outside (" +
                               std::to_string(c.v_t_state1) + ", " + std::to_string(c.v_t_state0) + ") V");
    }
    return c;
}

struct ProgramPoint {
    double v_prog = 0.0;
    Characterization result;
};

/// Window and read ratio as a function of the program amplitude. Entries
/// whose read point is invalid keep read_point_valid = false.
[[nodiscard]] inline std::vector<ProgramPoint> ratio_vs_program_voltage(const MottFeFet& dev,
                                                                        std::span<const double> v_prog_list,
                                                                        double v_read, int n_seeds) {
    const double floor = minimum_program_voltage(dev.stack());
    std::vector<ProgramPoint> out;
    for (const double v : v_prog_list) {
        if (!(v > floor)) {
            throw ConfigError("ratio sweep: program voltage " + std::to_string(v) + " V is below the minimum " +
                              std::to_string(floor) + " V");
        }
    }
    for (const double v : v_prog_list) {
        const double psi1 = programmed_copy(dev, v).read_psi();
        const double psi0 = programmed_copy(dev, v, -v).read_psi();
        out.push_back({v, characterize_states(dev, psi1, psi0, v_read, n_seeds)});
    }
    return out;
}

struct ThresholdSummary {
    std::vector<std::optional<double>> samples;
    int fired = 0;
    double mean = 0.0;   // over fired sweeps
    double sigma = 0.0;  // sample standard deviation over fired sweeps
    double median = 0.0; // missing counted as +inf
};

[[nodiscard]] inline ThresholdSummary summarize_thresholds(std::vector<std::optional<double>> samples) {
    ThresholdSummary s;
    s.samples = std::move(samples);
    std::vector<double> fired;
    for (const auto& x : s.samples) {
        if (x) fired.push_back(*x);
    }
    s.fired = static_cast<int>(fired.size());
    if (!fired.empty()) {
        double sum = 0.0;
        for (const double x : fired) sum += x;
        s.mean = sum / static_cast<double>(fired.size());
    }
    if (fired.size() >= 2) {
        double ss = 0.0;
        for (const double x : fired) ss += (x - s.mean) * (x - s.mean);
        s.sigma = std::sqrt(ss / static_cast<double>(fired.size() - 1));
    }
    s.median = median_or_inf(s.samples);
    return s;
}

/// IMT thresholds of n_sweeps independent members at the device's current read potential.
[[nodiscard]] inline ThresholdSummary threshold_distribution(const MottFeFet& dev, int n_sweeps) {
    if (n_sweeps < 2) throw ConfigError("threshold distribution: require n_sweeps >= 2");
    const double psi = dev.read_psi();
    return summarize_thresholds(parallel_map(static_cast<std::size_t>(n_sweeps),
                                             [&](std::size_t k) { return member_threshold(dev, k, psi); }));
}

}  // namespace mottsim
