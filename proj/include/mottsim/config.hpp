#pragma once

// Run configuration: an INI file with one section per module plus
// `section.key=value` overrides. Every key has a default; unknown keys are
// rejected.

#include "mottsim/array.hpp"
#include "mottsim/device.hpp"
#include "mottsim/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace mottsim {

enum class Experiment { iv_sweep, characterize, ratio_sweep, threshold_dist, array_demo, array_exhaustive };

[[nodiscard]] constexpr std::string_view to_string(Experiment e) noexcept {
    switch (e) {
        case Experiment::iv_sweep: return "iv_sweep";
        case Experiment::characterize: return "characterize";
        case Experiment::ratio_sweep: return "ratio_sweep";
        case Experiment::threshold_dist: return "threshold_dist";
        case Experiment::array_demo: return "array_demo";
        case Experiment::array_exhaustive: return "array_exhaustive";
    }
    return "?";
}

[[nodiscard]] inline Experiment parse_experiment(std::string_view s) {
    for (const auto e : {Experiment::iv_sweep, Experiment::characterize, Experiment::ratio_sweep,
                         Experiment::threshold_dist, Experiment::array_demo, Experiment::array_exhaustive}) {
        if (s == to_string(e)) return e;
    }
    throw ConfigError("unknown experiment '" + std::string(s) + "'");
}

struct RunConfig {
    Experiment experiment = Experiment::iv_sweep;
    std::uint64_t seed = 1;
    std::string out = "out";
    DeviceConfig device;
    int n_seeds = 25;
    std::optional<double> v_read;  // characterize read point; empty means midpoint of thresholds
    std::vector<double> psi_list{0.0, 0.1, 0.2, 0.3};
    std::vector<double> v_prog_list{8.0, 11.0, 14.0, 20.0};
    ArrayConfig array;

    /// Array with its cells built from the device block.
    [[nodiscard]] ArrayConfig array_config() const {
        ArrayConfig a = array;
        a.cell = device;
        return a;
    }

    void validate() const {
        device.validate();
        array_config().validate();
        if (n_seeds < 2) throw ConfigError("device: require n_seeds >= 2");
        if (psi_list.empty() || v_prog_list.empty()) throw ConfigError("device: psi_list and v_prog_list must be non-empty");
        if (v_read && !(*v_read > 0.0)) throw ConfigError("device: require v_read > 0");
    }
};

namespace detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

inline double parse_double(const std::string& key, std::string_view text) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(v)) {
        throw ConfigError(key + ": expected a number, got '" + t + "'");
    }
    return v;
}

template <class Int>
Int parse_integer(const std::string& key, std::string_view text) {
    const std::string t = trim(text);
    Int v{};
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
        throw ConfigError(key + ": expected an integer, got '" + t + "'");
    }
    return v;
}

inline std::vector<double> parse_list(const std::string& key, std::string_view text) {
    std::vector<double> out;
    std::string item;
    std::istringstream in{std::string(text)};
    while (std::getline(in, item, ',')) out.push_back(parse_double(key, item));
    if (out.empty()) throw ConfigError(key + ": expected a comma-separated list");
    return out;
}

inline std::optional<double> parse_optional(const std::string& key, std::string_view text) {
    if (trim(text) == "auto") return std::nullopt;
    return parse_double(key, text);
}

inline std::string format_number(double v) { return fmt::format("{}", v); }

inline std::string format_list(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_number(v[i]);
    return s;
}

inline std::string format_optional(const std::optional<double>& v) { return v ? format_number(*v) : "auto"; }

}  // namespace detail

struct ConfigKey {
    std::string name;  // section.key
    std::string doc;
    std::function<void(RunConfig&, std::string_view)> set;
    std::function<std::string(const RunConfig&)> get;
};

/// Every recognised key, in echo order.
[[nodiscard]] inline const std::vector<ConfigKey>& config_keys() {
    using namespace detail;
    static const std::vector<ConfigKey> keys = [] {
        std::vector<ConfigKey> k;
        auto real = [&k](std::string name, std::string doc, auto member) {
            k.push_back({name, std::move(doc),
                         [name, member](RunConfig& c, std::string_view v) { member(c) = parse_double(name, v); },
                         [member](const RunConfig& c) { return format_number(member(c)); }});
        };
        auto integer = [&k](std::string name, std::string doc, auto member) {
            k.push_back({name, std::move(doc),
                         [name, member](RunConfig& c, std::string_view v) { member(c) = parse_integer<int>(name, v); },
                         [member](const RunConfig& c) { return std::to_string(member(c)); }});
        };
        auto optional = [&k](std::string name, std::string doc, auto member) {
            k.push_back({name, std::move(doc),
                         [name, member](RunConfig& c, std::string_view v) { member(c) = parse_optional(name, v); },
                         [member](const RunConfig& c) { return format_optional(member(c)); }});
        };
        auto list = [&k](std::string name, std::string doc, auto member) {
            k.push_back({name, std::move(doc),
                         [name, member](RunConfig& c, std::string_view v) { member(c) = parse_list(name, v); },
                         [member](const RunConfig& c) { return format_list(member(c)); }});
        };

        k.push_back({"run.experiment", "iv_sweep | characterize | ratio_sweep | threshold_dist | array_demo | array_exhaustive",
                     [](RunConfig& c, std::string_view v) { c.experiment = parse_experiment(trim(v)); },
                     [](const RunConfig& c) { return std::string(to_string(c.experiment)); }});
        k.push_back({"run.seed", "master seed",
                     [](RunConfig& c, std::string_view v) { c.seed = parse_integer<std::uint64_t>("run.seed", v); },
                     [](const RunConfig& c) { return std::to_string(c.seed); }});
        k.push_back({"run.out", "output directory",
                     [](RunConfig& c, std::string_view v) {
                         c.out = trim(v);
                         if (c.out.empty()) throw ConfigError("run.out: must be non-empty");
                     },
                     [](const RunConfig& c) { return c.out; }});

        integer("network.rows", "domain rows between the electrodes", [](auto& c) -> auto& { return c.device.rows; });
        integer("network.cols", "domain columns", [](auto& c) -> auto& { return c.device.cols; });
        real("network.e_b", "IMT barrier, eV", [](auto& c) -> auto& { return c.device.channel.e_b; });
        real("network.e_c", "MIT reference energy, eV", [](auto& c) -> auto& { return c.device.channel.e_c; });
        real("network.gamma", "voltage-to-energy geometric factor", [](auto& c) -> auto& { return c.device.channel.gamma; });
        real("network.alpha", "surface-potential coupling", [](auto& c) -> auto& { return c.device.channel.alpha; });
        real("network.temperature", "K", [](auto& c) -> auto& { return c.device.channel.temperature; });
        real("network.r_ins_mean", "insulating domain resistance mean, ohm", [](auto& c) -> auto& { return c.device.channel.r_ins_mean; });
        real("network.r_ins_sigma", "insulating domain resistance sigma, ohm", [](auto& c) -> auto& { return c.device.channel.r_ins_sigma; });
        real("network.r_met", "metallic domain resistance, ohm", [](auto& c) -> auto& { return c.device.channel.r_met; });

        real("ferroelectric.p_s", "saturation polarization, uC/cm^2", [](auto& c) -> auto& { return c.device.ferroelectric.p_s; });
        real("ferroelectric.p_r", "remnant polarization, uC/cm^2", [](auto& c) -> auto& { return c.device.ferroelectric.p_r; });
        real("ferroelectric.v_c", "coercive voltage, V", [](auto& c) -> auto& { return c.device.ferroelectric.v_c; });
        real("ferroelectric.t_fe", "thickness, nm", [](auto& c) -> auto& { return c.device.ferroelectric.t_fe; });
        real("ferroelectric.eps_fe", "background permittivity", [](auto& c) -> auto& { return c.device.ferroelectric.eps_fe; });

        real("gate_stack.t_il", "interlayer thickness, nm", [](auto& c) -> auto& { return c.device.stack.t_il; });
        real("gate_stack.eps_il", "interlayer permittivity", [](auto& c) -> auto& { return c.device.stack.eps_il; });
        real("gate_stack.c_ch", "channel capacitance, uF/cm^2", [](auto& c) -> auto& { return c.device.stack.c_ch; });
        real("gate_stack.area", "gate area, um^2", [](auto& c) -> auto& { return c.device.stack.area; });

        real("sweep.v_max", "sweep peak, V", [](auto& c) -> auto& { return c.device.sweep.v_max; });
        real("sweep.v_step", "sweep step, V", [](auto& c) -> auto& { return c.device.sweep.v_step; });
        real("sweep.r_series", "load resistor, ohm", [](auto& c) -> auto& { return c.device.sweep.r_series; });
        integer("sweep.k_quiet", "quiet steps that end a relaxation", [](auto& c) -> auto& { return c.device.sweep.k_quiet; });
        integer("sweep.max_steps", "relaxation step limit", [](auto& c) -> auto& { return c.device.sweep.max_steps; });
        real("sweep.jump_factor", "current ratio that marks a transition", [](auto& c) -> auto& { return c.device.sweep.jump_factor; });

        real("device.v_write", "saturating program amplitude, V", [](auto& c) -> auto& { return c.device.v_write; });
        integer("device.n_seeds", "ensemble size", [](auto& c) -> auto& { return c.n_seeds; });
        optional("device.v_read", "read voltage, V, or auto for the threshold midpoint", [](auto& c) -> auto& { return c.v_read; });
        list("device.psi_list", "surface potentials for the modulation scan, V", [](auto& c) -> auto& { return c.psi_list; });
        list("device.v_prog_list", "program amplitudes for the ratio sweep, V", [](auto& c) -> auto& { return c.v_prog_list; });

        integer("array.rows", "array rows", [](auto& c) -> auto& { return c.array.rows; });
        integer("array.cols", "array columns", [](auto& c) -> auto& { return c.array.cols; });
        real("array.v_dd", "supply, V", [](auto& c) -> auto& { return c.array.v_dd; });
        real("array.v_write", "bit-line program amplitude, V", [](auto& c) -> auto& { return c.array.v_write; });
        real("array.v_read", "word-line read amplitude, V", [](auto& c) -> auto& { return c.array.v_read; });
        optional("array.wlw_active", "selected write word line, V, or auto for v_dd + v_write", [](auto& c) -> auto& { return c.array.wlw_active; });
        optional("array.wlw_inactive", "unselected write word line, V, or auto for -v_write", [](auto& c) -> auto& { return c.array.wlw_inactive; });
        real("array.write_duration", "s", [](auto& c) -> auto& { return c.array.write_duration; });
        real("array.read_duration", "s", [](auto& c) -> auto& { return c.array.read_duration; });

        real("access.v_th", "access transistor threshold, V", [](auto& c) -> auto& { return c.array.access.v_th; });
        real("access.r_on", "on resistance, ohm", [](auto& c) -> auto& { return c.array.access.r_on; });
        real("access.i_leak", "off leakage, A", [](auto& c) -> auto& { return c.array.access.i_leak; });
        real("access.band", "off/on transition width, V", [](auto& c) -> auto& { return c.array.access.band; });

        real("sense_amp.i_ref", "reference current, A", [](auto& c) -> auto& { return c.array.csa.i_ref; });
        real("sense_amp.v_dd", "output high level, V", [](auto& c) -> auto& { return c.array.csa.v_dd; });
        real("sense_amp.hysteresis_band", "fractional dead zone", [](auto& c) -> auto& { return c.array.csa.hysteresis_band; });
        return k;
    }();
    return keys;
}

inline void set_key(RunConfig& cfg, const std::string& name, std::string_view value) {
    for (const auto& k : config_keys()) {
        if (k.name == name) {
            k.set(cfg, value);
            return;
        }
    }
    throw ConfigError("unknown config key '" + name + "'");
}

/// Applies every key of an INI document. Top-level keys outside a section are rejected.
inline void apply_ini(RunConfig& cfg, std::istream& in) {
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::ini_parser::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    for (const auto& [section, body] : tree) {
        if (body.empty()) throw ConfigError("config key '" + section + "' must live in a section");
        for (const auto& [key, value] : body) set_key(cfg, section + "." + key, value.data());
    }
}

[[nodiscard]] inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    RunConfig cfg;
    apply_ini(cfg, in);
    return cfg;
}

/// `section.key=value`, with or without leading dashes.
inline void apply_override(RunConfig& cfg, std::string_view text) {
    while (!text.empty() && text.front() == '-') text.remove_prefix(1);
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ConfigError("override '" + std::string(text) + "' must be key=value");
    set_key(cfg, detail::trim(text.substr(0, eq)), text.substr(eq + 1));
}

/// Fully resolved configuration in INI form; reading it back reproduces every
/// parameter of `cfg`. The output location is not echoed.
inline void write_resolved_config(std::ostream& os, const RunConfig& cfg) {
    std::string section;
    for (const auto& k : config_keys()) {
        if (k.name == "run.out") continue;
        const auto dot = k.name.find('.');
        const std::string s = k.name.substr(0, dot);
        if (s != section) {
            os << (section.empty() ? "" : "\n") << '[' << s << "]\n";
            section = s;
        }
        os << "; " << k.doc << '\n' << k.name.substr(dot + 1) << " = " << k.get(cfg) << '\n';
    }
}

}  // namespace mottsim
