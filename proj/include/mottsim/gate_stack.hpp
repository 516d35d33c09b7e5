#pragma once

// Ferroelectric / interlayer / channel gate stack.
//
// The three layers are in series and carry the same areal charge:
//   Q = P(v_fe) + c_fe * v_fe = c_il * v_il = c_ch * psi_s
//   v_gate = v_fe + v_il + psi_s
// Units: charge in uC/cm^2, capacitance in uF/cm^2, so Q / C is in volts.

#include "mottsim/constants.hpp"
#include "mottsim/errors.hpp"
#include "mottsim/ferroelectric.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace mottsim {

struct GateStackParams {
    double t_il = 1.0;    // interlayer thickness, nm
    double eps_il = 3.9;  // interlayer relative permittivity
    double c_ch = 3.0;    // effective channel capacitance, uF/cm^2
    double area = 1.0;    // gate area, um^2

    void validate() const {
        if (!(t_il > 0.0)) throw ConfigError("gate_stack: require t_il > 0");
        if (!(eps_il > 0.0)) throw ConfigError("gate_stack: require eps_il > 0");
        if (!(c_ch > 0.0)) throw ConfigError("gate_stack: require c_ch > 0");
        if (!(area > 0.0)) throw ConfigError("gate_stack: require area > 0");
    }
};

/// Parallel-plate areal capacitance in uF/cm^2 for a film of `t_nm` nanometres.
[[nodiscard]] inline double areal_capacitance(double eps_r, double t_nm) {
    return eps_r * constants::vacuum_permittivity / (t_nm * 1e-9) * constants::farad_per_m2_to_uf_per_cm2;
}

class GateStack {
public:
    GateStack(PreisachState fe, GateStackParams params) : fe_(std::move(fe)), params_(params) { params_.validate(); }

    [[nodiscard]] const PreisachState& fe() const noexcept { return fe_; }
    [[nodiscard]] PreisachState& fe() noexcept { return fe_; }
    [[nodiscard]] const GateStackParams& params() const noexcept { return params_; }

    [[nodiscard]] double c_fe() const { return areal_capacitance(fe_.params().eps_fe, fe_.params().t_fe); }
    [[nodiscard]] double c_il() const { return areal_capacitance(params_.eps_il, params_.t_il); }
    [[nodiscard]] double c_ch() const noexcept { return params_.c_ch; }
    /// Interlayer and channel in series.
    [[nodiscard]] double c_series() const { return 1.0 / (1.0 / c_il() + 1.0 / c_ch()); }

private:
    PreisachState fe_;
    GateStackParams params_;
};

struct SurfacePotential {
    double v_gate = 0.0;
    double psi_s = 0.0;
    double v_fe = 0.0;
    double v_il = 0.0;
    double polarization = 0.0;  // switching polarization at v_fe, uC/cm^2
    double charge = 0.0;        // uC/cm^2
};

/// Charge-balance partition of v_gate across the stack. The ferroelectric is
/// only probed (history untouched), so polarization follows the branch its
/// current history implies.
[[nodiscard]] inline SurfacePotential surface_potential(const GateStack& stack, double v_gate) {
    const PreisachState& fe = stack.fe();
    const double c_fe = stack.c_fe();
    const double c_s = stack.c_series();
    const double p_s = fe.params().p_s;
    // Charge residual; strictly increasing in v_fe.
    auto residual = [&](double v_fe) { return fe.probe(v_fe) + c_fe * v_fe - c_s * (v_gate - v_fe); };

    double lo = (-p_s + c_s * v_gate) / (c_fe + c_s) - 1.0;
    double hi = (p_s + c_s * v_gate) / (c_fe + c_s) + 1.0;
    double f_lo = residual(lo);
    double f_hi = residual(hi);
    double v_fe;
    if (f_lo == 0.0) {
        v_fe = lo;
    } else if (f_hi == 0.0) {
        v_fe = hi;
    } else {
        std::uintmax_t iterations = 200;
        const auto [a, b] = boost::math::tools::toms748_solve(residual, lo, hi, f_lo, f_hi,
                                                              boost::math::tools::eps_tolerance<double>(52), iterations);
        if (iterations >= 200) throw ConvergenceError("gate_stack: charge balance did not converge");
        v_fe = std::abs(residual(a)) <= std::abs(residual(b)) ? a : b;
    }
    if (std::abs(residual(v_fe)) > 1e-9) throw ConvergenceError("gate_stack: charge balance residual above 1e-9");

    SurfacePotential sp;
    sp.v_gate = v_gate;
    sp.v_fe = v_fe;
    sp.polarization = fe.probe(v_fe);
    sp.charge = c_s * (v_gate - v_fe);
    sp.psi_s = sp.charge / stack.c_ch();
    sp.v_il = v_gate - v_fe - sp.psi_s;
    return sp;
}

/// One point of a programming transient.
struct StackSample {
    double v_gate = 0.0;
    double psi_s = 0.0;
    double v_fe = 0.0;
    double polarization = 0.0;
};

/// Drives the gate through `pulse` point by point, committing each solved v_fe
/// to the ferroelectric history. The pulse must end at 0 V.
inline std::vector<StackSample> program(GateStack& stack, std::span<const double> pulse) {
    if (pulse.empty() || pulse.back() != 0.0) throw ConfigError("program: pulse must end at 0 V");
    std::vector<StackSample> transient;
    transient.reserve(pulse.size());
    for (const double v_gate : pulse) {
        const SurfacePotential sp = surface_potential(stack, v_gate);
        stack.fe().apply_voltage(sp.v_fe);
        transient.push_back({v_gate, sp.psi_s, sp.v_fe, stack.fe().polarization()});
    }
    return transient;
}

/// Trapezoid 0 -> amplitude -> 0 with `ramp_points` samples per edge and a flat top.
[[nodiscard]] inline std::vector<double> write_pulse(double amplitude, int ramp_points = 10, int hold_points = 5) {
    if (ramp_points < 1 || hold_points < 0) throw ConfigError("write_pulse: need ramp_points >= 1, hold_points >= 0");
    std::vector<double> pulse;
    for (int k = 0; k <= ramp_points; ++k) pulse.push_back(amplitude * k / ramp_points);
    for (int k = 0; k < hold_points; ++k) pulse.push_back(amplitude);
    for (int k = ramp_points - 1; k >= 0; --k) pulse.push_back(amplitude * k / ramp_points);
    return pulse;
}

/// Read-time surface potential: gate grounded.
[[nodiscard]] inline double read_surface_potential(const GateStack& stack) { return surface_potential(stack, 0.0).psi_s; }

/// Smallest gate pulse amplitude that flips a negatively saturated film to a
/// positive read-time surface potential.
[[nodiscard]] inline double minimum_program_voltage(const GateStack& like, int ramp_points = 10, int hold_points = 5) {
    const GateStack base(PreisachState::saturated(like.fe().params(), -1), like.params());
    auto flips = [&](double amplitude) {
        GateStack s = base;
        program(s, write_pulse(amplitude, ramp_points, hold_points));
        return read_surface_potential(s) > 0.0;
    };
    double lo = 0.0;
    double hi = 1.0;
    while (!flips(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e4) throw ConvergenceError("gate_stack: no programming amplitude flips the film");
    }
    for (int i = 0; i < 60 && hi - lo > 1e-6; ++i) {
        const double mid = 0.5 * (lo + hi);
        (flips(mid) ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace mottsim
