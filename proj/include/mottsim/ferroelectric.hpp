#pragma once

// Preisach-style polarization model of a ferroelectric film.
//
// The two saturation branches are tanh curves through (+/-v_c, 0) with
// remanence +/-p_r. Minor loops are affine images of the saturation branch
// running in the same direction, pinned to the branch origin (the last
// turning point) and to its target (the previous turning point, or the
// saturation asymptote). Crossing a target wipes out the enclosed pair of
// turning points, which gives return-point memory.
//
// A virgin film starts on the odd curve (P_up + P_down)/2. The first
// turning point reached from the virgin curve targets its own mirror image
// (-v, -p), as for a symmetric demagnetized Preisach staircase.

#include "mottsim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

namespace mottsim {

struct PreisachParams {
    double p_s = 20.0;     // saturation polarization, uC/cm^2
    double p_r = 10.0;     // remnant polarization, uC/cm^2
    double v_c = 1.0;      // coercive voltage across the film, V
    double t_fe = 10.0;    // film thickness, nm
    double eps_fe = 30.0;  // background relative permittivity

    void validate() const {
        if (!(p_r > 0.0 && p_r < p_s)) throw ConfigError("ferroelectric: require 0 < p_r < p_s");
        if (!(v_c > 0.0)) throw ConfigError("ferroelectric: require v_c > 0");
        if (!(t_fe > 0.0)) throw ConfigError("ferroelectric: require t_fe > 0");
        if (!(eps_fe > 0.0)) throw ConfigError("ferroelectric: require eps_fe > 0");
    }

    /// tanh half-width w such that the branches hit +/-p_r at zero volts.
    [[nodiscard]] double branch_width() const { return v_c / std::log((p_s + p_r) / (p_s - p_r)); }
};

enum class SweepDirection { up, down };

/// Polarization on the major loop.
[[nodiscard]] inline double saturation_branch(double v, SweepDirection dir, const PreisachParams& params) {
    const double w = params.branch_width();
    const double offset = dir == SweepDirection::up ? -params.v_c : params.v_c;
    return params.p_s * std::tanh((v + offset) / (2.0 * w));
}

/// Initial polarization curve of an unpoled film.
[[nodiscard]] inline double virgin_branch(double v, const PreisachParams& params) {
    return 0.5 * (saturation_branch(v, SweepDirection::up, params) +
                  saturation_branch(v, SweepDirection::down, params));
}

struct TurningPoint {
    double v;
    double p;
};

class PreisachState {
public:
    explicit PreisachState(PreisachParams params) : params_(params) { params_.validate(); }

    /// Film already driven to saturation with the given sign and returned to 0 V.
    [[nodiscard]] static PreisachState saturated(PreisachParams params, int sign) {
        PreisachState s(params);
        s.virgin_ = false;
        s.dir_ = sign >= 0 ? SweepDirection::down : SweepDirection::up;
        s.v_now_ = 0.0;
        s.p_now_ = saturation_branch(0.0, *s.dir_, s.params_);
        return s;
    }

    void apply_voltage(double v) {
        if (v == v_now_) return;
        const SweepDirection dir = v > v_now_ ? SweepDirection::up : SweepDirection::down;
        if (dir_ && *dir_ != dir) turns_.push_back({v_now_, p_now_});
        dir_ = dir;

        while (const auto target = target_point()) {
            const bool crossed = dir == SweepDirection::up ? v >= target->v : v <= target->v;
            if (!crossed) break;
            // Crossing a stacked target wipes out the pair; crossing the mirror
            // of a lone turning point returns to the virgin curve.
            turns_.pop_back();
            if (!turns_.empty()) turns_.pop_back();
        }

        p_now_ = evaluate(v);
        v_now_ = v;
    }

    /// Polarization the film would reach if `v` were applied now.
    [[nodiscard]] double probe(double v) const {
        PreisachState copy = *this;
        copy.apply_voltage(v);
        return copy.p_now_;
    }

    [[nodiscard]] double polarization() const noexcept { return p_now_; }
    [[nodiscard]] double voltage() const noexcept { return v_now_; }
    [[nodiscard]] const PreisachParams& params() const noexcept { return params_; }
    [[nodiscard]] std::span<const TurningPoint> turning_points() const noexcept { return turns_; }
    [[nodiscard]] bool on_virgin_base() const noexcept { return virgin_; }
    [[nodiscard]] std::optional<SweepDirection> direction() const noexcept { return dir_; }

private:
    // Finite point the current branch is heading for; nullopt means the
    // saturation asymptote.
    [[nodiscard]] std::optional<TurningPoint> target_point() const {
        if (turns_.size() >= 2) return turns_[turns_.size() - 2];
        if (turns_.size() == 1 && virgin_) return TurningPoint{-turns_[0].v, -turns_[0].p};
        return std::nullopt;
    }

    [[nodiscard]] double evaluate(double v) const {
        const SweepDirection dir = *dir_;
        double p;
        if (turns_.empty()) {
            p = virgin_ ? virgin_branch(v, params_) : saturation_branch(v, dir, params_);
        } else {
            const TurningPoint origin = turns_.back();
            const double f_origin = saturation_branch(origin.v, dir, params_);
            const double f_v = saturation_branch(v, dir, params_);
            const auto target = target_point();
            double f_target;
            double p_target;
            if (target) {
                f_target = saturation_branch(target->v, dir, params_);
                p_target = target->p;
            } else {
                p_target = dir == SweepDirection::up ? params_.p_s : -params_.p_s;
                f_target = p_target;
            }
            const double denom = f_target - f_origin;
            if (std::abs(denom) <= 1e-300) {
                p = origin.p;
            } else {
                p = origin.p + (f_v - f_origin) * (p_target - origin.p) / denom;
            }
        }
        return std::clamp(p, -params_.p_s, params_.p_s);
    }

    PreisachParams params_;
    std::vector<TurningPoint> turns_;
    std::optional<SweepDirection> dir_;
    bool virgin_ = true;
    double v_now_ = 0.0;
    double p_now_ = 0.0;
};

/// Polarization at zero applied voltage; the caller's state is untouched.
[[nodiscard]] inline double remnant(const PreisachState& state) { return state.probe(0.0); }

}  // namespace mottsim
