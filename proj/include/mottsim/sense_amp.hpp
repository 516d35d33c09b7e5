#pragma once

#include "mottsim/errors.hpp"

#include <optional>
#include <stdexcept>

namespace mottsim {

struct CsaParams {
    double i_ref = 10e-6;          // A
    double v_dd = 1.2;             // output high level, V
    double hysteresis_band = 0.1;  // fractional dead zone around i_ref

    void validate() const {
        if (!(i_ref > 0.0)) throw ConfigError("sense_amp: require i_ref > 0");
        if (!(hysteresis_band >= 0.0 && hysteresis_band < 1.0)) {
            throw ConfigError("sense_amp: require 0 <= hysteresis_band < 1");
        }
    }
};

struct SenseResult {
    int bit = 0;
    double v_out = 0.0;
};

/// Current comparator with a dead band. Inside the band the previous
/// decision is held; a fresh amplifier resolves the band to 0.
class CurrentSenseAmp {
public:
    explicit CurrentSenseAmp(CsaParams params = {}) : params_(params) { params_.validate(); }

    SenseResult sense(double i_sl) {
        if (!(i_sl >= 0.0)) throw std::invalid_argument("sense_amp: SL current must be non-negative");
        int bit;
        if (i_sl > params_.i_ref * (1.0 + params_.hysteresis_band)) {
            bit = 1;
        } else if (i_sl < params_.i_ref * (1.0 - params_.hysteresis_band)) {
            bit = 0;
        } else {
            bit = last_.value_or(0);
        }
        last_ = bit;
        return {bit, bit == 1 ? params_.v_dd : 0.0};
    }

    void reset() noexcept { last_.reset(); }
    [[nodiscard]] const CsaParams& params() const noexcept { return params_; }

private:
    CsaParams params_;
    std::optional<int> last_;
};

/// Stateless decision of a fresh amplifier.
[[nodiscard]] inline SenseResult sense(double i_sl, const CsaParams& params) {
    CurrentSenseAmp amp(params);
    return amp.sense(i_sl);
}

}  // namespace mottsim
