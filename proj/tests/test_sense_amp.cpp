#include <catch_amalgamated.hpp>

#include "mottsim/sense_amp.hpp"

#include <limits>
#include <stdexcept>

using namespace mottsim;

TEST_CASE("currents well clear of the reference resolve to rail levels", "[sense_amp]") {
    const CsaParams p;
    CHECK(sense(220e-6, p).bit == 1);
    CHECK(sense(220e-6, p).v_out == 1.2);
    CHECK(sense(450e-9, p).bit == 0);
    CHECK(sense(450e-9, p).v_out == 0.0);
    CHECK(sense(0.0, p).bit == 0);
}

TEST_CASE("decision is monotone in the SL current", "[sense_amp]") {
    const CsaParams p;
    int last = 0;
    for (double i = 0.0; i < 50e-6; i += 0.1e-6) {
        const int bit = sense(i, p).bit;
        CHECK(bit >= last);
        last = bit;
    }
}

TEST_CASE("inside the dead band the previous decision is held", "[sense_amp]") {
    CurrentSenseAmp amp;
    CHECK(amp.sense(10e-6).bit == 0);
    CHECK(amp.sense(12e-6).bit == 1);
    CHECK(amp.sense(10e-6).bit == 1);
    CHECK(amp.sense(9.5e-6).bit == 1);
    CHECK(amp.sense(8e-6).bit == 0);
    CHECK(amp.sense(10.5e-6).bit == 0);
    amp.sense(20e-6);
    amp.reset();
    CHECK(amp.sense(10e-6).bit == 0);
}

TEST_CASE("negative or undefined currents are rejected", "[sense_amp]") {
    CurrentSenseAmp amp;
    CHECK_THROWS_AS(amp.sense(-1e-9), std::invalid_argument);
    CHECK_THROWS_AS(amp.sense(std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
    CsaParams bad;
    bad.i_ref = 0.0;
    CHECK_THROWS_AS(CurrentSenseAmp(bad), ConfigError);
}
