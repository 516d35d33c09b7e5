#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mottsim {

/// Invalid parameters or configuration input.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative solve or a Monte Carlo relaxation did not settle.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by sweeps when the relaxation at one waveform point hits max_steps.
class SweepNonConvergence : public ConvergenceError {
public:
    SweepNonConvergence(std::size_t index, double voltage)
        : ConvergenceError("relaxation did not settle at waveform index " + std::to_string(index) +
                           " (v = " + std::to_string(voltage) + " V)"),
          index_(index), voltage_(voltage) {}

    [[nodiscard]] std::size_t index() const noexcept { return index_; }
    [[nodiscard]] double voltage() const noexcept { return voltage_; }

private:
    std::size_t index_;
    double voltage_;
};

/// The addressed cell did not end up holding the commanded bit.
class WriteFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace mottsim
