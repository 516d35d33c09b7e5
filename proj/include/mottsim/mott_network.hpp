#pragma once

// Stochastic resistor-network model of a VO2 channel.
//
// The channel is a rows x cols lattice of domains sitting between two
// full-width electrodes. Nodes live on rows + 1 layers; layer 0 is the
// grounded bottom electrode and layer `rows` is the driven top electrode.
// Every vertical lattice edge and every horizontal edge on an interior layer
// is one domain: a two-state resistor that is either insulating (with a
// Gaussian-sampled resistance) or metallic (r_met).

#include "mottsim/constants.hpp"
#include "mottsim/errors.hpp"
#include "mottsim/rng.hpp"

#include <Eigen/Sparse>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

namespace mottsim {

struct ImtParams {
    double e_b = 1.24;            // insulator-metal barrier, eV
    double e_c = 1.405;           // metallic well depth reference, eV
    double gamma = 0.075;         // geometric factor
    double alpha = 0.5;           // gate coupling
    double temperature = 300.0;   // K
    double r_ins_mean = 3.3e6;    // ohm
    double r_ins_sigma = 3.3e5;   // ohm
    double r_met = 5.0;           // ohm

    void validate() const {
        if (!(e_b > 0.0)) throw ConfigError("network: require e_b > 0");
        if (!(e_c > e_b)) throw ConfigError("network: require e_c > e_b");
        if (!(gamma > 0.0)) throw ConfigError("network: require gamma > 0");
        if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("network: require 0 <= alpha <= 1");
        if (!(temperature > 0.0)) throw ConfigError("network: require temperature > 0");
        if (!(r_met > 0.0)) throw ConfigError("network: require r_met > 0");
        if (!(r_met < r_ins_mean)) throw ConfigError("network: require r_met < r_ins_mean");
        if (!(r_ins_sigma >= 0.0)) throw ConfigError("network: require r_ins_sigma >= 0");
    }

    [[nodiscard]] double kt() const { return constants::boltzmann_ev * temperature; }

    /// Lower truncation bound applied to sampled insulating resistances.
    [[nodiscard]] double r_ins_floor() const { return std::max(10.0 * r_met, r_ins_mean - 4.0 * r_ins_sigma); }
};

enum class DomainPhase : std::uint8_t { insulating, metallic };
enum class EdgeOrientation : std::uint8_t { vertical, horizontal };

struct DomainEdge {
    int row = 0;
    int col = 0;
    EdgeOrientation orientation = EdgeOrientation::vertical;
    int node_a = 0;  // lower / left node
    int node_b = 0;  // upper / right node
    double r_ins = 0.0;
    DomainPhase phase = DomainPhase::insulating;
};

class DomainGrid {
public:
    DomainGrid(int rows, int cols, ImtParams params, std::uint64_t seed)
        : rows_(rows), cols_(cols), params_(params), seed_(seed) {
        if (rows < 1 || cols < 1) throw ConfigError("network: grid dimensions must be >= 1");
        params_.validate();
        for (int l = 0; l < rows_; ++l) {
            for (int c = 0; c < cols_; ++c) {
                edges_.push_back({l, c, EdgeOrientation::vertical, node_id(l, c), node_id(l + 1, c),
                                  params_.r_ins_mean, DomainPhase::insulating});
            }
        }
        for (int l = 1; l < rows_; ++l) {
            for (int c = 0; c + 1 < cols_; ++c) {
                edges_.push_back({l, c, EdgeOrientation::horizontal, node_id(l, c), node_id(l, c + 1),
                                  params_.r_ins_mean, DomainPhase::insulating});
            }
        }
    }

    [[nodiscard]] int rows() const noexcept { return rows_; }
    [[nodiscard]] int cols() const noexcept { return cols_; }
    [[nodiscard]] const ImtParams& params() const noexcept { return params_; }
    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] std::span<const DomainEdge> edges() const noexcept { return edges_; }
    [[nodiscard]] const DomainEdge& edge(std::size_t i) const { return edges_.at(i); }
    [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }

    [[nodiscard]] int node_id(int layer, int col) const noexcept { return layer * cols_ + col; }
    [[nodiscard]] int node_count() const noexcept { return (rows_ + 1) * cols_; }
    [[nodiscard]] int layer_of(int node) const noexcept { return node / cols_; }
    [[nodiscard]] bool is_bottom(int node) const noexcept { return layer_of(node) == 0; }
    [[nodiscard]] bool is_top(int node) const noexcept { return layer_of(node) == rows_; }

    [[nodiscard]] double resistance(std::size_t i) const {
        const auto& e = edges_[i];
        return e.phase == DomainPhase::metallic ? params_.r_met : e.r_ins;
    }

    void set_phase(std::size_t i, DomainPhase phase) {
        auto& e = edges_.at(i);
        if (e.phase != phase) {
            e.phase = phase;
            ++revision_;
        }
    }

    void set_insulating_resistance(std::size_t i, double r) {
        if (!(r > 0.0)) throw ConfigError("network: resistances must be positive");
        edges_.at(i).r_ins = r;
        ++revision_;
    }

    void reset_insulating() {
        for (std::size_t i = 0; i < edges_.size(); ++i) set_phase(i, DomainPhase::insulating);
    }

    [[nodiscard]] int metallic_count() const {
        return static_cast<int>(std::count_if(edges_.begin(), edges_.end(),
                                              [](const DomainEdge& e) { return e.phase == DomainPhase::metallic; }));
    }

    /// Bumped on every change that alters the conductance matrix.
    [[nodiscard]] std::uint64_t revision() const noexcept { return revision_; }

private:
    int rows_;
    int cols_;
    ImtParams params_;
    std::uint64_t seed_;
    std::vector<DomainEdge> edges_;
    std::uint64_t revision_ = 0;
};

/// All-insulating grid with truncated-Gaussian domain resistances.
[[nodiscard]] inline DomainGrid build_grid(int rows, int cols, const ImtParams& params, std::uint64_t seed) {
    DomainGrid grid(rows, cols, params, seed);
    if (params.r_ins_sigma == 0.0) return grid;
    const double floor = params.r_ins_floor();
    if (!(floor > 0.0) || floor >= params.r_ins_mean + 3.0 * params.r_ins_sigma) {
        throw ConfigError("network: truncation floor leaves no admissible insulating resistance");
    }
    Rng rng = make_rng(seed, 0, Stream::grid);
    std::normal_distribution<double> normal(params.r_ins_mean, params.r_ins_sigma);
    for (std::size_t i = 0; i < grid.edge_count(); ++i) {
        double r = normal(rng);
        while (r < floor) r = normal(rng);
        grid.set_insulating_resistance(i, r);
    }
    return grid;
}

struct NetworkSolution {
    std::vector<double> node_potentials;  // layer-major, (rows + 1) * cols
    std::vector<double> edge_drops;       // |dV| per edge, V
    double terminal_current = 0.0;        // into the top electrode, A
    double bottom_current = 0.0;          // out of the bottom electrode, A
    double source_voltage = 0.0;          // V
    double device_voltage = 0.0;          // across the lattice, after any series load
    double device_resistance = 0.0;       // ohm
};

/// Nodal solver for one grid. The sparsity pattern is analysed once and the
/// unit-voltage solution is cached against the grid revision, so re-solving an
/// unchanged network at a new bias only rescales.
class NetworkSolver {
public:
    explicit NetworkSolver(const DomainGrid& grid)
        : rows_(grid.rows()), cols_(grid.cols()), interior_((grid.rows() - 1) * grid.cols()) {}

    [[nodiscard]] NetworkSolution solve(const DomainGrid& grid, double v_source, double r_series = 0.0) {
        if (!std::isfinite(v_source)) throw ConfigError("network: applied voltage must be finite");
        if (!(r_series >= 0.0)) throw ConfigError("network: r_series must be >= 0");
        if (grid.rows() != rows_ || grid.cols() != cols_) throw ConfigError("network: solver/grid shape mismatch");
        refresh(grid);

        const double r_dev = 1.0 / unit_current_;
        const double v_dev = v_source * r_dev / (r_dev + r_series);

        NetworkSolution sol;
        sol.source_voltage = v_source;
        sol.device_voltage = v_dev;
        sol.device_resistance = r_dev;
        sol.node_potentials.resize(unit_potentials_.size());
        for (std::size_t i = 0; i < unit_potentials_.size(); ++i) sol.node_potentials[i] = v_dev * unit_potentials_[i];
        sol.edge_drops.resize(grid.edge_count());
        for (std::size_t i = 0; i < grid.edge_count(); ++i) {
            const auto& e = grid.edges()[i];
            sol.edge_drops[i] = std::abs(sol.node_potentials[e.node_b] - sol.node_potentials[e.node_a]);
        }
        sol.terminal_current = v_dev * unit_current_;
        sol.bottom_current = v_dev * unit_bottom_current_;
        return sol;
    }

private:
    [[nodiscard]] int interior_index(int node) const noexcept { return node - cols_; }

    void refresh(const DomainGrid& grid) {
        if (cached_ && cached_revision_ == grid.revision() && cached_grid_ == &grid) return;

        const int n_nodes = grid.node_count();
        const int top_layer = grid.rows();
        unit_potentials_.assign(static_cast<std::size_t>(n_nodes), 0.0);
        for (int c = 0; c < cols_; ++c) unit_potentials_[static_cast<std::size_t>(grid.node_id(top_layer, c))] = 1.0;

        if (interior_ > 0) {
            std::vector<Eigen::Triplet<double>> triplets;
            triplets.reserve(grid.edge_count() * 4);
            Eigen::VectorXd rhs = Eigen::VectorXd::Zero(interior_);
            auto boundary_value = [&](int node) { return grid.is_top(node) ? 1.0 : 0.0; };
            auto interior = [&](int node) { return !grid.is_top(node) && !grid.is_bottom(node); };
            for (std::size_t i = 0; i < grid.edge_count(); ++i) {
                const auto& e = grid.edges()[i];
                const double g = 1.0 / grid.resistance(i);
                const bool ia = interior(e.node_a);
                const bool ib = interior(e.node_b);
                if (ia) triplets.emplace_back(interior_index(e.node_a), interior_index(e.node_a), g);
                if (ib) triplets.emplace_back(interior_index(e.node_b), interior_index(e.node_b), g);
                if (ia && ib) {
                    triplets.emplace_back(interior_index(e.node_a), interior_index(e.node_b), -g);
                    triplets.emplace_back(interior_index(e.node_b), interior_index(e.node_a), -g);
                } else if (ia) {
                    rhs[interior_index(e.node_a)] += g * boundary_value(e.node_b);
                } else if (ib) {
                    rhs[interior_index(e.node_b)] += g * boundary_value(e.node_a);
                }
            }
            Eigen::SparseMatrix<double> a(interior_, interior_);
            a.setFromTriplets(triplets.begin(), triplets.end());
            if (!analysed_) {
                ldlt_.analyzePattern(a);
                analysed_ = true;
            }
            ldlt_.factorize(a);
            if (ldlt_.info() != Eigen::Success) throw ConvergenceError("network: nodal matrix factorization failed");
            Eigen::VectorXd x = ldlt_.solve(rhs);
            // One step of iterative refinement keeps the KCL residual at round-off
            // even with 1e6 conductance contrast.
            const Eigen::VectorXd residual = rhs - a * x;
            x += ldlt_.solve(residual);
            for (int k = 0; k < interior_; ++k) unit_potentials_[static_cast<std::size_t>(k + cols_)] = x[k];
        }

        double top = 0.0;
        double bottom = 0.0;
        for (std::size_t i = 0; i < grid.edge_count(); ++i) {
            const auto& e = grid.edges()[i];
            if (e.orientation != EdgeOrientation::vertical) continue;
            const double g = 1.0 / grid.resistance(i);
            const double drop = unit_potentials_[static_cast<std::size_t>(e.node_b)] -
                                unit_potentials_[static_cast<std::size_t>(e.node_a)];
            if (e.row == top_layer - 1) top += g * drop;
            if (e.row == 0) bottom += g * drop;
        }
        unit_current_ = top;
        unit_bottom_current_ = bottom;
        cached_ = true;
        cached_revision_ = grid.revision();
        cached_grid_ = &grid;
    }

    int rows_;
    int cols_;
    int interior_;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
    bool analysed_ = false;
    bool cached_ = false;
    std::uint64_t cached_revision_ = 0;
    const DomainGrid* cached_grid_ = nullptr;
    std::vector<double> unit_potentials_;
    double unit_current_ = 0.0;
    double unit_bottom_current_ = 0.0;
};

/// Top rail at v_applied, bottom rail at 0.
[[nodiscard]] inline NetworkSolution solve_network(const DomainGrid& grid, double v_applied, double r_series = 0.0) {
    NetworkSolver solver(grid);
    return solver.solve(grid, v_applied, r_series);
}

/// Largest KCL imbalance over interior nodes, relative to the largest branch current.
[[nodiscard]] inline double kcl_residual(const DomainGrid& grid, const NetworkSolution& sol) {
    std::vector<double> net(static_cast<std::size_t>(grid.node_count()), 0.0);
    double scale = std::abs(sol.terminal_current);
    for (std::size_t i = 0; i < grid.edge_count(); ++i) {
        const auto& e = grid.edges()[i];
        const double current = (sol.node_potentials[e.node_b] - sol.node_potentials[e.node_a]) / grid.resistance(i);
        net[static_cast<std::size_t>(e.node_a)] += current;
        net[static_cast<std::size_t>(e.node_b)] -= current;
        scale = std::max(scale, std::abs(current));
    }
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    for (int n = 0; n < grid.node_count(); ++n) {
        if (grid.is_top(n) || grid.is_bottom(n)) continue;
        worst = std::max(worst, std::abs(net[static_cast<std::size_t>(n)]));
    }
    return worst / scale;
}

/// Per-attempt insulator-to-metal switching probability of one domain.
[[nodiscard]] inline double p_imt(double delta_v, double psi_s, const ImtParams& params) {
    const double exponent = -(params.e_b - delta_v / params.gamma - params.alpha * psi_s) / params.kt();
    if (exponent >= 0.0) return 1.0;
    return std::exp(exponent);
}

/// Per-attempt metal-to-insulator switching probability; bias independent.
[[nodiscard]] inline double p_mit(const ImtParams& params) {
    const double exponent = (params.e_b - params.e_c) / params.kt();
    if (exponent >= 0.0) return 1.0;
    return std::exp(exponent);
}

/// One synchronous Monte Carlo sweep: every domain draws once against the
/// pre-step solution. Returns the number of domains that changed phase.
inline int monte_carlo_step(DomainGrid& grid, const NetworkSolution& sol, double psi_s, Rng& rng) {
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const double pm = p_mit(grid.params());
    std::vector<std::size_t> flips;
    for (std::size_t i = 0; i < grid.edge_count(); ++i) {
        const double u = uniform(rng);
        const auto& e = grid.edges()[i];
        const double p = e.phase == DomainPhase::insulating ? p_imt(sol.edge_drops[i], psi_s, grid.params()) : pm;
        if (u < p) flips.push_back(i);
    }
    for (const std::size_t i : flips) {
        const auto phase = grid.edges()[i].phase;
        grid.set_phase(i, phase == DomainPhase::insulating ? DomainPhase::metallic : DomainPhase::insulating);
    }
    return static_cast<int>(flips.size());
}

struct RelaxOptions {
    int k_quiet = 5;
    int max_steps = 10000;
    double r_series = 0.0;
};

struct RelaxResult {
    NetworkSolution solution;
    int steps = 0;
    bool converged = false;
};

/// Settles the grid at one bias point: alternate solve and Monte Carlo step
/// until k_quiet consecutive steps flip nothing or max_steps is reached.
inline RelaxResult relax(DomainGrid& grid, NetworkSolver& solver, double v_applied, double psi_s, Rng& rng,
                         const RelaxOptions& opts) {
    if (opts.k_quiet < 1) throw ConfigError("relax: k_quiet must be >= 1");
    RelaxResult result;
    result.solution = solver.solve(grid, v_applied, opts.r_series);
    int quiet = 0;
    while (quiet < opts.k_quiet && result.steps < opts.max_steps) {
        const int flips = monte_carlo_step(grid, result.solution, psi_s, rng);
        ++result.steps;
        if (flips == 0) {
            ++quiet;
        } else {
            quiet = 0;
            result.solution = solver.solve(grid, v_applied, opts.r_series);
        }
    }
    result.converged = quiet >= opts.k_quiet;
    return result;
}

inline RelaxResult relax(DomainGrid& grid, double v_applied, double psi_s, Rng& rng, const RelaxOptions& opts) {
    NetworkSolver solver(grid);
    return relax(grid, solver, v_applied, psi_s, rng, opts);
}

/// Electrode-to-electrode chain of metallic domains (edge indices, bottom to
/// top), found by breadth-first search; nullopt when none exists.
[[nodiscard]] inline std::optional<std::vector<std::size_t>> filament_path(const DomainGrid& grid) {
    const auto n = static_cast<std::size_t>(grid.node_count());
    std::vector<std::vector<std::pair<int, std::size_t>>> adjacency(n);
    for (std::size_t i = 0; i < grid.edge_count(); ++i) {
        const auto& e = grid.edges()[i];
        if (e.phase != DomainPhase::metallic) continue;
        adjacency[static_cast<std::size_t>(e.node_a)].emplace_back(e.node_b, i);
        adjacency[static_cast<std::size_t>(e.node_b)].emplace_back(e.node_a, i);
    }
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> via(n, none);
    std::vector<int> parent(n, -1);
    std::vector<char> seen(n, 0);
    std::deque<int> queue;
    for (int c = 0; c < grid.cols(); ++c) {
        const int node = grid.node_id(0, c);
        seen[static_cast<std::size_t>(node)] = 1;
        queue.push_back(node);
    }
    while (!queue.empty()) {
        const int node = queue.front();
        queue.pop_front();
        if (grid.is_top(node)) {
            std::vector<std::size_t> path;
            for (int at = node; parent[static_cast<std::size_t>(at)] != -1; at = parent[static_cast<std::size_t>(at)]) {
                path.push_back(via[static_cast<std::size_t>(at)]);
            }
            std::reverse(path.begin(), path.end());
            return path;
        }
        for (const auto& [next, edge] : adjacency[static_cast<std::size_t>(node)]) {
            if (seen[static_cast<std::size_t>(next)] || grid.is_bottom(next)) continue;
            seen[static_cast<std::size_t>(next)] = 1;
            parent[static_cast<std::size_t>(next)] = node;
            via[static_cast<std::size_t>(next)] = edge;
            queue.push_back(next);
        }
    }
    return std::nullopt;
}

enum class SweepLeg : std::uint8_t { up, down };

[[nodiscard]] constexpr std::string_view to_string(SweepLeg leg) noexcept { return leg == SweepLeg::up ? "up" : "down"; }

struct IvPoint {
    double v_applied = 0.0;
    double current = 0.0;
    int n_metallic = 0;
    SweepLeg leg = SweepLeg::up;
    double device_voltage = 0.0;
    double device_resistance = 0.0;
    bool filament = false;
    int steps = 0;
};

struct IvTrace {
    std::vector<IvPoint> points;
};

/// 0, step, ..., v_max. Points are k * step, so no rounding drift accumulates.
[[nodiscard]] inline std::vector<double> ramp_waveform(double v_max, double v_step) {
    if (!(v_step > 0.0) || !(v_max >= 0.0)) throw ConfigError("waveform: require v_step > 0 and v_max >= 0");
    const auto n = static_cast<long>(std::floor(v_max / v_step + 1e-9));
    std::vector<double> w;
    w.reserve(static_cast<std::size_t>(n + 1));
    for (long k = 0; k <= n; ++k) w.push_back(static_cast<double>(k) * v_step);
    return w;
}

/// 0 -> v_max -> 0.
[[nodiscard]] inline std::vector<double> triangle_waveform(double v_max, double v_step) {
    auto w = ramp_waveform(v_max, v_step);
    const auto up = w.size();
    w.reserve(2 * up - 1);
    for (std::size_t k = up - 1; k-- > 0;) w.push_back(w[k]);
    return w;
}

/// Called after each relaxed waveform point with its index.
using SweepObserver = std::function<void(std::size_t, const DomainGrid&)>;

/// Quasi-static sweep: relax at each waveform point, carrying the domain
/// state forward. Throws SweepNonConvergence naming the offending index.
inline IvTrace sweep_iv(DomainGrid& grid, std::span<const double> waveform, double psi_s, Rng& rng,
                        const RelaxOptions& opts, const SweepObserver& observe = {}) {
    if (waveform.empty()) throw ConfigError("sweep_iv: waveform must be non-empty");
    NetworkSolver solver(grid);
    IvTrace trace;
    trace.points.reserve(waveform.size());
    SweepLeg leg = SweepLeg::up;
    for (std::size_t k = 0; k < waveform.size(); ++k) {
        const double v = waveform[k];
        if (k > 0) {
            if (v > waveform[k - 1]) leg = SweepLeg::up;
            else if (v < waveform[k - 1]) leg = SweepLeg::down;
        }
        const RelaxResult r = relax(grid, solver, v, psi_s, rng, opts);
        if (!r.converged) throw SweepNonConvergence(k, v);
        trace.points.push_back({v, r.solution.terminal_current, grid.metallic_count(), leg, r.solution.device_voltage,
                                r.solution.device_resistance, filament_path(grid).has_value(), r.steps});
        if (observe) observe(k, grid);
    }
    return trace;
}

/// Up-ramp that stops at the first point whose current is >= jump_factor times
/// the previous one. Visits the same relax sequence as sweep_iv over the
/// prefix it covers, so the result equals extract_thresholds(...).v_t of the
/// full sweep driven by an identically seeded engine.
inline std::optional<double> ramp_to_threshold(DomainGrid& grid, std::span<const double> waveform, double psi_s,
                                               Rng& rng, const RelaxOptions& opts, double jump_factor = 10.0) {
    NetworkSolver solver(grid);
    double previous = 0.0;
    for (std::size_t k = 0; k < waveform.size(); ++k) {
        const RelaxResult r = relax(grid, solver, waveform[k], psi_s, rng, opts);
        if (!r.converged) throw SweepNonConvergence(k, waveform[k]);
        const double current = std::abs(r.solution.terminal_current);
        if (k > 0 && waveform[k] > waveform[k - 1] && previous != 0.0 && current != 0.0 &&
            current >= jump_factor * previous) {
            return waveform[k];
        }
        previous = current;
    }
    return std::nullopt;
}

struct Thresholds {
    std::optional<double> v_t;  // IMT threshold on the up leg
    std::optional<double> v_h;  // MIT hold voltage on the down leg
};

/// v_t: first up-leg point whose current is >= jump_factor times the previous
/// point's; v_h: first down-leg point whose current fell by >= jump_factor.
/// Pairs involving a zero current (the 0 V end points) are skipped.
[[nodiscard]] inline Thresholds extract_thresholds(const IvTrace& trace, double jump_factor = 10.0) {
    Thresholds t;
    const auto& pts = trace.points;
    for (std::size_t k = 1; k < pts.size(); ++k) {
        const double prev = std::abs(pts[k - 1].current);
        const double cur = std::abs(pts[k].current);
        if (prev == 0.0 || cur == 0.0) continue;
        if (!t.v_t && pts[k].leg == SweepLeg::up && cur >= jump_factor * prev) t.v_t = pts[k].v_applied;
        if (!t.v_h && pts[k].leg == SweepLeg::down && prev >= jump_factor * cur) t.v_h = pts[k].v_applied;
    }
    return t;
}

inline void write_iv_csv(std::ostream& os, const IvTrace& trace) {
    os << "v_applied,current_A,n_metallic,direction\n";
    for (const auto& p : trace.points) {
        os << fmt::format("{:.6f},{:.9e},{},{}\n", p.v_applied, p.current, p.n_metallic, to_string(p.leg));
    }
}

inline void write_grid_snapshot_csv(std::ostream& os, const DomainGrid& grid) {
    os << "row,col,orientation,state\n";
    for (const auto& e : grid.edges()) {
        os << fmt::format("{},{},{},{}\n", e.row, e.col,
                          e.orientation == EdgeOrientation::vertical ? "vertical" : "horizontal",
                          e.phase == DomainPhase::metallic ? "metallic" : "insulating");
    }
}

}  // namespace mottsim
