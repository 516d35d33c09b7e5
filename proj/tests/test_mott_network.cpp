#include <catch_amalgamated.hpp>

#include "mottsim/mott_network.hpp"
#include "mottsim/oracle/spanning_tree.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>

using namespace mottsim;
using Catch::Approx;

namespace {

DomainGrid random_grid(int rows, int cols, std::uint64_t seed, double metallic_fraction) {
    ImtParams p;
    DomainGrid g = build_grid(rows, cols, p, seed);
    std::mt19937_64 rng(seed ^ 0x5bd1e995u);
    std::bernoulli_distribution metal(metallic_fraction);
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        if (metal(rng)) g.set_phase(i, DomainPhase::metallic);
    }
    return g;
}

// Dense full-node Laplacian with both electrodes pinned, solved by LU.
double dense_terminal_current(const DomainGrid& g, double v) {
    const int n = g.node_count();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        const auto& e = g.edges()[i];
        const double c = 1.0 / g.resistance(i);
        a(e.node_a, e.node_a) += c;
        a(e.node_b, e.node_b) += c;
        a(e.node_a, e.node_b) -= c;
        a(e.node_b, e.node_a) -= c;
    }
    for (int k = 0; k < n; ++k) {
        if (g.is_top(k) || g.is_bottom(k)) {
            a.row(k).setZero();
            a(k, k) = 1.0;
            b[k] = g.is_top(k) ? v : 0.0;
        }
    }
    const Eigen::VectorXd x = a.partialPivLu().solve(b);
    double current = 0.0;
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        const auto& e = g.edges()[i];
        if (g.is_top(e.node_b) && !g.is_top(e.node_a)) current += (x[e.node_b] - x[e.node_a]) / g.resistance(i);
    }
    return current;
}

}  // namespace

TEST_CASE("lattice has one domain per vertical edge and interior horizontal edge", "[network]") {
    const DomainGrid g(20, 20, ImtParams{}, 1);
    CHECK(g.edge_count() == 20u * 20u + 19u * 19u);
    CHECK(g.node_count() == 21 * 20);
    const DomainGrid strip(3, 1, ImtParams{}, 1);
    CHECK(strip.edge_count() == 3u);
}

TEST_CASE("uniform insulating grid conducts like parallel columns", "[network]") {
    ImtParams p;
    p.r_ins_sigma = 0.0;
    const DomainGrid g = build_grid(20, 20, p, 3);
    const NetworkSolution sol = solve_network(g, 1.0);
    CHECK(sol.device_resistance == Approx(p.r_ins_mean).epsilon(1e-10));
    CHECK(sol.terminal_current == Approx(1.0 / p.r_ins_mean).epsilon(1e-10));
}

TEST_CASE("solver matches the spanning-tree oracle on small grids", "[network]") {
    for (auto [rows, cols] : {std::pair{1, 1}, {1, 4}, {2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const DomainGrid g = random_grid(rows, cols, seed, 0.4);
            const double r_ref = oracle::electrode_resistance(g);
            const NetworkSolution sol = solve_network(g, 0.7);
            CHECK(sol.device_resistance == Approx(r_ref).epsilon(1e-9));
            CHECK(sol.terminal_current == Approx(0.7 / r_ref).epsilon(1e-9));
        }
    }
}

TEST_CASE("solver matches a dense full-node solve on a mixed 12 x 12 grid", "[network]") {
    const DomainGrid g = random_grid(12, 12, 21, 0.3);
    const NetworkSolution sol = solve_network(g, 1.3);
    CHECK(sol.terminal_current == Approx(dense_terminal_current(g, 1.3)).epsilon(1e-9));
}

TEST_CASE("KCL holds at round-off with a million-fold conductance contrast", "[network]") {
    for (double fraction : {0.0, 0.2, 0.5, 0.9}) {
        const DomainGrid g = random_grid(20, 20, 5, fraction);
        const NetworkSolution sol = solve_network(g, 1.0);
        CHECK(kcl_residual(g, sol) < 1e-9);
        CHECK(sol.bottom_current == Approx(sol.terminal_current).epsilon(1e-9));
    }
}

TEST_CASE("series resistor divides the source voltage", "[network]") {
    ImtParams p;
    p.r_ins_sigma = 0.0;
    const DomainGrid g = build_grid(4, 4, p, 1);
    const double r_s = 1.1e6;
    const NetworkSolution sol = solve_network(g, 2.0, r_s);
    CHECK(sol.device_voltage == Approx(2.0 * p.r_ins_mean / (p.r_ins_mean + r_s)).epsilon(1e-12));
    CHECK(sol.terminal_current == Approx(2.0 / (p.r_ins_mean + r_s)).epsilon(1e-12));
}

TEST_CASE("solver cache follows phase changes", "[network]") {
    DomainGrid g = random_grid(6, 6, 9, 0.1);
    NetworkSolver solver(g);
    const double before = solver.solve(g, 1.0).terminal_current;
    for (std::size_t i = 0; i < 6; ++i) g.set_phase(i * 6 % g.edge_count(), DomainPhase::metallic);
    const double after = solver.solve(g, 1.0).terminal_current;
    CHECK(after == Approx(solve_network(g, 1.0).terminal_current).epsilon(1e-12));
    CHECK(after >= before);
}

TEST_CASE("sampled insulating resistances respect the truncation floor", "[network]") {
    ImtParams p;
    p.r_ins_sigma = 0.5 * p.r_ins_mean;
    const DomainGrid g = build_grid(20, 20, p, 17);
    double sum = 0.0;
    for (const auto& e : g.edges()) {
        REQUIRE(e.r_ins >= p.r_ins_floor());
        sum += e.r_ins;
    }
    CHECK(sum / static_cast<double>(g.edge_count()) > p.r_ins_mean);
}

TEST_CASE("switching probabilities follow the Arrhenius forms", "[network]") {
    const ImtParams p;
    const double kt = 8.617333262e-5 * 300.0;
    CHECK(p_imt(0.0, 0.0, p) == Approx(std::exp(-1.24 / kt)).epsilon(1e-12));
    CHECK(p_imt(0.03, 0.1, p) == Approx(std::exp(-(1.24 - 0.4 - 0.05) / kt)).epsilon(1e-12));
    CHECK(p_imt(p.gamma * p.e_b, 0.0, p) == 1.0);
    CHECK(p_imt(1.0, 0.0, p) == 1.0);
    CHECK(p_mit(p) == Approx(std::exp(-0.165 / kt)).epsilon(1e-12));
    CHECK(p_imt(0.05, 0.2, p) > p_imt(0.05, 0.0, p));
    CHECK(p_imt(0.06, 0.0, p) > p_imt(0.05, 0.0, p));
}

TEST_CASE("a grid at zero bias relaxes in k_quiet steps", "[network]") {
    DomainGrid g = build_grid(20, 20, ImtParams{}, 2);
    Rng rng = make_rng(2, 0, Stream::steps);
    const RelaxResult r = relax(g, 0.0, 0.0, rng, RelaxOptions{});
    CHECK(r.converged);
    CHECK(r.steps == 5);
    CHECK(r.solution.terminal_current == 0.0);
    CHECK(g.metallic_count() == 0);
}

TEST_CASE("a driven grid forms a filament and its resistance drops", "[network]") {
    DomainGrid g = build_grid(20, 20, ImtParams{}, 4);
    Rng rng = make_rng(4, 0, Stream::steps);
    const RelaxResult r = relax(g, 2.0, 0.0, rng, RelaxOptions{5, 10000, 6.5e3});
    REQUIRE(r.converged);
    const auto path = filament_path(g);
    REQUIRE(path.has_value());
    CHECK(path->size() >= 20u);
    for (std::size_t i : *path) CHECK(g.edge(i).phase == DomainPhase::metallic);
    CHECK(r.solution.device_resistance <= static_cast<double>(path->size()) * g.params().r_met * (1.0 + 1e-9));
}

TEST_CASE("filament search agrees with a hand-built column", "[network]") {
    DomainGrid g(5, 5, ImtParams{}, 1);
    for (int l = 0; l < 4; ++l) g.set_phase(static_cast<std::size_t>(l * 5 + 2), DomainPhase::metallic);
    CHECK_FALSE(filament_path(g).has_value());
    g.set_phase(static_cast<std::size_t>(4 * 5 + 2), DomainPhase::metallic);
    const auto path = filament_path(g);
    REQUIRE(path.has_value());
    CHECK(path->size() == 5u);
    CHECK(solve_network(g, 1.0).device_resistance < 6.0 * g.params().r_met);
}

TEST_CASE("sweep shows an abrupt hysteretic transition", "[network]") {
    DomainGrid g = build_grid(20, 20, ImtParams{}, 6);
    Rng rng = make_rng(6, 0, Stream::steps);
    const auto wave = triangle_waveform(2.0, 0.01);
    const IvTrace trace = sweep_iv(g, wave, 0.0, rng, RelaxOptions{5, 10000, 6.5e3});
    REQUIRE(trace.points.size() == wave.size());
    const Thresholds t = extract_thresholds(trace);
    REQUIRE(t.v_t.has_value());
    REQUIRE(t.v_h.has_value());
    CHECK(*t.v_t >= *t.v_h);
    CHECK(*t.v_t > 1.0);
    CHECK(*t.v_t < 2.0);
}

TEST_CASE("early-stopping ramp finds the same threshold as the full sweep", "[network]") {
    const RelaxOptions opts{5, 10000, 6.5e3};
    for (std::uint64_t seed : {11u, 12u, 13u}) {
        for (double psi : {-0.2, 0.0, 0.25}) {
            DomainGrid a = build_grid(20, 20, ImtParams{}, seed);
            DomainGrid b = a;
            Rng ra = make_rng(seed, 0, Stream::steps);
            Rng rb = make_rng(seed, 0, Stream::steps);
            const auto full = extract_thresholds(sweep_iv(a, triangle_waveform(2.0, 0.01), psi, ra, opts)).v_t;
            const auto early = ramp_to_threshold(b, ramp_waveform(2.0, 0.01), psi, rb, opts);
            CHECK(full == early);
        }
    }
}

TEST_CASE("identically seeded sweeps are identical", "[network]") {
    const RelaxOptions opts{5, 10000, 6.5e3};
    DomainGrid a = build_grid(20, 20, ImtParams{}, 8);
    DomainGrid b = build_grid(20, 20, ImtParams{}, 8);
    Rng ra = make_rng(8, 0, Stream::steps);
    Rng rb = make_rng(8, 0, Stream::steps);
    const auto ta = sweep_iv(a, ramp_waveform(2.0, 0.02), 0.0, ra, opts);
    const auto tb = sweep_iv(b, ramp_waveform(2.0, 0.02), 0.0, rb, opts);
    REQUIRE(ta.points.size() == tb.points.size());
    for (std::size_t k = 0; k < ta.points.size(); ++k) {
        CHECK(ta.points[k].current == tb.points[k].current);
        CHECK(ta.points[k].n_metallic == tb.points[k].n_metallic);
    }
}

TEST_CASE("a cold channel switches deterministically at gamma * e_b per domain", "[network]") {
    ImtParams p;
    p.temperature = 1.0;
    p.r_ins_sigma = 0.0;
    DomainGrid g = build_grid(20, 20, p, 1);
    Rng rng = make_rng(1, 0, Stream::steps);
    const auto v_t = ramp_to_threshold(g, ramp_waveform(2.0, 0.01), 0.0, rng, RelaxOptions{});
    REQUIRE(v_t.has_value());
    CHECK(*v_t == Approx(1.86).margin(1e-9));
}

TEST_CASE("a flickering channel reports the stuck sweep point", "[network]") {
    ImtParams p;
    p.e_c = p.e_b + 1e-6;
    DomainGrid g = build_grid(4, 4, p, 1);
    Rng rng = make_rng(1, 0, Stream::steps);
    const auto wave = ramp_waveform(1.0, 0.5);
    try {
        (void)sweep_iv(g, wave, 0.0, rng, RelaxOptions{5, 50, 0.0});
        FAIL("expected SweepNonConvergence");
    } catch (const SweepNonConvergence& e) {
        CHECK(e.index() == 1u);
        CHECK(e.voltage() == 0.5);
    }
}

TEST_CASE("waveforms are built from integer multiples of the step", "[network]") {
    const auto up = ramp_waveform(0.05, 0.01);
    REQUIRE(up.size() == 6u);
    CHECK(up[3] == 3 * 0.01);
    const auto tri = triangle_waveform(0.03, 0.01);
    REQUIRE(tri.size() == 7u);
    CHECK(tri[3] == 0.03);
    CHECK(tri.back() == 0.0);
    CHECK_THROWS_AS(ramp_waveform(1.0, 0.0), ConfigError);
}

TEST_CASE("invalid channel parameters are rejected", "[network]") {
    ImtParams p;
    p.e_c = p.e_b;
    CHECK_THROWS_AS(DomainGrid(2, 2, p, 1), ConfigError);
    CHECK_THROWS_AS(DomainGrid(0, 2, ImtParams{}, 1), ConfigError);
}
