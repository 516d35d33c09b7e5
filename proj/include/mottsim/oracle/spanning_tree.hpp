#pragma once

// Reference electrode-to-electrode resistance of small domain grids, computed
// without any linear solve.
//
// Both electrodes are equipotential, so each is contracted to a single node.
// By Kirchhoff's matrix-tree theorem the effective resistance between the two
// contracted terminals is T(G / {top, bottom}) / T(G), where T sums the
// conductance products of all spanning trees. Trees are enumerated directly,
// which limits this to a couple of dozen edges.

#include "mottsim/mott_network.hpp"

#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace mottsim::oracle {

struct WeightedEdge {
    int u;
    int v;
    double g;
};

class DisjointSets {
public:
    explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)) { std::iota(parent_.begin(), parent_.end(), 0); }
    int find(int x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[b] = a;
        return true;
    }

private:
    std::vector<int> parent_;
};

/// Sum over spanning trees of the product of edge conductances.
[[nodiscard]] inline double spanning_tree_sum(int n_nodes, const std::vector<WeightedEdge>& edges) {
    if (n_nodes <= 1) return 1.0;
    if (edges.size() > 26) throw std::invalid_argument("spanning_tree_sum: too many edges to enumerate");
    const int need = n_nodes - 1;
    double total = 0.0;
    std::vector<std::size_t> chosen;
    // Depth-first over edge subsets in index order, pruning any subset that closes a cycle.
    auto recurse = [&](auto&& self, std::size_t next, const DisjointSets& sets, double weight) -> void {
        if (static_cast<int>(chosen.size()) == need) {
            total += weight;
            return;
        }
        if (edges.size() - next < static_cast<std::size_t>(need) - chosen.size()) return;
        for (std::size_t i = next; i < edges.size(); ++i) {
            DisjointSets branch = sets;
            if (!branch.unite(edges[i].u, edges[i].v)) continue;
            chosen.push_back(i);
            self(self, i + 1, branch, weight * edges[i].g);
            chosen.pop_back();
        }
    };
    recurse(recurse, 0, DisjointSets(n_nodes), 1.0);
    return total;
}

/// Electrode-to-electrode resistance of `grid` in its current phase state.
[[nodiscard]] inline double electrode_resistance(const DomainGrid& grid) {
    // 0 = bottom electrode, 1 = top electrode, interior nodes from 2.
    auto compact = [&](int node) {
        if (grid.is_bottom(node)) return 0;
        if (grid.is_top(node)) return 1;
        return node - grid.cols() + 2;
    };
    const int n = 2 + (grid.rows() - 1) * grid.cols();
    std::vector<WeightedEdge> open;
    std::vector<WeightedEdge> shorted;
    for (std::size_t i = 0; i < grid.edge_count(); ++i) {
        const auto& e = grid.edges()[i];
        const int a = compact(e.node_a);
        const int b = compact(e.node_b);
        const double g = 1.0 / grid.resistance(i);
        open.push_back({a, b, g});
        // In the contracted graph the top electrode is renamed to the bottom one.
        shorted.push_back({a == 1 ? 0 : (a > 1 ? a - 1 : a), b == 1 ? 0 : (b > 1 ? b - 1 : b), g});
    }
    return spanning_tree_sum(n - 1, shorted) / spanning_tree_sum(n, open);
}

}  // namespace mottsim::oracle
