#pragma once
#include <vector>

#include "conelip/errors.hpp"

namespace conelip {

// Uncapacitated min-cost flow. divergence[v] is the net inflow node v must
// receive (negative = source). Costs must be nonnegative; divergences must
// sum to 0 within 1e-12.
struct FlowNetwork {
    int node_count = 0;
    std::vector<double> divergence;

    struct Arc {
        int tail, head;
        double cost;
    };
    std::vector<Arc> arcs;

    void add_arc(int tail, int head, double cost) { arcs.push_back({tail, head, cost}); }
};

struct FlowResult {
    double cost = 0.0;
    std::vector<double> flow;  // per arc, same order as the input
};

// Successive shortest augmenting paths with node potentials (Dijkstra on
// reduced costs). Deterministic; each augmentation exhausts a source or sink.
FlowResult min_cost_flow(const FlowNetwork& net);

}  // namespace conelip
