#include "conelip/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace conelip {

namespace {

struct Edge {
    int to;
    double cost;
    double flow;     // on forward edges; backward edges mirror via pair index
    bool forward;
    int arc_index;   // original arc for forward edges, -1 otherwise
};

constexpr double kInfD = std::numeric_limits<double>::infinity();

}  // namespace

FlowResult min_cost_flow(const FlowNetwork& net) {
    const int n = net.node_count;
    if (static_cast<int>(net.divergence.size()) != n)
        throw ValidationError("divergence vector does not match node count");
    double total = 0.0, scale = 1.0;
    for (double d : net.divergence) {
        total += d;
        scale = std::max(scale, std::abs(d));
    }
    if (std::abs(total) > 1e-12 * scale)
        throw Unbalanced("divergences sum to " + std::to_string(total) + ", expected 0");
    for (const auto& a : net.arcs) {
        if (a.tail < 0 || a.tail >= n || a.head < 0 || a.head >= n)
            throw ValidationError("arc endpoint out of range");
        if (a.cost < 0.0) throw ValidationError("arc costs must be nonnegative");
    }

    std::vector<Edge> edges;
    std::vector<std::vector<int>> adj(n);
    edges.reserve(net.arcs.size() * 2);
    for (std::size_t k = 0; k < net.arcs.size(); ++k) {
        const auto& a = net.arcs[k];
        adj[a.tail].push_back(static_cast<int>(edges.size()));
        edges.push_back({a.head, a.cost, 0.0, true, static_cast<int>(k)});
        adj[a.head].push_back(static_cast<int>(edges.size()));
        edges.push_back({a.tail, -a.cost, 0.0, false, -1});
    }

    // residual[e]: forward edges are uncapacitated, backward capacity = flow
    auto residual_ok = [&](int e) {
        return edges[e].forward || edges[e ^ 1].flow > 0.0;
    };

    std::vector<double> excess(n);  // >0: must ship out (source)
    for (int v = 0; v < n; ++v) excess[v] = -net.divergence[v];

    const double tol = 1e-12 * scale;
    std::vector<double> pot(n, 0.0), dist(n);
    std::vector<int> parent_edge(n);

    for (;;) {
        int source = -1;
        for (int v = 0; v < n; ++v)
            if (excess[v] > tol) {
                source = v;
                break;
            }
        if (source < 0) break;

        // Dijkstra on reduced costs from the source
        std::fill(dist.begin(), dist.end(), kInfD);
        std::fill(parent_edge.begin(), parent_edge.end(), -1);
        dist[source] = 0.0;
        using Item = std::pair<double, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
        pq.push({0.0, source});
        while (!pq.empty()) {
            auto [du, u] = pq.top();
            pq.pop();
            if (du > dist[u]) continue;
            for (int e : adj[u]) {
                if (!residual_ok(e)) continue;
                const double rc = std::max(edges[e].cost + pot[u] - pot[edges[e].to], 0.0);
                const double nd = du + rc;
                if (nd < dist[edges[e].to]) {
                    dist[edges[e].to] = nd;
                    parent_edge[edges[e].to] = e;
                    pq.push({nd, edges[e].to});
                }
            }
        }

        int sink = -1;
        double best = kInfD;
        for (int v = 0; v < n; ++v) {
            if (excess[v] < -tol && dist[v] < best) {
                best = dist[v];
                sink = v;
            }
        }
        if (sink < 0)
            throw NumericalFailure("no augmenting path to any remaining demand node");

        for (int v = 0; v < n; ++v)
            if (dist[v] < kInfD) pot[v] += dist[v];

        double amount = std::min(excess[source], -excess[sink]);
        // walk back to find capacity limits on backward edges
        for (int v = sink; v != source;) {
            const int e = parent_edge[v];
            if (!edges[e].forward) amount = std::min(amount, edges[e ^ 1].flow);
            v = edges[e ^ 1].to;
        }
        for (int v = sink; v != source;) {
            const int e = parent_edge[v];
            if (edges[e].forward)
                edges[e].flow += amount;
            else
                edges[e ^ 1].flow -= amount;
            v = edges[e ^ 1].to;
        }
        excess[source] -= amount;
        excess[sink] += amount;
    }

    FlowResult out;
    out.flow.assign(net.arcs.size(), 0.0);
    for (const auto& e : edges) {
        if (!e.forward) continue;
        out.flow[e.arc_index] = e.flow;
        out.cost += e.cost * e.flow;
    }
    return out;
}

}  // namespace conelip
