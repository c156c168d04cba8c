#pragma once

#include <doctest.h>

#include <utility>
#include <vector>

#include "graphlabel/errors.hpp"
#include "graphlabel/graph.hpp"
#include "graphlabel/rng.hpp"

namespace test_util {

using graphlabel::Edge;
using graphlabel::Graph;
using graphlabel::LabelId;
using graphlabel::LabelMatrix;
using graphlabel::NodeId;

template <typename F>
void expect_error(graphlabel::Errc code, F&& f) {
    bool threw = false;
    try {
        std::forward<F>(f)();
    } catch (const graphlabel::Error& e) {
        threw = true;
        CHECK_MESSAGE(e.code() == code, "unexpected error: ", e.what());
    }
    CHECK_MESSAGE(threw, "expected an error but none was thrown");
}

// Connected undirected graph: a random tree plus `extra` random edges.
// Weights are uniform in [0.5, 1.5). Fully deterministic in the seed.
inline Graph random_connected_graph(NodeId n, int extra, std::uint64_t seed) {
    graphlabel::SplitMix64 rng(seed);
    std::vector<Edge> edges;
    for (NodeId v = 1; v < n; ++v) {
        NodeId u = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(v)));
        edges.push_back({u, v, 0.5 + rng.uniform01()});
    }
    int added = 0;
    while (added < extra && n > 2) {
        NodeId a = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(n)));
        NodeId b = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(n)));
        if (a == b) continue;
        bool dup = false;
        for (const Edge& e : edges) {
            if ((e.src == a && e.dst == b) || (e.src == b && e.dst == a)) {
                dup = true;
                break;
            }
        }
        if (dup) continue;
        edges.push_back({a, b, 0.5 + rng.uniform01()});
        ++added;
    }
    return graphlabel::build_graph(n, edges, false);
}

// One-hot seeds on `l` distinct nodes chosen deterministically, cycling
// through `m` labels.
inline LabelMatrix random_seed_labels(NodeId n, LabelId m, NodeId l, std::uint64_t seed) {
    graphlabel::SplitMix64 rng(seed);
    std::vector<NodeId> ids(static_cast<std::size_t>(n));
    for (NodeId i = 0; i < n; ++i) ids[static_cast<std::size_t>(i)] = i;
    graphlabel::deterministic_shuffle(ids, rng);
    std::vector<std::pair<NodeId, LabelId>> seeds;
    for (NodeId k = 0; k < l; ++k)
        seeds.emplace_back(ids[static_cast<std::size_t>(k)], static_cast<LabelId>(k % m));
    return LabelMatrix::from_assignments(n, m, seeds);
}

}  // namespace test_util
