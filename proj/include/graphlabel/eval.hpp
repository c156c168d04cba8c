#pragma once

#include <cstdint>
#include <utility>

#include "graphlabel/config.hpp"
#include "graphlabel/graph.hpp"

namespace graphlabel {

struct EvalReport {
    double accuracy = 0.0;   // argmax agreement over covered withheld nodes
    double coverage = 0.0;   // fraction of test-time unlabeled nodes with a label
    int iterations_used = 0;
    double wall_time_s = 0.0;
    std::size_t withheld = 0;
    std::size_t uncovered = 0;  // withheld nodes the method left unlabeled
};

// Withholds ceil(fraction * l) seed labels chosen by a seeded shuffle, runs
// the configured method on the rest, and scores argmax agreement on the
// withheld set. Deterministic given the seed.
EvalReport holdout_evaluate(const Graph& g, const LabelMatrix& y, const MethodConfig& cfg,
                            double fraction, std::uint64_t seed);

// Undirected planted-partition graph: node i belongs to block i mod blocks,
// pairs link with probability p_in inside a block and p_out across. The
// returned seeds reveal ceil(labeled_fraction * size) nodes per block,
// labeled with their block id.
std::pair<Graph, LabelMatrix> generate_planted(NodeId n, int blocks, double p_in, double p_out,
                                               double labeled_fraction, std::uint64_t seed);

}  // namespace graphlabel
