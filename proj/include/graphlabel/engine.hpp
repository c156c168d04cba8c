#pragma once

#include <span>
#include <vector>

#include "graphlabel/graph.hpp"

namespace graphlabel {

// One worker's share of the node set. Partitions must be disjoint and cover
// every node.
struct Partition {
    int id = 0;
    std::vector<NodeId> nodes;
};

// A single vote: `weight` of evidence that `target` carries `label`.
struct Message {
    NodeId target = 0;
    LabelId label = 0;
    double weight = 0.0;
};

struct RoundStat {
    int round = 0;
    int changed = 0;           // nodes whose label differs from the last round
    std::size_t messages = 0;  // votes emitted this round
};

std::vector<Partition> make_contiguous_partitions(NodeId n, int workers);

// Emits one Message(j, label(i), p_ij) per labeled node i owned by the
// partition and out-neighbor j of i. Unlabeled nodes emit nothing.
std::vector<Message> map_phase(const Partition& part, const std::vector<LabelId>& labels,
                               const TransitionMatrix& p);

// Weight-summed vote over msgs (all addressed to `target`): argmax with ties
// toward the lower label id; an empty inbox keeps `previous`.
LabelId reduce_phase(NodeId target, std::span<const Message> msgs, LabelId previous);

// Bulk-synchronous vote propagation: every round maps all partitions in
// parallel, collates the messages behind the barrier, and reduces serially.
// The output depends only on (g, y0, rounds, clamp_labeled): batches are
// concatenated in partition order and fully sorted by (target, label, weight)
// before the reduce, so every worker count and every disjoint cover sums
// votes in the same order. Returns one-hot rows; unlabeled nodes stay zero.
LabelMatrix run_rounds_partitioned(const Graph& g, const LabelMatrix& y0,
                                   const std::vector<Partition>& parts, int rounds,
                                   bool clamp_labeled = true,
                                   std::vector<RoundStat>* trace = nullptr,
                                   DanglingPolicy policy = DanglingPolicy::Reject);

// run_rounds_partitioned over `workers` contiguous node ranges.
LabelMatrix run_rounds(const Graph& g, const LabelMatrix& y0, int workers, int rounds,
                       bool clamp_labeled = true, std::vector<RoundStat>* trace = nullptr,
                       DanglingPolicy policy = DanglingPolicy::Reject);

}  // namespace graphlabel
