#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "graphlabel/constants.hpp"
#include "graphlabel/graph.hpp"

namespace graphlabel {

enum class ClassifierKind { WeightedVote, NearestNeighbor };

struct LocalClassifierSpec {
    ClassifierKind kind = ClassifierKind::WeightedVote;
    // Keep only the top_k most probable labels per assigned row (0 keeps all).
    int top_k = 0;
    // Accepted for interface completeness; both shipped classifiers are
    // non-parametric, so there is nothing to retrain.
    bool retrain_each_iteration = false;
};

// Per-node feature rows: optional node-attribute block followed by the link
// block (label frequencies of the neighborhood; in-block then out-block for
// directed graphs).
struct FeatureMatrix {
    Matrix values;
    std::size_t node_dim = 0;
    std::size_t link_dim = 0;

    std::size_t dim() const { return node_dim + link_dim; }
};

// Weighted label frequencies over currently labeled neighbors of i, each
// block normalized to sum 1 (zero block when no labeled neighbor). Length m
// for undirected graphs, 2m (in then out) for directed ones.
std::vector<double> link_features(const Graph& g, const Matrix& y, NodeId i);

// Feature rows for the whole graph from the current label state; node
// attribute rows, when given, are prepended to every link block.
FeatureMatrix build_feature_matrix(const Graph& g, const Matrix& y,
                                   const Matrix* node_features = nullptr);

// Weighted vote over labeled neighbors: sum of w_ij * y_j renormalized to a
// distribution; all-zero when i has no labeled neighbor.
std::vector<double> classify_weighted_vote(const Graph& g, const Matrix& y, NodeId i);

// Label row of the labeled node whose feature row is nearest to phi_i in
// euclidean distance; distance ties break toward the lower node id.
std::vector<double> classify_nearest_neighbor(const Graph& g, const LabelMatrix& y,
                                              const FeatureMatrix& phi, NodeId i);

// Iterative classification: synchronous sweeps over the unlabeled nodes until
// no argmax label changes or tau iterations have run. Seed rows never change.
std::pair<LabelMatrix, int> ica_run(const Graph& g, const LabelMatrix& y0,
                                    const LocalClassifierSpec& spec,
                                    int tau = kDefaultIcaIterations);

// One serial hard-label voting round over the rows of p: node j tallies
// p_ij-weighted votes from currently labeled senders i and takes the argmax
// (label-id ties toward the lower id); nodes receiving no votes keep their
// label. Contributions accumulate in (label, weight) order, which pins the
// floating-point result independently of adjacency layout.
std::vector<LabelId> hard_vote_iteration(const TransitionMatrix& p,
                                         const std::vector<LabelId>& labels);

// In-place top-k pruning of one distribution row followed by renormalization;
// value ties keep the lower label id. k <= 0 or k >= m is a no-op.
void prune_top_k(std::vector<double>& row, int k);

}  // namespace graphlabel
