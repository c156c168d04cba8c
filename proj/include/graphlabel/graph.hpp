#pragma once

#include <cstdint>
#include <span>
#include <tuple>
#include <vector>

#include "graphlabel/errors.hpp"
#include "graphlabel/matrix.hpp"

namespace graphlabel {

using NodeId = std::int32_t;
using LabelId = std::int32_t;

inline constexpr LabelId kNoLabel = -1;

struct Edge {
    NodeId src = 0;
    NodeId dst = 0;
    double w = 1.0;
};

// What to do with zero-out-degree nodes when a row-stochastic matrix is built.
enum class DanglingPolicy { Reject, SelfLoop };

// Weighted graph over nodes 0..n-1. Undirected edges are stored once in the
// canonical edge list and expanded into both adjacency directions on build.
class Graph {
public:
    Graph() = default;

    NodeId n() const noexcept { return n_; }
    bool directed() const noexcept { return directed_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    std::span<const NodeId> out_neighbors(NodeId i) const {
        return {out_targets_.data() + out_offsets_[i], out_offsets_[i + 1] - out_offsets_[i]};
    }
    std::span<const double> out_weights(NodeId i) const {
        return {out_weights_.data() + out_offsets_[i], out_offsets_[i + 1] - out_offsets_[i]};
    }
    // For undirected graphs the in-adjacency aliases the out-adjacency.
    std::span<const NodeId> in_neighbors(NodeId i) const {
        return {in_targets_->data() + (*in_offsets_)[i], (*in_offsets_)[i + 1] - (*in_offsets_)[i]};
    }
    std::span<const double> in_weights(NodeId i) const {
        return {in_weights_->data() + (*in_offsets_)[i], (*in_offsets_)[i + 1] - (*in_offsets_)[i]};
    }

    // Total outgoing weight; for undirected graphs this counts each incident
    // edge (including a self-loop) exactly once.
    double degree(NodeId i) const { return out_degree_[i]; }
    double in_degree(NodeId i) const { return directed_ ? in_degree_[i] : out_degree_[i]; }

    // Graph with every edge direction flipped; identity for undirected graphs.
    Graph reversed() const;

private:
    friend Graph build_graph(NodeId n, const std::vector<Edge>& edges, bool directed);

    NodeId n_ = 0;
    bool directed_ = false;
    std::vector<Edge> edges_;

    std::vector<std::size_t> out_offsets_;
    std::vector<NodeId> out_targets_;
    std::vector<double> out_weights_;
    std::vector<double> out_degree_;

    // Directed graphs carry a materialized reverse adjacency; undirected
    // graphs point these at the out arrays.
    const std::vector<std::size_t>* in_offsets_ = nullptr;
    const std::vector<NodeId>* in_targets_ = nullptr;
    const std::vector<double>* in_weights_ = nullptr;
    std::vector<std::size_t> in_offsets_store_;
    std::vector<NodeId> in_targets_store_;
    std::vector<double> in_weights_store_;
    std::vector<double> in_degree_;

    void build_index();
    void rebind_in_pointers();

public:
    Graph(const Graph& other) { *this = other; }
    Graph& operator=(const Graph& other) {
        if (this == &other) return *this;
        n_ = other.n_;
        directed_ = other.directed_;
        edges_ = other.edges_;
        out_offsets_ = other.out_offsets_;
        out_targets_ = other.out_targets_;
        out_weights_ = other.out_weights_;
        out_degree_ = other.out_degree_;
        in_offsets_store_ = other.in_offsets_store_;
        in_targets_store_ = other.in_targets_store_;
        in_weights_store_ = other.in_weights_store_;
        in_degree_ = other.in_degree_;
        rebind_in_pointers();
        return *this;
    }
    Graph(Graph&& other) noexcept { *this = std::move(other); }
    Graph& operator=(Graph&& other) noexcept {
        if (this == &other) return *this;
        n_ = other.n_;
        directed_ = other.directed_;
        edges_ = std::move(other.edges_);
        out_offsets_ = std::move(other.out_offsets_);
        out_targets_ = std::move(other.out_targets_);
        out_weights_ = std::move(other.out_weights_);
        out_degree_ = std::move(other.out_degree_);
        in_offsets_store_ = std::move(other.in_offsets_store_);
        in_targets_store_ = std::move(other.in_targets_store_);
        in_weights_store_ = std::move(other.in_weights_store_);
        in_degree_ = std::move(other.in_degree_);
        rebind_in_pointers();
        return *this;
    }
};

// Per-node label distributions. Rows of labeled nodes are probability
// distributions; all other rows are zero at input time.
class LabelMatrix {
public:
    LabelMatrix() = default;

    // Validates the seed invariants: labeled rows nonzero and summing to 1
    // within kRowSumTol, unlabeled rows identically zero.
    static LabelMatrix validated(Matrix y, std::vector<NodeId> labeled_set);

    // Adopts method output without seed validation; the labeled set is taken
    // to be the set of nonzero rows.
    static LabelMatrix adopt(Matrix y);

    // Convenience: one-hot seed rows from (node, label) pairs.
    static LabelMatrix from_assignments(NodeId n, LabelId m,
                                        const std::vector<std::pair<NodeId, LabelId>>& seeds);

    NodeId n() const noexcept { return static_cast<NodeId>(y_.rows()); }
    LabelId m() const noexcept { return static_cast<LabelId>(y_.cols()); }
    const Matrix& values() const noexcept { return y_; }
    Matrix& values() noexcept { return y_; }

    const std::vector<NodeId>& labeled_set() const noexcept { return labeled_; }
    bool is_labeled(NodeId i) const { return flags_[static_cast<std::size_t>(i)] != 0; }
    std::size_t num_labeled() const noexcept { return labeled_.size(); }

    // Argmax label of row i with ties broken toward the lower label id;
    // kNoLabel for a zero row.
    LabelId hard_label(NodeId i) const;

private:
    Matrix y_;
    std::vector<NodeId> labeled_;   // ascending
    std::vector<char> flags_;
};

enum class MatrixKind { RowStochastic, SymmetricKernel, AbsorbingBlock, Augmented };

// Sparse n x n operator in compressed-row form.
class TransitionMatrix {
public:
    TransitionMatrix() = default;
    TransitionMatrix(NodeId n, MatrixKind kind, std::vector<std::size_t> offsets,
                     std::vector<NodeId> targets, std::vector<double> values);

    NodeId n() const noexcept { return n_; }
    MatrixKind kind() const noexcept { return kind_; }

    std::span<const NodeId> row_targets(NodeId i) const {
        return {targets_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
    }
    std::span<const double> row_values(NodeId i) const {
        return {values_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
    }
    double row_sum(NodeId i) const;

    // out = P * y  (y is n x m).
    void multiply_into(const Matrix& y, Matrix& out) const;
    Matrix multiply(const Matrix& y) const;

    Matrix to_dense() const;

private:
    NodeId n_ = 0;
    MatrixKind kind_ = MatrixKind::RowStochastic;
    std::vector<std::size_t> offsets_;
    std::vector<NodeId> targets_;
    std::vector<double> values_;
};

// Permutation that lists labeled nodes first, preserving relative order
// within the labeled and unlabeled groups.
struct NodeOrdering {
    std::vector<NodeId> to_internal;  // external id -> internal id
    std::vector<NodeId> to_external;  // internal id -> external id
    NodeId num_labeled = 0;
};

Graph build_graph(NodeId n, const std::vector<Edge>& edges, bool directed);

// Row-stochastic T with T[i][j] = w_ij / d_i.
TransitionMatrix transition_matrix(const Graph& g, DanglingPolicy policy = DanglingPolicy::Reject);

// Dense L = D - W, or the symmetric normalization D^-1/2 L D^-1/2.
Matrix laplacian(const Graph& g, bool normalized);

// Symmetric kernel D^-1/2 W D^-1/2; requires symmetric weights.
TransitionMatrix symmetric_normalize(const Graph& g);

// True when every unlabeled node has a positive-weight directed path to some
// labeled node.
bool is_label_connected(const Graph& g, const std::vector<NodeId>& labeled_set);

std::tuple<Graph, LabelMatrix, NodeOrdering> reorder_labeled_first(const Graph& g,
                                                                   const LabelMatrix& y);

// Absorbing-block matrix: labeled rows are unit self-loops, unlabeled rows
// are the rows of transition_matrix(g, policy).
TransitionMatrix absorbing_matrix(const Graph& g, const std::vector<char>& labeled_flags,
                                  DanglingPolicy policy = DanglingPolicy::Reject);

// True when w_ij == w_ji within kAlgebraTol for every ordered pair.
bool is_symmetric(const Graph& g);

}  // namespace graphlabel
