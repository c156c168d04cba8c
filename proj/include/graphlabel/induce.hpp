#pragma once

#include <optional>
#include <vector>

#include "graphlabel/graph.hpp"

namespace graphlabel {

enum class Metric { Euclidean, CosineDistance };
enum class KnnMode { Directed, Mutual };

// Feature vectors indexed by node id. All vectors share one dimension.
struct PointSet {
    std::vector<std::vector<double>> points;
    Metric metric = Metric::Euclidean;
};

PointSet make_point_set(std::vector<std::vector<double>> points, Metric metric = Metric::Euclidean);

// Distance between two points under the set's metric. Cosine distance is
// 1 - cos(a,b); a zero vector is treated as orthogonal to everything.
double point_distance(const PointSet& p, NodeId a, NodeId b);

// sigma2 == nullopt selects the automatic bandwidth: the mean squared
// distance of the points to their centroid.
double resolve_sigma2(const PointSet& p, std::optional<double> sigma2);

// Complete undirected graph with w_ij = exp(-d(v_i,v_j)^2 / (2 sigma^2)).
Graph exp_weighted_graph(const PointSet& p, std::optional<double> sigma2);

// Directed mode: every node keeps edges to its k nearest neighbors
// (distance ties broken toward the lower node id), out-degree exactly k.
// Mutual mode: undirected graph keeping a pair only when each node is among
// the other's k nearest. Edge weight is the exponential weight when sigma2
// is supplied, otherwise 1.
Graph knn_graph(const PointSet& p, int k, KnnMode mode,
                std::optional<double> sigma2 = std::nullopt);

// Undirected graph keeping pairs whose exponential weight strictly exceeds
// eps.
Graph epsilon_graph(const PointSet& p, double eps, std::optional<double> sigma2);

}  // namespace graphlabel
