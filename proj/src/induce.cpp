#include "graphlabel/induce.hpp"

#include <algorithm>
#include <cmath>

namespace graphlabel {

namespace {

void require_nonempty(const PointSet& p) {
    if (p.points.empty()) throw InputError(Errc::empty_point_set, "point set is empty");
}

double squared_euclidean(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double cosine_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 1.0;
    return 1.0 - dot / std::sqrt(na * nb);
}

double metric_distance(Metric m, const std::vector<double>& a, const std::vector<double>& b) {
    return m == Metric::Euclidean ? std::sqrt(squared_euclidean(a, b)) : cosine_distance(a, b);
}

double exp_weight(double dist, double sigma2) {
    return std::exp(-(dist * dist) / (2.0 * sigma2));
}

}  // namespace

PointSet make_point_set(std::vector<std::vector<double>> points, Metric metric) {
    for (const auto& v : points)
        if (v.size() != points.front().size())
            throw InputError(Errc::size_mismatch, "points must share one dimension");
    return PointSet{std::move(points), metric};
}

double point_distance(const PointSet& p, NodeId a, NodeId b) {
    return metric_distance(p.metric, p.points[static_cast<std::size_t>(a)],
                           p.points[static_cast<std::size_t>(b)]);
}

double resolve_sigma2(const PointSet& p, std::optional<double> sigma2) {
    require_nonempty(p);
    if (sigma2) {
        if (!(*sigma2 > 0.0))
            throw InputError(Errc::non_positive_sigma, "sigma^2 must be positive");
        return *sigma2;
    }
    const std::size_t n = p.points.size();
    const std::size_t dim = p.points.front().size();
    std::vector<double> centroid(dim, 0.0);
    for (const auto& v : p.points)
        for (std::size_t j = 0; j < dim; ++j) centroid[j] += v[j];
    for (double& c : centroid) c /= static_cast<double>(n);
    double mean_sq = 0.0;
    for (const auto& v : p.points) {
        const double d = metric_distance(p.metric, v, centroid);
        mean_sq += d * d;
    }
    mean_sq /= static_cast<double>(n);
    if (!(mean_sq > 0.0))
        throw InputError(Errc::non_positive_sigma,
                         "automatic sigma^2 is zero; points are coincident");
    return mean_sq;
}

Graph exp_weighted_graph(const PointSet& p, std::optional<double> sigma2) {
    require_nonempty(p);
    const double s2 = resolve_sigma2(p, sigma2);
    const NodeId n = static_cast<NodeId>(p.points.size());
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j)
            edges.push_back({i, j, exp_weight(point_distance(p, i, j), s2)});
    return build_graph(n, edges, false);
}

Graph knn_graph(const PointSet& p, int k, KnnMode mode, std::optional<double> sigma2) {
    require_nonempty(p);
    const NodeId n = static_cast<NodeId>(p.points.size());
    if (k < 1 || k >= n)
        throw InputError(Errc::k_too_large,
                         "k must satisfy 1 <= k < n (k=" + std::to_string(k) +
                             ", n=" + std::to_string(n) + ")");
    const double s2 = sigma2 ? resolve_sigma2(p, sigma2) : 0.0;

    // neighbor_sets[i] holds i's k nearest, ties toward the lower id.
    std::vector<std::vector<NodeId>> neighbor_sets(static_cast<std::size_t>(n));
    std::vector<std::pair<double, NodeId>> cand;
    for (NodeId i = 0; i < n; ++i) {
        cand.clear();
        for (NodeId j = 0; j < n; ++j)
            if (j != i) cand.emplace_back(point_distance(p, i, j), j);
        std::sort(cand.begin(), cand.end());
        auto& set = neighbor_sets[static_cast<std::size_t>(i)];
        for (int r = 0; r < k; ++r) set.push_back(cand[static_cast<std::size_t>(r)].second);
        std::sort(set.begin(), set.end());
    }

    auto weight_for = [&](NodeId i, NodeId j) {
        return sigma2 ? exp_weight(point_distance(p, i, j), s2) : 1.0;
    };

    std::vector<Edge> edges;
    if (mode == KnnMode::Directed) {
        for (NodeId i = 0; i < n; ++i)
            for (NodeId j : neighbor_sets[static_cast<std::size_t>(i)])
                edges.push_back({i, j, weight_for(i, j)});
        return build_graph(n, edges, true);
    }
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j : neighbor_sets[static_cast<std::size_t>(i)]) {
            if (j <= i) continue;  // handle each unordered pair once
            const auto& back = neighbor_sets[static_cast<std::size_t>(j)];
            if (std::binary_search(back.begin(), back.end(), i))
                edges.push_back({i, j, weight_for(i, j)});
        }
    }
    return build_graph(n, edges, false);
}

Graph epsilon_graph(const PointSet& p, double eps, std::optional<double> sigma2) {
    require_nonempty(p);
    const double s2 = resolve_sigma2(p, sigma2);
    const NodeId n = static_cast<NodeId>(p.points.size());
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j) {
            const double w = exp_weight(point_distance(p, i, j), s2);
            if (w > eps) edges.push_back({i, j, w});
        }
    return build_graph(n, edges, false);
}

}  // namespace graphlabel
