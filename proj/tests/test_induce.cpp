#include <doctest.h>

#include <cmath>

#include "graphlabel/induce.hpp"
#include "helpers.hpp"

using namespace graphlabel;
using test_util::expect_error;

namespace {

double edge_weight(const Graph& g, NodeId a, NodeId b) {
    auto tgts = g.out_neighbors(a);
    auto wts = g.out_weights(a);
    for (std::size_t k = 0; k < tgts.size(); ++k)
        if (tgts[k] == b) return wts[k];
    return 0.0;
}

bool has_edge(const Graph& g, NodeId a, NodeId b) { return edge_weight(g, a, b) > 0.0; }

}  // namespace

TEST_CASE("exp_weighted_graph") {
    SUBCASE("identical points get weight 1") {
        PointSet p = make_point_set({{1.0, 2.0}, {1.0, 2.0}, {5.0, 5.0}});
        Graph g = exp_weighted_graph(p, 2.0);
        CHECK(edge_weight(g, 0, 1) == doctest::Approx(1.0));
    }
    SUBCASE("squared distance 2 sigma^2 gives e^-1") {
        PointSet p = make_point_set({{0.0}, {2.0}});  // squared distance 4
        Graph g = exp_weighted_graph(p, 2.0);
        CHECK(edge_weight(g, 0, 1) == doctest::Approx(std::exp(-1.0)));
    }
    SUBCASE("weights decrease with distance and stay in (0,1]") {
        PointSet p = make_point_set({{0.0}, {1.0}, {3.0}, {7.0}});
        Graph g = exp_weighted_graph(p, 4.0);
        double w01 = edge_weight(g, 0, 1);
        double w02 = edge_weight(g, 0, 2);
        double w03 = edge_weight(g, 0, 3);
        CHECK(w01 > w02);
        CHECK(w02 > w03);
        for (const Edge& e : g.edges()) {
            CHECK(e.w > 0.0);
            CHECK(e.w <= 1.0);
        }
        CHECK(g.edge_count() == 6);  // complete graph on 4 nodes
    }
    SUBCASE("automatic bandwidth is the mean squared distance to the centroid") {
        PointSet p = make_point_set({{0.0}, {2.0}});
        // centroid 1.0, distances 1 and 1 -> sigma^2 = 1
        CHECK(resolve_sigma2(p, std::nullopt) == doctest::Approx(1.0));
        Graph g = exp_weighted_graph(p, std::nullopt);
        CHECK(edge_weight(g, 0, 1) == doctest::Approx(std::exp(-2.0)));
    }
    SUBCASE("errors") {
        expect_error(Errc::empty_point_set, [] { exp_weighted_graph({{}, Metric::Euclidean}, 1.0); });
        PointSet p = make_point_set({{0.0}, {1.0}});
        expect_error(Errc::non_positive_sigma, [&] { exp_weighted_graph(p, 0.0); });
        expect_error(Errc::non_positive_sigma, [&] { exp_weighted_graph(p, -1.0); });
        PointSet same = make_point_set({{3.0}, {3.0}});
        expect_error(Errc::non_positive_sigma, [&] { exp_weighted_graph(same, std::nullopt); });
    }
}

TEST_CASE("knn_graph") {
    PointSet line = make_point_set({{0.0}, {1.0}, {3.0}});

    SUBCASE("directed k=1 on a line") {
        Graph g = knn_graph(line, 1, KnnMode::Directed);
        CHECK(g.directed());
        CHECK(g.edge_count() == 3);
        CHECK(has_edge(g, 0, 1));
        CHECK(has_edge(g, 1, 0));
        CHECK(has_edge(g, 2, 1));
        CHECK(edge_weight(g, 0, 1) == doctest::Approx(1.0));  // unit weights without sigma^2
        for (NodeId i = 0; i < g.n(); ++i) CHECK(g.out_neighbors(i).size() == 1);
    }
    SUBCASE("mutual k=1 keeps only reciprocated pairs") {
        Graph g = knn_graph(line, 1, KnnMode::Mutual);
        CHECK_FALSE(g.directed());
        CHECK(g.edge_count() == 1);
        CHECK(has_edge(g, 0, 1));
        CHECK_FALSE(has_edge(g, 1, 2));
    }
    SUBCASE("mutual weights use the exponential form when sigma^2 is given") {
        Graph g = knn_graph(line, 1, KnnMode::Mutual, 2.0);
        CHECK(edge_weight(g, 0, 1) == doctest::Approx(std::exp(-0.25)));
    }
    SUBCASE("k = n-1 yields the complete graph") {
        Graph g = knn_graph(line, 2, KnnMode::Directed);
        CHECK(g.edge_count() == 6);
        Graph m = knn_graph(line, 2, KnnMode::Mutual);
        CHECK(m.edge_count() == 3);
    }
    SUBCASE("distance ties break toward the lower node id") {
        PointSet tie = make_point_set({{0.0}, {-1.0}, {1.0}});
        Graph g = knn_graph(tie, 1, KnnMode::Directed);
        CHECK(has_edge(g, 0, 1));
        CHECK_FALSE(has_edge(g, 0, 2));
    }
    SUBCASE("mutual edge set is contained in the directed edge set") {
        std::vector<std::vector<double>> pts;
        SplitMix64 rng(7);
        for (int i = 0; i < 20; ++i) pts.push_back({rng.uniform01(), rng.uniform01()});
        PointSet p = make_point_set(std::move(pts));
        Graph d = knn_graph(p, 3, KnnMode::Directed);
        Graph m = knn_graph(p, 3, KnnMode::Mutual);
        for (const Edge& e : m.edges()) {
            CHECK(has_edge(d, e.src, e.dst));
            CHECK(has_edge(d, e.dst, e.src));
        }
        for (NodeId i = 0; i < d.n(); ++i) CHECK(d.out_neighbors(i).size() == 3);
    }
    SUBCASE("k bounds") {
        expect_error(Errc::k_too_large, [&] { knn_graph(line, 3, KnnMode::Directed); });
        expect_error(Errc::k_too_large, [&] { knn_graph(line, 0, KnnMode::Directed); });
    }
}

TEST_CASE("epsilon_graph") {
    SUBCASE("threshold keeps strictly heavier edges") {
        // Collinear points placed so w01 = 0.9 and w12 = 0.5 exactly with
        // sigma^2 = 0.5 (then w = exp(-d^2)); w02 ~ 0.26 falls below 0.4.
        double d01 = std::sqrt(-std::log(0.9));
        double d12 = std::sqrt(-std::log(0.5));
        PointSet p = make_point_set({{0.0}, {d01}, {d01 + d12}});
        Graph g = epsilon_graph(p, 0.4, 0.5);
        CHECK(edge_weight(g, 0, 1) == doctest::Approx(0.9));
        CHECK(edge_weight(g, 1, 2) == doctest::Approx(0.5));
        CHECK_FALSE(has_edge(g, 0, 2));
        CHECK(g.edge_count() == 2);
    }
    SUBCASE("eps = 0 keeps every pair") {
        PointSet p = make_point_set({{0.0}, {1.0}, {2.0}, {4.0}});
        Graph g = epsilon_graph(p, 0.0, 1.0);
        CHECK(g.edge_count() == 6);
    }
    SUBCASE("eps >= 1 produces no edges, identical points included") {
        PointSet p = make_point_set({{0.0}, {0.0}, {1.0}});
        Graph g = epsilon_graph(p, 1.0, 1.0);
        CHECK(g.edge_count() == 0);
    }
    SUBCASE("agrees with filtering the exponential graph") {
        std::vector<std::vector<double>> pts;
        SplitMix64 rng(11);
        for (int i = 0; i < 15; ++i) pts.push_back({rng.uniform01() * 3.0, rng.uniform01()});
        PointSet p = make_point_set(std::move(pts));
        Graph full = exp_weighted_graph(p, 1.0);
        Graph eps = epsilon_graph(p, 0.6, 1.0);
        std::size_t kept = 0;
        for (const Edge& e : full.edges())
            if (e.w > 0.6) {
                ++kept;
                CHECK(edge_weight(eps, e.src, e.dst) == doctest::Approx(e.w));
            }
        CHECK(eps.edge_count() == kept);
    }
}

TEST_CASE("cosine metric") {
    PointSet p = make_point_set({{1.0, 0.0}, {0.0, 1.0}, {2.0, 0.0}}, Metric::CosineDistance);
    CHECK(point_distance(p, 0, 2) == doctest::Approx(0.0));  // parallel vectors
    CHECK(point_distance(p, 0, 1) == doctest::Approx(1.0));  // orthogonal
    Graph g = exp_weighted_graph(p, 0.5);
    CHECK(edge_weight(g, 0, 2) == doctest::Approx(1.0));
    CHECK(edge_weight(g, 0, 1) == doctest::Approx(std::exp(-1.0)));
}
