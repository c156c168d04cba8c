#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "graphlabel/ica.hpp"
#include "graphlabel/rng.hpp"
#include "graphlabel/solve.hpp"
#include "graphlabel/walk.hpp"
#include "helpers.hpp"

using namespace graphlabel;
using test_util::expect_error;

namespace {

// A--u1 (w=2), u1--u2 (w=1), u2--B (w=1). Absorption probabilities solve
// a1 = 2/3 + a2/3, a2 = a1/2, giving a1 = 0.8 and a2 = 0.4 toward A.
struct WeightedPath {
    Graph g = build_graph(4, {{0, 1, 2.0}, {1, 2, 1.0}, {2, 3, 1.0}}, false);
    LabelMatrix y = LabelMatrix::from_assignments(4, 2, {{0, 0}, {3, 1}});
};

// Max harmonic defect over unlabeled rows: |(T yhat)_i - yhat_i|.
double harmonic_residual(const Graph& g, const LabelMatrix& seeds, const Matrix& yhat) {
    const TransitionMatrix t = transition_matrix(g);
    const Matrix prop = t.multiply(yhat);
    double r = 0.0;
    for (NodeId i = 0; i < g.n(); ++i) {
        if (seeds.is_labeled(i)) continue;
        for (std::size_t c = 0; c < yhat.cols(); ++c)
            r = std::max(r, std::abs(prop(static_cast<std::size_t>(i), c) -
                                     yhat(static_cast<std::size_t>(i), c)));
    }
    return r;
}

std::vector<NodeId> random_permutation(NodeId n, std::uint64_t seed) {
    std::vector<NodeId> perm(static_cast<std::size_t>(n));
    for (NodeId i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    SplitMix64 rng(seed);
    deterministic_shuffle(perm, rng);
    return perm;
}

Graph permute_graph(const Graph& g, const std::vector<NodeId>& perm) {
    std::vector<Edge> edges;
    for (const Edge& e : g.edges())
        edges.push_back({perm[static_cast<std::size_t>(e.src)],
                         perm[static_cast<std::size_t>(e.dst)], e.w});
    return build_graph(g.n(), edges, g.directed());
}

LabelMatrix permute_labels(const LabelMatrix& y, const std::vector<NodeId>& perm) {
    Matrix out(static_cast<std::size_t>(y.n()), static_cast<std::size_t>(y.m()));
    std::vector<NodeId> labeled;
    for (NodeId i = 0; i < y.n(); ++i) {
        const double* src = y.values().row(static_cast<std::size_t>(i));
        std::copy(src, src + y.values().cols(),
                  out.row(static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])));
        if (y.is_labeled(i)) labeled.push_back(perm[static_cast<std::size_t>(i)]);
    }
    std::sort(labeled.begin(), labeled.end());
    return LabelMatrix::validated(std::move(out), std::move(labeled));
}

double permuted_diff(const Matrix& base, const Matrix& permuted,
                     const std::vector<NodeId>& perm) {
    double d = 0.0;
    for (std::size_t i = 0; i < base.rows(); ++i)
        for (std::size_t c = 0; c < base.cols(); ++c)
            d = std::max(d, std::abs(base(i, c) -
                                     permuted(static_cast<std::size_t>(perm[i]), c)));
    return d;
}

}  // namespace

TEST_CASE("lp_closed_form") {
    SUBCASE("single label class floods the graph") {
        Graph g = build_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}}, false);
        LabelMatrix y = LabelMatrix::from_assignments(3, 1, {{0, 0}});
        auto r = lp_closed_form(g, y);
        for (NodeId i = 0; i < 3; ++i)
            CHECK(r.labels.values()(static_cast<std::size_t>(i), 0) == doctest::Approx(1.0));
    }
    SUBCASE("symmetric path splits the middle node evenly") {
        Graph g = build_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}}, false);
        LabelMatrix y = LabelMatrix::from_assignments(3, 2, {{0, 0}, {2, 1}});
        auto r = lp_closed_form(g, y);
        CHECK(r.labels.values()(1, 0) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(r.labels.values()(1, 1) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(r.hard_labels[1] == 0);  // exact tie resolves to the lower label id
    }
    SUBCASE("weighted path oracle") {
        WeightedPath w;
        auto r = lp_closed_form(w.g, w.y);
        CHECK(r.labels.values()(1, 0) == doctest::Approx(0.8).epsilon(1e-12));
        CHECK(r.labels.values()(1, 1) == doctest::Approx(0.2).epsilon(1e-12));
        CHECK(r.labels.values()(2, 0) == doctest::Approx(0.4).epsilon(1e-12));
        CHECK(r.labels.values()(2, 1) == doctest::Approx(0.6).epsilon(1e-12));

        // Independent simulation estimate of the same absorption probabilities.
        auto mc = lp_monte_carlo(w.g, w.y, 1000000, 7);
        CHECK(max_abs_diff(mc.labels.values(), r.labels.values()) <= 0.005);
    }
    SUBCASE("labeled rows pass through and sums are 1") {
        Graph g = test_util::random_connected_graph(40, 50, 5);
        LabelMatrix y = test_util::random_seed_labels(40, 3, 8, 11);
        auto r = lp_closed_form(g, y);
        for (NodeId i : y.labeled_set())
            for (LabelId c = 0; c < 3; ++c)
                CHECK(r.labels.values()(static_cast<std::size_t>(i), static_cast<std::size_t>(c)) ==
                      y.values()(static_cast<std::size_t>(i), static_cast<std::size_t>(c)));
        for (NodeId i = 0; i < 40; ++i)
            CHECK(r.labels.values().row_sum(static_cast<std::size_t>(i)) ==
                  doctest::Approx(1.0).epsilon(1e-8));
        CHECK(harmonic_residual(g, y, r.labels.values()) <= 1e-8);
    }
    SUBCASE("fully labeled input returns unchanged") {
        Graph g = build_graph(2, {{0, 1, 1.0}}, false);
        LabelMatrix y = LabelMatrix::from_assignments(2, 2, {{0, 0}, {1, 1}});
        auto r = lp_closed_form(g, y);
        CHECK(max_abs_diff(r.labels.values(), y.values()) == 0.0);
    }
    SUBCASE("preconditions") {
        Graph g = build_graph(2, {{0, 1, 1.0}}, true);
        LabelMatrix y = LabelMatrix::from_assignments(2, 2, {{0, 0}});
        expect_error(Errc::not_label_connected, [&] { lp_closed_form(g, y); });
        LabelMatrix none = LabelMatrix::from_assignments(2, 2, {});
        expect_error(Errc::no_labeled_nodes, [&] { lp_closed_form(g, none); });
    }
}

TEST_CASE("lp_iterative") {
    SUBCASE("fully labeled input converges in one iteration") {
        Graph g = build_graph(2, {{0, 1, 1.0}}, false);
        LabelMatrix y = LabelMatrix::from_assignments(2, 2, {{0, 0}, {1, 1}});
        auto r = lp_iterative(g, y);
        CHECK(r.iterations_used == 1);
        CHECK(r.converged);
        CHECK(max_abs_diff(r.labels.values(), y.values()) == 0.0);
    }
    SUBCASE("matches the closed form on random graphs") {
        for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
            Graph g = test_util::random_connected_graph(50, 70, seed);
            LabelMatrix y = test_util::random_seed_labels(50, 3, 10, seed + 100);
            auto closed = lp_closed_form(g, y);
            auto iter = lp_iterative(g, y, 1e-9, 100000);
            CHECK(iter.converged);
            CHECK(max_abs_diff(iter.labels.values(), closed.labels.values()) <= 1e-6);
            CHECK(harmonic_residual(g, y, iter.labels.values()) <= 1e-8);
        }
    }
}

TEST_CASE("lp_second_order") {
    Graph g = test_util::random_connected_graph(30, 35, 9);
    LabelMatrix y = test_util::random_seed_labels(30, 2, 5, 13);
    SUBCASE("beta = 1 reproduces the first-order trace bit for bit") {
        auto first = lp_iterative(g, y, 1e-10, 5000);
        auto second = lp_second_order(g, y, 1.0, 1e-10, 5000);
        CHECK(second.iterations_used == first.iterations_used);
        CHECK(second.residual == first.residual);
        CHECK(max_abs_diff(second.labels.values(), first.labels.values()) == 0.0);
    }
    SUBCASE("beta = 1.5 reaches the same fixed point at least as fast") {
        // Line graphs mix slowly, which is where the acceleration shows.
        std::vector<Edge> edges;
        for (NodeId i = 0; i + 1 < 30; ++i) edges.push_back({i, i + 1, 1.0});
        Graph line = build_graph(30, edges, false);
        LabelMatrix seeds = LabelMatrix::from_assignments(30, 2, {{0, 0}, {29, 1}});
        auto first = lp_iterative(line, seeds, 1e-8, 100000);
        auto fast = lp_second_order(line, seeds, 1.5, 1e-8, 100000);
        REQUIRE(first.converged);
        REQUIRE(fast.converged);
        CHECK(max_abs_diff(fast.labels.values(), first.labels.values()) <= 1e-6);
        CHECK(fast.iterations_used <= first.iterations_used);
    }
}

TEST_CASE("lp_monte_carlo") {
    Graph g = build_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}}, false);
    LabelMatrix y = LabelMatrix::from_assignments(3, 2, {{0, 0}, {2, 1}});
    SUBCASE("estimates the split within the sampling bound") {
        auto r = lp_monte_carlo(g, y, 200000, 3);
        CHECK(std::abs(r.labels.values()(1, 0) - 0.5) <= 0.01);
        CHECK(r.labels.values().row_sum(1) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("deterministic under a fixed master seed") {
        auto a = lp_monte_carlo(g, y, 50000, 17);
        auto b = lp_monte_carlo(g, y, 50000, 17);
        CHECK(max_abs_diff(a.labels.values(), b.labels.values()) == 0.0);
        auto c = lp_monte_carlo(g, y, 50000, 18);
        CHECK(max_abs_diff(a.labels.values(), c.labels.values()) > 0.0);
    }
}

TEST_CASE("tstep_walk") {
    SUBCASE("one step from a pendant neighbor copies the seed") {
        Graph g = build_graph(2, {{0, 1, 1.0}}, false);
        LabelMatrix y = LabelMatrix::from_assignments(2, 1, {{0, 0}});
        auto r = tstep_walk(g, y, 1);
        CHECK(r.labels.values()(1, 0) == doctest::Approx(1.0));
    }
    SUBCASE("t = 1 equals one weighted-vote pass exactly") {
        Graph g = test_util::random_connected_graph(25, 30, 41);
        LabelMatrix y = test_util::random_seed_labels(25, 3, 6, 43);
        auto r = tstep_walk(g, y, 1);
        for (NodeId i = 0; i < 25; ++i) {
            const auto vote = classify_weighted_vote(g, y.values(), i);
            for (LabelId c = 0; c < 3; ++c)
                CHECK(r.labels.values()(static_cast<std::size_t>(i),
                                        static_cast<std::size_t>(c)) ==
                      vote[static_cast<std::size_t>(c)]);
        }
    }
    SUBCASE("mass that lands on no labeled endpoint leaves a zero row") {
        // Path A-u1-u2-u3: exactly-t semantics cover u1 at t=1 but not u2/u3.
        Graph g = build_graph(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}}, false);
        LabelMatrix y = LabelMatrix::from_assignments(4, 1, {{0, 0}});
        auto r1 = tstep_walk(g, y, 1);
        CHECK_FALSE(r1.labels.values().row_is_zero(1));
        CHECK(r1.labels.values().row_is_zero(2));
        CHECK(r1.labels.values().row_is_zero(3));
        CHECK(r1.hard_labels[2] == kNoLabel);
        auto r2 = tstep_walk(g, y, 2);
        CHECK_FALSE(r2.labels.values().row_is_zero(2));
        // Walk parity: every length-2 walk from u1 ends unlabeled.
        CHECK(r2.labels.values().row_is_zero(1));
    }
    SUBCASE("default walk length yields distributions") {
        Graph g = test_util::random_connected_graph(30, 40, 47);
        LabelMatrix y = test_util::random_seed_labels(30, 3, 5, 53);
        auto r = tstep_walk(g, y);
        CHECK(r.iterations_used == kDefaultWalkSteps);
        for (NodeId i = 0; i < 30; ++i) {
            const std::size_t row = static_cast<std::size_t>(i);
            if (r.labels.values().row_is_zero(row)) continue;
            CHECK(r.labels.values().row_sum(row) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("walk length must be positive") {
        Graph g = build_graph(2, {{0, 1, 1.0}}, false);
        LabelMatrix y = LabelMatrix::from_assignments(2, 1, {{0, 0}});
        expect_error(Errc::config_error, [&] { tstep_walk(g, y, 0); });
    }
}

TEST_CASE("rendezvous") {
    SUBCASE("symmetric path splits the middle node evenly") {
        Graph g = build_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}}, false);
        LabelMatrix y = LabelMatrix::from_assignments(3, 2, {{0, 0}, {2, 1}});
        auto r = rendezvous(g, y);
        CHECK(r.labels.values()(1, 0) == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(r.labels.values()(1, 1) == doctest::Approx(0.5).epsilon(1e-9));
    }
    SUBCASE("fully labeled graph reproduces the input") {
        Graph g = build_graph(2, {{0, 1, 1.0}}, false);
        LabelMatrix y = LabelMatrix::from_assignments(2, 2, {{0, 0}, {1, 1}});
        auto r = rendezvous(g, y);
        CHECK(max_abs_diff(r.labels.values(), y.values()) == 0.0);
    }
    SUBCASE("agrees with the closed-form propagation") {
        for (std::uint64_t seed : {19ull, 23ull}) {
            Graph g = test_util::random_connected_graph(30, 40, seed);
            LabelMatrix y = test_util::random_seed_labels(30, 3, 6, seed + 5);
            auto eig = rendezvous(g, y);
            auto closed = lp_closed_form(g, y);
            CHECK(max_abs_diff(eig.labels.values(), closed.labels.values()) <= 1e-5);
        }
    }
    SUBCASE("preconditions") {
        Graph d = build_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}}, true);
        LabelMatrix y = LabelMatrix::from_assignments(3, 2, {{0, 0}});
        expect_error(Errc::asymmetric_input, [&] { rendezvous(d, y); });
        Graph split = build_graph(4, {{0, 1, 1.0}, {2, 3, 1.0}}, false);
        LabelMatrix seeds = LabelMatrix::from_assignments(4, 2, {{0, 0}});
        expect_error(Errc::not_label_connected, [&] { rendezvous(split, seeds); });
    }
}

TEST_CASE("regularize") {
    SUBCASE("two-node closed-form oracle") {
        Graph g = build_graph(2, {{0, 1, 1.0}}, false);
        LabelMatrix y = LabelMatrix::from_assignments(2, 1, {{0, 0}});
        auto r = regularize(g, y, 0.5, KernelKind::RowStochastic, Route::Closed);
        REQUIRE(r.unnormalized.has_value());
        CHECK((*r.unnormalized)(0, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
        CHECK((*r.unnormalized)(1, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
        CHECK(r.labels.values()(0, 0) == doctest::Approx(1.0));
        CHECK(r.labels.values()(1, 0) == doctest::Approx(1.0));
    }
    SUBCASE("alpha near zero returns the seeds before rescaling") {
        Graph g = test_util::random_connected_graph(20, 25, 59);
        LabelMatrix y = test_util::random_seed_labels(20, 3, 5, 61);
        auto r = regularize(g, y, 1e-9, KernelKind::RowStochastic, Route::Closed);
        CHECK(max_abs_diff(*r.unnormalized, y.values()) <= 1e-6);
    }
    SUBCASE("routes agree on both kernels") {
        Graph g = test_util::random_connected_graph(50, 70, 67);
        LabelMatrix y = test_util::random_seed_labels(50, 3, 10, 71);
        for (double alpha : {0.1, 0.9}) {
            for (KernelKind kernel : {KernelKind::RowStochastic, KernelKind::SymmetricKernel}) {
                auto closed = regularize(g, y, alpha, kernel, Route::Closed);
                auto iter = regularize(g, y, alpha, kernel, Route::Iterative, 1e-9, 100000);
                CHECK(iter.converged);
                CHECK(max_abs_diff(closed.labels.values(), iter.labels.values()) <= 1e-6);
            }
        }
    }
    SUBCASE("labeled rows are allowed to move") {
        Graph g = build_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}}, false);
        LabelMatrix y = LabelMatrix::from_assignments(3, 2, {{0, 0}, {2, 1}});
        auto r = regularize(g, y, 0.5, KernelKind::RowStochastic, Route::Closed);
        CHECK(r.labels.values()(0, 1) > 0.0);  // seed row picked up neighbor mass
    }
    SUBCASE("hard labels are decided before rescaling") {
        Graph g = test_util::random_connected_graph(25, 30, 73);
        LabelMatrix y = test_util::random_seed_labels(25, 3, 6, 79);
        auto r = regularize(g, y, 0.7, KernelKind::RowStochastic, Route::Closed);
        const LabelMatrix raw = LabelMatrix::adopt(*r.unnormalized);
        for (NodeId i = 0; i < 25; ++i)
            CHECK(r.hard_labels[static_cast<std::size_t>(i)] == raw.hard_label(i));
    }
    SUBCASE("unreachable component keeps zero rows on both routes") {
        Graph g = build_graph(4, {{0, 1, 1.0}, {2, 3, 1.0}}, false);
        LabelMatrix y = LabelMatrix::from_assignments(4, 2, {{0, 0}});
        for (Route route : {Route::Closed, Route::Iterative}) {
            auto r = regularize(g, y, 0.5, KernelKind::RowStochastic, route);
            CHECK(r.labels.values().row_is_zero(2));
            CHECK(r.labels.values().row_is_zero(3));
        }
    }
    SUBCASE("parameter validation") {
        Graph g = build_graph(2, {{0, 1, 1.0}}, false);
        LabelMatrix y = LabelMatrix::from_assignments(2, 1, {{0, 0}});
        expect_error(Errc::alpha_out_of_range, [&] { regularize(g, y, 0.0); });
        expect_error(Errc::alpha_out_of_range, [&] { regularize(g, y, 1.0); });
        Graph d = build_graph(2, {{0, 1, 1.0}, {1, 0, 0.5}}, true);
        expect_error(Errc::asymmetric_input,
                     [&] { regularize(d, y, 0.5, KernelKind::SymmetricKernel); });
    }
}

TEST_CASE("adsorption") {
    SUBCASE("single-label edge saturates under the defaults") {
        Graph g = build_graph(2, {{0, 1, 1.0}}, false);
        LabelMatrix y = LabelMatrix::from_assignments(2, 1, {{0, 0}});
        auto closed = adsorption(g, y, default_injection(y), Route::Closed);
        CHECK(closed.labels.values()(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(closed.labels.values()(1, 0) == doctest::Approx(1.0).epsilon(1e-12));
        auto iter = adsorption(g, y, default_injection(y), Route::Iterative);
        CHECK(max_abs_diff(closed.labels.values(), iter.labels.values()) <= 1e-7);
    }
    SUBCASE("default output rows are distributions without rescaling") {
        Graph g = test_util::random_connected_graph(30, 40, 83);
        LabelMatrix y = test_util::random_seed_labels(30, 3, 6, 89);
        auto r = adsorption(g, y, default_injection(y), Route::Closed);
        for (NodeId i = 0; i < 30; ++i)
            CHECK(r.labels.values().row_sum(static_cast<std::size_t>(i)) ==
                  doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("uniform retention reduces to the regularized propagation") {
        Graph g = test_util::random_connected_graph(30, 40, 97);
        LabelMatrix y = test_util::random_seed_labels(30, 3, 6, 101);
        const double alpha = 0.4;
        std::vector<double> uniform(30, alpha);
        auto ads = adsorption(g, y, uniform, Route::Closed);
        auto reg = regularize(g, y, alpha, KernelKind::RowStochastic, Route::Closed);
        // Identical up to the row rescaling regularize applies at the end.
        Matrix rescaled = ads.labels.values();
        for (std::size_t i = 0; i < rescaled.rows(); ++i) {
            const double s = rescaled.row_sum(i);
            if (s <= 0.0) continue;
            for (std::size_t c = 0; c < rescaled.cols(); ++c) rescaled(i, c) /= s;
        }
        CHECK(max_abs_diff(rescaled, reg.labels.values()) <= 1e-9);
        CHECK(max_abs_diff(ads.labels.values(), *reg.unnormalized) <= 1e-9);
    }
    SUBCASE("zero retention on seeds reduces to label propagation") {
        Graph g = test_util::random_connected_graph(30, 40, 103);
        LabelMatrix y = test_util::random_seed_labels(30, 3, 6, 107);
        std::vector<double> inj(30, 1.0);
        for (NodeId i : y.labeled_set()) inj[static_cast<std::size_t>(i)] = 0.0;
        auto ads = adsorption(g, y, inj, Route::Closed);
        auto lp = lp_closed_form(g, y);
        CHECK(max_abs_diff(ads.labels.values(), lp.labels.values()) <= 1e-9);
    }
    SUBCASE("routes agree on symmetric graphs") {
        Graph g = test_util::random_connected_graph(40, 55, 109);
        LabelMatrix y = test_util::random_seed_labels(40, 3, 8, 113);
        auto closed = adsorption(g, y, default_injection(y), Route::Closed);
        auto iter = adsorption(g, y, default_injection(y), Route::Iterative, 1e-9, 100000);
        CHECK(iter.converged);
        CHECK(max_abs_diff(closed.labels.values(), iter.labels.values()) <= 1e-6);
    }
    SUBCASE("walks that cannot terminate are rejected on the closed route") {
        Graph g = build_graph(3, {{0, 1, 1.0}, {2, 2, 1.0}}, false);
        LabelMatrix y = LabelMatrix::from_assignments(3, 1, {{0, 0}});
        expect_error(Errc::non_terminating_walk,
                     [&] { adsorption(g, y, default_injection(y), Route::Closed); });
        // The iterative route simply leaves the stranded row at zero.
        auto iter = adsorption(g, y, default_injection(y), Route::Iterative);
        CHECK(iter.labels.values().row_is_zero(2));
    }
    SUBCASE("parameter validation") {
        Graph g = build_graph(2, {{0, 1, 1.0}}, false);
        LabelMatrix y = LabelMatrix::from_assignments(2, 1, {{0, 0}});
        expect_error(Errc::injection_out_of_range,
                     [&] { adsorption(g, y, {0.5, 1.5}, Route::Closed); });
        expect_error(Errc::size_mismatch, [&] { adsorption(g, y, {0.5}, Route::Closed); });
    }
}

TEST_CASE("permutation equivariance") {
    Graph g = test_util::random_connected_graph(20, 25, 127);
    LabelMatrix y = test_util::random_seed_labels(20, 3, 5, 131);
    const auto perm = random_permutation(20, 137);
    Graph pg = permute_graph(g, perm);
    LabelMatrix py = permute_labels(y, perm);

    CHECK(permuted_diff(lp_closed_form(g, y).labels.values(),
                        lp_closed_form(pg, py).labels.values(), perm) <= 1e-9);
    CHECK(permuted_diff(tstep_walk(g, y, 3).labels.values(),
                        tstep_walk(pg, py, 3).labels.values(), perm) <= 1e-9);
    CHECK(permuted_diff(rendezvous(g, y).labels.values(),
                        rendezvous(pg, py).labels.values(), perm) <= 1e-7);
    CHECK(permuted_diff(regularize(g, y, 0.5).labels.values(),
                        regularize(pg, py, 0.5).labels.values(), perm) <= 1e-9);
    CHECK(permuted_diff(adsorption(g, y, default_injection(y)).labels.values(),
                        adsorption(pg, py, default_injection(py)).labels.values(), perm) <= 1e-9);
}

TEST_CASE("run_method dispatch") {
    Graph g = test_util::random_connected_graph(20, 25, 139);
    LabelMatrix y = test_util::random_seed_labels(20, 3, 5, 149);
    MethodConfig cfg;

    cfg.method = Method::Lp;
    cfg.solver = SolverKind::Direct;
    CHECK(max_abs_diff(run_method(g, y, cfg).labels.values(),
                       lp_closed_form(g, y).labels.values()) == 0.0);
    cfg.solver = SolverKind::Iterative;
    CHECK(max_abs_diff(run_method(g, y, cfg).labels.values(),
                       lp_iterative(g, y).labels.values()) == 0.0);
    cfg.solver = SolverKind::SecondOrder;
    CHECK(max_abs_diff(run_method(g, y, cfg).labels.values(),
                       lp_second_order(g, y).labels.values()) == 0.0);
    cfg.solver = SolverKind::MonteCarlo;
    cfg.walks = 2000;
    CHECK(max_abs_diff(run_method(g, y, cfg).labels.values(),
                       lp_monte_carlo(g, y, 2000, cfg.seed).labels.values()) == 0.0);

    cfg.method = Method::Tstep;
    CHECK(max_abs_diff(run_method(g, y, cfg).labels.values(),
                       tstep_walk(g, y).labels.values()) == 0.0);
    cfg.method = Method::Rendezvous;
    CHECK(max_abs_diff(run_method(g, y, cfg).labels.values(),
                       rendezvous(g, y).labels.values()) == 0.0);
    cfg.method = Method::Regularize;
    cfg.solver = SolverKind::Direct;
    CHECK(max_abs_diff(run_method(g, y, cfg).labels.values(),
                       regularize(g, y).labels.values()) == 0.0);
    cfg.method = Method::Adsorption;
    CHECK(max_abs_diff(run_method(g, y, cfg).labels.values(),
                       adsorption(g, y, default_injection(y)).labels.values()) == 0.0);
    cfg.method = Method::IcaVote;
    auto [ica, iters] = ica_run(g, y, {}, kDefaultIcaIterations);
    CHECK(max_abs_diff(run_method(g, y, cfg).labels.values(), ica.values()) == 0.0);

    SUBCASE("config validation") {
        MethodConfig bad;
        bad.t = 0;
        expect_error(Errc::config_error, [&] { run_method(g, y, bad); });
        bad = MethodConfig{};
        bad.tol = 0.0;
        expect_error(Errc::config_error, [&] { run_method(g, y, bad); });
        bad = MethodConfig{};
        bad.max_iter = 0;
        expect_error(Errc::config_error, [&] { run_method(g, y, bad); });
        bad = MethodConfig{};
        bad.walks = 0;
        expect_error(Errc::config_error, [&] { run_method(g, y, bad); });
    }
}
