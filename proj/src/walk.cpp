#include "graphlabel/walk.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <tuple>
#include <utility>

#include "graphlabel/ica.hpp"
#include "graphlabel/rng.hpp"
#include "graphlabel/solve.hpp"

namespace graphlabel {

namespace {

std::vector<char> labeled_flags(const LabelMatrix& y) {
    std::vector<char> flags(static_cast<std::size_t>(y.n()), 0);
    for (NodeId i : y.labeled_set()) flags[static_cast<std::size_t>(i)] = 1;
    return flags;
}

void require_seeds(const LabelMatrix& y) {
    if (y.num_labeled() == 0)
        throw InputError(Errc::no_labeled_nodes, "method needs at least one labeled node");
}

void require_label_connected(const Graph& g, const LabelMatrix& y) {
    if (!is_label_connected(g, y.labeled_set()))
        throw NumericError(Errc::not_label_connected,
                           "some node cannot reach any labeled node");
}

WalkResult finish(Matrix y, int iterations, double residual, bool converged) {
    WalkResult r;
    r.labels = LabelMatrix::adopt(std::move(y));
    r.iterations_used = iterations;
    r.residual = residual;
    r.converged = converged;
    r.hard_labels.resize(static_cast<std::size_t>(r.labels.n()));
    for (NodeId i = 0; i < r.labels.n(); ++i)
        r.hard_labels[static_cast<std::size_t>(i)] = r.labels.hard_label(i);
    return r;
}

WalkResult finish(Matrix y, const IterationTrace& trace) {
    return finish(std::move(y), trace.iterations,
                  trace.residuals.empty() ? 0.0 : trace.residuals.back(), trace.converged);
}

// Copies the seed rows of y over the matching rows of `out`.
void clamp_rows(const LabelMatrix& y, Matrix& out) {
    for (NodeId i : y.labeled_set()) {
        const double* src = y.values().row(static_cast<std::size_t>(i));
        std::copy(src, src + y.values().cols(), out.row(static_cast<std::size_t>(i)));
    }
}

}  // namespace

WalkResult lp_closed_form(const Graph& g, const LabelMatrix& y, int dense_threshold,
                          DanglingPolicy policy) {
    require_seeds(y);
    require_label_connected(g, y);
    const NodeId n = g.n();
    const std::size_t m = static_cast<std::size_t>(y.m());

    std::vector<NodeId> unlabeled;
    std::vector<NodeId> upos(static_cast<std::size_t>(n), -1);
    for (NodeId i = 0; i < n; ++i)
        if (!y.is_labeled(i)) {
            upos[static_cast<std::size_t>(i)] = static_cast<NodeId>(unlabeled.size());
            unlabeled.push_back(i);
        }

    Matrix out = y.values();
    if (!unlabeled.empty()) {
        const TransitionMatrix t = transition_matrix(g, policy);
        const std::size_t u = unlabeled.size();
        Matrix a = Matrix::identity(u);
        Matrix b(u, m);
        for (std::size_t r = 0; r < u; ++r) {
            const NodeId i = unlabeled[r];
            auto tgts = t.row_targets(i);
            auto vals = t.row_values(i);
            for (std::size_t k = 0; k < tgts.size(); ++k) {
                const NodeId j = tgts[k];
                const double p = vals[k];
                if (y.is_labeled(j)) {
                    const double* yj = y.values().row(static_cast<std::size_t>(j));
                    for (std::size_t c = 0; c < m; ++c) b(r, c) += p * yj[c];
                } else {
                    a(r, static_cast<std::size_t>(upos[static_cast<std::size_t>(j)])) -= p;
                }
            }
        }
        const Matrix x = linear_solve(std::move(a), b, dense_threshold);
        for (std::size_t r = 0; r < u; ++r) {
            const double* src = x.row(r);
            std::copy(src, src + m, out.row(static_cast<std::size_t>(unlabeled[r])));
        }
    }
    return finish(std::move(out), 0, 0.0, true);
}

WalkResult lp_iterative(const Graph& g, const LabelMatrix& y, double tol, int max_iter,
                        DanglingPolicy policy) {
    require_seeds(y);
    require_label_connected(g, y);
    const TransitionMatrix t = transition_matrix(g, policy);
    auto step = [&](const Matrix& prev, Matrix& next) {
        t.multiply_into(prev, next);
        clamp_rows(y, next);
    };
    auto [out, trace] = fixed_point(step, y.values(), tol, max_iter);
    return finish(std::move(out), trace);
}

WalkResult lp_second_order(const Graph& g, const LabelMatrix& y, double beta, double tol,
                           int max_iter, DanglingPolicy policy) {
    require_seeds(y);
    require_label_connected(g, y);
    const TransitionMatrix t = transition_matrix(g, policy);
    auto [out, trace] = second_order(t, y.values(), beta, tol, max_iter, y.labeled_set());
    return finish(std::move(out), trace);
}

WalkResult lp_monte_carlo(const Graph& g, const LabelMatrix& y, std::uint64_t walks,
                          std::uint64_t master_seed, DanglingPolicy policy) {
    require_seeds(y);
    require_label_connected(g, y);
    const TransitionMatrix t = transition_matrix(g, policy);
    const std::vector<char> flags = labeled_flags(y);
    const std::size_t m = static_cast<std::size_t>(y.m());

    Matrix out = y.values();
    for (NodeId i = 0; i < g.n(); ++i) {
        if (y.is_labeled(i)) continue;
        // One derived seed per start node keeps results independent of the
        // order unlabeled nodes are visited in.
        const std::uint64_t node_seed = stream_rng(master_seed, static_cast<std::uint64_t>(i)).next();
        const WalkSample sample = monte_carlo_absorption(t, flags, i, walks, node_seed);
        const std::vector<double> freq = sample.frequency();
        double* dst = out.row(static_cast<std::size_t>(i));
        for (NodeId j : y.labeled_set()) {
            const double f = freq[static_cast<std::size_t>(j)];
            if (f == 0.0) continue;
            const double* yj = y.values().row(static_cast<std::size_t>(j));
            for (std::size_t c = 0; c < m; ++c) dst[c] += f * yj[c];
        }
    }
    return finish(std::move(out), 0, 0.0, true);
}

WalkResult tstep_walk(const Graph& g, const LabelMatrix& y, int t, DanglingPolicy policy) {
    require_seeds(y);
    if (t < 1) throw InputError(Errc::config_error, "walk length must be at least 1");
    const TransitionMatrix tm = transition_matrix(g, policy);
    const std::size_t n = static_cast<std::size_t>(g.n());
    const std::size_t m = static_cast<std::size_t>(y.m());

    // Label mass plus one extra column tracking the probability of sitting on
    // a labeled endpoint; the walk is not absorbing.
    Matrix z(n, m + 1);
    for (NodeId i : y.labeled_set()) {
        const std::size_t r = static_cast<std::size_t>(i);
        const double* src = y.values().row(r);
        std::copy(src, src + m, z.row(r));
        z(r, m) = 1.0;
    }
    Matrix next(n, m + 1);
    for (int s = 0; s < t; ++s) {
        tm.multiply_into(z, next);
        std::swap(z, next);
    }

    Matrix out(n, m);
    for (std::size_t i = 0; i < n; ++i) {
        const double mass = z(i, m);
        if (mass <= 0.0) continue;  // nothing labeled reached: row stays zero
        for (std::size_t c = 0; c < m; ++c) out(i, c) = z(i, c) / mass;
    }
    return finish(std::move(out), t, 0.0, true);
}

WalkResult rendezvous(const Graph& g, const LabelMatrix& y, int dense_threshold,
                      DanglingPolicy policy) {
    require_seeds(y);
    if (!is_symmetric(g))
        throw InputError(Errc::asymmetric_input, "eigenvector assembly needs symmetric weights");
    require_label_connected(g, y);
    const NodeId n = g.n();
    const std::size_t m = static_cast<std::size_t>(y.m());
    const std::size_t l = y.num_labeled();
    if (static_cast<NodeId>(l) == n) return finish(y.values(), 0, 0.0, true);

    const std::vector<char> flags = labeled_flags(y);
    const TransitionMatrix p = absorbing_matrix(g, flags, policy);
    auto [vecs, vals] = leading_eigenvectors(p.to_dense(), static_cast<int>(l), dense_threshold);
    for (double v : vals)
        if (std::abs(v - 1.0) > kDefaultTol)
            throw NumericError(Errc::eigensolver_failure,
                               "leading eigenvalue " + std::to_string(v) +
                                   " is not 1; absorbing structure violated");

    // Q = S B^-1 with B the labeled-row block of S; column k of Q is the
    // probability of absorbing at the k-th labeled node.
    Matrix b(l, l);
    for (std::size_t r = 0; r < l; ++r) {
        const std::size_t i = static_cast<std::size_t>(y.labeled_set()[r]);
        for (std::size_t c = 0; c < l; ++c) b(r, c) = vecs(i, c);
    }
    Matrix qt;  // l x n, row k = absorption probabilities toward labeled node k
    try {
        qt = linear_solve(b.transposed(), vecs.transposed(), dense_threshold);
    } catch (const NumericError&) {
        throw NumericError(Errc::eigensolver_failure,
                           "labeled block of the eigenvector basis is singular");
    }

    Matrix out(static_cast<std::size_t>(n), m);
    clamp_rows(y, out);  // absorbing rows are exact
    for (NodeId i = 0; i < n; ++i) {
        if (y.is_labeled(i)) continue;
        double* dst = out.row(static_cast<std::size_t>(i));
        for (std::size_t k = 0; k < l; ++k) {
            const double q = qt(k, static_cast<std::size_t>(i));
            const double* yk =
                y.values().row(static_cast<std::size_t>(y.labeled_set()[k]));
            for (std::size_t c = 0; c < m; ++c) dst[c] += q * yk[c];
        }
        // Rounding can leave tiny negatives; restore an exact distribution.
        double s = 0.0;
        for (std::size_t c = 0; c < m; ++c) {
            if (dst[c] < 0.0) dst[c] = 0.0;
            s += dst[c];
        }
        if (s > 0.0)
            for (std::size_t c = 0; c < m; ++c) dst[c] /= s;
    }
    return finish(std::move(out), 0, 0.0, true);
}

WalkResult regularize(const Graph& g, const LabelMatrix& y, double alpha, KernelKind kernel,
                      Route route, double tol, int max_iter, int dense_threshold,
                      DanglingPolicy policy) {
    require_seeds(y);
    if (!(alpha > 0.0 && alpha < 1.0))
        throw InputError(Errc::alpha_out_of_range, "alpha must lie strictly inside (0, 1)");
    const TransitionMatrix k = kernel == KernelKind::RowStochastic ? transition_matrix(g, policy)
                                                                   : symmetric_normalize(g);
    const std::size_t n = static_cast<std::size_t>(g.n());
    const std::size_t m = static_cast<std::size_t>(y.m());

    Matrix unnorm;
    IterationTrace trace;
    if (route == Route::Closed) {
        Matrix a = Matrix::identity(n);
        for (NodeId i = 0; i < g.n(); ++i) {
            auto tgts = k.row_targets(i);
            auto vals = k.row_values(i);
            for (std::size_t e = 0; e < tgts.size(); ++e)
                a(static_cast<std::size_t>(i), static_cast<std::size_t>(tgts[e])) -=
                    alpha * vals[e];
        }
        unnorm = linear_solve(std::move(a), y.values(), dense_threshold);
        for (double& v : unnorm.data()) v *= 1.0 - alpha;
        trace.converged = true;
    } else {
        auto step = [&](const Matrix& prev, Matrix& next) {
            k.multiply_into(prev, next);
            const auto& y0 = y.values().data();
            auto& nx = next.data();
            for (std::size_t e = 0; e < nx.size(); ++e)
                nx[e] = alpha * nx[e] + (1.0 - alpha) * y0[e];
        };
        std::tie(unnorm, trace) = fixed_point(step, y.values(), tol, max_iter);
    }

    Matrix out = unnorm;
    for (std::size_t i = 0; i < n; ++i) {
        const double s = out.row_sum(i);
        if (s <= 0.0) continue;
        double* r = out.row(i);
        for (std::size_t c = 0; c < m; ++c) r[c] /= s;
    }
    WalkResult result = finish(std::move(out), trace);
    result.unnormalized = std::move(unnorm);
    return result;
}

std::vector<double> default_injection(const LabelMatrix& y, double labeled_alpha) {
    std::vector<double> a(static_cast<std::size_t>(y.n()), 1.0);
    for (NodeId i : y.labeled_set()) a[static_cast<std::size_t>(i)] = labeled_alpha;
    return a;
}

WalkResult adsorption(const Graph& g, const LabelMatrix& y, const std::vector<double>& injection,
                      Route route, double tol, int max_iter, int dense_threshold,
                      DanglingPolicy policy) {
    require_seeds(y);
    const std::size_t n = static_cast<std::size_t>(g.n());
    const std::size_t m = static_cast<std::size_t>(y.m());
    if (injection.size() != n)
        throw InputError(Errc::size_mismatch, "injection vector does not match node count");
    for (double a : injection)
        if (!(a >= 0.0 && a <= 1.0))
            throw InputError(Errc::injection_out_of_range,
                             "per-node retention must lie in [0, 1]");

    // Y0 rows damped by the per-node termination probability 1 - a_i.
    Matrix damped = y.values();
    for (std::size_t i = 0; i < n; ++i) {
        double* r = damped.row(i);
        for (std::size_t c = 0; c < m; ++c) r[c] *= 1.0 - injection[i];
    }

    if (route == Route::Closed) {
        // The walk terminates almost surely only from nodes that can reach a
        // state with retention below 1; sweep backwards from those states.
        std::vector<char> reaches(n, 0);
        std::deque<NodeId> frontier;
        for (std::size_t i = 0; i < n; ++i)
            if (injection[i] < 1.0) {
                reaches[i] = 1;
                frontier.push_back(static_cast<NodeId>(i));
            }
        while (!frontier.empty()) {
            const NodeId i = frontier.front();
            frontier.pop_front();
            for (NodeId j : g.in_neighbors(i))
                if (!reaches[static_cast<std::size_t>(j)]) {
                    reaches[static_cast<std::size_t>(j)] = 1;
                    frontier.push_back(j);
                }
        }
        if (std::find(reaches.begin(), reaches.end(), 0) != reaches.end())
            throw NumericError(Errc::non_terminating_walk,
                               "some walk never reaches a terminating state");

        const TransitionMatrix t = transition_matrix(g, policy);
        Matrix a = Matrix::identity(n);
        for (NodeId i = 0; i < g.n(); ++i) {
            auto tgts = t.row_targets(i);
            auto vals = t.row_values(i);
            for (std::size_t e = 0; e < tgts.size(); ++e)
                a(static_cast<std::size_t>(i), static_cast<std::size_t>(tgts[e])) -=
                    injection[static_cast<std::size_t>(i)] * vals[e];
        }
        Matrix out = linear_solve(std::move(a), damped, dense_threshold);
        return finish(std::move(out), 0, 0.0, true);
    }

    // Reversed-edge update: node i pulls from its in-neighbors, each edge
    // normalized by i's total incoming weight. Nodes without in-edges keep an
    // empty pull row. Equals the forward matrix exactly on symmetric weights.
    std::vector<std::size_t> offsets(n + 1, 0);
    std::vector<NodeId> targets;
    std::vector<double> values;
    for (NodeId i = 0; i < g.n(); ++i) {
        const double din = g.in_degree(i);
        auto nbrs = g.in_neighbors(i);
        auto ws = g.in_weights(i);
        if (din > 0.0)
            for (std::size_t e = 0; e < nbrs.size(); ++e) {
                targets.push_back(nbrs[e]);
                values.push_back(ws[e] / din);
            }
        offsets[static_cast<std::size_t>(i) + 1] = targets.size();
    }
    const TransitionMatrix rev(g.n(), MatrixKind::Augmented, std::move(offsets),
                               std::move(targets), std::move(values));

    auto step = [&](const Matrix& prev, Matrix& next) {
        rev.multiply_into(prev, next);
        for (std::size_t i = 0; i < n; ++i) {
            double* r = next.row(i);
            const double* d = damped.row(i);
            for (std::size_t c = 0; c < m; ++c) r[c] = injection[i] * r[c] + d[c];
        }
    };
    auto [out, trace] = fixed_point(step, y.values(), tol, max_iter);
    return finish(std::move(out), trace);
}

void validate(const MethodConfig& cfg) {
    if (cfg.t < 1) throw InputError(Errc::config_error, "walk length must be at least 1");
    if (!(cfg.tol > 0.0)) throw InputError(Errc::config_error, "tolerance must be positive");
    if (cfg.max_iter < 1) throw InputError(Errc::config_error, "iteration cap must be positive");
    if (cfg.walks < 1) throw InputError(Errc::config_error, "walk count must be positive");
    if (cfg.ica_iterations < 0)
        throw InputError(Errc::config_error, "sweep count must be non-negative");
    if (cfg.dense_threshold < 1)
        throw InputError(Errc::config_error, "dense threshold must be positive");
}

WalkResult run_method(const Graph& g, const LabelMatrix& y, const MethodConfig& cfg) {
    validate(cfg);
    const Route route = cfg.solver == SolverKind::Direct ? Route::Closed : Route::Iterative;
    switch (cfg.method) {
        case Method::Lp:
            switch (cfg.solver) {
                case SolverKind::Direct:
                    return lp_closed_form(g, y, cfg.dense_threshold, cfg.dangling);
                case SolverKind::Iterative:
                    return lp_iterative(g, y, cfg.tol, cfg.max_iter, cfg.dangling);
                case SolverKind::SecondOrder:
                    return lp_second_order(g, y, cfg.beta, cfg.tol, cfg.max_iter, cfg.dangling);
                case SolverKind::MonteCarlo:
                    return lp_monte_carlo(g, y, cfg.walks, cfg.seed, cfg.dangling);
            }
            break;
        case Method::Tstep:
            return tstep_walk(g, y, cfg.t, cfg.dangling);
        case Method::Rendezvous:
            return rendezvous(g, y, cfg.dense_threshold, cfg.dangling);
        case Method::Regularize:
            return regularize(g, y, cfg.alpha, cfg.kernel, route, cfg.tol, cfg.max_iter,
                              cfg.dense_threshold, cfg.dangling);
        case Method::Adsorption:
            return adsorption(g, y, default_injection(y, cfg.labeled_injection), route, cfg.tol,
                              cfg.max_iter, cfg.dense_threshold, cfg.dangling);
        case Method::IcaVote:
        case Method::IcaNN: {
            LocalClassifierSpec spec;
            spec.kind = cfg.method == Method::IcaVote ? ClassifierKind::WeightedVote
                                                      : ClassifierKind::NearestNeighbor;
            spec.top_k = cfg.top_k;
            auto [labels, iterations] = ica_run(g, y, spec, cfg.ica_iterations);
            WalkResult r;
            r.hard_labels.resize(static_cast<std::size_t>(labels.n()));
            for (NodeId i = 0; i < labels.n(); ++i)
                r.hard_labels[static_cast<std::size_t>(i)] = labels.hard_label(i);
            r.labels = std::move(labels);
            r.iterations_used = iterations;
            return r;
        }
    }
    throw InputError(Errc::config_error, "unknown method");
}

}  // namespace graphlabel
