#include "graphlabel/ica.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace graphlabel {

namespace {

bool row_nonzero(const Matrix& y, NodeId i) { return !y.row_is_zero(static_cast<std::size_t>(i)); }

// Accumulates w * y_j into block for every neighbor j with a nonzero row,
// then normalizes the block to sum 1 (left zero if nothing accumulated).
void frequency_block(const Matrix& y, std::span<const NodeId> nbrs, std::span<const double> wts,
                     double* block) {
    const std::size_t m = y.cols();
    std::fill(block, block + m, 0.0);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
        if (!row_nonzero(y, nbrs[k])) continue;
        const double* src = y.row(static_cast<std::size_t>(nbrs[k]));
        for (std::size_t c = 0; c < m; ++c) block[c] += wts[k] * src[c];
    }
    double total = 0.0;
    for (std::size_t c = 0; c < m; ++c) total += block[c];
    if (total > 0.0)
        for (std::size_t c = 0; c < m; ++c) block[c] /= total;
}

LabelId argmax_label(const double* row, std::size_t m) {
    LabelId best = kNoLabel;
    double best_val = 0.0;
    for (std::size_t c = 0; c < m; ++c)
        if (row[c] > best_val) {
            best_val = row[c];
            best = static_cast<LabelId>(c);
        }
    return best;
}

}  // namespace

std::vector<double> link_features(const Graph& g, const Matrix& y, NodeId i) {
    const std::size_t m = y.cols();
    if (!g.directed()) {
        std::vector<double> f(m, 0.0);
        frequency_block(y, g.out_neighbors(i), g.out_weights(i), f.data());
        return f;
    }
    std::vector<double> f(2 * m, 0.0);
    frequency_block(y, g.in_neighbors(i), g.in_weights(i), f.data());
    frequency_block(y, g.out_neighbors(i), g.out_weights(i), f.data() + m);
    return f;
}

FeatureMatrix build_feature_matrix(const Graph& g, const Matrix& y, const Matrix* node_features) {
    const std::size_t n = static_cast<std::size_t>(g.n());
    if (y.rows() != n) throw InputError(Errc::size_mismatch, "label rows do not match node count");
    FeatureMatrix phi;
    phi.node_dim = node_features ? node_features->cols() : 0;
    phi.link_dim = (g.directed() ? 2 : 1) * y.cols();
    if (node_features && node_features->rows() != n)
        throw InputError(Errc::size_mismatch, "node feature rows do not match node count");
    phi.values = Matrix(n, phi.dim());
    for (NodeId i = 0; i < g.n(); ++i) {
        double* dst = phi.values.row(static_cast<std::size_t>(i));
        if (node_features) {
            const double* nf = node_features->row(static_cast<std::size_t>(i));
            std::copy(nf, nf + phi.node_dim, dst);
        }
        const std::vector<double> lf = link_features(g, y, i);
        std::copy(lf.begin(), lf.end(), dst + phi.node_dim);
    }
    return phi;
}

std::vector<double> classify_weighted_vote(const Graph& g, const Matrix& y, NodeId i) {
    const std::size_t m = y.cols();
    std::vector<double> f(m, 0.0);
    const double d = g.degree(i);
    if (d == 0.0) return f;

    // Accumulate transition weights w/d rather than raw weights: the degree
    // cancels in the renormalization below, and the sums then match a one-step
    // row-stochastic propagation term for term.
    auto nbrs = g.out_neighbors(i);
    auto ws = g.out_weights(i);
    double mass = 0.0;
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
        const std::size_t j = static_cast<std::size_t>(nbrs[k]);
        if (y.row_is_zero(j)) continue;
        const double p = ws[k] / d;
        const double* src = y.row(j);
        mass += p;
        for (std::size_t c = 0; c < m; ++c) f[c] += p * src[c];
    }
    if (mass == 0.0) return f;
    for (std::size_t c = 0; c < m; ++c) f[c] /= mass;
    return f;
}

namespace {

std::vector<double> nearest_pool_row(const std::vector<NodeId>& pool, const Matrix& pool_labels,
                                     const FeatureMatrix& phi, NodeId i) {
    if (pool.empty())
        throw InputError(Errc::no_labeled_nodes, "nearest-neighbor classification needs seeds");
    const double* fi = phi.values.row(static_cast<std::size_t>(i));
    NodeId best = pool.front();
    double best_d = std::numeric_limits<double>::infinity();
    for (NodeId j : pool) {
        const double* fj = phi.values.row(static_cast<std::size_t>(j));
        double d = 0.0;
        for (std::size_t k = 0; k < phi.dim(); ++k) {
            const double diff = fi[k] - fj[k];
            d += diff * diff;
        }
        if (d < best_d) {  // strict: ties keep the earlier (lower) node id
            best_d = d;
            best = j;
        }
    }
    const double* row = pool_labels.row(static_cast<std::size_t>(best));
    return {row, row + pool_labels.cols()};
}

}  // namespace

std::vector<double> classify_nearest_neighbor(const Graph& g, const LabelMatrix& y,
                                              const FeatureMatrix& phi, NodeId i) {
    (void)g;
    return nearest_pool_row(y.labeled_set(), y.values(), phi, i);
}

void prune_top_k(std::vector<double>& row, int k) {
    const int m = static_cast<int>(row.size());
    if (k <= 0 || k >= m) return;
    std::vector<LabelId> order(row.size());
    for (std::size_t c = 0; c < row.size(); ++c) order[c] = static_cast<LabelId>(c);
    std::stable_sort(order.begin(), order.end(),
                     [&](LabelId a, LabelId b) { return row[a] > row[b]; });
    std::vector<double> pruned(row.size(), 0.0);
    double total = 0.0;
    for (int r = 0; r < k; ++r) {
        pruned[order[static_cast<std::size_t>(r)]] = row[order[static_cast<std::size_t>(r)]];
        total += row[order[static_cast<std::size_t>(r)]];
    }
    if (total > 0.0)
        for (double& v : pruned) v /= total;
    else
        std::fill(pruned.begin(), pruned.end(), 0.0);
    row = std::move(pruned);
}

std::pair<LabelMatrix, int> ica_run(const Graph& g, const LabelMatrix& y0,
                                    const LocalClassifierSpec& spec, int tau) {
    const NodeId n = g.n();
    if (y0.n() != n) throw InputError(Errc::size_mismatch, "label rows do not match node count");
    if (y0.num_labeled() == 0)
        throw InputError(Errc::no_labeled_nodes, "iterative classification needs seed labels");

    std::vector<NodeId> unlabeled;
    for (NodeId i = 0; i < n; ++i)
        if (!y0.is_labeled(i)) unlabeled.push_back(i);
    if (unlabeled.empty() || tau <= 0) return {y0, 0};

    const std::size_t m = static_cast<std::size_t>(y0.m());
    Matrix y = y0.values();
    std::vector<LabelId> hard(static_cast<std::size_t>(n));
    for (NodeId i = 0; i < n; ++i)
        hard[static_cast<std::size_t>(i)] = argmax_label(y.row(static_cast<std::size_t>(i)), m);

    // Seed feature rows are fixed at the start per the classification loop;
    // unlabeled rows are refreshed from the evolving state each sweep.
    const bool use_nn = spec.kind == ClassifierKind::NearestNeighbor;
    FeatureMatrix phi;
    if (use_nn) phi = build_feature_matrix(g, y);

    int iterations = 0;
    Matrix next = y;
    for (int t = 1; t <= tau; ++t) {
        iterations = t;
        if (use_nn)
            for (NodeId i : unlabeled) {
                const std::vector<double> lf = link_features(g, y, i);
                std::copy(lf.begin(), lf.end(),
                          phi.values.row(static_cast<std::size_t>(i)) + phi.node_dim);
            }
        int changes = 0;
        for (NodeId i : unlabeled) {
            std::vector<double> row;
            if (use_nn) {
                const double* link = phi.values.row(static_cast<std::size_t>(i)) + phi.node_dim;
                const bool no_labeled_neighborhood =
                    std::all_of(link, link + phi.link_dim, [](double v) { return v == 0.0; });
                // A node with no labeled neighborhood stays unlabeled this sweep.
                row = no_labeled_neighborhood
                          ? std::vector<double>(m, 0.0)
                          : nearest_pool_row(y0.labeled_set(), y0.values(), phi, i);
            } else {
                row = classify_weighted_vote(g, y, i);
            }
            prune_top_k(row, spec.top_k);
            std::copy(row.begin(), row.end(), next.row(static_cast<std::size_t>(i)));
            const LabelId h = argmax_label(row.data(), m);
            if (h != hard[static_cast<std::size_t>(i)]) {
                hard[static_cast<std::size_t>(i)] = h;
                ++changes;
            }
        }
        std::swap(y, next);
        if (changes == 0) break;
    }
    return {LabelMatrix::adopt(std::move(y)), iterations};
}

std::vector<LabelId> hard_vote_iteration(const TransitionMatrix& p,
                                         const std::vector<LabelId>& labels) {
    const NodeId n = p.n();
    if (labels.size() != static_cast<std::size_t>(n))
        throw InputError(Errc::size_mismatch, "label vector does not match matrix order");

    // Gather (label, weight) contributions per receiving node.
    std::vector<std::vector<std::pair<LabelId, double>>> inbox(static_cast<std::size_t>(n));
    for (NodeId i = 0; i < n; ++i) {
        const LabelId li = labels[static_cast<std::size_t>(i)];
        if (li == kNoLabel) continue;
        auto tgts = p.row_targets(i);
        auto vals = p.row_values(i);
        for (std::size_t k = 0; k < tgts.size(); ++k)
            inbox[static_cast<std::size_t>(tgts[k])].emplace_back(li, vals[k]);
    }

    std::vector<LabelId> out = labels;
    std::vector<double> score;
    for (NodeId j = 0; j < n; ++j) {
        auto& msgs = inbox[static_cast<std::size_t>(j)];
        if (msgs.empty()) continue;  // no votes: keep the previous label
        std::sort(msgs.begin(), msgs.end());
        LabelId top = msgs.back().first;
        score.assign(static_cast<std::size_t>(top) + 1, 0.0);
        for (const auto& [label, weight] : msgs) score[static_cast<std::size_t>(label)] += weight;
        LabelId best = 0;
        for (LabelId c = 1; c <= top; ++c)
            if (score[static_cast<std::size_t>(c)] > score[static_cast<std::size_t>(best)]) best = c;
        out[static_cast<std::size_t>(j)] = best;
    }
    return out;
}

}  // namespace graphlabel
