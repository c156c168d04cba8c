#include "graphlabel/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_set>

#include "graphlabel/constants.hpp"

namespace graphlabel {

namespace {

// Ordered-pair key for duplicate detection; undirected edges are
// canonicalized so (u,v) and (v,u) collide.
std::uint64_t edge_key(NodeId a, NodeId b, bool directed) {
    if (!directed && a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}

}  // namespace

void Graph::rebind_in_pointers() {
    if (directed_) {
        in_offsets_ = &in_offsets_store_;
        in_targets_ = &in_targets_store_;
        in_weights_ = &in_weights_store_;
    } else {
        in_offsets_ = &out_offsets_;
        in_targets_ = &out_targets_;
        in_weights_ = &out_weights_;
    }
}

void Graph::build_index() {
    const std::size_t n = static_cast<std::size_t>(n_);
    std::vector<std::size_t> out_count(n, 0);
    std::vector<std::size_t> in_count(n, 0);
    for (const Edge& e : edges_) {
        ++out_count[static_cast<std::size_t>(e.src)];
        if (directed_) {
            ++in_count[static_cast<std::size_t>(e.dst)];
        } else if (e.src != e.dst) {
            ++out_count[static_cast<std::size_t>(e.dst)];
        }
    }

    auto fill_offsets = [n](const std::vector<std::size_t>& count, std::vector<std::size_t>& off) {
        off.assign(n + 1, 0);
        for (std::size_t i = 0; i < n; ++i) off[i + 1] = off[i] + count[i];
    };

    fill_offsets(out_count, out_offsets_);
    out_targets_.resize(out_offsets_[n]);
    out_weights_.resize(out_offsets_[n]);
    std::vector<std::size_t> cursor(out_offsets_.begin(), out_offsets_.end() - 1);
    auto put_out = [&](NodeId from, NodeId to, double w) {
        std::size_t& c = cursor[static_cast<std::size_t>(from)];
        out_targets_[c] = to;
        out_weights_[c] = w;
        ++c;
    };
    for (const Edge& e : edges_) {
        put_out(e.src, e.dst, e.w);
        if (!directed_ && e.src != e.dst) put_out(e.dst, e.src, e.w);
    }

    if (directed_) {
        fill_offsets(in_count, in_offsets_store_);
        in_targets_store_.resize(in_offsets_store_[n]);
        in_weights_store_.resize(in_offsets_store_[n]);
        std::vector<std::size_t> icursor(in_offsets_store_.begin(), in_offsets_store_.end() - 1);
        for (const Edge& e : edges_) {
            std::size_t& c = icursor[static_cast<std::size_t>(e.dst)];
            in_targets_store_[c] = e.src;
            in_weights_store_[c] = e.w;
            ++c;
        }
    }
    rebind_in_pointers();

    // Sort each adjacency row by target id so iteration order is canonical.
    auto sort_rows = [n](std::vector<std::size_t>& off, std::vector<NodeId>& tgt,
                         std::vector<double>& wts) {
        std::vector<std::pair<NodeId, double>> row;
        for (std::size_t i = 0; i < n; ++i) {
            row.clear();
            for (std::size_t k = off[i]; k < off[i + 1]; ++k) row.emplace_back(tgt[k], wts[k]);
            std::sort(row.begin(), row.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            for (std::size_t k = off[i]; k < off[i + 1]; ++k) {
                tgt[k] = row[k - off[i]].first;
                wts[k] = row[k - off[i]].second;
            }
        }
    };
    sort_rows(out_offsets_, out_targets_, out_weights_);
    if (directed_) sort_rows(in_offsets_store_, in_targets_store_, in_weights_store_);

    out_degree_.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (double w : out_weights(static_cast<NodeId>(i))) out_degree_[i] += w;
    if (directed_) {
        in_degree_.assign(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (double w : in_weights(static_cast<NodeId>(i))) in_degree_[i] += w;
    }
}

Graph build_graph(NodeId n, const std::vector<Edge>& edges, bool directed) {
    if (n < 0) throw InputError(Errc::node_id_out_of_range, "node count must be non-negative");
    Graph g;
    g.n_ = n;
    g.directed_ = directed;
    g.edges_.reserve(edges.size());

    std::unordered_set<std::uint64_t> seen;
    seen.reserve(edges.size() * 2);
    for (const Edge& e : edges) {
        if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n)
            throw InputError(Errc::node_id_out_of_range,
                             "edge (" + std::to_string(e.src) + "," + std::to_string(e.dst) +
                                 ") outside [0," + std::to_string(n) + ")");
        if (!(e.w >= 0.0))
            throw InputError(Errc::negative_weight,
                             "edge (" + std::to_string(e.src) + "," + std::to_string(e.dst) +
                                 ") has negative weight");
        if (e.w == 0.0) continue;  // zero-weight entries are dropped
        if (!seen.insert(edge_key(e.src, e.dst, directed)).second)
            throw InputError(Errc::duplicate_edge,
                             "duplicate edge (" + std::to_string(e.src) + "," +
                                 std::to_string(e.dst) + ")");
        g.edges_.push_back(e);
    }
    g.build_index();
    return g;
}

Graph Graph::reversed() const {
    if (!directed_) return *this;
    std::vector<Edge> flipped;
    flipped.reserve(edges_.size());
    for (const Edge& e : edges_) flipped.push_back({e.dst, e.src, e.w});
    return build_graph(n_, flipped, true);
}

bool is_symmetric(const Graph& g) {
    if (!g.directed()) return true;
    for (NodeId i = 0; i < g.n(); ++i) {
        auto tgts = g.out_neighbors(i);
        auto wts = g.out_weights(i);
        for (std::size_t k = 0; k < tgts.size(); ++k) {
            NodeId j = tgts[k];
            auto jt = g.out_neighbors(j);
            auto jw = g.out_weights(j);
            auto it = std::lower_bound(jt.begin(), jt.end(), i);
            if (it == jt.end() || *it != i) return false;
            double back = jw[static_cast<std::size_t>(it - jt.begin())];
            if (std::abs(back - wts[k]) > kAlgebraTol) return false;
        }
    }
    return true;
}

LabelMatrix LabelMatrix::validated(Matrix y, std::vector<NodeId> labeled_set) {
    LabelMatrix lm;
    const NodeId n = static_cast<NodeId>(y.rows());
    std::sort(labeled_set.begin(), labeled_set.end());
    if (std::adjacent_find(labeled_set.begin(), labeled_set.end()) != labeled_set.end())
        throw InputError(Errc::config_error, "labeled set contains duplicates");
    lm.flags_.assign(static_cast<std::size_t>(n), 0);
    for (NodeId i : labeled_set) {
        if (i < 0 || i >= n)
            throw InputError(Errc::node_id_out_of_range, "labeled node id out of range");
        lm.flags_[static_cast<std::size_t>(i)] = 1;
    }
    for (NodeId i = 0; i < n; ++i) {
        const double* row = y.row(static_cast<std::size_t>(i));
        double sum = 0.0;
        for (std::size_t j = 0; j < y.cols(); ++j) {
            if (!(row[j] >= 0.0))
                throw InputError(Errc::negative_weight, "label distributions must be non-negative");
            sum += row[j];
        }
        if (lm.flags_[static_cast<std::size_t>(i)]) {
            if (sum == 0.0)
                throw InputError(Errc::zero_mass_row,
                                 "labeled node " + std::to_string(i) + " has an all-zero row");
            if (std::abs(sum - 1.0) > kRowSumTol)
                throw InputError(Errc::config_error,
                                 "labeled row " + std::to_string(i) + " does not sum to 1");
        } else if (sum != 0.0) {
            throw InputError(Errc::config_error,
                             "unlabeled node " + std::to_string(i) + " has a nonzero row");
        }
    }
    lm.y_ = std::move(y);
    lm.labeled_ = std::move(labeled_set);
    return lm;
}

LabelMatrix LabelMatrix::adopt(Matrix y) {
    LabelMatrix lm;
    const NodeId n = static_cast<NodeId>(y.rows());
    lm.flags_.assign(static_cast<std::size_t>(n), 0);
    for (NodeId i = 0; i < n; ++i) {
        if (!y.row_is_zero(static_cast<std::size_t>(i))) {
            lm.flags_[static_cast<std::size_t>(i)] = 1;
            lm.labeled_.push_back(i);
        }
    }
    lm.y_ = std::move(y);
    return lm;
}

LabelMatrix LabelMatrix::from_assignments(NodeId n, LabelId m,
                                          const std::vector<std::pair<NodeId, LabelId>>& seeds) {
    Matrix y(static_cast<std::size_t>(n), static_cast<std::size_t>(m));
    std::vector<NodeId> labeled;
    labeled.reserve(seeds.size());
    for (auto [node, label] : seeds) {
        if (node < 0 || node >= n)
            throw InputError(Errc::node_id_out_of_range, "seed node id out of range");
        if (label < 0 || label >= m)
            throw InputError(Errc::unknown_label, "seed label id out of range");
        y(static_cast<std::size_t>(node), static_cast<std::size_t>(label)) = 1.0;
        labeled.push_back(node);
    }
    return validated(std::move(y), std::move(labeled));
}

LabelId LabelMatrix::hard_label(NodeId i) const {
    const double* row = y_.row(static_cast<std::size_t>(i));
    LabelId best = kNoLabel;
    double best_val = 0.0;
    for (LabelId c = 0; c < m(); ++c) {
        if (row[c] > best_val) {
            best_val = row[c];
            best = c;
        }
    }
    return best;
}

TransitionMatrix::TransitionMatrix(NodeId n, MatrixKind kind, std::vector<std::size_t> offsets,
                                   std::vector<NodeId> targets, std::vector<double> values)
    : n_(n),
      kind_(kind),
      offsets_(std::move(offsets)),
      targets_(std::move(targets)),
      values_(std::move(values)) {
    if (offsets_.size() != static_cast<std::size_t>(n_) + 1 || targets_.size() != values_.size() ||
        offsets_.back() != targets_.size())
        throw InputError(Errc::size_mismatch, "inconsistent sparse structure");
    if (kind_ == MatrixKind::RowStochastic || kind_ == MatrixKind::AbsorbingBlock) {
        for (NodeId i = 0; i < n_; ++i) {
            double s = row_sum(i);
            if (offsets_[i] == offsets_[i + 1] || std::abs(s - 1.0) > kRowSumTol)
                throw InputError(Errc::config_error,
                                 "row " + std::to_string(i) + " of a stochastic matrix sums to " +
                                     std::to_string(s));
        }
    }
}

double TransitionMatrix::row_sum(NodeId i) const {
    double s = 0.0;
    for (double v : row_values(i)) s += v;
    return s;
}

void TransitionMatrix::multiply_into(const Matrix& y, Matrix& out) const {
    const std::size_t m = y.cols();
    if (y.rows() != static_cast<std::size_t>(n_))
        throw InputError(Errc::size_mismatch, "operand row count does not match matrix order");
    if (out.rows() != y.rows() || out.cols() != m) out = Matrix(y.rows(), m);
    for (NodeId i = 0; i < n_; ++i) {
        double* dst = out.row(static_cast<std::size_t>(i));
        std::fill(dst, dst + m, 0.0);
        auto tgts = row_targets(i);
        auto vals = row_values(i);
        for (std::size_t k = 0; k < tgts.size(); ++k) {
            const double* src = y.row(static_cast<std::size_t>(tgts[k]));
            const double v = vals[k];
            for (std::size_t j = 0; j < m; ++j) dst[j] += v * src[j];
        }
    }
}

Matrix TransitionMatrix::multiply(const Matrix& y) const {
    Matrix out(y.rows(), y.cols());
    multiply_into(y, out);
    return out;
}

Matrix TransitionMatrix::to_dense() const {
    Matrix d(static_cast<std::size_t>(n_), static_cast<std::size_t>(n_));
    for (NodeId i = 0; i < n_; ++i) {
        auto tgts = row_targets(i);
        auto vals = row_values(i);
        for (std::size_t k = 0; k < tgts.size(); ++k)
            d(static_cast<std::size_t>(i), static_cast<std::size_t>(tgts[k])) = vals[k];
    }
    return d;
}

namespace {

// Shared builder for the row-stochastic and absorbing variants. A null
// labeled_flags builds plain T; absorbing rows are unit self-loops.
TransitionMatrix stochastic_rows(const Graph& g, const std::vector<char>* labeled_flags,
                                 DanglingPolicy policy) {
    const NodeId n = g.n();
    std::vector<std::size_t> offsets(static_cast<std::size_t>(n) + 1, 0);
    std::vector<NodeId> targets;
    std::vector<double> values;
    targets.reserve(g.edge_count() * 2);
    values.reserve(g.edge_count() * 2);

    for (NodeId i = 0; i < n; ++i) {
        const bool absorbing = labeled_flags && (*labeled_flags)[static_cast<std::size_t>(i)];
        if (absorbing) {
            targets.push_back(i);
            values.push_back(1.0);
        } else {
            const double d = g.degree(i);
            if (d == 0.0) {
                if (policy == DanglingPolicy::Reject)
                    throw InputError(Errc::dangling_node,
                                     "node " + std::to_string(i) + " has zero out-degree");
                targets.push_back(i);
                values.push_back(1.0);
            } else {
                auto tgts = g.out_neighbors(i);
                auto wts = g.out_weights(i);
                for (std::size_t k = 0; k < tgts.size(); ++k) {
                    targets.push_back(tgts[k]);
                    values.push_back(wts[k] / d);
                }
            }
        }
        offsets[static_cast<std::size_t>(i) + 1] = targets.size();
    }
    return TransitionMatrix(n, labeled_flags ? MatrixKind::AbsorbingBlock : MatrixKind::RowStochastic,
                            std::move(offsets), std::move(targets), std::move(values));
}

}  // namespace

TransitionMatrix transition_matrix(const Graph& g, DanglingPolicy policy) {
    return stochastic_rows(g, nullptr, policy);
}

TransitionMatrix absorbing_matrix(const Graph& g, const std::vector<char>& labeled_flags,
                                  DanglingPolicy policy) {
    if (labeled_flags.size() != static_cast<std::size_t>(g.n()))
        throw InputError(Errc::size_mismatch, "labeled flag vector does not match node count");
    return stochastic_rows(g, &labeled_flags, policy);
}

Matrix laplacian(const Graph& g, bool normalized) {
    const NodeId n = g.n();
    Matrix l(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    std::vector<double> dinv_sqrt;
    if (normalized) {
        dinv_sqrt.resize(static_cast<std::size_t>(n));
        for (NodeId i = 0; i < n; ++i) {
            const double d = g.degree(i);
            if (d == 0.0)
                throw InputError(Errc::dangling_node,
                                 "node " + std::to_string(i) +
                                     " has zero degree; normalized laplacian undefined");
            dinv_sqrt[static_cast<std::size_t>(i)] = 1.0 / std::sqrt(d);
        }
    }
    for (NodeId i = 0; i < n; ++i) {
        const std::size_t ii = static_cast<std::size_t>(i);
        l(ii, ii) = normalized ? g.degree(i) * dinv_sqrt[ii] * dinv_sqrt[ii] : g.degree(i);
        auto tgts = g.out_neighbors(i);
        auto wts = g.out_weights(i);
        for (std::size_t k = 0; k < tgts.size(); ++k) {
            const std::size_t jj = static_cast<std::size_t>(tgts[k]);
            const double scale = normalized ? dinv_sqrt[ii] * dinv_sqrt[jj] : 1.0;
            l(ii, jj) -= wts[k] * scale;
        }
    }
    return l;
}

TransitionMatrix symmetric_normalize(const Graph& g) {
    if (!is_symmetric(g))
        throw InputError(Errc::asymmetric_input, "symmetric normalization requires w_ij == w_ji");
    const NodeId n = g.n();
    std::vector<double> dinv_sqrt(static_cast<std::size_t>(n));
    for (NodeId i = 0; i < n; ++i) {
        const double d = g.degree(i);
        if (d == 0.0)
            throw InputError(Errc::dangling_node, "node " + std::to_string(i) + " has zero degree");
        dinv_sqrt[static_cast<std::size_t>(i)] = 1.0 / std::sqrt(d);
    }
    std::vector<std::size_t> offsets(static_cast<std::size_t>(n) + 1, 0);
    std::vector<NodeId> targets;
    std::vector<double> values;
    for (NodeId i = 0; i < n; ++i) {
        auto tgts = g.out_neighbors(i);
        auto wts = g.out_weights(i);
        for (std::size_t k = 0; k < tgts.size(); ++k) {
            targets.push_back(tgts[k]);
            values.push_back(wts[k] * dinv_sqrt[static_cast<std::size_t>(i)] *
                             dinv_sqrt[static_cast<std::size_t>(tgts[k])]);
        }
        offsets[static_cast<std::size_t>(i) + 1] = targets.size();
    }
    return TransitionMatrix(n, MatrixKind::SymmetricKernel, std::move(offsets), std::move(targets),
                            std::move(values));
}

bool is_label_connected(const Graph& g, const std::vector<NodeId>& labeled_set) {
    const NodeId n = g.n();
    std::vector<char> reached(static_cast<std::size_t>(n), 0);
    std::deque<NodeId> frontier;
    for (NodeId i : labeled_set) {
        if (i < 0 || i >= n)
            throw InputError(Errc::node_id_out_of_range, "labeled node id out of range");
        if (!reached[static_cast<std::size_t>(i)]) {
            reached[static_cast<std::size_t>(i)] = 1;
            frontier.push_back(i);
        }
    }
    // A node can reach the labeled set along forward edges iff it is reached
    // from the labeled set along reversed edges.
    while (!frontier.empty()) {
        NodeId v = frontier.front();
        frontier.pop_front();
        for (NodeId u : g.in_neighbors(v)) {
            if (!reached[static_cast<std::size_t>(u)]) {
                reached[static_cast<std::size_t>(u)] = 1;
                frontier.push_back(u);
            }
        }
    }
    return std::all_of(reached.begin(), reached.end(), [](char c) { return c != 0; });
}

std::tuple<Graph, LabelMatrix, NodeOrdering> reorder_labeled_first(const Graph& g,
                                                                   const LabelMatrix& y) {
    const NodeId n = g.n();
    if (y.n() != n) throw InputError(Errc::size_mismatch, "label matrix does not match node count");
    NodeOrdering ord;
    ord.num_labeled = static_cast<NodeId>(y.num_labeled());
    ord.to_internal.assign(static_cast<std::size_t>(n), 0);
    ord.to_external.reserve(static_cast<std::size_t>(n));
    for (NodeId i = 0; i < n; ++i)
        if (y.is_labeled(i)) ord.to_external.push_back(i);
    for (NodeId i = 0; i < n; ++i)
        if (!y.is_labeled(i)) ord.to_external.push_back(i);
    for (NodeId pos = 0; pos < n; ++pos)
        ord.to_internal[static_cast<std::size_t>(ord.to_external[static_cast<std::size_t>(pos)])] =
            pos;

    std::vector<Edge> remapped;
    remapped.reserve(g.edge_count());
    for (const Edge& e : g.edges())
        remapped.push_back({ord.to_internal[static_cast<std::size_t>(e.src)],
                            ord.to_internal[static_cast<std::size_t>(e.dst)], e.w});
    Graph rg = build_graph(n, remapped, g.directed());

    Matrix ym(static_cast<std::size_t>(n), static_cast<std::size_t>(y.m()));
    for (NodeId pos = 0; pos < n; ++pos) {
        const double* src = y.values().row(static_cast<std::size_t>(ord.to_external[pos]));
        std::copy(src, src + ym.cols(), ym.row(static_cast<std::size_t>(pos)));
    }
    std::vector<NodeId> labeled(static_cast<std::size_t>(ord.num_labeled));
    for (NodeId i = 0; i < ord.num_labeled; ++i) labeled[static_cast<std::size_t>(i)] = i;
    LabelMatrix ry = LabelMatrix::validated(std::move(ym), std::move(labeled));
    return {std::move(rg), std::move(ry), std::move(ord)};
}

}  // namespace graphlabel
