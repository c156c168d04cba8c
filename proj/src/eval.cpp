#include "graphlabel/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "graphlabel/rng.hpp"
#include "graphlabel/walk.hpp"

namespace graphlabel {

EvalReport holdout_evaluate(const Graph& g, const LabelMatrix& y, const MethodConfig& cfg,
                            double fraction, std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction < 1.0))
        throw InputError(Errc::config_error, "holdout fraction must lie strictly inside (0, 1)");
    const std::size_t l = y.num_labeled();
    const std::size_t k =
        static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(l)));
    if (k >= l)
        throw NumericError(Errc::all_labels_withheld,
                           "withholding would leave no labeled node");

    std::vector<NodeId> order = y.labeled_set();
    SplitMix64 rng(seed);
    deterministic_shuffle(order, rng);
    const std::vector<NodeId> withheld(order.begin(), order.begin() + static_cast<long>(k));

    Matrix reduced = y.values();
    for (NodeId i : withheld) {
        double* row = reduced.row(static_cast<std::size_t>(i));
        std::fill(row, row + reduced.cols(), 0.0);
    }
    std::vector<NodeId> remaining(order.begin() + static_cast<long>(k), order.end());
    std::sort(remaining.begin(), remaining.end());
    const LabelMatrix seeds = LabelMatrix::validated(std::move(reduced), std::move(remaining));

    const auto t0 = std::chrono::steady_clock::now();
    const WalkResult result = run_method(g, seeds, cfg);
    const auto t1 = std::chrono::steady_clock::now();

    EvalReport report;
    report.iterations_used = result.iterations_used;
    report.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
    report.withheld = k;

    std::size_t unlabeled = 0;
    std::size_t covered = 0;
    for (NodeId i = 0; i < g.n(); ++i) {
        if (seeds.is_labeled(i)) continue;
        ++unlabeled;
        if (result.hard_labels[static_cast<std::size_t>(i)] != kNoLabel) ++covered;
    }
    report.coverage =
        unlabeled == 0 ? 1.0 : static_cast<double>(covered) / static_cast<double>(unlabeled);

    std::size_t correct = 0;
    for (NodeId i : withheld) {
        const LabelId pred = result.hard_labels[static_cast<std::size_t>(i)];
        if (pred == kNoLabel)
            ++report.uncovered;
        else if (pred == y.hard_label(i))
            ++correct;
    }
    const std::size_t scored = k - report.uncovered;
    report.accuracy = scored == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(scored);
    return report;
}

std::pair<Graph, LabelMatrix> generate_planted(NodeId n, int blocks, double p_in, double p_out,
                                               double labeled_fraction, std::uint64_t seed) {
    if (n < 1) throw InputError(Errc::config_error, "node count must be positive");
    if (blocks < 2) throw InputError(Errc::config_error, "need at least two blocks");
    if (!(p_out >= 0.0 && p_out < p_in && p_in <= 1.0))
        throw InputError(Errc::config_error, "probabilities need 0 <= p_out < p_in <= 1");
    if (!(labeled_fraction > 0.0 && labeled_fraction <= 1.0))
        throw InputError(Errc::config_error, "labeled fraction must lie in (0, 1]");
    if (blocks > n)
        throw InputError(Errc::degenerate_block, "more blocks than nodes leaves one empty");

    SplitMix64 rng(seed);
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j) {
            const double p = (i % blocks == j % blocks) ? p_in : p_out;
            if (rng.uniform01() < p) edges.push_back({i, j, 1.0});
        }
    Graph g = build_graph(n, edges, false);

    std::vector<std::pair<NodeId, LabelId>> reveals;
    for (int b = 0; b < blocks; ++b) {
        std::vector<NodeId> members;
        for (NodeId i = b; i < n; i += blocks) members.push_back(i);
        const std::size_t reveal = static_cast<std::size_t>(
            std::ceil(labeled_fraction * static_cast<double>(members.size())));
        SplitMix64 block_rng = stream_rng(seed, static_cast<std::uint64_t>(b));
        deterministic_shuffle(members, block_rng);
        for (std::size_t r = 0; r < reveal; ++r) reveals.emplace_back(members[r], b);
    }
    return {std::move(g), LabelMatrix::from_assignments(n, blocks, reveals)};
}

}  // namespace graphlabel
