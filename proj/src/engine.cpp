#include "graphlabel/engine.hpp"

#include <algorithm>
#include <thread>
#include <tuple>

namespace graphlabel {

std::vector<Partition> make_contiguous_partitions(NodeId n, int workers) {
    if (workers < 1) throw InputError(Errc::config_error, "worker count must be positive");
    std::vector<Partition> parts(static_cast<std::size_t>(workers));
    const NodeId per = (n + workers - 1) / workers;  // ceil
    for (int w = 0; w < workers; ++w) {
        parts[static_cast<std::size_t>(w)].id = w;
        const NodeId lo = std::min<NodeId>(n, per * w);
        const NodeId hi = std::min<NodeId>(n, per * (w + 1));
        for (NodeId i = lo; i < hi; ++i) parts[static_cast<std::size_t>(w)].nodes.push_back(i);
    }
    return parts;
}

std::vector<Message> map_phase(const Partition& part, const std::vector<LabelId>& labels,
                               const TransitionMatrix& p) {
    std::vector<Message> out;
    for (NodeId i : part.nodes) {
        const LabelId label = labels[static_cast<std::size_t>(i)];
        if (label == kNoLabel) continue;
        auto tgts = p.row_targets(i);
        auto vals = p.row_values(i);
        for (std::size_t k = 0; k < tgts.size(); ++k) out.push_back({tgts[k], label, vals[k]});
    }
    return out;
}

LabelId reduce_phase(NodeId target, std::span<const Message> msgs, LabelId previous) {
    if (msgs.empty()) return previous;
    // Accumulate per label in ascending (label, weight) order; combined with
    // the strict > below this breaks score ties toward the lower label id and
    // pins the float summation order.
    std::vector<std::pair<LabelId, double>> votes;
    votes.reserve(msgs.size());
    for (const Message& msg : msgs) {
        if (msg.target != target)
            throw InputError(Errc::config_error, "message addressed to a different node");
        votes.emplace_back(msg.label, msg.weight);
    }
    std::sort(votes.begin(), votes.end());

    LabelId best = kNoLabel;
    double best_score = 0.0;
    std::size_t k = 0;
    while (k < votes.size()) {
        const LabelId label = votes[k].first;
        double score = 0.0;
        for (; k < votes.size() && votes[k].first == label; ++k) score += votes[k].second;
        if (best == kNoLabel || score > best_score) {
            best = label;
            best_score = score;
        }
    }
    return best;
}

LabelMatrix run_rounds_partitioned(const Graph& g, const LabelMatrix& y0,
                                   const std::vector<Partition>& parts, int rounds,
                                   bool clamp_labeled, std::vector<RoundStat>* trace,
                                   DanglingPolicy policy) {
    if (rounds < 1) throw InputError(Errc::config_error, "round count must be positive");
    const NodeId n = g.n();
    {
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        for (const Partition& part : parts)
            for (NodeId i : part.nodes) {
                if (i < 0 || i >= n)
                    throw InputError(Errc::node_id_out_of_range, "partition owns unknown node");
                if (seen[static_cast<std::size_t>(i)]++)
                    throw InputError(Errc::config_error, "partitions overlap");
            }
        if (std::find(seen.begin(), seen.end(), 0) != seen.end())
            throw InputError(Errc::config_error, "partitions do not cover every node");
    }

    const TransitionMatrix p = transition_matrix(g, policy);
    std::vector<LabelId> labels(static_cast<std::size_t>(n), kNoLabel);
    for (NodeId i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = y0.hard_label(i);

    std::vector<std::vector<Message>> batches(parts.size());
    for (int round = 1; round <= rounds; ++round) {
        std::vector<std::thread> pool;
        pool.reserve(parts.size());
        for (std::size_t w = 0; w < parts.size(); ++w)
            pool.emplace_back(
                [&, w] { batches[w] = map_phase(parts[w], labels, p); });
        for (std::thread& t : pool) t.join();  // round barrier

        std::size_t total = 0;
        for (const auto& b : batches) total += b.size();
        std::vector<Message> inbox;
        inbox.reserve(total);
        for (auto& b : batches) {
            inbox.insert(inbox.end(), b.begin(), b.end());
            b.clear();
        }
        std::sort(inbox.begin(), inbox.end(), [](const Message& a, const Message& b) {
            return std::tie(a.target, a.label, a.weight) < std::tie(b.target, b.label, b.weight);
        });

        std::vector<LabelId> next = labels;
        std::size_t k = 0;
        while (k < inbox.size()) {
            const NodeId tgt = inbox[k].target;
            std::size_t end = k;
            while (end < inbox.size() && inbox[end].target == tgt) ++end;
            next[static_cast<std::size_t>(tgt)] = reduce_phase(
                tgt, std::span<const Message>(inbox.data() + k, end - k),
                labels[static_cast<std::size_t>(tgt)]);
            k = end;
        }
        if (clamp_labeled)
            for (NodeId i : y0.labeled_set())
                next[static_cast<std::size_t>(i)] = y0.hard_label(i);

        if (trace) {
            int changed = 0;
            for (std::size_t i = 0; i < labels.size(); ++i)
                if (next[i] != labels[i]) ++changed;
            trace->push_back({round, changed, total});
        }
        labels = std::move(next);
    }

    Matrix out(static_cast<std::size_t>(n), static_cast<std::size_t>(y0.m()));
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] != kNoLabel) out(i, static_cast<std::size_t>(labels[i])) = 1.0;
    return LabelMatrix::adopt(std::move(out));
}

LabelMatrix run_rounds(const Graph& g, const LabelMatrix& y0, int workers, int rounds,
                       bool clamp_labeled, std::vector<RoundStat>* trace, DanglingPolicy policy) {
    return run_rounds_partitioned(g, y0, make_contiguous_partitions(g.n(), workers), rounds,
                                  clamp_labeled, trace, policy);
}

}  // namespace graphlabel
