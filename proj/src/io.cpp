#include "graphlabel/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

namespace graphlabel {

namespace {

[[noreturn]] void parse_fail(const std::string& path, std::size_t line, const std::string& what) {
    throw InputError(Errc::parse_error,
                     path + ":" + std::to_string(line) + ": " + what);
}

// Strips a trailing carriage return and detects comment/blank lines.
bool skippable(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line.empty() || line[0] == '#';
}

std::vector<std::string> fields(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

long long parse_int(const std::string& tok, const std::string& path, std::size_t line) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(tok, &used);
        if (used != tok.size()) parse_fail(path, line, "trailing characters in '" + tok + "'");
        return v;
    } catch (const InputError&) {
        throw;
    } catch (const std::exception&) {
        parse_fail(path, line, "expected an integer, got '" + tok + "'");
    }
}

double parse_real(const std::string& tok, const std::string& path, std::size_t line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) parse_fail(path, line, "trailing characters in '" + tok + "'");
        return v;
    } catch (const InputError&) {
        throw;
    } catch (const std::exception&) {
        parse_fail(path, line, "expected a number, got '" + tok + "'");
    }
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError(Errc::io_error, "cannot open " + path);
    return in;
}

}  // namespace

Graph load_graph(const std::string& path) {
    std::ifstream in = open_input(path);
    std::string line;
    std::size_t lineno = 0;

    bool directed = false;
    NodeId declared = -1;  // node count from the header, -1 when absent
    bool saw_header = false;

    std::vector<Edge> edges;
    NodeId max_id = -1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream is(line.substr(1));
            std::string kind;
            is >> kind;
            if (!saw_header && edges.empty() && (kind == "directed" || kind == "undirected")) {
                long long count = 0;
                if (!(is >> count) || count < 0)
                    parse_fail(path, lineno, "header needs a non-negative node count");
                directed = kind == "directed";
                declared = static_cast<NodeId>(count);
                saw_header = true;
            }
            continue;  // other comment lines are ignored
        }
        const auto tok = fields(line);
        if (tok.size() != 2 && tok.size() != 3)
            parse_fail(path, lineno, "expected src, dst and an optional weight");
        const long long src = parse_int(tok[0], path, lineno);
        const long long dst = parse_int(tok[1], path, lineno);
        const double w = tok.size() == 3 ? parse_real(tok[2], path, lineno) : 1.0;
        if (w < 0.0)
            throw InputError(Errc::negative_weight, path + ":" + std::to_string(lineno) +
                                                        ": negative edge weight");
        const NodeId limit = declared >= 0 ? declared : std::numeric_limits<NodeId>::max();
        if (src < 0 || dst < 0 || src >= limit || dst >= limit)
            throw InputError(Errc::node_id_out_of_range,
                             path + ":" + std::to_string(lineno) + ": node id out of range");
        edges.push_back({static_cast<NodeId>(src), static_cast<NodeId>(dst), w});
        max_id = std::max({max_id, static_cast<NodeId>(src), static_cast<NodeId>(dst)});
    }
    const NodeId n = declared >= 0 ? declared : max_id + 1;
    return build_graph(n, edges, directed);
}

void write_graph(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) throw InputError(Errc::io_error, "cannot write " + path);
    out << (g.directed() ? "#directed " : "#undirected ") << g.n() << "\n";
    char buf[64];
    for (const Edge& e : g.edges()) {
        std::snprintf(buf, sizeof(buf), "%.17g", e.w);
        out << e.src << '\t' << e.dst << '\t' << buf << '\n';
    }
    if (!out) throw InputError(Errc::io_error, "failed writing " + path);
}

LabelMatrix load_labels(const std::string& path, NodeId n, LabelVocab& vocab, bool extend_vocab,
                        LabelId m) {
    std::ifstream in = open_input(path);
    std::string line;
    std::size_t lineno = 0;

    // Accumulate per-node mass per label id; normalized at the end.
    std::map<NodeId, std::map<LabelId, double>> rows;
    while (std::getline(in, line)) {
        ++lineno;
        if (skippable(line)) continue;
        const auto tok = fields(line);
        if (tok.size() != 2 && tok.size() != 3)
            parse_fail(path, lineno, "expected node, label and an optional weight");
        const long long node = parse_int(tok[0], path, lineno);
        if (node < 0 || node >= n)
            throw InputError(Errc::node_id_out_of_range,
                             path + ":" + std::to_string(lineno) + ": node id out of range");
        LabelId label = vocab.id_of(tok[1]);
        if (label == kNoLabel) {
            if (!extend_vocab || (m > 0 && vocab.size() >= m))
                throw InputError(Errc::unknown_label, path + ":" + std::to_string(lineno) +
                                                          ": unknown label '" + tok[1] + "'");
            label = vocab.intern(tok[1]);
        }
        const double w = tok.size() == 3 ? parse_real(tok[2], path, lineno) : 1.0;
        if (w < 0.0)
            throw InputError(Errc::negative_weight, path + ":" + std::to_string(lineno) +
                                                        ": negative label weight");
        rows[static_cast<NodeId>(node)][label] += w;
    }

    const LabelId width = m > 0 ? m : vocab.size();
    Matrix y(static_cast<std::size_t>(n), static_cast<std::size_t>(width));
    std::vector<NodeId> labeled;
    for (const auto& [node, masses] : rows) {
        double total = 0.0;
        for (const auto& [label, w] : masses) total += w;
        if (total <= 0.0)
            throw InputError(Errc::zero_mass_row,
                             path + ": node " + std::to_string(node) + " has zero label mass");
        for (const auto& [label, w] : masses)
            y(static_cast<std::size_t>(node), static_cast<std::size_t>(label)) = w / total;
        labeled.push_back(node);
    }
    return LabelMatrix::validated(std::move(y), std::move(labeled));
}

std::vector<std::vector<double>> load_points(const std::string& path) {
    std::ifstream in = open_input(path);
    std::string line;
    std::size_t lineno = 0;
    std::vector<std::vector<double>> points;
    while (std::getline(in, line)) {
        ++lineno;
        if (skippable(line)) continue;
        const auto tok = fields(line);
        std::vector<double> p;
        p.reserve(tok.size());
        for (const std::string& t : tok) p.push_back(parse_real(t, path, lineno));
        if (!points.empty() && p.size() != points.front().size())
            parse_fail(path, lineno, "inconsistent point dimension");
        points.push_back(std::move(p));
    }
    return points;
}

void write_result(const std::string& path, const LabelMatrix& labels, const LabelVocab& vocab) {
    std::ofstream file;
    if (!path.empty()) {
        file.open(path);
        if (!file) throw InputError(Errc::io_error, "cannot write " + path);
    }
    std::ostream& out = path.empty() ? std::cout : file;

    char buf[32];
    std::vector<std::pair<double, LabelId>> row;
    for (NodeId i = 0; i < labels.n(); ++i) {
        row.clear();
        for (LabelId c = 0; c < labels.m(); ++c) {
            const double p =
                labels.values()(static_cast<std::size_t>(i), static_cast<std::size_t>(c));
            if (p > 0.0) row.emplace_back(-p, c);  // descending prob, ascending label
        }
        std::sort(row.begin(), row.end());
        for (const auto& [neg, label] : row) {
            std::snprintf(buf, sizeof(buf), "%.6f", -neg);
            out << i << '\t' << vocab.name(label) << '\t' << buf << '\n';
        }
    }
    if (!out) throw InputError(Errc::io_error, "failed writing result");
}

}  // namespace graphlabel
