#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "graphlabel/graph.hpp"

namespace graphlabel {

// Label names in first-appearance order; ids are internal, files carry names.
class LabelVocab {
public:
    LabelId id_of(const std::string& name) const {
        auto it = ids_.find(name);
        return it == ids_.end() ? kNoLabel : it->second;
    }
    LabelId intern(const std::string& name) {
        auto it = ids_.find(name);
        if (it != ids_.end()) return it->second;
        const LabelId id = static_cast<LabelId>(names_.size());
        names_.push_back(name);
        ids_.emplace(name, id);
        return id;
    }
    const std::string& name(LabelId id) const { return names_[static_cast<std::size_t>(id)]; }
    LabelId size() const { return static_cast<LabelId>(names_.size()); }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, LabelId> ids_;
};

// Edge-list TSV: optional first line `#directed N` or `#undirected N`, then
// `src<TAB>dst[<TAB>weight]` with 0-based ids and weight defaulting to 1.
// Without a header the graph is undirected over 0..max id.
Graph load_graph(const std::string& path);

// Writes the canonical edge list back out, header included.
void write_graph(const std::string& path, const Graph& g);

// Label TSV `node<TAB>label[<TAB>weight]`; repeated node rows accumulate and
// are normalized into a distribution. New names extend `vocab` in appearance
// order unless extend_vocab is false, in which case they are rejected.
// Passing m > 0 caps the vocabulary size (and fixes the matrix width).
LabelMatrix load_labels(const std::string& path, NodeId n, LabelVocab& vocab,
                        bool extend_vocab = true, LabelId m = 0);

// Point TSV: one point per line, the same number of coordinates on each.
std::vector<std::vector<double>> load_points(const std::string& path);

// Result TSV `node<TAB>label<TAB>prob` (6 decimals), node ascending, then
// probability descending, then label id; zero rows and zero entries are
// omitted. An empty path writes to stdout.
void write_result(const std::string& path, const LabelMatrix& labels, const LabelVocab& vocab);

}  // namespace graphlabel
