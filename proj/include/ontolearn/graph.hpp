#pragma once

#include <cstddef>
#include <optional>
#include <vector>

// Index-based directed graph algorithms shared by the ontology queries.
// Vertex indices double as the tie-break order: callers number vertices in
// the order they want ties resolved (ascending id, usually).
namespace ontolearn::graph {

class Digraph {
public:
    explicit Digraph(std::size_t vertex_count = 0)
        : successors_(vertex_count), predecessors_(vertex_count) {}

    std::size_t size() const noexcept { return successors_.size(); }

    void add_edge(std::size_t from, std::size_t to);

    const std::vector<std::size_t>& successors(std::size_t v) const { return successors_.at(v); }
    const std::vector<std::size_t>& predecessors(std::size_t v) const { return predecessors_.at(v); }

private:
    std::vector<std::vector<std::size_t>> successors_;
    std::vector<std::vector<std::size_t>> predecessors_;
};

// One representative cycle per strongly connected component that contains a
// cycle. Each cycle starts at the component's smallest vertex and lists the
// path back to it (the closing vertex is not repeated). Self-loops yield {v}.
std::vector<std::vector<std::size_t>> find_cycles(const Digraph& g);

// Kahn's algorithm, always emitting the smallest ready vertex.
// std::nullopt when the graph has a cycle.
std::optional<std::vector<std::size_t>> topological_order(const Digraph& g);

// Every vertex with a path to `target`, prerequisites first, ties by index.
// Throws ValidationError if `target` lies on a cycle or its ancestry is cyclic.
std::vector<std::size_t> ancestors_in_order(const Digraph& g, std::size_t target);

// Orders `subset` so that whenever x reaches y through g (via any path, even
// through vertices outside the subset), x comes first. Ties by index.
std::vector<std::size_t> order_subset(const Digraph& g, const std::vector<std::size_t>& subset);

}  // namespace ontolearn::graph
