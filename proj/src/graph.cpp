#include "ontolearn/graph.hpp"

#include <algorithm>
#include <functional>
#include <queue>

#include "ontolearn/error.hpp"

namespace ontolearn::graph {

namespace {

using MinQueue = std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>>;

// Tarjan's SCC, iterative. Returns the component index of every vertex.
std::vector<std::size_t> strongly_connected(const Digraph& g, std::size_t& component_count) {
    const std::size_t n = g.size();
    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, unvisited), low(n, 0), component(n, unvisited);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::size_t counter = 0;
    component_count = 0;

    struct Frame {
        std::size_t vertex;
        std::size_t next_edge;
    };
    std::vector<Frame> call;

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != unvisited) continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;

        while (!call.empty()) {
            auto& frame = call.back();
            const auto& succ = g.successors(frame.vertex);
            if (frame.next_edge < succ.size()) {
                const std::size_t w = succ[frame.next_edge++];
                if (index[w] == unvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[frame.vertex] = std::min(low[frame.vertex], index[w]);
                }
                continue;
            }
            const std::size_t v = frame.vertex;
            call.pop_back();
            if (!call.empty()) {
                low[call.back().vertex] = std::min(low[call.back().vertex], low[v]);
            }
            if (low[v] == index[v]) {
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    component[w] = component_count;
                } while (w != v);
                ++component_count;
            }
        }
    }
    return component;
}

}  // namespace

void Digraph::add_edge(std::size_t from, std::size_t to) {
    successors_.at(from).push_back(to);
    predecessors_.at(to).push_back(from);
}

std::vector<std::vector<std::size_t>> find_cycles(const Digraph& g) {
    std::size_t component_count = 0;
    const auto component = strongly_connected(g, component_count);
    const std::size_t n = g.size();

    std::vector<std::size_t> members(component_count, 0);
    for (std::size_t v = 0; v < n; ++v) ++members[component[v]];

    std::vector<std::vector<std::size_t>> cycles;
    std::vector<bool> reported(component_count, false);
    for (std::size_t start = 0; start < n; ++start) {
        const std::size_t c = component[start];
        if (reported[c]) continue;
        const auto& succ = g.successors(start);
        const bool self_loop = std::find(succ.begin(), succ.end(), start) != succ.end();
        if (members[c] == 1 && !self_loop) continue;
        reported[c] = true;
        if (self_loop) {
            cycles.push_back({start});
            continue;
        }
        // Shortest path start -> ... -> start inside the component.
        constexpr std::size_t none = static_cast<std::size_t>(-1);
        std::vector<std::size_t> parent(n, none);
        std::queue<std::size_t> frontier;
        std::size_t closing = none;
        frontier.push(start);
        while (!frontier.empty() && closing == none) {
            const std::size_t v = frontier.front();
            frontier.pop();
            auto next = g.successors(v);
            std::sort(next.begin(), next.end());
            for (std::size_t w : next) {
                if (component[w] != c) continue;
                if (w == start) {
                    closing = v;
                    break;
                }
                if (parent[w] == none) {
                    parent[w] = v;
                    frontier.push(w);
                }
            }
        }
        std::vector<std::size_t> path;
        for (std::size_t v = closing; v != start; v = parent[v]) path.push_back(v);
        path.push_back(start);
        std::reverse(path.begin(), path.end());
        cycles.push_back(std::move(path));
    }
    return cycles;
}

std::optional<std::vector<std::size_t>> topological_order(const Digraph& g) {
    const std::size_t n = g.size();
    std::vector<std::size_t> indegree(n, 0);
    for (std::size_t v = 0; v < n; ++v) indegree[v] = g.predecessors(v).size();
    MinQueue ready;
    for (std::size_t v = 0; v < n; ++v) {
        if (indegree[v] == 0) ready.push(v);
    }
    std::vector<std::size_t> order;
    order.reserve(n);
    while (!ready.empty()) {
        const std::size_t v = ready.top();
        ready.pop();
        order.push_back(v);
        for (std::size_t w : g.successors(v)) {
            if (--indegree[w] == 0) ready.push(w);
        }
    }
    if (order.size() != n) return std::nullopt;
    return order;
}

std::vector<std::size_t> ancestors_in_order(const Digraph& g, std::size_t target) {
    const std::size_t n = g.size();
    std::vector<bool> ancestor(n, false);
    std::vector<std::size_t> pending{target};
    while (!pending.empty()) {
        const std::size_t v = pending.back();
        pending.pop_back();
        for (std::size_t u : g.predecessors(v)) {
            if (u == target) {
                throw Error(ErrorKind::ValidationError, "precedes cycle through the queried chunk");
            }
            if (!ancestor[u]) {
                ancestor[u] = true;
                pending.push_back(u);
            }
        }
    }

    // Kahn restricted to the ancestor set. Any path between two ancestors
    // stays inside the set, so induced edges are enough.
    std::vector<std::size_t> indegree(n, 0);
    std::size_t total = 0;
    for (std::size_t v = 0; v < n; ++v) {
        if (!ancestor[v]) continue;
        ++total;
        for (std::size_t u : g.predecessors(v)) {
            if (ancestor[u]) ++indegree[v];
        }
    }
    MinQueue ready;
    for (std::size_t v = 0; v < n; ++v) {
        if (ancestor[v] && indegree[v] == 0) ready.push(v);
    }
    std::vector<std::size_t> order;
    order.reserve(total);
    while (!ready.empty()) {
        const std::size_t v = ready.top();
        ready.pop();
        order.push_back(v);
        for (std::size_t w : g.successors(v)) {
            if (ancestor[w] && --indegree[w] == 0) ready.push(w);
        }
    }
    if (order.size() != total) {
        throw Error(ErrorKind::ValidationError, "precedes cycle among prerequisites");
    }
    return order;
}

std::vector<std::size_t> order_subset(const Digraph& g, const std::vector<std::size_t>& subset) {
    const std::size_t n = g.size();
    std::vector<std::size_t> members(subset);
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    const std::size_t k = members.size();

    std::vector<std::size_t> slot(n, k);
    for (std::size_t i = 0; i < k; ++i) slot.at(members[i]) = i;

    // Reachability from each member, restricted to members at the end.
    std::vector<std::vector<std::size_t>> after(k);
    std::vector<std::size_t> indegree(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<bool> seen(n, false);
        std::vector<std::size_t> pending{members[i]};
        while (!pending.empty()) {
            const std::size_t v = pending.back();
            pending.pop_back();
            for (std::size_t w : g.successors(v)) {
                if (seen[w]) continue;
                seen[w] = true;
                pending.push_back(w);
                if (slot[w] != k && slot[w] != i) {
                    after[i].push_back(slot[w]);
                    ++indegree[slot[w]];
                }
            }
        }
    }

    MinQueue ready;
    for (std::size_t i = 0; i < k; ++i) {
        if (indegree[i] == 0) ready.push(i);
    }
    std::vector<std::size_t> order;
    order.reserve(k);
    while (!ready.empty()) {
        const std::size_t i = ready.top();
        ready.pop();
        order.push_back(members[i]);
        for (std::size_t j : after[i]) {
            if (--indegree[j] == 0) ready.push(j);
        }
    }
    if (order.size() != k) {
        throw Error(ErrorKind::ValidationError, "precedes cycle among ordered chunks");
    }
    return order;
}

}  // namespace ontolearn::graph
