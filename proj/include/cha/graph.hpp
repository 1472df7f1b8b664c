#pragma once

#include <cha/program.hpp>

#include <cstddef>
#include <optional>
#include <set>
#include <vector>

namespace cha {

// Directed graph over nodes 0..size()-1. Successors keep insertion order and
// carry no duplicates.
class Digraph {
  public:
    explicit Digraph(std::size_t size = 0) : successors_(size) {}

    void add_edge(std::size_t from, std::size_t to);

    [[nodiscard]] std::size_t size() const { return successors_.size(); }
    [[nodiscard]] const std::vector<std::size_t>& successors(std::size_t node) const { return successors_[node]; }
    [[nodiscard]] bool has_edge(std::size_t from, std::size_t to) const;

    // Subgraph induced by `nodes`; node i of the result is nodes[i].
    [[nodiscard]] Digraph induced(const std::vector<std::size_t>& nodes) const;

  private:
    std::vector<std::vector<std::size_t>> successors_;
};

struct Scc {
    std::vector<std::size_t> nodes;  // ascending
    bool recursive = false;          // has a cycle (including a self-loop)
};

// Tarjan; components come out callees first.
std::vector<Scc> scc_order(const Digraph& graph);

// Targets of DFS back edges, DFS started from every unvisited node in order.
std::set<std::size_t> feedback_widening_points(const Digraph& graph);

// Loops found by the traverse procedure, then a greedy cover choosing the node
// on most remaining loops (smallest index on ties). If the cover leaves a
// cycle of the graph uncut, traverse runs again on the remaining graph and
// the cover continues.
std::set<std::size_t> cut_loop_widening_points(const Digraph& graph);

// True iff removing `points` leaves the graph acyclic.
bool cuts_all_cycles(const Digraph& graph, const std::set<std::size_t>& points);

// Nodes are the defined predicates in first-definition order; p -> q iff a
// clause of p calls q. Calls to undefined predicates add no edge.
struct DepGraph {
    std::vector<PredicateKey> predicates;
    Digraph graph;

    [[nodiscard]] std::optional<std::size_t> find(const PredicateKey& key) const;
};

DepGraph build_dep_graph(const Program& program);

}  // namespace cha
