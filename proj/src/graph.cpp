#include <cha/graph.hpp>

#include <algorithm>
#include <functional>
#include <map>

namespace cha {

void Digraph::add_edge(std::size_t from, std::size_t to) {
    auto& succ = successors_.at(from);
    if (to >= successors_.size()) {
        throw std::out_of_range("edge target out of range");
    }
    if (std::find(succ.begin(), succ.end(), to) == succ.end()) {
        succ.push_back(to);
    }
}

bool Digraph::has_edge(std::size_t from, std::size_t to) const {
    const auto& succ = successors_.at(from);
    return std::find(succ.begin(), succ.end(), to) != succ.end();
}

Digraph Digraph::induced(const std::vector<std::size_t>& nodes) const {
    std::map<std::size_t, std::size_t> local;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        local[nodes[i]] = i;
    }
    Digraph out(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t s : successors_[nodes[i]]) {
            if (auto it = local.find(s); it != local.end()) {
                out.add_edge(i, it->second);
            }
        }
    }
    return out;
}

std::vector<Scc> scc_order(const Digraph& graph) {
    const std::size_t n = graph.size();
    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, unvisited);
    std::vector<std::size_t> low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<Scc> out;
    std::size_t counter = 0;

    std::function<void(std::size_t)> connect = [&](std::size_t v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (std::size_t w : graph.successors(v)) {
            if (index[w] == unvisited) {
                connect(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] != index[v]) {
            return;
        }
        Scc scc;
        std::size_t w = 0;
        do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            scc.nodes.push_back(w);
        } while (w != v);
        std::sort(scc.nodes.begin(), scc.nodes.end());
        scc.recursive = scc.nodes.size() > 1 || graph.has_edge(v, v);
        out.push_back(std::move(scc));
    };

    for (std::size_t v = 0; v < n; ++v) {
        if (index[v] == unvisited) {
            connect(v);
        }
    }
    return out;
}

std::set<std::size_t> feedback_widening_points(const Digraph& graph) {
    enum class Mark { White, Grey, Black };
    std::vector<Mark> mark(graph.size(), Mark::White);
    std::set<std::size_t> points;
    std::function<void(std::size_t)> dfs = [&](std::size_t v) {
        mark[v] = Mark::Grey;
        for (std::size_t w : graph.successors(v)) {
            if (mark[w] == Mark::Grey) {
                points.insert(w);
            } else if (mark[w] == Mark::White) {
                dfs(w);
            }
        }
        mark[v] = Mark::Black;
    };
    for (std::size_t v = 0; v < graph.size(); ++v) {
        if (mark[v] == Mark::White) {
            dfs(v);
        }
    }
    return points;
}

namespace {

using Loop = std::set<std::size_t>;

// Loops recorded by traverse over the nodes not in `removed`.
std::vector<Loop> traverse_loops(const Digraph& graph, const std::set<std::size_t>& removed) {
    std::vector<bool> visited(graph.size(), false);
    std::vector<Loop> loops;
    // ancestors.back() is the head of the ancestor list (most recent node).
    std::vector<std::size_t> ancestors;
    std::function<void(std::size_t)> traverse = [&](std::size_t n) {
        if (visited[n]) {
            auto it = std::find(ancestors.begin(), ancestors.end(), n);
            if (it != ancestors.end()) {
                Loop loop(it, ancestors.end());
                if (std::find(loops.begin(), loops.end(), loop) == loops.end()) {
                    loops.push_back(std::move(loop));
                }
            }
            return;
        }
        visited[n] = true;
        ancestors.push_back(n);
        for (std::size_t s : graph.successors(n)) {
            if (!removed.contains(s)) {
                traverse(s);
            }
        }
        ancestors.pop_back();
    };
    for (std::size_t n = 0; n < graph.size(); ++n) {
        if (!removed.contains(n)) {
            traverse(n);
        }
    }
    return loops;
}

}  // namespace

std::set<std::size_t> cut_loop_widening_points(const Digraph& graph) {
    std::set<std::size_t> points;
    std::vector<Loop> loops = traverse_loops(graph, points);
    while (!loops.empty()) {
        while (!loops.empty()) {
            std::vector<std::size_t> count(graph.size(), 0);
            for (const Loop& l : loops) {
                for (std::size_t n : l) {
                    ++count[n];
                }
            }
            std::size_t wp = static_cast<std::size_t>(std::max_element(count.begin(), count.end()) - count.begin());
            std::erase_if(loops, [&](const Loop& l) { return l.contains(wp); });
            points.insert(wp);
        }
        loops = traverse_loops(graph, points);
    }
    return points;
}

bool cuts_all_cycles(const Digraph& graph, const std::set<std::size_t>& points) {
    // Kahn's algorithm on the graph without `points`.
    const std::size_t n = graph.size();
    std::vector<std::size_t> indegree(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        if (points.contains(v)) {
            continue;
        }
        for (std::size_t w : graph.successors(v)) {
            if (!points.contains(w)) {
                ++indegree[w];
            }
        }
    }
    std::vector<std::size_t> ready;
    std::size_t remaining = 0;
    for (std::size_t v = 0; v < n; ++v) {
        if (!points.contains(v)) {
            ++remaining;
            if (indegree[v] == 0) {
                ready.push_back(v);
            }
        }
    }
    while (!ready.empty()) {
        std::size_t v = ready.back();
        ready.pop_back();
        --remaining;
        for (std::size_t w : graph.successors(v)) {
            if (!points.contains(w) && --indegree[w] == 0) {
                ready.push_back(w);
            }
        }
    }
    return remaining == 0;
}

std::optional<std::size_t> DepGraph::find(const PredicateKey& key) const {
    auto it = std::find(predicates.begin(), predicates.end(), key);
    if (it == predicates.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - predicates.begin());
}

DepGraph build_dep_graph(const Program& program) {
    DepGraph g{program.predicates(), Digraph(program.predicates().size())};
    std::map<PredicateKey, std::size_t> index;
    for (std::size_t i = 0; i < g.predicates.size(); ++i) {
        index[g.predicates[i]] = i;
    }
    for (const Clause& c : program.clauses()) {
        std::size_t from = index.at(c.head.key());
        for (const BodyLiteral& lit : c.body) {
            if (const Atom* call = std::get_if<Atom>(&lit)) {
                if (auto it = index.find(call->key()); it != index.end()) {
                    g.graph.add_edge(from, it->second);
                }
            }
        }
    }
    return g;
}

}  // namespace cha
