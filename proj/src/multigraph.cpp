#include "saw/multigraph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "saw/errors.hpp"

namespace saw {

std::vector<std::vector<int>> MultiGraph::adjacency() const {
    std::vector<std::vector<int>> adj(n);
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        adj[edges[e].u].push_back(e);
        adj[edges[e].v].push_back(e);
    }
    return adj;
}

int MultiGraph::degree(int v) const {
    int d = 0;
    for (const auto& e : edges) d += (e.u == v) + (e.v == v);
    return d;
}

std::vector<int> MultiGraph::used_vertices() const {
    std::set<int> s;
    for (const auto& e : edges) {
        s.insert(e.u);
        s.insert(e.v);
    }
    return {s.begin(), s.end()};
}

// connectivity over the vertices incident to at least one edge
bool MultiGraph::connected() const {
    auto used = used_vertices();
    if (used.empty()) return true;
    auto adj = adjacency();
    std::vector<char> seen(n, 0);
    std::vector<int> stack{used[0]};
    seen[used[0]] = 1;
    size_t count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int e : adj[v]) {
            int u = edges[e].u == v ? edges[e].v : edges[e].u;
            if (!seen[u]) {
                seen[u] = 1;
                ++count;
                stack.push_back(u);
            }
        }
    }
    return count == used.size();
}

namespace {

// cutvertices of a connected multigraph via Tarjan lowpoints (vertices with
// no incident edge are ignored)
std::vector<int> cutvertices_of(const MultiGraph& g) {
    auto adj = g.adjacency();
    std::vector<int> disc(g.n, -1), low(g.n, 0);
    std::vector<int> result;
    int timer = 0;
    std::function<void(int, int)> dfs = [&](int v, int parent_edge) {
        disc[v] = low[v] = timer++;
        int children = 0;
        bool cut = false;
        for (int e : adj[v]) {
            if (e == parent_edge) continue;
            int u = g.edges[e].u == v ? g.edges[e].v : g.edges[e].u;
            if (disc[u] < 0) {
                ++children;
                dfs(u, e);
                low[v] = std::min(low[v], low[u]);
                if (parent_edge != -1 && low[u] >= disc[v]) cut = true;
            } else {
                low[v] = std::min(low[v], disc[u]);
            }
        }
        if (parent_edge == -1 && children > 1) cut = true;
        if (cut) result.push_back(v);
    };
    for (int v : g.used_vertices())
        if (disc[v] < 0) dfs(v, -1);
    std::sort(result.begin(), result.end());
    return result;
}

} // namespace

bool MultiGraph::two_connected() const {
    if (used_vertices().size() < 2 || !connected()) return false;
    for (const auto& e : edges)
        if (e.u == e.v) return false;
    if (used_vertices().size() == 2) return !edges.empty();
    return cutvertices_of(*this).empty();
}

bool MultiGraph::is_cycle() const {
    auto used = used_vertices();
    if (used.size() < 3 || edges.size() != used.size() || !connected()) return false;
    std::set<std::pair<int, int>> seen;
    for (const auto& e : edges) {
        auto key = std::minmax(e.u, e.v);
        if (!seen.insert({key.first, key.second}).second) return false; // parallel
    }
    for (int v : used)
        if (degree(v) != 2) return false;
    return true;
}

bool MultiGraph::is_multilink() const { return n == 2; }

MultiGraph multigraph_of(const LabelledGraph& g) {
    MultiGraph m;
    m.n = g.num_vertices();
    std::vector<char> used(g.num_darts(), 0);
    for (int d = 0; d < g.num_darts(); ++d) {
        if (used[d]) continue;
        int t = g.twin.at(d);
        used[d] = used[t] = 1;
        int a = std::min(d, t);
        MEdge e;
        e.u = g.darts[a].tail;
        e.v = g.darts[a].head;
        e.id = a;
        e.label_uv = g.darts[a].label;
        e.label_vu = g.darts[g.twin[a]].label;
        m.edges.push_back(e);
    }
    return m;
}

BlockCutTree block_cut_tree(const LabelledGraph& g) {
    if (g.num_vertices() < 2)
        throw InvalidSpecError("block_cut_tree requires >= 2 vertices");
    MultiGraph m = multigraph_of(g);
    if (!m.connected()) throw InvalidSpecError("block_cut_tree requires a connected graph");

    auto adj = m.adjacency();
    std::vector<int> disc(m.n, -1), low(m.n, 0);
    std::vector<int> edge_stack;
    std::vector<std::vector<int>> block_edge_sets;
    int timer = 0;
    std::function<void(int, int)> dfs = [&](int v, int parent_edge) {
        disc[v] = low[v] = timer++;
        for (int e : adj[v]) {
            if (e == parent_edge) continue;
            int u = m.edges[e].u == v ? m.edges[e].v : m.edges[e].u;
            if (disc[u] < 0) {
                edge_stack.push_back(e);
                dfs(u, e);
                low[v] = std::min(low[v], low[u]);
                if (low[u] >= disc[v]) {
                    std::vector<int> es;
                    while (true) {
                        int top = edge_stack.back();
                        edge_stack.pop_back();
                        es.push_back(top);
                        if (top == e) break;
                    }
                    block_edge_sets.push_back(std::move(es));
                }
            } else if (disc[u] < disc[v]) {
                edge_stack.push_back(e);
                low[v] = std::min(low[v], disc[u]);
            }
        }
    };
    dfs(0, -1);

    BlockCutTree tree;
    std::vector<std::set<int>> vsets;
    for (auto& es : block_edge_sets) {
        std::set<int> vs;
        std::vector<int> ids;
        for (int e : es) {
            vs.insert(m.edges[e].u);
            vs.insert(m.edges[e].v);
            ids.push_back(m.edges[e].id);
        }
        std::sort(ids.begin(), ids.end());
        vsets.push_back(vs);
        tree.blocks.emplace_back(vs.begin(), vs.end());
        tree.block_edges.push_back(std::move(ids));
    }
    // deterministic order: by sorted vertex list
    std::vector<int> order(tree.blocks.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return tree.blocks[a] < tree.blocks[b];
    });
    BlockCutTree sorted;
    for (int i : order) {
        sorted.blocks.push_back(tree.blocks[i]);
        sorted.block_edges.push_back(tree.block_edges[i]);
    }
    // cutvertices: vertices in >= 2 blocks
    std::map<int, int> multiplicity;
    for (const auto& b : sorted.blocks)
        for (int v : b) ++multiplicity[v];
    for (auto [v, k] : multiplicity)
        if (k > 1) sorted.cutvertices.push_back(v);
    for (int bi = 0; bi < static_cast<int>(sorted.blocks.size()); ++bi)
        for (int v : sorted.blocks[bi])
            if (multiplicity[v] > 1) sorted.incidence.push_back({bi, v});
    return sorted;
}

} // namespace saw
