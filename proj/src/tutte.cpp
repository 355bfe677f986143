#include "saw/tutte.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>

#include "saw/errors.hpp"

namespace saw {

std::string to_string(BlockKind k) {
    switch (k) {
        case BlockKind::Cycle: return "cycle";
        case BlockKind::Multilink: return "multilink";
        case BlockKind::ThreeConnected: return "three_connected";
    }
    return "?";
}

std::vector<std::vector<std::pair<int, int>>> ThreeBlockTree::node_adjacency() const {
    std::vector<std::vector<std::pair<int, int>>> adj(nodes.size());
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        adj[edges[e].n1].push_back({e, edges[e].n2});
        adj[edges[e].n2].push_back({e, edges[e].n1});
    }
    return adj;
}

namespace {

using EdgeList = std::vector<MEdge>;

std::vector<int> used_vertices(const EdgeList& edges) {
    std::set<int> s;
    for (const auto& e : edges) {
        s.insert(e.u);
        s.insert(e.v);
    }
    return {s.begin(), s.end()};
}

std::map<int, std::vector<int>> adjacency_of(const EdgeList& edges) {
    std::map<int, std::vector<int>> adj;
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
        adj[edges[i].u].push_back(i);
        adj[edges[i].v].push_back(i);
    }
    return adj;
}

// connected components of the piece after removing vertices x and y
std::vector<std::vector<int>> components_without(const EdgeList& edges, int x, int y) {
    auto adj = adjacency_of(edges);
    std::set<int> seen{x, y};
    std::vector<std::vector<int>> comps;
    for (const auto& [v, _] : adj) {
        if (seen.count(v)) continue;
        std::vector<int> comp, stack{v};
        seen.insert(v);
        while (!stack.empty()) {
            int w = stack.back();
            stack.pop_back();
            comp.push_back(w);
            for (int e : adj[w]) {
                int u = edges[e].u == w ? edges[e].v : edges[e].u;
                if (u == x || u == y || seen.count(u)) continue;
                seen.insert(u);
                stack.push_back(u);
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    std::sort(comps.begin(), comps.end());
    return comps;
}

bool piece_is_cycle(const EdgeList& edges) {
    auto verts = used_vertices(edges);
    if (verts.size() < 3 || edges.size() != verts.size()) return false;
    std::set<std::pair<int, int>> simple;
    std::map<int, int> deg;
    for (const auto& e : edges) {
        auto [a, b] = std::minmax(e.u, e.v);
        if (!simple.insert({a, b}).second) return false;
        ++deg[e.u];
        ++deg[e.v];
    }
    for (int v : verts)
        if (deg[v] != 2) return false;
    // connectivity follows from all-degree-2 + simple + |E| == |V| only if
    // connected; check explicitly
    return components_without(edges, -1, -1).size() == 1;
}

// cutvertices of the piece with vertex x removed (x = -1 for none)
std::vector<int> piece_cutvertices(const EdgeList& edges, int x) {
    auto adj = adjacency_of(edges);
    std::map<int, int> disc, low;
    std::vector<int> result;
    int timer = 0;
    std::function<void(int, int)> dfs = [&](int v, int parent_edge) {
        disc[v] = low[v] = timer++;
        int children = 0;
        bool cut = false;
        for (int e : adj[v]) {
            if (e == parent_edge) continue;
            int u = edges[e].u == v ? edges[e].v : edges[e].u;
            if (u == x) continue;
            if (!disc.count(u)) {
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
    for (const auto& [v, _] : adj) {
        if (v == x) continue;
        if (!disc.count(v)) dfs(v, -1);
        break; // piece minus x stays connected for 2-connected pieces
    }
    std::sort(result.begin(), result.end());
    return result;
}

struct Splitter {
    int fresh_id;
    std::vector<std::pair<BlockKind, EdgeList>> nodes;

    void process(EdgeList piece) {
        auto verts = used_vertices(piece);
        if (verts.size() == 2) {
            nodes.push_back({BlockKind::Multilink, std::move(piece)});
            return;
        }
        if (piece_is_cycle(piece)) {
            nodes.push_back({BlockKind::Cycle, std::move(piece)});
            return;
        }

        // split pair candidates: parallel pairs and separation pairs
        std::set<std::pair<int, int>> cand;
        std::map<std::pair<int, int>, int> parallel;
        for (const auto& e : piece) {
            auto [a, b] = std::minmax(e.u, e.v);
            if (++parallel[{a, b}] == 2) cand.insert({a, b});
        }
        for (int u : verts)
            for (int v : piece_cutvertices(piece, u))
                cand.insert(std::minmax(u, v));

        if (cand.empty()) {
            nodes.push_back({BlockKind::ThreeConnected, std::move(piece)});
            return;
        }

        // choose the most balanced candidate (smallest maximal side)
        std::pair<int, int> best{-1, -1};
        long best_score = -1;
        for (auto [u, v] : cand) {
            auto comps = components_without(piece, u, v);
            int direct = 0;
            std::map<int, int> comp_of;
            for (size_t i = 0; i < comps.size(); ++i)
                for (int w : comps[i]) comp_of[w] = static_cast<int>(i);
            std::vector<long> size(comps.size(), 0);
            for (const auto& e : piece) {
                bool eu = (e.u == u || e.u == v), ev = (e.v == u || e.v == v);
                if (eu && ev) ++direct;
                else size[comp_of.at(eu ? e.v : e.u)]++;
            }
            bool splits = comps.size() >= 2 || (direct >= 2 && !comps.empty());
            if (!splits) continue;
            long score = 0;
            for (long s : size) score = std::max(score, s);
            if (best_score < 0 || score < best_score ||
                (score == best_score && std::pair(u, v) < best)) {
                best_score = score;
                best = {u, v};
            }
        }
        if (best.first < 0) {
            nodes.push_back({BlockKind::ThreeConnected, std::move(piece)});
            return;
        }

        auto [u, v] = best;
        auto comps = components_without(piece, u, v);
        std::map<int, int> comp_of;
        for (size_t i = 0; i < comps.size(); ++i)
            for (int w : comps[i]) comp_of[w] = static_cast<int>(i);
        EdgeList direct;
        std::vector<EdgeList> sides(comps.size());
        for (const auto& e : piece) {
            bool eu = (e.u == u || e.u == v), ev = (e.v == u || e.v == v);
            if (eu && ev) direct.push_back(e);
            else sides[comp_of.at(eu ? e.v : e.u)].push_back(e);
        }

        auto fresh_virtual = [&](int a, int b) {
            MEdge e;
            e.u = a;
            e.v = b;
            e.id = fresh_id++;
            e.virt = true;
            return e;
        };

        if (comps.size() == 2 && direct.empty()) {
            MEdge p = fresh_virtual(u, v);
            sides[0].push_back(p);
            sides[1].push_back(p); // same pair id: amalgamated along it
            process(std::move(sides[0]));
            process(std::move(sides[1]));
            return;
        }
        // central bond: direct edges plus one virtual per side
        EdgeList bond = direct;
        for (auto& side : sides) {
            MEdge p = fresh_virtual(u, v);
            bond.push_back(p);
            side.push_back(p);
        }
        nodes.push_back({BlockKind::Multilink, std::move(bond)});
        for (auto& side : sides) process(std::move(side));
    }
};

BlockKind classify(const EdgeList& edges) {
    if (used_vertices(edges).size() == 2) return BlockKind::Multilink;
    if (piece_is_cycle(edges)) return BlockKind::Cycle;
    return BlockKind::ThreeConnected;
}

} // namespace

std::vector<std::array<int, 6>> canonical_edges(const MultiGraph& g) {
    std::vector<std::array<int, 6>> out;
    for (const auto& e : g.edges) {
        if (e.u <= e.v)
            out.push_back({e.u, e.v, e.id, e.virt ? 1 : 0, e.label_uv, e.label_vu});
        else
            out.push_back({e.v, e.u, e.id, e.virt ? 1 : 0, e.label_vu, e.label_uv});
    }
    std::sort(out.begin(), out.end());
    return out;
}

ThreeBlockTree tutte_decomposition(const MultiGraph& g) {
    for (const auto& e : g.edges)
        if (e.u == e.v) throw InvalidSpecError("tutte_decomposition: loops forbidden");
    if (g.edges.size() < 3)
        throw InvalidSpecError("tutte_decomposition requires >= 3 edges");
    if (!g.two_connected())
        throw InvalidSpecError("tutte_decomposition requires a 2-connected graph");

    int fresh = 0;
    for (const auto& e : g.edges) fresh = std::max(fresh, e.id + 1);
    Splitter splitter{fresh, {}};
    splitter.process(g.edges);

    // merge adjacent nodes of equal mergeable kind (both cycles / multilinks)
    auto& nodes = splitter.nodes;
    bool merged = true;
    while (merged) {
        merged = false;
        // locate the two holders of every virtual pair id
        std::map<int, std::vector<int>> holder;
        for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
            for (const auto& e : nodes[i].second)
                if (e.virt) holder[e.id].push_back(i);
        for (auto& [pid, hs] : holder) {
            if (hs.size() != 2 || hs[0] == hs[1]) continue;
            auto k1 = nodes[hs[0]].first, k2 = nodes[hs[1]].first;
            bool mergeable = (k1 == k2) && (k1 == BlockKind::Cycle ||
                                            k1 == BlockKind::Multilink);
            if (!mergeable) continue;
            EdgeList combined;
            for (int h : {hs[0], hs[1]})
                for (const auto& e : nodes[h].second)
                    if (!(e.virt && e.id == pid)) combined.push_back(e);
            nodes[hs[0]] = {classify(combined), std::move(combined)};
            nodes.erase(nodes.begin() + hs[1]);
            merged = true;
            break;
        }
    }

    // canonical node order and intra-node edge order
    for (auto& [kind, edges] : nodes) {
        std::sort(edges.begin(), edges.end(), [](const MEdge& a, const MEdge& b) {
            auto ka = std::minmax(a.u, a.v), kb = std::minmax(b.u, b.v);
            return std::tie(ka.first, ka.second, a.virt, a.id) <
                   std::tie(kb.first, kb.second, b.virt, b.id);
        });
    }
    std::sort(nodes.begin(), nodes.end(), [](const auto& a, const auto& b) {
        auto va = used_vertices(a.second), vb = used_vertices(b.second);
        return std::tie(va, a.first) < std::tie(vb, b.first);
    });

    ThreeBlockTree tree;
    for (auto& [kind, edges] : nodes) {
        TBTNode node;
        node.kind = kind;
        node.graph.n = 0;
        for (const auto& e : edges) node.graph.n = std::max({node.graph.n, e.u + 1, e.v + 1});
        node.graph.edges = edges;
        tree.nodes.push_back(std::move(node));
    }
    // tree edges from virtual pair ids
    std::map<int, std::vector<std::pair<int, int>>> holder;
    for (int i = 0; i < static_cast<int>(tree.nodes.size()); ++i) {
        const auto& es = tree.nodes[i].graph.edges;
        for (int j = 0; j < static_cast<int>(es.size()); ++j)
            if (es[j].virt) holder[es[j].id].push_back({i, j});
    }
    for (auto& [pid, hs] : holder) {
        if (hs.size() != 2)
            throw Error("internal: virtual pair id not shared by exactly two nodes");
        tree.edges.push_back({hs[0].first, hs[0].second, hs[1].first, hs[1].second});
    }
    std::sort(tree.edges.begin(), tree.edges.end(), [](const TBTEdge& a, const TBTEdge& b) {
        return std::tie(a.n1, a.e1, a.n2, a.e2) < std::tie(b.n1, b.e1, b.n2, b.e2);
    });
    return tree;
}

MultiGraph amalgamate(const ThreeBlockTree& tree) {
    std::map<int, int> virt_seen;
    MultiGraph out;
    for (const auto& node : tree.nodes) {
        for (const auto& e : node.graph.edges) {
            out.n = std::max({out.n, e.u + 1, e.v + 1});
            if (e.virt) {
                ++virt_seen[e.id];
                continue;
            }
            out.edges.push_back(e);
        }
    }
    for (auto [pid, k] : virt_seen)
        if (k != 2) throw Error("amalgamate: unpaired virtual edge");
    std::sort(out.edges.begin(), out.edges.end(), [](const MEdge& a, const MEdge& b) {
        return a.id < b.id;
    });
    return out;
}

} // namespace saw
