#include "saw/grammar_build.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "saw/errors.hpp"

namespace saw {

namespace {

struct Step {
    int to = -1;
    bool real = false;
    Grammar::Sym sym;      // terminal token or U-class
    int exit_idx = -1;     // for virtual steps
};

std::vector<std::vector<Step>> build_adjacency(const QuotientLevel3& q,
                                               const std::vector<QRealEdge>& reals,
                                               const std::vector<QVirtualEdge>& exits,
                                               int num_vertices) {
    std::vector<std::vector<Step>> adj(num_vertices);
    for (const auto& e : reals) {
        adj[e.u].push_back({e.v, true, Grammar::T(e.label_uv), -1});
        adj[e.v].push_back({e.u, true, Grammar::T(e.label_vu), -1});
    }
    for (int i = 0; i < static_cast<int>(exits.size()); ++i) {
        const QVirtualEdge& x = exits[i];
        int cls_from0 = q.cls_at(x.to_orbit, x.to_end0);
        int cls_from1 = q.cls_at(x.to_orbit, x.to_end1);
        adj[x.end0].push_back({x.end1, false, Grammar::V(cls_from0), i});
        adj[x.end1].push_back({x.end0, false, Grammar::V(cls_from1), i});
    }
    for (auto& v : adj)
        std::sort(v.begin(), v.end(), [](const Step& a, const Step& b) {
            return std::tie(a.real, a.sym, a.to, a.exit_idx) <
                   std::tie(b.real, b.sym, b.to, b.exit_idx);
        });
    return adj;
}

} // namespace

std::vector<BlockWalk> enumerate_block_walks(const QuotientLevel3& q,
                                             const std::vector<QRealEdge>& reals,
                                             const std::vector<QVirtualEdge>& exits,
                                             int num_vertices, int start, int avoid) {
    auto adj = build_adjacency(q, reals, exits, num_vertices);
    std::vector<BlockWalk> walks;
    BlockWalk cur;
    cur.vertices.push_back(start);
    cur.exit_used.assign(exits.size(), 0);
    std::vector<char> visited(num_vertices, 0);
    visited[start] = 1;
    std::function<void(int)> dfs = [&](int v) {
        walks.push_back(cur);
        for (const Step& s : adj[v]) {
            if (visited[s.to] || s.to == avoid) continue;
            visited[s.to] = 1;
            cur.vertices.push_back(s.to);
            cur.label.push_back(s.sym);
            bool prev_real = cur.ends_real;
            cur.ends_real = s.real;
            if (s.exit_idx >= 0) cur.exit_used[s.exit_idx] = 1;
            dfs(s.to);
            if (s.exit_idx >= 0) cur.exit_used[s.exit_idx] = 0;
            cur.ends_real = prev_real;
            cur.label.pop_back();
            cur.vertices.pop_back();
            visited[s.to] = 0;
        }
    };
    dfs(start);
    return walks;
}

WalkSetsSummary enumerate_walk_sets(const QuotientLevel3& q) {
    WalkSetsSummary s;
    for (int c = 0; c < q.num_classes; ++c) {
        auto [o, end] = q.class_representative(c);
        const QBlock& b = q.orbits[o];
        int start = end == 0 ? b.entry_end0 : b.entry_end1;
        int sv = end == 0 ? b.entry_end1 : b.entry_end0;
        auto walks = enumerate_block_walks(q, b.reals, b.exits,
                                           static_cast<int>(b.vertex_names.size()),
                                           start, -1);
        int pi0 = 0, pi1 = 0;
        for (const auto& w : walks) {
            ++pi0;
            if (std::find(w.vertices.begin(), w.vertices.end(), sv) ==
                w.vertices.end())
                ++pi1;
        }
        s.sizes.push_back({pi0, pi1});
    }
    return s;
}

Grammar build_grammar_2connected(const QuotientLevel3& q, const Grammar2Options& opts) {
    q.validate();
    Grammar g;
    for (Token t = 0; t < q.alphabet.size(); ++t) g.terminal(q.alphabet.name(t));
    g.variable("S");
    std::vector<int> v0(q.num_classes), v1(q.num_classes), uu(q.num_classes);
    for (int c = 0; c < q.num_classes; ++c) {
        v0[c] = g.variable("V0_" + std::to_string(c));
        v1[c] = g.variable("V1_" + std::to_string(c));
        uu[c] = g.variable("U_" + std::to_string(c));
    }
    auto to_rhs = [&](const std::vector<Grammar::Sym>& label) {
        Grammar::Rhs rhs;
        for (const auto& s : label)
            rhs.push_back(s.is_var ? Grammar::V(uu[s.id]) : s);
        return rhs;
    };
    auto end_class_ok = [&](const std::vector<int>& vclass, int end) {
        if (opts.end_class_filter < 0) return true;
        if (vclass.empty())
            throw InvalidSpecError(
                "end-class filter requires vclass marks in the quotient data");
        return vclass[end] == opts.end_class_filter;
    };

    // V/U productions per walk class
    for (int c = 0; c < q.num_classes; ++c) {
        auto [o, end] = q.class_representative(c);
        const QBlock& b = q.orbits[o];
        int start = end == 0 ? b.entry_end0 : b.entry_end1;
        int sv = end == 0 ? b.entry_end1 : b.entry_end0;
        auto walks = enumerate_block_walks(q, b.reals, b.exits,
                                           static_cast<int>(b.vertex_names.size()),
                                           start, -1);
        for (const auto& w : walks) {
            int endv = w.vertices.back();
            bool in_pi1 = std::find(w.vertices.begin(), w.vertices.end(), sv) ==
                          w.vertices.end();
            bool nonempty = !w.label.empty();
            if (nonempty && w.ends_real && end_class_ok(b.vclass, endv)) {
                g.add(v0[c], to_rhs(w.label));
                if (in_pi1) g.add(v1[c], to_rhs(w.label));
            }
            if (nonempty && endv == sv) g.add(uu[c], to_rhs(w.label));
            for (int j = 0; j < static_cast<int>(b.exits.size()); ++j) {
                const QVirtualEdge& x = b.exits[j];
                if (endv != x.end0 && endv != x.end1) continue;
                if (w.exit_used[j]) continue; // walk contains lambda(b)
                int svb = endv == x.end0 ? x.end1 : x.end0;
                int tau = endv == x.end0 ? q.cls_at(x.to_orbit, x.to_end0)
                                         : q.cls_at(x.to_orbit, x.to_end1);
                bool svb_in_walk = std::find(w.vertices.begin(), w.vertices.end(),
                                             svb) != w.vertices.end();
                {
                    Grammar::Rhs rhs = to_rhs(w.label);
                    rhs.push_back(Grammar::V(svb_in_walk ? v1[tau] : v0[tau]));
                    g.add(v0[c], std::move(rhs));
                }
                if (in_pi1) {
                    bool second_blocked = svb_in_walk || svb == start || svb == sv;
                    Grammar::Rhs rhs = to_rhs(w.label);
                    rhs.push_back(Grammar::V(second_blocked ? v1[tau] : v0[tau]));
                    g.add(v1[c], std::move(rhs));
                }
            }
        }
    }

    // S productions from the root block
    {
        const QRootBlock& b = q.root;
        auto walks = enumerate_block_walks(q, b.reals, b.exits,
                                           static_cast<int>(b.vertex_names.size()),
                                           b.root_vertex, -1);
        for (const auto& w : walks) {
            int endv = w.vertices.back();
            if (w.label.empty()) {
                if (opts.include_epsilon && end_class_ok(b.vclass, endv))
                    g.add(0, {});
            } else if (w.ends_real && end_class_ok(b.vclass, endv)) {
                g.add(0, to_rhs(w.label));
            }
            for (int j = 0; j < static_cast<int>(b.exits.size()); ++j) {
                const QVirtualEdge& x = b.exits[j];
                if (endv != x.end0 && endv != x.end1) continue;
                if (w.exit_used[j]) continue;
                int svb = endv == x.end0 ? x.end1 : x.end0;
                int tau = endv == x.end0 ? q.cls_at(x.to_orbit, x.to_end0)
                                         : q.cls_at(x.to_orbit, x.to_end1);
                bool svb_in_walk = std::find(w.vertices.begin(), w.vertices.end(),
                                             svb) != w.vertices.end();
                Grammar::Rhs rhs = to_rhs(w.label);
                rhs.push_back(Grammar::V(svb_in_walk ? v1[tau] : v0[tau]));
                g.add(0, std::move(rhs));
            }
        }
    }
    g.finish();
    // all schema variables are kept, reachable or not, so the emitted
    // production set matches the construction verbatim
    return g;
}

Grammar build_grammar_blocklevel(const QuotientLevel2& q) {
    q.validate();
    Grammar g;
    g.variable("S");
    const int m = static_cast<int>(q.edges.size());
    std::vector<int> w(m);
    for (int e = 0; e < m; ++e) w[e] = g.variable("W" + std::to_string(e));
    int a_o = g.terminal("a_o");
    std::vector<int> a_of(m), a_e(m);
    std::vector<std::vector<int>> a_ef(m, std::vector<int>(m));
    for (int f = 0; f < m; ++f) a_of[f] = g.terminal("a_o_f" + std::to_string(f));
    for (int e = 0; e < m; ++e) a_e[e] = g.terminal("a_e" + std::to_string(e));
    for (int e = 0; e < m; ++e)
        for (int f = 0; f < m; ++f)
            a_ef[e][f] = g.terminal("a_e" + std::to_string(e) + "_f" + std::to_string(f));

    g.add(0, {Grammar::T(a_o)});
    for (int f = 0; f < m; ++f)
        for (int gg : q.neighbors[f])
            g.add(0, {Grammar::T(a_of[f]), Grammar::V(w[gg])});
    for (int e = 0; e < m; ++e) {
        g.add(w[e], {Grammar::T(a_e[e])});
        for (int f = 0; f < m; ++f)
            for (int gg : q.neighbors[f])
                g.add(w[e], {Grammar::T(a_ef[e][f]), Grammar::V(w[gg])});
    }
    g.finish();
    return g;
}

Grammar block_language(const QuotientLevel2& q, int e, int f) {
    int block_id = e < 0 ? q.root_block : q.edges[e].block;
    int start = e < 0 ? q.root_vertex : q.edges[e].vertex;
    const QL2Block& b = q.blocks[block_id];

    Grammar g;
    for (Token t = 0; t < q.alphabet.size(); ++t) g.terminal(q.alphabet.name(t));
    g.variable("S");

    std::vector<std::vector<std::pair<int, Token>>> adj(b.vertex_names.size());
    for (const auto& r : b.reals) {
        adj[r.u].push_back({r.v, r.label_uv});
        adj[r.v].push_back({r.u, r.label_vu});
    }
    for (auto& v : adj) std::sort(v.begin(), v.end());

    std::vector<char> visited(b.vertex_names.size(), 0);
    Word cur;
    visited[start] = 1;
    std::function<void(int)> dfs = [&](int v) {
        bool length_ok = e < 0 ? true : !cur.empty(); // L(e) has length >= 1
        bool class_ok = f < 0 || b.incidence[v] == f;
        if (length_ok && class_ok) {
            Grammar::Rhs rhs;
            for (Token t : cur) rhs.push_back(Grammar::T(t));
            g.add(0, std::move(rhs));
        }
        for (auto [u, tok] : adj[v]) {
            if (visited[u]) continue;
            visited[u] = 1;
            cur.push_back(tok);
            dfs(u);
            cur.pop_back();
            visited[u] = 0;
        }
    };
    dfs(start);
    g.finish();
    return g;
}

Grammar build_grammar_level2(const QuotientLevel2& q) {
    Grammar outer = build_grammar_blocklevel(q);
    const int m = static_cast<int>(q.edges.size());
    std::map<int, Grammar> map;
    auto tid = [&](const std::string& name) {
        auto it = std::find(outer.terminals.begin(), outer.terminals.end(), name);
        return static_cast<int>(it - outer.terminals.begin());
    };
    map[tid("a_o")] = block_language(q, -1, -1);
    for (int f = 0; f < m; ++f)
        map[tid("a_o_f" + std::to_string(f))] = block_language(q, -1, f);
    for (int e = 0; e < m; ++e) {
        map[tid("a_e" + std::to_string(e))] = block_language(q, e, -1);
        for (int f = 0; f < m; ++f)
            map[tid("a_e" + std::to_string(e) + "_f" + std::to_string(f))] =
                block_language(q, e, f);
    }
    return substitute(outer, map);
}

Grammar build_saw_grammar(const QuotientDecomposition& q) {
    if (q.level3) return build_grammar_2connected(*q.level3);
    if (q.level2) return build_grammar_level2(*q.level2);
    throw InvalidSpecError("quotient carries no decomposition data");
}

} // namespace saw
