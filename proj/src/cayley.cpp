#include "saw/cayley.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "saw/errors.hpp"

namespace saw {

Word group_mul(const CayleyGraphSpec& spec, const Word& u, const Word& v) {
    Word w = u;
    w.insert(w.end(), v.begin(), v.end());
    return normal_form(spec.system, std::move(w), spec.rewrite_budget);
}

Word left_translate(const CayleyGraphSpec& spec, const Word& u, const Word& v) {
    return group_mul(spec, spec.system.alphabet.inverse_word(u), v);
}

BallView expand_ball(const CayleyGraphSpec& spec, int r) {
    if (r < 0) throw InvalidSpecError("ball radius must be >= 0");
    const Alphabet& sigma = spec.system.alphabet;
    if (!sigma.involution_ok())
        throw InvalidSpecError("generator inverse map is not an involution");
    if (!spec.system.terminating())
        throw InvalidSpecError("rewriting system is not shortlex-decreasing");

    for (Token s = 0; s < sigma.size(); ++s) {
        if (normal_form(spec.system, Word{s}, spec.rewrite_budget).empty())
            throw InvalidSpecError("generator '" + sigma.name(s) +
                                   "' equals the identity");
    }

    // BFS over normal forms
    std::map<Word, int> index;
    std::vector<Word> words;
    std::vector<int> depth;
    std::queue<int> todo;
    words.push_back({});
    depth.push_back(0);
    index[{}] = 0;
    todo.push(0);
    bool complete = true;
    while (!todo.empty()) {
        int v = todo.front();
        todo.pop();
        if (depth[v] == r) {
            // a frontier vertex with unexplored neighbours means the graph
            // continues beyond the ball
            for (Token s = 0; s < sigma.size(); ++s) {
                Word w = group_mul(spec, words[v], Word{s});
                if (!index.count(w)) complete = false;
            }
            continue;
        }
        for (Token s = 0; s < sigma.size(); ++s) {
            Word w = group_mul(spec, words[v], Word{s});
            auto it = index.find(w);
            if (it == index.end()) {
                int id = static_cast<int>(words.size());
                index.emplace(w, id);
                words.push_back(std::move(w));
                depth.push_back(depth[v] + 1);
                todo.push(id);
            }
        }
    }

    // shortlex vertex order
    std::vector<int> order(words.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return shortlex_less(words[a], words[b]); });
    std::vector<int> rank(words.size());
    for (size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);

    BallView view;
    view.complete = complete;
    view.radius = r;
    view.graph.alphabet = sigma;
    view.vertex_words.resize(words.size());
    view.depth.resize(words.size());
    for (size_t i = 0; i < words.size(); ++i) {
        view.vertex_words[rank[i]] = words[i];
        view.depth[rank[i]] = depth[i];
    }
    view.root = rank[index.at({})];
    view.graph.vertex_names.resize(words.size());
    for (size_t i = 0; i < words.size(); ++i)
        view.graph.vertex_names[i] = sigma.format(view.vertex_words[i]).empty()
                                         ? "e"
                                         : sigma.format(view.vertex_words[i]);

    // darts between ball vertices; generator pairs (s, s̄) with s == s̄ give a
    // single undirected edge, everything else the usual dart pair
    std::map<std::pair<int, int>, std::vector<std::pair<Token, int>>> seen;
    for (size_t i = 0; i < words.size(); ++i) {
        int v = rank[i];
        for (Token s = 0; s < sigma.size(); ++s) {
            Word w = group_mul(spec, words[i], Word{s});
            auto it = index.find(w);
            if (it == index.end()) continue;
            int u = rank[it->second];
            if (u == v)
                throw InvalidSpecError("generator '" + sigma.name(s) +
                                       "' creates a loop");
            int d = static_cast<int>(view.graph.darts.size());
            view.graph.darts.push_back({v, u, s});
            seen[{v, u}].push_back({s, d});
        }
    }
    // simplicity check + involution pairing
    view.graph.twin.assign(view.graph.darts.size(), -1);
    for (auto& [ends, ds] : seen) {
        if (ds.size() > 1)
            throw InvalidSpecError(
                "generators create parallel edges (distinct generators with "
                "equal action); declare them as a single generator or fix the "
                "presentation");
    }
    for (auto& [ends, ds] : seen) {
        auto rev = seen.find({ends.second, ends.first});
        if (rev == seen.end()) {
            // partner dart fell outside the ball: impossible, right
            // multiplication by the inverse returns
            throw InvalidSpecError("internal: unpaired dart in ball expansion");
        }
        int d = ds[0].second;
        int t = rev->second[0].second;
        Token s = ds[0].first;
        if (view.graph.darts[t].label != sigma.inverse(s))
            throw InvalidSpecError("generator '" + sigma.name(s) +
                                   "' of order two must be declared self-inverse");
        view.graph.twin[d] = t;
        view.graph.twin[t] = d;
    }
    view.graph.rebuild_index();
    return view;
}

BallView full_view(const LabelledGraph& g, int root) {
    if (root < 0 || root >= g.num_vertices())
        throw InvalidSpecError("root vertex out of range");
    BallView view;
    view.graph = g;
    view.graph.rebuild_index();
    view.root = root;
    view.complete = true;
    // BFS depths (for reporting only)
    view.depth.assign(g.num_vertices(), -1);
    std::queue<int> q;
    view.depth[root] = 0;
    q.push(root);
    int maxd = 0;
    auto out = g.out_index();
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int d : out[v]) {
            int u = g.darts[d].head;
            if (view.depth[u] < 0) {
                view.depth[u] = view.depth[v] + 1;
                maxd = std::max(maxd, view.depth[u]);
                q.push(u);
            }
        }
    }
    view.radius = maxd;
    return view;
}

} // namespace saw
