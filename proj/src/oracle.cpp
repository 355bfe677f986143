#include "saw/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "saw/errors.hpp"

namespace saw {

namespace {

void check_guard(const BallView& view, int n_max) {
    if (n_max < 0) throw GuardError("n_max must be >= 0");
    if (!view.complete && n_max > view.radius)
        throw GuardError("n_max exceeds the ball radius guard; enlarge the ball");
}

// DFS extension over darts in label order.
struct Dfs {
    const LabelledGraph& g;
    const std::vector<std::vector<int>>& out;
    std::vector<char> visited;
    int n_max;

    std::vector<Count>* counts = nullptr;   // per length
    std::vector<Word>* words = nullptr;     // collected label words
    Word current;

    void run(int v, int len) {
        if (counts) (*counts)[len] += 1;
        if (words) words->push_back(current);
        if (len == n_max) return;
        visited[v] = 1;
        for (int d : out[v]) {
            int u = g.darts[d].head;
            if (visited[u]) continue;
            current.push_back(g.darts[d].label);
            run(u, len + 1);
            current.pop_back();
        }
        visited[v] = 0;
    }
};

} // namespace

SawCounts count_saws(const BallView& view, int n_max, int threads) {
    check_guard(view, n_max);
    SawCounts result;
    result.root = view.root;
    result.radius_guard = view.guard();
    result.counts.assign(n_max + 1, 0);
    auto out = view.graph.out_index();

    if (threads <= 1) {
        Dfs dfs{view.graph, out, std::vector<char>(view.graph.num_vertices(), 0),
                n_max};
        dfs.counts = &result.counts;
        dfs.run(view.root, 0);
        return result;
    }

    // parallel over first-step branches, merged in branch order
    const auto& branches = out[view.root];
    std::vector<std::vector<Count>> partial(branches.size());
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t b = next.fetch_add(1);
            if (b >= branches.size()) return;
            partial[b].assign(n_max + 1, 0);
            if (n_max == 0) continue;
            Dfs dfs{view.graph, out,
                    std::vector<char>(view.graph.num_vertices(), 0), n_max};
            std::vector<Count> sub(n_max + 1, 0);
            dfs.counts = &sub;
            dfs.visited[view.root] = 1;
            dfs.current.push_back(view.graph.darts[branches[b]].label);
            dfs.run(view.graph.darts[branches[b]].head, 1);
            partial[b] = std::move(sub);
        }
    };
    int k = std::min<int>(threads, static_cast<int>(branches.size()));
    for (int i = 0; i < k; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    result.counts[0] = 1;
    for (const auto& sub : partial)
        for (int n = 1; n <= n_max; ++n)
            if (static_cast<size_t>(n) < sub.size()) result.counts[n] += sub[n];
    return result;
}

std::vector<Word> saw_words(const BallView& view, int n_max) {
    check_guard(view, n_max);
    auto out = view.graph.out_index();
    std::vector<Word> words;
    Dfs dfs{view.graph, out, std::vector<char>(view.graph.num_vertices(), 0), n_max};
    dfs.words = &words;
    dfs.run(view.root, 0);
    std::sort(words.begin(), words.end(), shortlex_less);
    return words;
}

WalkResult walk_of_word(const BallView& view, const Word& w) {
    WalkResult res;
    res.vertices.push_back(view.root);
    std::vector<char> visited(view.graph.num_vertices(), 0);
    visited[view.root] = 1;
    int v = view.root;
    for (size_t i = 0; i < w.size(); ++i) {
        if (view.frontier(v))
            throw GuardError("walk reaches the ball frontier; enlarge the ball");
        int d = view.graph.dart_from(v, w[i]);
        if (d < 0) {
            res.verdict = WalkResult::Verdict::no_such_edge;
            res.position = static_cast<int>(i) + 1;
            return res;
        }
        v = view.graph.darts[d].head;
        res.vertices.push_back(v);
        if (visited[v]) {
            res.verdict = WalkResult::Verdict::not_saw;
            res.position = static_cast<int>(i) + 1;
            return res;
        }
        visited[v] = 1;
    }
    res.verdict = WalkResult::Verdict::saw;
    return res;
}

Word WordTemplate::instantiate(const std::vector<int>& exponents) const {
    Word w;
    for (const auto& p : pieces) {
        int reps = p.slot < 0 ? 1 : exponents.at(p.slot);
        for (int i = 0; i < reps; ++i)
            w.insert(w.end(), p.word.begin(), p.word.end());
    }
    return w;
}

int WordTemplate::num_slots() const {
    int n = 0;
    for (const auto& p : pieces) n = std::max(n, p.slot + 1);
    return n;
}

std::vector<ProbeEntry> probe_family(const BallView& view, const WordTemplate& t,
                                     const std::vector<std::pair<int, int>>& ranges) {
    if (static_cast<int>(ranges.size()) != t.num_slots())
        throw GuardError("probe_family: range count does not match template slots");
    std::vector<ProbeEntry> table;
    std::vector<int> exp(ranges.size());
    auto rec = [&](auto&& self, size_t slot) -> void {
        if (slot == ranges.size()) {
            Word w = t.instantiate(exp);
            ProbeEntry entry;
            entry.exponents = exp;
            entry.member =
                walk_of_word(view, w).verdict == WalkResult::Verdict::saw;
            table.push_back(std::move(entry));
            return;
        }
        for (int v = ranges[slot].first; v <= ranges[slot].second; ++v) {
            exp[slot] = v;
            self(self, slot + 1);
        }
    };
    rec(rec, 0);
    return table;
}

} // namespace saw
