#include "saw/graph.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace saw {

std::vector<std::vector<int>> LabelledGraph::out_index() const {
    std::vector<std::vector<int>> out(vertex_names.size());
    for (int d = 0; d < num_darts(); ++d)
        if (darts[d].tail >= 0 && darts[d].tail < num_vertices())
            out[darts[d].tail].push_back(d);
    for (auto& v : out)
        std::sort(v.begin(), v.end(),
                  [&](int a, int b) { return darts[a].label < darts[b].label; });
    return out;
}

void LabelledGraph::rebuild_index() { out_ = out_index(); }

int LabelledGraph::dart_from(int v, Token label) const {
    if (!out_.empty()) {
        for (int d : out_[v])
            if (darts[d].label == label) return d;
        return -1;
    }
    for (int d = 0; d < num_darts(); ++d)
        if (darts[d].tail == v && darts[d].label == label) return d;
    return -1;
}

ValidationReport validate(const LabelledGraph& g) {
    ValidationReport rep;
    const int nd = g.num_darts();
    const int nv = g.num_vertices();

    for (int d = 0; d < nd; ++d) {
        const Dart& e = g.darts[d];
        if (e.tail < 0 || e.tail >= nv || e.head < 0 || e.head >= nv) {
            rep.issues.push_back({"endpoint", {d}, "dart endpoint out of range"});
            continue;
        }
        if (e.tail == e.head)
            rep.issues.push_back({"loop", {d}, "loops are forbidden"});
        if (e.label < 0 || e.label >= g.alphabet.size())
            rep.issues.push_back({"label", {d}, "dart label out of range"});
    }
    if (!g.alphabet.involution_ok())
        rep.issues.push_back({"alphabet", {}, "label inverse map is not an involution"});

    // involution: perfect matching swapping endpoints and inverting labels
    if (static_cast<int>(g.twin.size()) != nd) {
        rep.issues.push_back({"involution", {}, "twin table size mismatch"});
    } else {
        for (int d = 0; d < nd; ++d) {
            int t = g.twin[d];
            if (t < 0 || t >= nd || t == d || g.twin[t] != d) {
                rep.issues.push_back({"involution", {d}, "twin pairing is not a perfect matching"});
                continue;
            }
            const Dart& e = g.darts[d];
            const Dart& f = g.darts[t];
            if (f.tail != e.head || f.head != e.tail)
                rep.issues.push_back({"involution", {d, t}, "twin does not swap endpoints"});
            else if (e.label >= 0 && e.label < g.alphabet.size() &&
                     f.label != g.alphabet.inverse(e.label))
                rep.issues.push_back({"involution", {d, t}, "twin label is not the inverse label"});
        }
    }

    // simplicity: no two darts with equal (tail, head)
    std::map<std::pair<int, int>, std::vector<int>> by_ends;
    for (int d = 0; d < nd; ++d)
        by_ends[{g.darts[d].tail, g.darts[d].head}].push_back(d);
    for (auto& [ends, ds] : by_ends)
        if (ds.size() > 1 && ends.first != ends.second)
            rep.issues.push_back({"parallel", ds, "parallel darts with equal (tail, head)"});

    // deterministic labelling at tails and heads
    auto check_det = [&](bool at_tail) {
        std::map<std::pair<int, Token>, std::vector<int>> seen;
        for (int d = 0; d < nd; ++d) {
            int v = at_tail ? g.darts[d].tail : g.darts[d].head;
            seen[{v, g.darts[d].label}].push_back(d);
        }
        for (auto& [key, ds] : seen)
            if (ds.size() > 1)
                rep.issues.push_back({"determinism", ds,
                                      at_tail ? "equal labels leaving one vertex"
                                              : "equal labels entering one vertex"});
    };
    check_det(true);
    check_det(false);
    return rep;
}

} // namespace saw
