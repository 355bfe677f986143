#ifndef SAW_QUOTIENT_HPP
#define SAW_QUOTIENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "saw/cayley.hpp"
#include "saw/tutte.hpp"

namespace saw {

// ----- level-3 data: 3-block tree orbits of a 2-connected graph -----

struct QRealEdge {
    int u = -1, v = -1;
    Token label_uv = -1, label_vu = -1;
    bool operator==(const QRealEdge&) const = default;
};

// Non-entry virtual edge of a stored 3-block.  Crossing it from end0 (resp.
// end1) is a U-step into the subtree of the paired tree edge; the walk there
// starts at entry end `to_end0` (`to_end1`) of orbit `to_orbit`.
struct QVirtualEdge {
    int end0 = -1, end1 = -1;
    int to_orbit = -1;
    int to_end0 = 0, to_end1 = 0;
    bool operator==(const QVirtualEdge&) const = default;
};

// Representative of a directed 3-block-tree edge orbit a: the finite block
// A(a+) with the forbidden entry edge lambda(a-check) and its exits.
// cls0/cls1 are the walk-class ids of (a, entry end); they coincide exactly
// when a label-preserving automorphism swaps the entry endpoints.
struct QBlock {
    BlockKind kind = BlockKind::Cycle;
    std::vector<std::string> vertex_names;
    std::vector<QRealEdge> reals;
    int entry_end0 = -1, entry_end1 = -1;
    int cls0 = -1, cls1 = -1;
    std::vector<QVirtualEdge> exits;
    std::vector<int> vclass; // optional per-vertex end-class marks (empty = none)
    bool operator==(const QBlock&) const = default;
};

struct QRootBlock {
    BlockKind kind = BlockKind::Cycle;
    std::vector<std::string> vertex_names;
    std::vector<QRealEdge> reals;
    std::vector<QVirtualEdge> exits;
    int root_vertex = 0;
    std::vector<int> vclass;
    bool operator==(const QRootBlock&) const = default;
};

struct QuotientLevel3 {
    Alphabet alphabet;
    std::vector<QBlock> orbits;
    int num_classes = 0;
    QRootBlock root;

    int cls_at(int orbit, int end) const {
        return end == 0 ? orbits.at(orbit).cls0 : orbits.at(orbit).cls1;
    }
    // first (orbit, end) carrying the class
    std::pair<int, int> class_representative(int cls) const;
    void validate() const; // throws InvalidSpecError on violated invariants
    bool operator==(const QuotientLevel3&) const = default;
};

// ----- level-2 data: block-cutvertex tree orbits -----

struct QL2Block {
    std::vector<std::string> vertex_names;
    std::vector<QRealEdge> reals;
    std::vector<int> incidence; // per-vertex EY edge id, -1 if not a cutvertex
};

struct QL2Edge {
    int block = -1;  // B(e): block orbit id
    int vertex = -1; // representative of c(e) inside the block representative
};

struct QuotientLevel2 {
    Alphabet alphabet;
    std::vector<QL2Block> blocks;
    std::vector<QL2Edge> edges;            // EY
    std::vector<std::vector<int>> neighbors; // N(e), sorted
    int root_block = 0;                    // orbit id of B_o
    int root_vertex = 0;                   // image of o in that representative

    void validate() const;
};

struct QuotientDecomposition {
    std::optional<QuotientLevel3> level3;
    std::optional<QuotientLevel2> level2;
};

struct QuotientOptions {
    int margin = 3;       // trusted depth = radius - margin
    int size_bound = 0;   // 0 = auto (10x largest trusted 3-block, min 64)
    // initial recursion depth of the orbit encodings; raised automatically
    // until the orbit partition stabilizes
    int enc_depth = 1;
    int enc_depth_cap = 6;
};

// Orbit quotient of the Cayley graph's decomposition computed inside a ball
// of radius r.  Two directed tree edges are identified exactly when the left
// translation matching their base vertices maps one decorated block onto the
// other.  Routes to level-3 data when the graph is 2-connected and to
// level-2 data when the root's blocks are finite; mixed structures raise
// RadiusError with a hint to supply a hand-authored quotient.
QuotientDecomposition quotient_from_cayley(const CayleyGraphSpec& spec, int r,
                                           const QuotientOptions& opts = {});

// Trivial-orbit quotient of a finite labelled graph (identity group).
QuotientDecomposition quotient_from_finite(const LabelledGraph& g, int root);

} // namespace saw

#endif
