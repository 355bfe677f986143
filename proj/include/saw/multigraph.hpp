#ifndef SAW_MULTIGRAPH_HPP
#define SAW_MULTIGRAPH_HPP

#include <vector>

#include "saw/graph.hpp"

namespace saw {

// Undirected multigraph edge.  Real edges keep the identity and labels of the
// ambient labelled graph; virtual edges are placeholders created by splits.
struct MEdge {
    int u = -1, v = -1;
    int id = -1;        // identity tag; real edges keep theirs across splits
    bool virt = false;
    Token label_uv = -1; // label of the dart u -> v (real edges only)
    Token label_vu = -1;
};

// Loops forbidden, parallel edges allowed.  Vertices are indices into an
// external name table shared with the ambient graph.
struct MultiGraph {
    int n = 0;
    std::vector<MEdge> edges;

    std::vector<std::vector<int>> adjacency() const; // edge indices per vertex
    std::vector<int> used_vertices() const;          // vertices with an edge
    int degree(int v) const;
    bool connected() const;
    // no cutvertex, connected; multilinks (2 vertices, >=2 edges) count
    bool two_connected() const;
    bool is_cycle() const;     // connected, simple, every degree exactly 2, n >= 3
    bool is_multilink() const; // 2 vertices
};

// Builds a multigraph over the same vertex index space from a labelled
// graph's undirected edges (one MEdge per dart pair).
MultiGraph multigraph_of(const LabelledGraph& g);

struct BlockCutTree {
    // vertex lists per block, sorted; a block is either 2-connected or a
    // single edge (bridge pair)
    std::vector<std::vector<int>> blocks;
    std::vector<std::vector<int>> block_edges; // dart-pair edge ids per block
    std::vector<int> cutvertices;              // sorted
    // incidence edges (block index, cutvertex) of the bipartite tree
    std::vector<std::pair<int, int>> incidence;
};

// Standard biconnectivity decomposition with deterministic block ordering.
// Requires g connected with >= 2 vertices.
BlockCutTree block_cut_tree(const LabelledGraph& g);

} // namespace saw

#endif
