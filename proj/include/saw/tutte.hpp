#ifndef SAW_TUTTE_HPP
#define SAW_TUTTE_HPP

#include <array>
#include <string>
#include <vector>

#include "saw/multigraph.hpp"

namespace saw {

enum class BlockKind { Cycle, Multilink, ThreeConnected };

std::string to_string(BlockKind k);

// Node of the 3-block tree.  Every node has >= 3 edges and is a cycle, a
// multilink, or a 3-connected graph; virtual edges are consumed when two
// nodes are amalgamated.
struct TBTNode {
    BlockKind kind = BlockKind::Cycle;
    MultiGraph graph;
};

// Tree edge pairing virtual edge e1 of node n1 with virtual edge e2 of n2.
// The amalgamation identifies (u1 with u2) and (v1 with v2) of the paired
// edges; vertex ids are global, so paired virtual edges have equal endpoints.
struct TBTEdge {
    int n1 = -1, e1 = -1;
    int n2 = -1, e2 = -1;
};

struct ThreeBlockTree {
    std::vector<TBTNode> nodes;
    std::vector<TBTEdge> edges;

    // tree adjacency: for node i, list of (tree edge index, other node)
    std::vector<std::vector<std::pair<int, int>>> node_adjacency() const;
};

// The unique 3-block tree of a 2-connected multigraph with >= 3 edges
// (classical separation-pair splitting followed by merging of adjacent
// same-kind nodes).  Deterministic: split pairs and node order canonical.
ThreeBlockTree tutte_decomposition(const MultiGraph& g);

// Re-amalgamates all nodes along tree edges, erasing virtual edges.
// Round-trips tutte_decomposition up to edge order.
MultiGraph amalgamate(const ThreeBlockTree& tree);

// Canonical comparable form: sorted edges (u, v, id, virt, labels).
std::vector<std::array<int, 6>> canonical_edges(const MultiGraph& g);

} // namespace saw

#endif
