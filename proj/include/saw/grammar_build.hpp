#ifndef SAW_GRAMMAR_BUILD_HPP
#define SAW_GRAMMAR_BUILD_HPP

#include <map>
#include <optional>
#include <vector>

#include "saw/grammar.hpp"
#include "saw/quotient.hpp"

namespace saw {

// A walk inside a stored 3-block: dart steps over real edges and non-entry
// virtual edges.  Virtual steps read as U-class symbols (Sym id = class id).
struct BlockWalk {
    std::vector<int> vertices;       // visited, starting vertex first
    std::vector<Grammar::Sym> label; // terminals and U-classes
    bool ends_real = false;          // last step is a real edge
    std::vector<char> exit_used;     // per exit edge: traversed?
};

// SAWs from `start` avoiding the entry edge (which is simply absent from the
// stored exits); avoid >= 0 additionally forbids a vertex.  Includes the
// empty walk.
std::vector<BlockWalk> enumerate_block_walks(const QuotientLevel3& q,
                                             const std::vector<QRealEdge>& reals,
                                             const std::vector<QVirtualEdge>& exits,
                                             int num_vertices, int start, int avoid);

struct WalkSetsSummary {
    std::vector<std::pair<int, int>> sizes; // per class: |Pi^0|, |Pi^1|
};
// Exhaustive SAW enumeration inside each finite 3-block (both sets finite).
WalkSetsSummary enumerate_walk_sets(const QuotientLevel3& q);

struct Grammar2Options {
    bool include_epsilon = true; // S -> eps for the empty walk
    int end_class_filter = -1;   // keep only walks ending at this vclass mark
};

// The unambiguous grammar of the 2-connected construction: variables
// S, V0_c, V1_c, U_c over walk classes c, with the seven V/U production
// schemas and three S schemas evaluated on enumerated walks.
Grammar build_grammar_2connected(const QuotientLevel3& q,
                                 const Grammar2Options& opts = {});

// Right-linear block-level grammar over abstract terminals a_o, a_o_f,
// a_e, a_e_f; productions S -> a_o, S -> a_o_f W_g (g in N(f)),
// W_e -> a_e, W_e -> a_e_f W_g, exactly as listed.
Grammar build_grammar_blocklevel(const QuotientLevel2& q);

// Language grammar for one abstract terminal: L(e), L(e,f), L(o), L(o,f).
// e = -1 denotes the root block; f = -1 means no end-class restriction.
Grammar block_language(const QuotientLevel2& q, int e, int f);

// Substitutes the block languages into the block-level grammar.
Grammar build_grammar_level2(const QuotientLevel2& q);

// Grammar of L_SAW from whichever level the quotient carries.
Grammar build_saw_grammar(const QuotientDecomposition& q);

} // namespace saw

#endif
