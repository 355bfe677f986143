#ifndef SAW_CAYLEY_HPP
#define SAW_CAYLEY_HPP

#include <limits>
#include <vector>

#include "saw/graph.hpp"
#include "saw/rewriting.hpp"

namespace saw {

// Finite periodic description of a Cayley graph: vertices are shortlex
// normal forms of a complete rewriting system, the root is the empty word,
// and right multiplication by a generator gives the dart with that label.
struct CayleyGraphSpec {
    RewritingSystem system;
    std::int64_t rewrite_budget = kDefaultRewriteBudget;
};

// A finite ball of a (possibly infinite) graph, with enough bookkeeping to
// know which answers are exact.  For genuinely finite graphs `complete` is
// set and the radius guard is infinite.
struct BallView {
    LabelledGraph graph;
    int root = 0;
    int radius = 0;
    bool complete = false;              // whole graph present, no frontier
    std::vector<int> depth;             // graph distance from root
    std::vector<Word> vertex_words;     // cayley mode: normal forms (empty otherwise)

    int guard() const {
        return complete ? std::numeric_limits<int>::max() : radius;
    }
    bool frontier(int v) const { return !complete && depth[v] >= radius; }
};

// Breadth-first expansion by right multiplication + normal form.  Vertices
// are ordered shortlex by normal form; the induced graph must be simple and
// deterministically labelled.
BallView expand_ball(const CayleyGraphSpec& spec, int r);

// Wraps a finite labelled graph as a complete view rooted at `root`.
BallView full_view(const LabelledGraph& g, int root);

// Normal form of the product u * v.
Word group_mul(const CayleyGraphSpec& spec, const Word& u, const Word& v);
// Normal form of u^{-1} * v (left translation carrying u to the identity).
Word left_translate(const CayleyGraphSpec& spec, const Word& u, const Word& v);

} // namespace saw

#endif
