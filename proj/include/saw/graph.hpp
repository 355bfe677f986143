#ifndef SAW_GRAPH_HPP
#define SAW_GRAPH_HPP

#include <string>
#include <vector>

#include "saw/word.hpp"

namespace saw {

// Oriented edge.  Edges come in involutive pairs (dart <-> reversed dart).
struct Dart {
    int tail = -1;
    int head = -1;
    Token label = -1;
};

// Finite deterministically labelled graph: no loops, no parallel darts,
// darts sharing a tail (or a head) carry distinct labels, and the involution
// swaps endpoints while inverting labels.
struct LabelledGraph {
    Alphabet alphabet;
    std::vector<std::string> vertex_names;
    std::vector<Dart> darts;
    std::vector<int> twin; // involution: twin[d] is the reversed dart of d

    int num_vertices() const { return static_cast<int>(vertex_names.size()); }
    int num_darts() const { return static_cast<int>(darts.size()); }

    // darts leaving v, sorted by label
    std::vector<std::vector<int>> out_index() const;
    // dart leaving v with the given label, or -1
    int dart_from(int v, Token label) const;

    void rebuild_index();

private:
    std::vector<std::vector<int>> out_;
};

struct ValidationIssue {
    std::string kind;      // "involution", "determinism", "loop", "parallel", ...
    std::vector<int> darts;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

// Lists every violated invariant with the offending darts; an empty report
// means the graph is valid.  Violations are report entries, not failures.
ValidationReport validate(const LabelledGraph& g);

} // namespace saw

#endif
