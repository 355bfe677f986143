#ifndef SAW_GRAPH_IO_HPP
#define SAW_GRAPH_IO_HPP

#include <iosfwd>
#include <string>

#include "saw/quotient.hpp"

namespace saw {

enum class InputMode { Finite, Cayley, Quotient };

// One parsed graph-description document.  Exactly the fields of the declared
// mode are populated.
struct InputDoc {
    InputMode mode = InputMode::Finite;
    LabelledGraph graph;       // Finite
    CayleyGraphSpec spec;      // Cayley
    QuotientDecomposition quotient; // Quotient
};

// Strict parsing: unknown fields are rejected, all words are arrays of
// tokens, every token must be declared with its inverse.
InputDoc load_input(const std::string& path);
InputDoc parse_input(const std::string& json_text);

std::string quotient_to_json(const QuotientDecomposition& q);
QuotientDecomposition quotient_from_json(const std::string& json_text);

// load_quotient / save_quotient of the spec: file round-trip with full
// re-validation on load.
QuotientDecomposition load_quotient(const std::string& path);
void save_quotient(const QuotientDecomposition& q, const std::string& path);

} // namespace saw

#endif
