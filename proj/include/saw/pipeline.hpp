#ifndef SAW_PIPELINE_HPP
#define SAW_PIPELINE_HPP

#include "saw/graph_io.hpp"
#include "saw/grammar_build.hpp"
#include "saw/oracle.hpp"
#include "saw/roots.hpp"
#include "saw/series.hpp"

namespace saw {

// Ball view for oracle operations (quotient-mode inputs carry no graph).
BallView pipeline_view(const InputDoc& doc, int radius);

// Decomposition quotient: computed for finite and cayley inputs, passed
// through for quotient files.
QuotientDecomposition pipeline_quotient(const InputDoc& doc, int radius,
                                        const QuotientOptions& opts = {});

// Full grammar of L_SAW for the input.
Grammar pipeline_grammar(const InputDoc& doc, int radius,
                         const QuotientOptions& opts = {});

struct AlgebraResult {
    PolynomialSystem system;
    std::vector<PowerSeriesQ> series;
    BiPoly minimal_polynomial;
};

// grammar -> system -> series evidence -> annihilating polynomial
AlgebraResult pipeline_algebra(const Grammar& g, int series_order);

} // namespace saw

#endif
