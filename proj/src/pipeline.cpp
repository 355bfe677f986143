#include "saw/pipeline.hpp"

#include "saw/errors.hpp"

namespace saw {

BallView pipeline_view(const InputDoc& doc, int radius) {
    switch (doc.mode) {
        case InputMode::Finite:
            return full_view(doc.graph, 0);
        case InputMode::Cayley:
            return expand_ball(doc.spec, radius);
        case InputMode::Quotient:
            throw InvalidSpecError(
                "oracle operations need a finite or cayley graph input");
    }
    throw Error("unreachable");
}

QuotientDecomposition pipeline_quotient(const InputDoc& doc, int radius,
                                        const QuotientOptions& opts) {
    switch (doc.mode) {
        case InputMode::Finite:
            return quotient_from_finite(doc.graph, 0);
        case InputMode::Cayley:
            return quotient_from_cayley(doc.spec, radius, opts);
        case InputMode::Quotient:
            return doc.quotient;
    }
    throw Error("unreachable");
}

Grammar pipeline_grammar(const InputDoc& doc, int radius,
                         const QuotientOptions& opts) {
    return build_saw_grammar(pipeline_quotient(doc, radius, opts));
}

AlgebraResult pipeline_algebra(const Grammar& g, int series_order) {
    AlgebraResult out;
    out.system = grammar_to_system(g);
    out.series = solve_series(out.system, std::max(series_order, 8));
    out.minimal_polynomial = eliminate(out.system, 0, out.series);
    return out;
}

} // namespace saw
