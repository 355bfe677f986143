#ifndef SAW_ROOTS_HPP
#define SAW_ROOTS_HPP

#include <gmpxx.h>

#include <vector>

#include "saw/series.hpp"

namespace saw {

struct Interval {
    mpq_class lo, hi; // lo <= root <= hi; lo == hi for exact roots
    mpq_class width() const { return hi - lo; }
};

// Isolating intervals for all roots in (0, bound], refined to the requested
// width, via exact Sturm-chain bisection.  The input need not be squarefree.
std::vector<Interval> positive_roots(const ZPoly& p, const mpq_class& width);

struct MuResult {
    Interval radius;
    Interval mu;
    mpq_class candidate_lo, candidate_hi; // chosen singularity bracket
};

// Radius of convergence and connective constant from the annihilating
// polynomial.  Candidate singularities are the positive roots of the
// y-discriminant and of the leading y-coefficient; the radius is the
// smallest candidate consistent with the coefficient growth of the series.
MuResult connective_constant(const PowerSeriesQ& series, const BiPoly& eq,
                             const mpq_class& tol);

} // namespace saw

#endif
