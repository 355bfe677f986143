#ifndef SAW_SERIES_HPP
#define SAW_SERIES_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

#include "saw/grammar.hpp"
#include "saw/mpoly.hpp"

namespace saw {

// Exact power series over Q truncated at an explicit order.
struct PowerSeriesQ {
    std::vector<mpq_class> coeff; // index = degree; size = order + 1
    int order() const { return static_cast<int>(coeff.size()) - 1; }
};

// Monomial c * t^tdeg * prod F_vars of a system right-hand side.
struct SysMonomial {
    mpz_class c;
    int tdeg = 0;
    std::vector<int> vars; // unknown ids, sorted, with repetition
};

// The Chomsky-Schutzenberger system: one equation F_A = rhs_A per grammar
// variable, unknown 0 belonging to the start symbol.
struct PolynomialSystem {
    std::vector<std::string> names;
    std::vector<std::vector<SysMonomial>> rhs;

    int size() const { return static_cast<int>(rhs.size()); }
    void validate_proper() const; // throws PropernessError
};

// Translate productions: A -> alpha contributes t^{#terminals(alpha)} times
// the product of the variables of alpha.
PolynomialSystem grammar_to_system(const Grammar& g);

// Least fixed point by (Gauss-Seidel) iteration; the coefficient of t^n
// stabilizes after finitely many rounds for proper systems.
std::vector<PowerSeriesQ> solve_series(const PolynomialSystem& sys, int N);

// Bivariate integer polynomial P(t, y), stored as t-polynomials per y power.
struct BiPoly {
    std::vector<std::vector<mpz_class>> c; // c[j][i] = coeff of y^j t^i

    int ydeg() const { return static_cast<int>(c.size()) - 1; }
    int tdeg() const;
    bool is_zero() const { return c.empty(); }
    void normalize(); // trim zero layers / trailing zeros
    std::vector<mpz_class> lead_y() const; // coefficient of y^ydeg
    std::string render(const std::string& tname = "t",
                       const std::string& yname = "y") const;
};

BiPoly bipoly_from_mpoly(const MPoly& p, int tvar, int yvar);
MPoly mpoly_from_bipoly(const BiPoly& p);

// P(t, F(t)) truncated to the series order.
PowerSeriesQ bipoly_apply(const BiPoly& p, const PowerSeriesQ& f);
bool annihilates(const BiPoly& p, const PowerSeriesQ& f);

// y-discriminant Res_y(P, dP/dy) / lc_y(P), exact.
std::vector<mpz_class> discriminant_y(const BiPoly& p);

// squarefree part in y (divide by gcd_y(P, P_y)); also removes the
// t-polynomial content and integer content
BiPoly squarefree_y(const BiPoly& p);

// Iterated-resultant elimination of all unknowns except `target`, followed
// by squarefree reduction and selection of the factor annihilating the
// series evidence; the result is verified, never assumed.  `evidence` must
// be solve_series output of the same system (it is extended internally when
// the verification order is insufficient).
BiPoly eliminate(const PolynomialSystem& sys, int target,
                 const std::vector<PowerSeriesQ>& evidence);

// ----- univariate helpers over Z (dense, index = degree) -----
using ZPoly = std::vector<mpz_class>;
void zp_trim(ZPoly& p);
ZPoly zp_mul(const ZPoly& a, const ZPoly& b);
ZPoly zp_derivative(const ZPoly& a);
mpz_class zp_content(const ZPoly& a);
ZPoly zp_primitive(const ZPoly& a);
ZPoly zp_gcd(ZPoly a, ZPoly b); // primitive gcd
// true iff b divides a over Q (pseudo-remainder vanishes)
bool zp_divides(const ZPoly& b, const ZPoly& a);
mpq_class zp_eval(const ZPoly& p, const mpq_class& x);
std::string zp_render(const ZPoly& p, const std::string& var = "t");

} // namespace saw

#endif
