#ifndef SAW_MPOLY_HPP
#define SAW_MPOLY_HPP

#include <gmpxx.h>

#include <map>
#include <optional>
#include <vector>

namespace saw {

// Sparse multivariate polynomial over Z.  Exponent vectors all share the
// same length; the term map is ordered, so representation is canonical.
class MPoly {
public:
    using Exp = std::vector<int>;

    explicit MPoly(int nvars = 0) : nvars_(nvars) {}
    static MPoly constant(int nvars, const mpz_class& c);
    static MPoly variable(int nvars, int v, int power = 1);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Exp, mpz_class>& terms() const { return terms_; }

    void add_term(const Exp& e, const mpz_class& c);

    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly operator-() const;
    bool operator==(const MPoly& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }

    int degree(int v) const;          // -1 for the zero polynomial
    bool contains(int v) const { return degree(v) > 0; }
    MPoly coeff_of(int v, int k) const; // coefficient of v^k (v-exponent zeroed)
    MPoly derivative(int v) const;

    // substitute variable v by the polynomial value
    MPoly substituted(int v, const MPoly& value) const;

    mpz_class int_content() const;      // gcd of coefficients (>= 0)
    MPoly divided_by_int(const mpz_class& d) const; // exact
    // divide out common monomial factors (minimal exponents)
    MPoly monomial_primitive() const;

private:
    int nvars_;
    std::map<Exp, mpz_class> terms_;
};

// Exact division; nullopt if B does not divide A over Z.
std::optional<MPoly> try_divide(const MPoly& A, const MPoly& B);

// Resultant with respect to variable v via fraction-free Bareiss elimination
// of the Sylvester matrix.
MPoly resultant(const MPoly& A, const MPoly& B, int v);

} // namespace saw

#endif
