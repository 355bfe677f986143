#include "saw/mpoly.hpp"

#include <algorithm>

#include "saw/errors.hpp"

namespace saw {

MPoly MPoly::constant(int nvars, const mpz_class& c) {
    MPoly p(nvars);
    if (c != 0) p.terms_[Exp(nvars, 0)] = c;
    return p;
}

MPoly MPoly::variable(int nvars, int v, int power) {
    MPoly p(nvars);
    Exp e(nvars, 0);
    e[v] = power;
    p.terms_[e] = 1;
    return p;
}

void MPoly::add_term(const Exp& e, const mpz_class& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_[e] = c;
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MPoly MPoly::operator+(const MPoly& o) const {
    MPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const {
    MPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

MPoly MPoly::operator-() const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
    MPoly r(nvars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            Exp e(nvars_);
            for (int i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

int MPoly::degree(int v) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[v]);
    return d;
}

MPoly MPoly::coeff_of(int v, int k) const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[v] != k) continue;
        Exp e2 = e;
        e2[v] = 0;
        r.add_term(e2, c);
    }
    return r;
}

MPoly MPoly::derivative(int v) const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[v] == 0) continue;
        Exp e2 = e;
        e2[v] -= 1;
        r.add_term(e2, c * e[v]);
    }
    return r;
}

MPoly MPoly::substituted(int v, const MPoly& value) const {
    // group by exponent of v, then Horner
    int d = degree(v);
    if (d <= 0) return *this;
    std::vector<MPoly> by_pow;
    for (int k = 0; k <= std::max(d, 0); ++k) by_pow.push_back(coeff_of(v, k));
    MPoly acc(nvars_);
    for (int k = static_cast<int>(by_pow.size()) - 1; k >= 0; --k)
        acc = acc * value + by_pow[k];
    return acc;
}

mpz_class MPoly::int_content() const {
    mpz_class g = 0;
    for (const auto& [e, c] : terms_) {
        mpz_class a = abs(c);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

MPoly MPoly::divided_by_int(const mpz_class& d) const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
        r.terms_[e] = q;
    }
    return r;
}

MPoly MPoly::monomial_primitive() const {
    if (terms_.empty()) return *this;
    Exp mins = terms_.begin()->first;
    for (const auto& [e, c] : terms_)
        for (int i = 0; i < nvars_; ++i) mins[i] = std::min(mins[i], e[i]);
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
        Exp e2 = e;
        for (int i = 0; i < nvars_; ++i) e2[i] -= mins[i];
        r.terms_[e2] = c;
    }
    return r;
}

std::optional<MPoly> try_divide(const MPoly& A, const MPoly& B) {
    if (B.is_zero()) return std::nullopt;
    MPoly rem = A;
    MPoly quot(A.nvars());
    const auto& blead = *B.terms().rbegin(); // lex-largest term
    while (!rem.is_zero()) {
        const auto& rlead = *rem.terms().rbegin();
        MPoly::Exp qe(rem.nvars());
        for (int i = 0; i < rem.nvars(); ++i) {
            qe[i] = rlead.first[i] - blead.first[i];
            if (qe[i] < 0) return std::nullopt;
        }
        mpz_class qc, r;
        mpz_tdiv_qr(qc.get_mpz_t(), r.get_mpz_t(), rlead.second.get_mpz_t(),
                    blead.second.get_mpz_t());
        if (r != 0) return std::nullopt;
        MPoly term(rem.nvars());
        term.add_term(qe, qc);
        quot = quot + term;
        rem = rem - term * B;
    }
    return quot;
}

MPoly resultant(const MPoly& A, const MPoly& B, int v) {
    int m = A.degree(v), n = B.degree(v);
    if (m < 0 || n < 0) return MPoly(A.nvars()); // resultant with zero poly
    if (m == 0 && n == 0) return MPoly::constant(A.nvars(), 1);
    std::vector<MPoly> a, b;
    for (int k = m; k >= 0; --k) a.push_back(A.coeff_of(v, k));
    for (int k = n; k >= 0; --k) b.push_back(B.coeff_of(v, k));

    const int N = m + n;
    std::vector<std::vector<MPoly>> M(N, std::vector<MPoly>(N, MPoly(A.nvars())));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) M[i][i + j] = a[j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) M[n + i][i + j] = b[j];

    // fraction-free Bareiss determinant
    MPoly prev = MPoly::constant(A.nvars(), 1);
    int sign = 1;
    for (int k = 0; k < N - 1; ++k) {
        if (M[k][k].is_zero()) {
            int swap_row = -1;
            for (int i = k + 1; i < N; ++i)
                if (!M[i][k].is_zero()) {
                    swap_row = i;
                    break;
                }
            if (swap_row < 0) return MPoly(A.nvars()); // determinant zero
            std::swap(M[k], M[swap_row]);
            sign = -sign;
        }
        for (int i = k + 1; i < N; ++i) {
            for (int j = k + 1; j < N; ++j) {
                MPoly num = M[i][j] * M[k][k] - M[i][k] * M[k][j];
                auto q = try_divide(num, prev);
                if (!q) throw Error("internal: Bareiss division not exact");
                M[i][j] = std::move(*q);
            }
            M[i][k] = MPoly(A.nvars());
        }
        prev = M[k][k];
    }
    MPoly det = M[N - 1][N - 1];
    return sign < 0 ? -det : det;
}

} // namespace saw
