#include "saw/series.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "saw/errors.hpp"

namespace saw {

// ---------------------------------------------------------------------------
// univariate helpers
// ---------------------------------------------------------------------------

void zp_trim(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    zp_trim(r);
    return r;
}

ZPoly zp_derivative(const ZPoly& a) {
    ZPoly r;
    for (size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * static_cast<long>(i));
    zp_trim(r);
    return r;
}

mpz_class zp_content(const ZPoly& a) {
    mpz_class g = 0;
    for (const auto& c : a) {
        mpz_class x = abs(c);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

ZPoly zp_primitive(const ZPoly& a) {
    mpz_class g = zp_content(a);
    if (g == 0 || g == 1) return a;
    ZPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        mpz_divexact(r[i].get_mpz_t(), a[i].get_mpz_t(), g.get_mpz_t());
    return r;
}

namespace {

// pseudo-remainder lc(b)^(da-db+1) * a mod b
ZPoly zp_prem(ZPoly a, const ZPoly& b) {
    zp_trim(a);
    int db = static_cast<int>(b.size()) - 1;
    if (db < 0) throw Error("zp_prem: division by zero polynomial");
    const mpz_class& lb = b.back();
    while (static_cast<int>(a.size()) - 1 >= db) {
        int da = static_cast<int>(a.size()) - 1;
        mpz_class la = a.back();
        for (auto& c : a) c *= lb;
        for (int i = 0; i <= db; ++i) a[da - db + i] -= la * b[i];
        zp_trim(a);
        if (static_cast<int>(a.size()) - 1 == da) throw Error("zp_prem: no progress");
    }
    return a;
}

std::optional<ZPoly> zp_div_exact(const ZPoly& a, const ZPoly& b) {
    ZPoly rem = a;
    zp_trim(rem);
    ZPoly bb = b;
    zp_trim(bb);
    if (bb.empty()) return std::nullopt;
    if (rem.empty()) return ZPoly{};
    int db = static_cast<int>(bb.size()) - 1;
    int dq = static_cast<int>(rem.size()) - 1 - db;
    if (dq < 0) return std::nullopt;
    ZPoly q(dq + 1, 0);
    for (int k = dq; k >= 0; --k) {
        if (static_cast<int>(rem.size()) - 1 != k + db) {
            q[k] = 0;
            if (static_cast<int>(rem.size()) - 1 > k + db) return std::nullopt;
            continue;
        }
        mpz_class qc, r;
        mpz_tdiv_qr(qc.get_mpz_t(), r.get_mpz_t(), rem.back().get_mpz_t(),
                    bb.back().get_mpz_t());
        if (r != 0) return std::nullopt;
        q[k] = qc;
        for (int i = 0; i <= db; ++i) rem[k + i] -= qc * bb[i];
        zp_trim(rem);
    }
    if (!rem.empty()) return std::nullopt;
    return q;
}

} // namespace

ZPoly zp_gcd(ZPoly a, ZPoly b) {
    zp_trim(a);
    zp_trim(b);
    if (a.empty() || b.empty()) {
        ZPoly g = a.empty() ? b : a;
        if (!g.empty() && g.back() < 0)
            for (auto& c : g) c = -c;
        return g;
    }
    mpz_class ca = zp_content(a), cb = zp_content(b);
    mpz_class cg;
    mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    a = zp_primitive(a);
    b = zp_primitive(b);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        ZPoly r = zp_prem(a, b);
        a = std::move(b);
        b = zp_primitive(r);
    }
    ZPoly g = zp_primitive(a);
    if (!g.empty() && g.back() < 0)
        for (auto& c : g) c = -c;
    for (auto& c : g) c *= cg;
    return g;
}

bool zp_divides(const ZPoly& b, const ZPoly& a) {
    ZPoly aa = a, bb = b;
    zp_trim(aa);
    zp_trim(bb);
    if (bb.empty()) return aa.empty();
    if (aa.empty()) return true;
    if (aa.size() < bb.size()) return false;
    ZPoly r = zp_prem(aa, bb);
    return r.empty();
}

mpq_class zp_eval(const ZPoly& p, const mpq_class& x) {
    mpq_class acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + mpq_class(*it);
    return acc;
}

std::string zp_render(const ZPoly& p, const std::string& var) {
    if (p.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
        if (p[i] == 0) continue;
        mpz_class c = p[i];
        if (first) {
            if (c < 0) out << "-";
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        mpz_class a = abs(c);
        if (a != 1 || i == 0) out << a.get_str();
        if (i > 0) {
            if (a != 1) out << "*";
            out << var;
            if (i > 1) out << "^" << i;
        }
        first = false;
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// system construction and series solving
// ---------------------------------------------------------------------------

PolynomialSystem grammar_to_system(const Grammar& g) {
    check_proper(g);
    PolynomialSystem sys;
    sys.names = g.variables;
    sys.rhs.assign(g.variables.size(), {});
    std::vector<std::map<std::pair<int, std::vector<int>>, mpz_class>> acc(
        g.variables.size());
    for (const auto& [lhs, rhs] : g.productions) {
        int tdeg = 0;
        std::vector<int> vars;
        for (const auto& s : rhs) {
            if (s.is_var)
                vars.push_back(s.id);
            else
                ++tdeg;
        }
        std::sort(vars.begin(), vars.end());
        acc[lhs][{tdeg, vars}] += 1;
    }
    for (size_t i = 0; i < acc.size(); ++i)
        for (const auto& [key, c] : acc[i])
            sys.rhs[i].push_back({c, key.first, key.second});
    sys.validate_proper();
    return sys;
}

void PolynomialSystem::validate_proper() const {
    const int n = size();
    std::vector<std::vector<int>> unit(n);
    for (int i = 0; i < n; ++i) {
        for (const auto& m : rhs[i]) {
            if (m.tdeg == 0 && m.vars.empty() && i != 0)
                throw PropernessError("constant monomial outside the start equation");
            if (m.tdeg == 0 && m.vars.size() == 1) unit[i].push_back(m.vars[0]);
            for (int v : m.vars)
                if (v < 0 || v >= n)
                    throw PropernessError("monomial references unknown out of range");
        }
    }
    std::vector<int> state(n, 0);
    std::function<void(int)> dfs = [&](int v) {
        state[v] = 1;
        for (int u : unit[v]) {
            if (state[u] == 1)
                throw PropernessError("unit monomials form a cycle (improper system)");
            if (state[u] == 0) dfs(u);
        }
        state[v] = 2;
    };
    for (int v = 0; v < n; ++v)
        if (state[v] == 0) dfs(v);
}

namespace {

using QSeries = std::vector<mpq_class>; // truncated coefficients 0..N

void conv_into(QSeries& out, const QSeries& a, const QSeries& b, int N) {
    std::fill(out.begin(), out.end(), 0);
    for (int i = 0; i <= N && i < static_cast<int>(a.size()); ++i) {
        if (a[i] == 0) continue;
        int jmax = std::min<int>(N - i, static_cast<int>(b.size()) - 1);
        for (int j = 0; j <= jmax; ++j) {
            if (b[j] == 0) continue;
            out[i + j] += a[i] * b[j];
        }
    }
}

} // namespace

std::vector<PowerSeriesQ> solve_series(const PolynomialSystem& sys, int N) {
    sys.validate_proper();
    const int n = sys.size();
    // evaluation order: unit monomial dependencies first
    std::vector<std::vector<int>> unit(n);
    for (int i = 0; i < n; ++i)
        for (const auto& m : sys.rhs[i])
            if (m.tdeg == 0 && m.vars.size() == 1) unit[i].push_back(m.vars[0]);
    std::vector<int> order, state(n, 0);
    std::function<void(int)> dfs = [&](int v) {
        state[v] = 1;
        for (int u : unit[v])
            if (state[u] == 0) dfs(u);
        state[v] = 2;
        order.push_back(v);
    };
    for (int v = 0; v < n; ++v)
        if (state[v] == 0) dfs(v);

    std::vector<QSeries> val(n, QSeries(N + 1, 0));
    QSeries tmp(N + 1, 0), prod(N + 1, 0), next(N + 1, 0);
    long rounds = 0, cap = static_cast<long>(N + 3) * (n + 2);
    bool changed = true;
    while (changed) {
        changed = false;
        if (++rounds > cap)
            throw PropernessError(
                "series coefficients do not stabilize (improper system)");
        for (int i : order) {
            std::fill(next.begin(), next.end(), 0);
            for (const auto& m : sys.rhs[i]) {
                if (m.tdeg > N) continue;
                // product of unknown series
                prod.assign(N + 1, 0);
                prod[0] = 1;
                for (int v : m.vars) {
                    conv_into(tmp, prod, val[v], N);
                    std::swap(tmp, prod);
                }
                mpq_class c(m.c);
                for (int k = 0; k + m.tdeg <= N; ++k) {
                    if (prod[k] == 0) continue;
                    next[k + m.tdeg] += c * prod[k];
                }
            }
            if (next != val[i]) {
                val[i] = next;
                changed = true;
            }
        }
    }
    std::vector<PowerSeriesQ> out(n);
    for (int i = 0; i < n; ++i) out[i].coeff = val[i];
    return out;
}

// ---------------------------------------------------------------------------
// BiPoly
// ---------------------------------------------------------------------------

int BiPoly::tdeg() const {
    int d = -1;
    for (const auto& layer : c) d = std::max(d, static_cast<int>(layer.size()) - 1);
    return d;
}

void BiPoly::normalize() {
    for (auto& layer : c) zp_trim(layer);
    while (!c.empty() && c.back().empty()) c.pop_back();
}

std::vector<mpz_class> BiPoly::lead_y() const {
    if (c.empty()) return {};
    return c.back();
}

std::string BiPoly::render(const std::string& tname, const std::string& yname) const {
    if (c.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int j = static_cast<int>(c.size()) - 1; j >= 0; --j) {
        if (c[j].empty()) continue;
        if (!first) out << " + ";
        out << "(" << zp_render(c[j], tname) << ")";
        if (j > 0) {
            out << "*" << yname;
            if (j > 1) out << "^" << j;
        }
        first = false;
    }
    return out.str();
}

BiPoly bipoly_from_mpoly(const MPoly& p, int tvar, int yvar) {
    BiPoly out;
    for (const auto& [e, coeff] : p.terms()) {
        for (size_t i = 0; i < e.size(); ++i)
            if (static_cast<int>(i) != tvar && static_cast<int>(i) != yvar && e[i] != 0)
                throw Error("bipoly_from_mpoly: extra variable present");
        int ti = e[tvar], yi = e[yvar];
        if (static_cast<int>(out.c.size()) <= yi) out.c.resize(yi + 1);
        auto& layer = out.c[yi];
        if (static_cast<int>(layer.size()) <= ti) layer.resize(ti + 1, 0);
        layer[ti] += coeff;
    }
    out.normalize();
    return out;
}

MPoly mpoly_from_bipoly(const BiPoly& p) {
    MPoly out(2);
    for (size_t j = 0; j < p.c.size(); ++j)
        for (size_t i = 0; i < p.c[j].size(); ++i) {
            if (p.c[j][i] == 0) continue;
            MPoly::Exp e{static_cast<int>(i), static_cast<int>(j)};
            out.add_term(e, p.c[j][i]);
        }
    return out;
}

PowerSeriesQ bipoly_apply(const BiPoly& p, const PowerSeriesQ& f) {
    const int N = f.order();
    QSeries acc(N + 1, 0), pw(N + 1, 0), tmp(N + 1, 0);
    pw[0] = 1;
    for (size_t j = 0; j < p.c.size(); ++j) {
        if (j > 0) {
            conv_into(tmp, pw, f.coeff, N);
            std::swap(tmp, pw);
        }
        for (size_t i = 0; i < p.c[j].size() && static_cast<int>(i) <= N; ++i) {
            if (p.c[j][i] == 0) continue;
            mpq_class c(p.c[j][i]);
            for (int k = 0; k + static_cast<int>(i) <= N; ++k)
                if (pw[k] != 0) acc[k + i] += c * pw[k];
        }
    }
    PowerSeriesQ out;
    out.coeff = std::move(acc);
    return out;
}

bool annihilates(const BiPoly& p, const PowerSeriesQ& f) {
    PowerSeriesQ r = bipoly_apply(p, f);
    for (const auto& c : r.coeff)
        if (c != 0) return false;
    return true;
}

namespace {

// t-polynomial content of the y-layers
ZPoly bipoly_content_t(const BiPoly& p) {
    ZPoly g;
    for (const auto& layer : p.c) g = zp_gcd(g, layer);
    return g;
}

BiPoly bipoly_div_content(const BiPoly& p, const ZPoly& content) {
    if (content.empty() || (content.size() == 1 && content[0] == 1)) return p;
    BiPoly out;
    out.c.resize(p.c.size());
    for (size_t j = 0; j < p.c.size(); ++j) {
        if (p.c[j].empty()) continue;
        auto q = zp_div_exact(p.c[j], content);
        if (!q) throw Error("internal: content division not exact");
        out.c[j] = std::move(*q);
    }
    out.normalize();
    return out;
}

// pseudo-remainder in y of A by B (coefficients in Z[t])
BiPoly bipoly_prem_y(BiPoly a, const BiPoly& b) {
    a.normalize();
    int db = b.ydeg();
    if (db < 0) throw Error("bipoly_prem_y: zero divisor");
    const ZPoly& lb = b.c.back();
    while (a.ydeg() >= db && !a.is_zero()) {
        int da = a.ydeg();
        ZPoly la = a.c.back();
        // a = lb * a - la * y^(da-db) * b
        BiPoly next;
        next.c.assign(std::max(a.ydeg() + 1, da - db + b.ydeg() + 1), {});
        for (int j = 0; j <= a.ydeg(); ++j) next.c[j] = zp_mul(a.c[j], lb);
        for (int j = 0; j <= b.ydeg(); ++j) {
            ZPoly sub = zp_mul(la, b.c[j]);
            auto& dst = next.c[j + da - db];
            if (dst.size() < sub.size()) dst.resize(sub.size(), 0);
            for (size_t i = 0; i < sub.size(); ++i) dst[i] -= sub[i];
        }
        next.normalize();
        if (next.ydeg() >= da && !next.is_zero())
            throw Error("bipoly_prem_y: no progress");
        a = std::move(next);
    }
    return a;
}

BiPoly bipoly_primitive_y(const BiPoly& p) {
    BiPoly q = p;
    q.normalize();
    if (q.is_zero()) return q;
    return bipoly_div_content(q, bipoly_content_t(q));
}

BiPoly bipoly_gcd_y(BiPoly a, BiPoly b) {
    a.normalize();
    b.normalize();
    if (a.is_zero()) return bipoly_primitive_y(b);
    if (b.is_zero()) return bipoly_primitive_y(a);
    ZPoly cont = zp_gcd(bipoly_content_t(a), bipoly_content_t(b));
    a = bipoly_primitive_y(a);
    b = bipoly_primitive_y(b);
    if (a.ydeg() < b.ydeg()) std::swap(a, b);
    while (!b.is_zero()) {
        BiPoly r = bipoly_prem_y(a, b);
        a = std::move(b);
        b = bipoly_primitive_y(r);
    }
    a = bipoly_primitive_y(a);
    // put the content back
    for (auto& layer : a.c) layer = zp_mul(layer, cont);
    a.normalize();
    return a;
}

BiPoly bipoly_int_primitive(const BiPoly& p) {
    mpz_class g = 0;
    for (const auto& layer : p.c)
        for (const auto& coeff : layer) {
            mpz_class a = abs(coeff);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
        }
    if (g == 0 || g == 1) return p;
    BiPoly out = p;
    for (auto& layer : out.c)
        for (auto& coeff : layer)
            mpz_divexact(coeff.get_mpz_t(), coeff.get_mpz_t(), g.get_mpz_t());
    return out;
}

} // namespace

std::vector<mpz_class> discriminant_y(const BiPoly& p) {
    if (p.ydeg() < 1) return {1}; // no branch collisions for constant/linear in y
    if (p.ydeg() == 1) return {1};
    MPoly P = mpoly_from_bipoly(p);
    MPoly Py = P.derivative(1);
    MPoly res = resultant(P, Py, 1);
    BiPoly resb = bipoly_from_mpoly(res, 0, 1);
    if (resb.ydeg() > 0) throw Error("internal: discriminant still contains y");
    ZPoly r = resb.is_zero() ? ZPoly{} : resb.c[0];
    int d = p.ydeg();
    if ((d * (d - 1) / 2) % 2 == 1)
        for (auto& coeff : r) coeff = -coeff;
    ZPoly lc = p.lead_y();
    auto q = zp_div_exact(r, lc);
    if (!q) {
        ZPoly neg = r;
        for (auto& coeff : neg) coeff = -coeff;
        q = zp_div_exact(neg, lc);
        if (q)
            for (auto& coeff : *q) coeff = -coeff;
    }
    if (!q) throw Error("internal: discriminant division by lc not exact");
    return *q;
}

BiPoly squarefree_y(const BiPoly& p) {
    BiPoly q = bipoly_int_primitive(p);
    q.normalize();
    if (q.ydeg() < 1) return q;
    // derivative in y
    BiPoly dy;
    dy.c.resize(q.c.size() - 1);
    for (size_t j = 1; j < q.c.size(); ++j) {
        dy.c[j - 1] = q.c[j];
        for (auto& coeff : dy.c[j - 1]) coeff *= static_cast<long>(j);
    }
    dy.normalize();
    BiPoly g = bipoly_gcd_y(q, dy);
    if (g.ydeg() < 1 && g.tdeg() < 1) return q;
    auto quot = try_divide(mpoly_from_bipoly(q), mpoly_from_bipoly(g));
    if (!quot) throw Error("internal: squarefree division not exact");
    BiPoly out = bipoly_from_mpoly(*quot, 0, 1);
    return bipoly_int_primitive(out);
}

// ---------------------------------------------------------------------------
// elimination
// ---------------------------------------------------------------------------

namespace {

// integer fraction-free echelon + rational kernel vector (one free column)
std::optional<std::vector<mpq_class>> kernel_vector(
    std::vector<std::vector<mpz_class>> M, int cols) {
    int rows = static_cast<int>(M.size());
    std::vector<int> pivot_col;
    mpz_class prev = 1;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int sel = -1;
        for (int i = r; i < rows; ++i)
            if (M[i][c] != 0) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(M[r], M[sel]);
        for (int i = r + 1; i < rows; ++i) {
            for (int j = c + 1; j < cols; ++j) {
                mpz_class num = M[i][j] * M[r][c] - M[i][c] * M[r][j];
                mpz_class q;
                mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
                M[i][j] = q;
            }
            M[i][c] = 0;
        }
        prev = M[r][c];
        pivot_col.push_back(c);
        ++r;
    }
    // free column?
    std::vector<char> is_pivot(cols, 0);
    for (int c : pivot_col) is_pivot[c] = 1;
    int free_col = -1;
    for (int c = 0; c < cols; ++c)
        if (!is_pivot[c]) {
            free_col = c;
            break;
        }
    if (free_col < 0) return std::nullopt;
    std::vector<mpq_class> x(cols, 0);
    x[free_col] = 1;
    for (int i = static_cast<int>(pivot_col.size()) - 1; i >= 0; --i) {
        int pc = pivot_col[i];
        mpq_class s = 0;
        for (int j = pc + 1; j < cols; ++j)
            if (x[j] != 0 && M[i][j] != 0) s += mpq_class(M[i][j]) * x[j];
        x[pc] = -s / mpq_class(M[i][pc]);
    }
    return x;
}

constexpr unsigned long kPrime = 2147483647UL; // 2^31 - 1

unsigned long mod_of(const mpz_class& z) {
    mpz_class m = z % static_cast<long>(kPrime);
    if (m < 0) m += static_cast<long>(kPrime);
    return m.get_ui();
}

unsigned long mulmod(unsigned long a, unsigned long b) {
    return static_cast<unsigned long>(
        (static_cast<unsigned long long>(a) * b) % kPrime);
}

unsigned long powmod(unsigned long a, unsigned long e) {
    unsigned long r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a);
        a = mulmod(a, a);
        e >>= 1;
    }
    return r;
}

// rank-deficiency prescreen mod a fixed prime; never reports a kernel as
// missing when one exists over Q
bool has_kernel_mod_p(const std::vector<std::vector<mpz_class>>& M, int cols) {
    std::vector<std::vector<unsigned long>> A;
    A.reserve(M.size());
    for (const auto& row : M) {
        std::vector<unsigned long> r(cols);
        for (int j = 0; j < cols; ++j) r[j] = mod_of(row[j]);
        A.push_back(std::move(r));
    }
    int rows = static_cast<int>(A.size());
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int sel = -1;
        for (int i = rank; i < rows; ++i)
            if (A[i][c] != 0) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(A[rank], A[sel]);
        unsigned long inv = powmod(A[rank][c], kPrime - 2);
        for (int i = rank + 1; i < rows; ++i) {
            if (A[i][c] == 0) continue;
            unsigned long f = mulmod(A[i][c], inv);
            for (int j = c; j < cols; ++j) {
                unsigned long sub = mulmod(f, A[rank][j]);
                A[i][j] = (A[i][j] + kPrime - sub) % kPrime;
            }
        }
        ++rank;
    }
    return rank < cols;
}

// integer series coefficients of f^j for j = 0..dy, to order N
std::vector<std::vector<mpz_class>> series_powers(const PowerSeriesQ& f, int dy,
                                                  int N) {
    std::vector<std::vector<mpz_class>> pw(dy + 1, std::vector<mpz_class>(N + 1, 0));
    pw[0][0] = 1;
    std::vector<mpz_class> fz(N + 1);
    for (int i = 0; i <= N; ++i) {
        const mpq_class& q = i < static_cast<int>(f.coeff.size()) ? f.coeff[i]
                                                                  : mpq_class(0);
        if (q.get_den() != 1)
            throw Error("eliminate: series evidence is not integral");
        fz[i] = q.get_num();
    }
    for (int j = 1; j <= dy; ++j)
        for (int i = 0; i <= N; ++i) {
            mpz_class s = 0;
            for (int k = 0; k <= i; ++k)
                if (pw[j - 1][k] != 0 && fz[i - k] != 0) s += pw[j - 1][k] * fz[i - k];
            pw[j][i] = s;
        }
    return pw;
}

// annihilating-candidate search: minimal (dy, dt) polynomial with
// P(t, f) = 0 mod t^(N+1)
std::optional<BiPoly> hermite_pade(const PowerSeriesQ& f, int dy_max, int dt_max) {
    const int N = f.order();
    auto powers = series_powers(f, dy_max, N);
    for (int dy = 1; dy <= dy_max; ++dy) {
        for (int dt = 0; dt <= dt_max; ++dt) {
            int cols = (dy + 1) * (dt + 1);
            if (cols > N) break; // not enough evidence to pin the kernel
            std::vector<std::vector<mpz_class>> M(N + 1,
                                                  std::vector<mpz_class>(cols, 0));
            for (int j = 0; j <= dy; ++j)
                for (int i = 0; i <= dt; ++i) {
                    int col = j * (dt + 1) + i;
                    for (int row = i; row <= N; ++row)
                        M[row][col] = powers[j][row - i];
                }
            if (!has_kernel_mod_p(M, cols)) continue;
            auto x = kernel_vector(std::move(M), cols);
            if (!x) continue;
            // clear denominators, build the candidate
            mpz_class lcm = 1;
            for (const auto& q : *x)
                mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
            BiPoly cand;
            cand.c.assign(dy + 1, {});
            for (int j = 0; j <= dy; ++j) {
                cand.c[j].assign(dt + 1, 0);
                for (int i = 0; i <= dt; ++i) {
                    mpq_class v = (*x)[j * (dt + 1) + i] * mpq_class(lcm);
                    cand.c[j][i] = v.get_num();
                }
            }
            cand.normalize();
            if (cand.is_zero() || cand.ydeg() < 1) continue;
            return bipoly_int_primitive(cand);
        }
    }
    return std::nullopt;
}

} // namespace

BiPoly eliminate(const PolynomialSystem& sys, int target,
                 const std::vector<PowerSeriesQ>& evidence) {
    const int n = sys.size();
    if (target < 0 || target >= n) throw Error("eliminate: target out of range");
    const int nvars = n + 1; // var 0 = t, var 1 + i = unknown i
    auto var_of = [&](int unk) { return 1 + unk; };

    // equations F_i - rhs_i
    std::vector<MPoly> rhs(n, MPoly(nvars));
    for (int i = 0; i < n; ++i) {
        for (const auto& m : sys.rhs[i]) {
            MPoly::Exp e(nvars, 0);
            e[0] = m.tdeg;
            for (int v : m.vars) e[var_of(v)] += 1;
            rhs[i].add_term(e, m.c);
        }
    }

    // substitution closure: repeatedly inline unknowns whose right side does
    // not mention themselves
    std::set<int> remaining;
    for (int i = 0; i < n; ++i)
        if (i != target) remaining.insert(i);
    bool progress = true;
    while (progress) {
        progress = false;
        int pick = -1;
        size_t best_size = 0;
        for (int j : remaining) {
            if (rhs[j].contains(var_of(j))) continue;
            size_t sz = rhs[j].terms().size();
            if (pick < 0 || sz < best_size) {
                pick = j;
                best_size = sz;
            }
        }
        if (pick < 0) break;
        for (int i = 0; i < n; ++i) {
            if (i == pick) continue;
            rhs[i] = rhs[i].substituted(var_of(pick), rhs[pick]);
        }
        remaining.erase(pick);
        progress = true;
    }

    // hard equations for the cyclically dependent unknowns
    std::vector<MPoly> polys;
    for (int i = 0; i < n; ++i) {
        if (i != target && !remaining.count(i)) continue;
        MPoly q = MPoly::variable(nvars, var_of(i)) - rhs[i];
        polys.push_back(q.monomial_primitive());
    }

    // iterated resultants over the non-target unknowns
    for (int v : remaining) {
        int var = var_of(v);
        int pivot = -1;
        for (size_t i = 0; i < polys.size(); ++i) {
            if (polys[i].degree(var) <= 0) continue;
            if (pivot < 0 || polys[i].degree(var) < polys[pivot].degree(var) ||
                (polys[i].degree(var) == polys[pivot].degree(var) &&
                 polys[i].terms().size() < polys[pivot].terms().size()))
                pivot = static_cast<int>(i);
        }
        if (pivot < 0) continue; // variable already gone
        std::vector<MPoly> next;
        for (size_t i = 0; i < polys.size(); ++i) {
            if (static_cast<int>(i) == pivot) continue;
            if (polys[i].degree(var) <= 0) {
                next.push_back(polys[i]);
                continue;
            }
            MPoly r = resultant(polys[pivot], polys[i], var);
            r = r.monomial_primitive();
            mpz_class g = r.int_content();
            if (g > 1) r = r.divided_by_int(g);
            if (r.is_zero())
                throw Error(
                    "eliminate: resultant degenerated to zero (common component)");
            next.push_back(std::move(r));
        }
        polys = std::move(next);
    }

    // pick the final polynomial in (t, target)
    int tvar = var_of(target);
    const MPoly* final_poly = nullptr;
    for (const auto& p : polys) {
        if (p.degree(tvar) < 1) continue;
        bool clean = true;
        for (int u = 0; u < n; ++u)
            if (u != target && p.degree(var_of(u)) > 0) clean = false;
        if (!clean) continue;
        if (!final_poly || p.terms().size() < final_poly->terms().size())
            final_poly = &p;
    }
    if (!final_poly)
        throw Error("eliminate: no resultant involving the target unknown survived");

    BiPoly R = bipoly_from_mpoly(*final_poly, 0, tvar);
    R = squarefree_y(R);

    // evidence for the target, extended as needed
    PowerSeriesQ f = evidence.at(target);
    auto ensure_order = [&](int want) {
        if (f.order() >= want) return;
        f = solve_series(sys, want).at(target);
    };
    ensure_order(std::max(32, 2 * (R.tdeg() + R.ydeg()) + 2));
    if (!annihilates(R, f))
        throw Error("eliminate: squarefree resultant does not annihilate the series");

    // unique irreducible factor annihilating the evidence: minimal-degree
    // annihilating polynomial that divides R
    auto accept = [&](const BiPoly& cand) -> bool {
        if (cand.ydeg() < 1) return false;
        int need = 2 * (cand.tdeg() + cand.ydeg()) + 2;
        ensure_order(need);
        if (!annihilates(cand, f)) return false;
        auto q = try_divide(mpoly_from_bipoly(R), mpoly_from_bipoly(cand));
        return q.has_value();
    };
    auto cand = hermite_pade(f, R.ydeg(), R.tdeg());
    BiPoly result;
    if (cand && accept(*cand)) {
        result = *cand;
    } else {
        result = R; // R itself is squarefree and annihilates
    }
    // verified, never assumed
    int need = 2 * (result.tdeg() + result.ydeg()) + 2;
    ensure_order(need);
    if (!annihilates(result, f))
        throw Error("eliminate: returned equation fails verification");
    // sign normalization: positive leading coefficient of the top layer
    if (!result.c.empty() && !result.c.back().empty() && result.c.back().back() < 0)
        for (auto& layer : result.c)
            for (auto& coeff : layer) coeff = -coeff;
    return result;
}

} // namespace saw
