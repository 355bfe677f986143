#include "saw/roots.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "saw/errors.hpp"

namespace saw {

namespace {

int sign_of(const mpq_class& q) { return sgn(q); }

// Sturm chain of a squarefree polynomial.  Each member is scaled by a
// positive constant only, so the exact sign sequence is preserved.
std::vector<ZPoly> sturm_chain(const ZPoly& p) {
    std::vector<ZPoly> chain;
    ZPoly a = zp_primitive(p);
    zp_trim(a);
    chain.push_back(a);
    ZPoly b = zp_primitive(zp_derivative(a));
    zp_trim(b);
    if (b.empty()) return chain;
    chain.push_back(b);
    while (chain.back().size() > 1) {
        const ZPoly& p0 = chain[chain.size() - 2];
        const ZPoly& p1 = chain.back();
        ZPoly r = p0;
        const mpz_class& lb = p1.back();
        int mults = 0;
        while (r.size() >= p1.size()) {
            int shift = static_cast<int>(r.size() - p1.size());
            mpz_class la = r.back();
            for (auto& c : r) c *= lb;
            ++mults;
            for (size_t i = 0; i < p1.size(); ++i) r[shift + i] -= la * p1[i];
            zp_trim(r);
        }
        if (r.empty()) break;
        // r = lb^mults * (p0 mod p1); the chain needs a positive multiple of
        // -(p0 mod p1)
        bool pow_positive = (lb > 0) || (mults % 2 == 0);
        if (pow_positive)
            for (auto& c : r) c = -c;
        chain.push_back(zp_primitive(r));
    }
    return chain;
}

// Sign variations with zeros skipped.  With this convention
// V(a) - V(b) counts the roots in the half-open interval (a, b].
int variations_at(const std::vector<ZPoly>& chain, const mpq_class& x) {
    int var = 0, prev = 0;
    for (const auto& p : chain) {
        int s = sign_of(zp_eval(p, x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

ZPoly squarefree_part(ZPoly p) {
    zp_trim(p);
    ZPoly g = zp_gcd(p, zp_derivative(p));
    if (g.size() <= 1) return zp_primitive(p);
    // exact division p / g over Q, cleared back to a primitive integer poly
    std::vector<mpq_class> rem(p.begin(), p.end()), qq;
    int db = static_cast<int>(g.size()) - 1;
    int dq = static_cast<int>(p.size()) - 1 - db;
    qq.assign(dq + 1, 0);
    for (int k = dq; k >= 0; --k) {
        mpq_class c = rem[k + db] / mpq_class(g.back());
        qq[k] = c;
        for (int i = 0; i <= db; ++i) rem[k + i] -= c * mpq_class(g[i]);
    }
    mpz_class lcm = 1;
    for (const auto& c : qq)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
    ZPoly q(qq.size());
    for (size_t i = 0; i < qq.size(); ++i) q[i] = mpq_class(qq[i] * mpq_class(lcm)).get_num();
    zp_trim(q);
    return zp_primitive(q);
}

struct Isolator {
    ZPoly p;                   // squarefree, p(0) != 0
    std::vector<ZPoly> chain;

    explicit Isolator(const ZPoly& input) {
        p = input;
        chain = sturm_chain(p);
    }

    int count(const mpq_class& lo, const mpq_class& hi) const {
        return variations_at(chain, lo) - variations_at(chain, hi);
    }

    // roots in (lo, hi], refined to `width`
    std::vector<Interval> isolate(const mpq_class& lo, const mpq_class& hi,
                                  const mpq_class& width) const {
        std::vector<Interval> out;
        std::function<void(mpq_class, mpq_class, int)> rec =
            [&](mpq_class a, mpq_class b, int n) {
                if (n <= 0) return;
                if (n == 1) {
                    out.push_back(refine({a, b}, width));
                    return;
                }
                mpq_class mid = (a + b) / 2;
                int left = count(a, mid);
                rec(a, mid, left);
                rec(mid, b, n - left);
            };
        rec(lo, hi, count(lo, hi));
        std::sort(out.begin(), out.end(),
                  [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
        return out;
    }

    // narrows an interval holding exactly one root (in (lo, hi])
    Interval refine(Interval iv, const mpq_class& width) const {
        if (sign_of(zp_eval(p, iv.hi)) == 0) return {iv.hi, iv.hi};
        while (iv.width() > width) {
            mpq_class mid = (iv.lo + iv.hi) / 2;
            if (sign_of(zp_eval(p, mid)) == 0) return {mid, mid};
            if (count(iv.lo, mid) == 1)
                iv.hi = mid;
            else
                iv.lo = mid;
        }
        return iv;
    }
};

} // namespace

std::vector<Interval> positive_roots(const ZPoly& input, const mpq_class& width) {
    ZPoly p = input;
    zp_trim(p);
    if (p.empty()) throw Error("positive_roots: zero polynomial");
    size_t shift = 0;
    while (shift < p.size() && p[shift] == 0) ++shift;
    p.erase(p.begin(), p.begin() + shift);
    if (p.size() <= 1) return {};
    p = squarefree_part(p);
    mpz_class maxc = 0;
    for (const auto& c : p) {
        mpz_class a = abs(c);
        if (a > maxc) maxc = a;
    }
    mpz_class lead = abs(p.back());
    mpq_class bound = 1 + mpq_class(maxc) / mpq_class(lead);
    Isolator iso(p);
    return iso.isolate(0, bound, width);
}

MuResult connective_constant(const PowerSeriesQ& series, const BiPoly& eq,
                             const mpq_class& tol) {
    for (const auto& c : series.coeff)
        if (c < 0)
            throw Error("connective_constant: series has negative coefficients");
    if (eq.is_zero()) throw Error("connective_constant: zero equation");

    ZPoly disc = discriminant_y(eq);
    ZPoly lc = eq.lead_y();
    struct Candidate {
        Interval iv;
        ZPoly poly; // squarefree source polynomial for further refinement
    };
    std::vector<Candidate> candidates;
    mpq_class iso_width = tol / 8;
    for (const ZPoly* src : {&disc, &lc}) {
        ZPoly p = *src;
        zp_trim(p);
        size_t sh = 0;
        while (sh < p.size() && p[sh] == 0) ++sh;
        p.erase(p.begin(), p.begin() + sh);
        if (p.size() <= 1) continue;
        p = squarefree_part(p);
        for (auto& iv : positive_roots(p, iso_width)) candidates.push_back({iv, p});
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& a, const Candidate& b) { return a.iv.lo < b.iv.lo; });
    if (candidates.empty())
        throw Error("connective_constant: no positive candidate singularities");

    // growth window: mu <= c_n^(1/n); ratios approach mu from below for the
    // singularity types at hand, damped for safety
    const int M = series.order();
    if (M < 4) throw Error("connective_constant: series evidence too short");
    double upper = 1e300, lower = 0;
    for (int n = std::max(2, M / 2); n <= M; ++n) {
        if (series.coeff[n] <= 0) continue;
        double num = mpz_get_d(series.coeff[n].get_num().get_mpz_t());
        double den = mpz_get_d(series.coeff[n].get_den().get_mpz_t());
        double logc = std::log(num) - std::log(den);
        upper = std::min(upper, std::exp(logc / n));
        if (series.coeff[n - 1] > 0) {
            mpq_class ratio = series.coeff[n] / series.coeff[n - 1];
            lower = std::max(lower, 0.75 * ratio.get_d());
        }
    }
    upper *= 1.05;

    for (const auto& cand : candidates) {
        if (cand.iv.hi <= 0) continue;
        double rho = (cand.iv.lo.get_d() + cand.iv.hi.get_d()) / 2;
        if (rho <= 0) continue;
        double mu_cand = 1.0 / rho;
        if (mu_cand > upper) continue; // inconsistent with growth: spurious
        if (mu_cand < lower) break;    // walked past every plausible candidate
        Interval rho_iv = cand.iv;
        Isolator iso(cand.poly);
        while (rho_iv.lo != rho_iv.hi) {
            if (rho_iv.lo > 0) {
                mpq_class mu_lo = 1 / rho_iv.hi, mu_hi = 1 / rho_iv.lo;
                if (mu_hi - mu_lo <= tol) break;
            }
            rho_iv = iso.refine(rho_iv, rho_iv.width() / 2);
        }
        MuResult res;
        res.radius = rho_iv;
        res.candidate_lo = rho_iv.lo;
        res.candidate_hi = rho_iv.hi;
        if (rho_iv.lo == rho_iv.hi) {
            res.mu.lo = res.mu.hi = 1 / rho_iv.lo;
        } else {
            res.mu.lo = 1 / rho_iv.hi;
            res.mu.hi = 1 / rho_iv.lo;
        }
        return res;
    }
    throw Error(
        "connective_constant: growth estimate inconsistent with every candidate "
        "singularity");
}

} // namespace saw
