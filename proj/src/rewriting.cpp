#include "saw/rewriting.hpp"

#include <algorithm>

#include "saw/errors.hpp"

namespace saw {

bool RewritingSystem::terminating() const {
    for (const auto& r : rules)
        if (!shortlex_less(r.rhs, r.lhs)) return false;
    return true;
}

namespace {

bool matches_at(const Word& w, size_t pos, const Word& pat) {
    if (pos + pat.size() > w.size()) return false;
    return std::equal(pat.begin(), pat.end(), w.begin() + pos);
}

} // namespace

Word normal_form(const RewritingSystem& rs, Word w, std::int64_t budget) {
    std::int64_t steps = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t pos = 0; pos < w.size() && !changed; ++pos) {
            for (const auto& rule : rs.rules) {
                if (!matches_at(w, pos, rule.lhs)) continue;
                Word next;
                next.reserve(w.size() - rule.lhs.size() + rule.rhs.size());
                next.insert(next.end(), w.begin(), w.begin() + pos);
                next.insert(next.end(), rule.rhs.begin(), rule.rhs.end());
                next.insert(next.end(), w.begin() + pos + rule.lhs.size(), w.end());
                w = std::move(next);
                if (++steps > budget)
                    throw NonterminationError(
                        "rewriting exceeded step budget; system likely nonterminating");
                changed = true;
                break;
            }
        }
    }
    return w;
}

ConfluenceReport check_confluence(const RewritingSystem& rs, std::int64_t budget) {
    ConfluenceReport report;
    const auto& rules = rs.rules;
    auto consider = [&](int i, int j, const Word& overlap, const Word& d1, const Word& d2) {
        Word n1 = normal_form(rs, d1, budget);
        Word n2 = normal_form(rs, d2, budget);
        if (n1 != n2)
            report.unresolved.push_back({i, j, overlap, std::move(n1), std::move(n2)});
    };
    for (size_t i = 0; i < rules.size(); ++i) {
        const Word& li = rules[i].lhs;
        for (size_t j = 0; j < rules.size(); ++j) {
            const Word& lj = rules[j].lhs;
            // proper suffix of li equal to proper prefix of lj
            size_t kmax = std::min(li.size(), lj.size());
            for (size_t k = 1; k < kmax; ++k) {
                if (!std::equal(lj.begin(), lj.begin() + k, li.end() - k)) continue;
                Word overlap(li.begin(), li.end());
                overlap.insert(overlap.end(), lj.begin() + k, lj.end());
                Word d1 = rules[i].rhs;
                d1.insert(d1.end(), lj.begin() + k, lj.end());
                Word d2(li.begin(), li.end() - k);
                d2.insert(d2.end(), rules[j].rhs.begin(), rules[j].rhs.end());
                consider(static_cast<int>(i), static_cast<int>(j), overlap, d1, d2);
            }
            // lj embedded inside li
            if (i != j && lj.size() <= li.size()) {
                for (size_t pos = 0; pos + lj.size() <= li.size(); ++pos) {
                    if (!matches_at(li, pos, lj)) continue;
                    Word d2(li.begin(), li.begin() + pos);
                    d2.insert(d2.end(), rules[j].rhs.begin(), rules[j].rhs.end());
                    d2.insert(d2.end(), li.begin() + pos + lj.size(), li.end());
                    consider(static_cast<int>(i), static_cast<int>(j), li,
                             rules[i].rhs, d2);
                }
            }
        }
    }
    return report;
}

} // namespace saw
