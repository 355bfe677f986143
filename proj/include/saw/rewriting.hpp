#ifndef SAW_REWRITING_HPP
#define SAW_REWRITING_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "saw/word.hpp"

namespace saw {

struct Rule {
    Word lhs, rhs;
};

// A string rewriting system over an involutive alphabet.  The artifact only
// verifies that a user-supplied system is complete (shortlex-terminating and
// locally confluent); it never runs Knuth-Bendix completion itself.
struct RewritingSystem {
    Alphabet alphabet;
    std::vector<Rule> rules;

    // every rule strictly shortlex-decreasing
    bool terminating() const;
};

inline constexpr std::int64_t kDefaultRewriteBudget = 1'000'000;

// Unique irreducible descendant under leftmost reduction.  Requires a
// terminating system; the step budget guards mis-declared inputs.
Word normal_form(const RewritingSystem& rs, Word w,
                 std::int64_t budget = kDefaultRewriteBudget);

struct CriticalPair {
    int rule_a = 0, rule_b = 0;
    Word overlap;                 // the superposition word
    Word descendant_a, descendant_b; // reduced forms of the two one-step results
};

struct ConfluenceReport {
    std::vector<CriticalPair> unresolved;
    bool confluent() const { return unresolved.empty(); }
};

// Computes all critical pairs of rule overlaps (suffix/prefix superpositions
// and embedded occurrences) and reports those whose descendants differ.
ConfluenceReport check_confluence(const RewritingSystem& rs,
                                  std::int64_t budget = kDefaultRewriteBudget);

} // namespace saw

#endif
