#ifndef SAW_ORACLE_HPP
#define SAW_ORACLE_HPP

#include <gmpxx.h>

#include <vector>

#include "saw/cayley.hpp"

namespace saw {

using Count = mpz_class;

// Exact SAW counts c_0..c_N from the root.  c_0 = 1 is the empty walk.
struct SawCounts {
    std::vector<Count> counts;
    int root = 0;
    int radius_guard = 0;
};

// Exhaustive depth-first enumeration with visited-set backtracking.
// Requires n_max <= view guard so that no counted walk can touch missing
// darts.  `threads` > 1 parallelises over first-step branches with a
// deterministic order merge.
SawCounts count_saws(const BallView& view, int n_max, int threads = 1);

// Shortlex-sorted label words of all SAWs of length <= n_max.
std::vector<Word> saw_words(const BallView& view, int n_max);

struct WalkResult {
    enum class Verdict { saw, not_saw, no_such_edge };
    Verdict verdict = Verdict::saw;
    int position = 0;          // 1-based step index of the failure, 0 if saw
    std::vector<int> vertices; // traced vertex sequence (as far as walked)
};

// Traces a word from the root.  Throws GuardError if the trace would step
// from a frontier vertex (the answer could depend on missing darts).
WalkResult walk_of_word(const BallView& view, const Word& w);

// Word with exponent slots: pieces are repeated fixed words.  Slot -1 means
// the piece appears exactly once; slots 0,1,2 are named k,l,m.
struct WordTemplate {
    struct Piece {
        Word word;
        int slot = -1;
    };
    std::vector<Piece> pieces;

    Word instantiate(const std::vector<int>& exponents) const;
    int num_slots() const;
};

struct ProbeEntry {
    std::vector<int> exponents;
    bool member = false;
};

// Membership table of the instantiated family, computed via walk_of_word.
// `ranges` gives inclusive (lo, hi) per slot.
std::vector<ProbeEntry> probe_family(const BallView& view, const WordTemplate& t,
                                     const std::vector<std::pair<int, int>>& ranges);

} // namespace saw

#endif
