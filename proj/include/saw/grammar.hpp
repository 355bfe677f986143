#ifndef SAW_GRAMMAR_HPP
#define SAW_GRAMMAR_HPP

#include <gmpxx.h>

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "saw/word.hpp"

namespace saw {

// Context-free grammar over named terminals.  Variable 0 is the start
// symbol.  Productions are kept as a sorted set (no duplicates).
struct Grammar {
    struct Sym {
        bool is_var = false;
        int id = 0;
        auto operator<=>(const Sym&) const = default;
    };
    using Rhs = std::vector<Sym>;

    std::vector<std::string> terminals;
    std::vector<std::string> variables; // [0] = start
    std::vector<std::pair<int, Rhs>> productions;

    static Sym T(int id) { return {false, id}; }
    static Sym V(int id) { return {true, id}; }

    int terminal(const std::string& name);      // find or add
    int variable(const std::string& name);      // find or add
    void add(int var, Rhs rhs);                 // dedup + keep sorted on finish
    void finish();                              // sort productions, dedup

    // every production is A -> u or A -> u B with u terminal-only
    bool right_linear() const;

    std::string format() const;                 // text format (start on line 1)
};

Grammar parse_grammar(std::istream& in);
Grammar parse_grammar_text(const std::string& text);

// Properness: no variable other than the start derives epsilon, the start
// derives epsilon only via a direct S -> eps production, and unit productions
// A -> B form an acyclic relation.  Throws PropernessError otherwise.
void check_proper(const Grammar& g);

// Removes variables that derive no terminal word, and productions using
// them; keeps the start variable even if its language is empty.
Grammar prune_unproductive(const Grammar& g);

struct CensusEntry {
    Word word;              // over terminal ids
    mpz_class multiplicity; // number of parse trees (= rightmost derivations)
};

// All generated words of length <= n with derivation counts, sorted
// shortlex.  Multiplicity 1 everywhere is the unambiguity evidence.
std::vector<CensusEntry> words_up_to(const Grammar& g, int n);

// Length census: count[n] = total derivations of words of length n,
// max_mult[n] = maximal multiplicity seen at that length.
struct Census {
    std::vector<mpz_class> count;
    std::vector<mpz_class> max_multiplicity;
};
Census census_up_to(const Grammar& g, int n);

// Total, deterministic finite automaton over the grammar's terminals.
struct Dfa {
    int num_states = 0;
    int start = 0;
    std::vector<std::vector<int>> delta; // [state][terminal]
    std::vector<bool> accept;
};

// Triple-construction product grammar; preserves unambiguity since the
// automaton is deterministic.
Grammar intersect_regular(const Grammar& g, const Dfa& d);

// Substitution of a grammar per terminal.  Finite inner languages (grammars
// whose productions are all terminal S-productions) are inlined, preserving
// right-linearity; other inner grammars are spliced with fresh start copies
// per occurrence.  Terminals mapped to an empty language kill the
// productions mentioning them.
Grammar substitute(const Grammar& outer, const std::map<int, Grammar>& map);

} // namespace saw

#endif
