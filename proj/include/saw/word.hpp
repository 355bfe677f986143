#ifndef SAW_WORD_HPP
#define SAW_WORD_HPP

#include <string>
#include <string_view>
#include <vector>

namespace saw {

// A letter is an index into an Alphabet; a word is a sequence of letters.
using Token = int;
using Word = std::vector<Token>;

// Finite alphabet with an involution.  The declared order of tokens fixes
// the shortlex order used everywhere (normal forms, enumeration, vertex ids).
class Alphabet {
public:
    Alphabet() = default;

    // Adds a token; inverse pairing is set separately.
    Token add(const std::string& token);
    void set_inverse(Token a, Token b);

    int size() const { return static_cast<int>(tokens_.size()); }
    const std::string& name(Token t) const { return tokens_.at(t); }
    Token inverse(Token t) const { return inverse_.at(t); }
    bool has(std::string_view token) const;
    Token index(std::string_view token) const; // throws if unknown

    // involution sanity: every token has an inverse and inv(inv(t)) == t
    bool involution_ok() const;

    Word inverse_word(const Word& w) const; // reversed word of inverses

    std::string format(const Word& w) const;          // space separated tokens
    Word parse(std::string_view text) const;          // whitespace separated

    bool operator==(const Alphabet&) const = default;

private:
    std::vector<std::string> tokens_;
    std::vector<Token> inverse_;
};

// Shortlex comparison in the alphabet's declared token order.
bool shortlex_less(const Word& a, const Word& b);

} // namespace saw

#endif
