#include "saw/word.hpp"

#include <algorithm>
#include <sstream>

#include "saw/errors.hpp"

namespace saw {

Token Alphabet::add(const std::string& token) {
    if (token.empty())
        throw InvalidSpecError("alphabet token must be nonempty");
    if (has(token))
        throw InvalidSpecError("duplicate alphabet token: " + token);
    tokens_.push_back(token);
    inverse_.push_back(-1);
    return static_cast<Token>(tokens_.size()) - 1;
}

void Alphabet::set_inverse(Token a, Token b) {
    inverse_.at(a) = b;
    inverse_.at(b) = a;
}

bool Alphabet::has(std::string_view token) const {
    return std::find(tokens_.begin(), tokens_.end(), token) != tokens_.end();
}

Token Alphabet::index(std::string_view token) const {
    auto it = std::find(tokens_.begin(), tokens_.end(), token);
    if (it == tokens_.end())
        throw InvalidSpecError("unknown token: " + std::string(token));
    return static_cast<Token>(it - tokens_.begin());
}

bool Alphabet::involution_ok() const {
    for (Token t = 0; t < size(); ++t) {
        Token i = inverse_[t];
        if (i < 0 || i >= size() || inverse_[i] != t) return false;
    }
    return true;
}

Word Alphabet::inverse_word(const Word& w) const {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse(*it));
    return out;
}

std::string Alphabet::format(const Word& w) const {
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += ' ';
        s += name(w[i]);
    }
    return s;
}

Word Alphabet::parse(std::string_view text) const {
    Word w;
    std::istringstream in{std::string(text)};
    std::string tok;
    while (in >> tok) w.push_back(index(tok));
    return w;
}

bool shortlex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

} // namespace saw
