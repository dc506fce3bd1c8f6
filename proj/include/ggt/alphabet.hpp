// Symmetric generating alphabets and words over them.
//
// A word is stored as a std::string of single-symbol letters. The alphabet
// fixes the letter order declared by the user; every tie-break in the library
// (sphere ordering, geodesic selection, net construction) derives from the
// shortlex order induced by that single declaration.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ggt/errors.hpp"

namespace ggt {

using Word = std::string;

class Alphabet {
public:
    Alphabet() = default;

    /// letters_in_order: every letter of the symmetric set, most significant
    /// first. pairs: involution as (letter, inverse letter); a letter may be
    /// paired with itself.
    Alphabet(std::string letters_in_order,
             const std::vector<std::pair<char, char>>& pairs)
        : letters_(std::move(letters_in_order)) {
        rank_.fill(-1);
        inv_.fill(0);
        for (std::size_t i = 0; i < letters_.size(); ++i) {
            unsigned char c = static_cast<unsigned char>(letters_[i]);
            if (rank_[c] != -1)
                throw config_error("duplicate letter '" + std::string(1, letters_[i]) + "'");
            rank_[c] = static_cast<int>(i);
        }
        for (auto [x, y] : pairs) {
            if (!contains(x) || !contains(y))
                throw config_error("involution names unknown letter");
            inv_[static_cast<unsigned char>(x)] = y;
            inv_[static_cast<unsigned char>(y)] = x;
        }
        for (char c : letters_) {
            char i = inv_[static_cast<unsigned char>(c)];
            if (i == 0)
                throw config_error("letter '" + std::string(1, c) + "' has no inverse");
            if (inverse(i) != c)
                throw config_error("involution is not an involution");
        }
    }

    std::size_t size() const { return letters_.size(); }
    const std::string& letters() const { return letters_; }

    bool contains(char c) const { return rank_[static_cast<unsigned char>(c)] >= 0; }

    int rank(char c) const { return rank_[static_cast<unsigned char>(c)]; }

    char inverse(char c) const { return inv_[static_cast<unsigned char>(c)]; }

    bool self_inverse(char c) const { return inverse(c) == c; }

    void check_word(const Word& w) const {
        for (char c : w)
            if (!contains(c))
                throw alphabet_error("letter '" + std::string(1, c) + "' not in alphabet");
    }

    /// Formal inverse: reverse the word and invert each letter. Not reduced.
    Word formal_inverse(const Word& w) const {
        Word r(w.rbegin(), w.rend());
        for (char& c : r) c = inverse(c);
        return r;
    }

    /// Lexicographic order by declared letter rank (not by char codes).
    bool lex_less(const Word& u, const Word& v) const {
        std::size_t n = std::min(u.size(), v.size());
        for (std::size_t i = 0; i < n; ++i) {
            int ru = rank(u[i]), rv = rank(v[i]);
            if (ru != rv) return ru < rv;
        }
        return u.size() < v.size();
    }

    /// Shortlex: length first, then lex by declared rank.
    bool shortlex_less(const Word& u, const Word& v) const {
        if (u.size() != v.size()) return u.size() < v.size();
        return lex_less(u, v);
    }

private:
    std::string letters_;
    std::array<int, 256> rank_{};
    std::array<char, 256> inv_{};
};

}  // namespace ggt
