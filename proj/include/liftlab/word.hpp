#ifndef LIFTLAB_WORD_HPP
#define LIFTLAB_WORD_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace liftlab::word {

/// One signed generator letter. Generators are 1-based; sign is +1 or -1.
struct Letter {
    int gen;
    int sign;

    friend bool operator==(const Letter&, const Letter&) = default;

    Letter inverse() const { return {gen, -sign}; }

    /// Dense code used for ordering and hashing: a=0, A=1, b=2, B=3, ...
    int code() const { return (gen - 1) * 2 + (sign < 0 ? 1 : 0); }

    friend auto operator<=>(const Letter& a, const Letter& b) {
        return a.code() <=> b.code();
    }
};

/// Immutable free-group word over a k-letter alphabet. Words are plain
/// letter sequences; no implicit reduction happens on construction.
class Word {
  public:
    Word() : k_(1) {}
    Word(std::vector<Letter> letters, int k);

    const std::vector<Letter>& letters() const { return letters_; }
    int alphabet_size() const { return k_; }
    int length() const { return static_cast<int>(letters_.size()); }
    bool empty() const { return letters_.empty(); }
    const Letter& operator[](int i) const { return letters_[static_cast<size_t>(i)]; }

    Word inverse() const;
    Word concat(const Word& other) const;
    Word power(int d) const;
    Word rotated(int offset) const;  // cyclic left shift by offset

    friend bool operator==(const Word&, const Word&) = default;
    auto operator<=>(const Word& other) const {
        return letters_cmp(letters_, other.letters_);
    }

  private:
    static std::strong_ordering letters_cmp(const std::vector<Letter>& a,
                                            const std::vector<Letter>& b);
    std::vector<Letter> letters_;
    int k_;
};

/// Parse "abAB" style text: lowercase = generator, uppercase = inverse.
/// Throws std::invalid_argument on non-alphabetic input or generator > k.
Word parse_word(std::string_view text, int k);

std::string to_string(const Word& w);

/// Free reduction: cancel adjacent mutually inverse letters to a fixpoint.
Word reduce(const Word& w);

/// Cyclic reduction. Returns (core, conjugator) with
/// reduce(conjugator . core . conjugator^-1) == reduce(w).
std::pair<Word, Word> cyclic_reduce(const Word& w);

struct PowerDecomposition {
    Word root;        // primitive root u
    int exponent;     // maximal d with w = x u^d x^-1
    Word conjugator;  // x
};

/// Maximal-power decomposition via cyclic reduction plus string periodicity.
/// Throws std::invalid_argument for words reducing to the identity.
PowerDecomposition power_decompose(const Word& w);

struct NielsenMove {
    enum class Kind { Swap, Invert, RightMultiply };
    Kind kind;
    int i;
    int j;  // unused for Invert

    static NielsenMove swap(int i, int j) { return {Kind::Swap, i, j}; }
    static NielsenMove invert(int i) { return {Kind::Invert, i, 0}; }
    static NielsenMove right_multiply(int i, int j) {
        return {Kind::RightMultiply, i, j};
    }
};

/// Image of w under an elementary Nielsen automorphism, freely reduced.
Word apply_nielsen(const Word& w, const NielsenMove& move);

/// True iff some generator occurs (counting both signs) exactly once.
/// Such words are Nielsen-equivalent to a single letter.
bool has_single_occurrence_letter(const Word& w);

/// Canonical conjugacy representative: lexicographically least cyclic
/// rotation of the cyclically reduced core. Used as cache key.
Word canonical_cyclic(const Word& w);

/// Least over rotations of the core and of its inverse; the word-scan
/// dedup key (beta and phi are also invariant under inversion).
Word canonical_cyclic_inv(const Word& w);

/// Scans u^2 for a contiguous occurrence of u^-1 (always absent for
/// cyclically reduced primitive u; exposed for the property suite).
bool inverse_is_subword_of_square(const Word& u);

}  // namespace liftlab::word

#endif  // LIFTLAB_WORD_HPP
