#include "liftlab/word.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace liftlab::word {

Word::Word(std::vector<Letter> letters, int k) : letters_(std::move(letters)), k_(k) {
    if (k_ < 1) throw std::invalid_argument("alphabet size must be positive");
    for (const Letter& l : letters_) {
        if (l.gen < 1 || l.gen > k_) throw std::invalid_argument("letter outside alphabet");
        if (l.sign != 1 && l.sign != -1) throw std::invalid_argument("letter sign must be +-1");
    }
}

std::strong_ordering Word::letters_cmp(const std::vector<Letter>& a,
                                       const std::vector<Letter>& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].code() != b[i].code()) return a[i].code() <=> b[i].code();
    }
    return std::strong_ordering::equal;
}

Word Word::inverse() const {
    std::vector<Letter> out;
    out.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back(it->inverse());
    return Word(std::move(out), k_);
}

Word Word::concat(const Word& other) const {
    std::vector<Letter> out = letters_;
    out.insert(out.end(), other.letters_.begin(), other.letters_.end());
    return Word(std::move(out), std::max(k_, other.k_));
}

Word Word::power(int d) const {
    if (d < 0) return inverse().power(-d);
    std::vector<Letter> out;
    out.reserve(letters_.size() * static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) out.insert(out.end(), letters_.begin(), letters_.end());
    return Word(std::move(out), k_);
}

Word Word::rotated(int offset) const {
    if (letters_.empty()) return *this;
    const int m = length();
    offset = ((offset % m) + m) % m;
    std::vector<Letter> out;
    out.reserve(letters_.size());
    for (int i = 0; i < m; ++i) out.push_back(letters_[static_cast<size_t>((i + offset) % m)]);
    return Word(std::move(out), k_);
}

Word parse_word(std::string_view text, int k) {
    std::vector<Letter> letters;
    letters.reserve(text.size());
    for (char c : text) {
        if (!std::isalpha(static_cast<unsigned char>(c)))
            throw std::invalid_argument(std::string("non-alphabetic character in word: '") + c + "'");
        const bool upper = std::isupper(static_cast<unsigned char>(c)) != 0;
        const int gen = (upper ? c - 'A' : c - 'a') + 1;
        if (gen > k)
            throw std::invalid_argument(std::string("generator '") + c + "' exceeds alphabet size " +
                                        std::to_string(k));
        letters.push_back({gen, upper ? -1 : 1});
    }
    return Word(std::move(letters), k);
}

std::string to_string(const Word& w) {
    std::string s;
    s.reserve(static_cast<size_t>(w.length()));
    for (const Letter& l : w.letters())
        s.push_back(static_cast<char>((l.sign > 0 ? 'a' : 'A') + l.gen - 1));
    return s;
}

Word reduce(const Word& w) {
    std::vector<Letter> stack;
    stack.reserve(w.letters().size());
    for (const Letter& l : w.letters()) {
        if (!stack.empty() && stack.back() == l.inverse())
            stack.pop_back();
        else
            stack.push_back(l);
    }
    return Word(std::move(stack), w.alphabet_size());
}

std::pair<Word, Word> cyclic_reduce(const Word& w) {
    const Word r = reduce(w);
    const auto& ls = r.letters();
    size_t lo = 0, hi = ls.size();
    while (hi - lo >= 2 && ls[lo] == ls[hi - 1].inverse()) {
        ++lo;
        --hi;
    }
    std::vector<Letter> core(ls.begin() + static_cast<long>(lo), ls.begin() + static_cast<long>(hi));
    std::vector<Letter> conj(ls.begin(), ls.begin() + static_cast<long>(lo));
    return {Word(std::move(core), w.alphabet_size()), Word(std::move(conj), w.alphabet_size())};
}

PowerDecomposition power_decompose(const Word& w) {
    auto [core, conj] = cyclic_reduce(w);
    if (core.empty()) throw std::invalid_argument("identity word has no primitive root");
    const int m = core.length();
    // Powers of a cyclically reduced word never cancel, so w = u^d holds in
    // the free group iff the core is literally periodic with period m/d.
    for (int p = 1; p <= m; ++p) {
        if (m % p != 0) continue;
        bool periodic = true;
        for (int i = p; i < m && periodic; ++i) periodic = core[i] == core[i - p];
        if (periodic) {
            std::vector<Letter> root(core.letters().begin(), core.letters().begin() + p);
            return {Word(std::move(root), w.alphabet_size()), m / p, conj};
        }
    }
    return {core, 1, conj};  // unreachable: p == m is always periodic
}

Word apply_nielsen(const Word& w, const NielsenMove& move) {
    const int k = w.alphabet_size();
    auto check_index = [&](int i) {
        if (i < 1 || i > k) throw std::invalid_argument("Nielsen move index out of range");
    };
    std::vector<Letter> out;
    out.reserve(w.letters().size() * 2);
    switch (move.kind) {
        case NielsenMove::Kind::Swap:
            check_index(move.i);
            check_index(move.j);
            if (move.i == move.j) throw std::invalid_argument("swap requires distinct generators");
            for (Letter l : w.letters()) {
                if (l.gen == move.i)
                    l.gen = move.j;
                else if (l.gen == move.j)
                    l.gen = move.i;
                out.push_back(l);
            }
            break;
        case NielsenMove::Kind::Invert:
            check_index(move.i);
            for (Letter l : w.letters()) {
                if (l.gen == move.i) l.sign = -l.sign;
                out.push_back(l);
            }
            break;
        case NielsenMove::Kind::RightMultiply:
            // g_i -> g_i g_j, hence g_i^-1 -> g_j^-1 g_i^-1.
            check_index(move.i);
            check_index(move.j);
            if (move.i == move.j)
                throw std::invalid_argument("right-multiply requires distinct generators");
            for (const Letter& l : w.letters()) {
                if (l.gen == move.i && l.sign > 0) {
                    out.push_back(l);
                    out.push_back({move.j, 1});
                } else if (l.gen == move.i && l.sign < 0) {
                    out.push_back({move.j, -1});
                    out.push_back(l);
                } else {
                    out.push_back(l);
                }
            }
            break;
    }
    return reduce(Word(std::move(out), k));
}

bool has_single_occurrence_letter(const Word& w) {
    std::vector<int> count(static_cast<size_t>(w.alphabet_size()) + 1, 0);
    for (const Letter& l : w.letters()) ++count[static_cast<size_t>(l.gen)];
    return std::any_of(count.begin(), count.end(), [](int c) { return c == 1; });
}

namespace {

Word least_rotation(const Word& w) {
    if (w.empty()) return w;
    Word best = w;
    for (int i = 1; i < w.length(); ++i) {
        Word rot = w.rotated(i);
        if (rot < best) best = rot;
    }
    return best;
}

}  // namespace

Word canonical_cyclic(const Word& w) {
    return least_rotation(cyclic_reduce(w).first);
}

Word canonical_cyclic_inv(const Word& w) {
    const Word core = cyclic_reduce(w).first;
    const Word a = least_rotation(core);
    const Word b = least_rotation(core.inverse());
    return a <= b ? a : b;
}

bool inverse_is_subword_of_square(const Word& u) {
    const int m = u.length();
    if (m == 0) return true;
    const Word sq = u.power(2);
    const Word inv = u.inverse();
    for (int s = 0; s + m <= 2 * m; ++s) {
        bool match = true;
        for (int i = 0; i < m && match; ++i) match = sq[s + i] == inv[i];
        if (match) return true;
    }
    return false;
}

}  // namespace liftlab::word
