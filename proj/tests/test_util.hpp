#ifndef LIFTLAB_TEST_UTIL_HPP
#define LIFTLAB_TEST_UTIL_HPP

#include <set>
#include <string>
#include <vector>

#include "liftlab/common.hpp"
#include "liftlab/quotient.hpp"
#include "liftlab/word.hpp"

namespace testutil {

using liftlab::SplitMix64;
using liftlab::word::Letter;
using liftlab::word::Word;

/// Random word over k generators, freely wild (may be unreduced).
inline Word random_word(SplitMix64& rng, int k, int len) {
    std::vector<Letter> ls;
    for (int i = 0; i < len; ++i)
        ls.push_back({static_cast<int>(rng.below(static_cast<std::uint64_t>(k))) + 1,
                      rng.below(2) == 0 ? 1 : -1});
    return Word(ls, k);
}

/// Random cyclically reduced word: no adjacent or wraparound cancellation.
inline Word random_cyclically_reduced(SplitMix64& rng, int k, int len) {
    for (;;) {
        std::vector<Letter> ls;
        for (int i = 0; i < len; ++i) {
            for (;;) {
                Letter l{static_cast<int>(rng.below(static_cast<std::uint64_t>(k))) + 1,
                         rng.below(2) == 0 ? 1 : -1};
                if (!ls.empty() && l == ls.back().inverse()) continue;
                ls.push_back(l);
                break;
            }
        }
        const Word w(ls, k);
        if (liftlab::word::cyclic_reduce(w).first == w) return w;
    }
}

/// Independent realizability oracle, straight from the definition: the
/// partition merges tails of two same-color steps iff it merges the heads.
inline bool oracle_realizable(const liftlab::quot::TrailSpec& spec,
                              const std::vector<int>& blocks) {
    const auto& steps = spec.steps;
    for (size_t i = 0; i < steps.size(); ++i)
        for (size_t j = i + 1; j < steps.size(); ++j) {
            if (steps[i].color != steps[j].color) continue;
            const bool tails = blocks[static_cast<size_t>(steps[i].tail)] ==
                               blocks[static_cast<size_t>(steps[j].tail)];
            const bool heads = blocks[static_cast<size_t>(steps[i].head)] ==
                               blocks[static_cast<size_t>(steps[j].head)];
            if (tails != heads) return false;
        }
    for (size_t i = 0; i < spec.marked.size(); ++i)
        for (size_t j = i + 1; j < spec.marked.size(); ++j)
            if (blocks[static_cast<size_t>(spec.marked[i])] ==
                blocks[static_cast<size_t>(spec.marked[j])])
                return false;
    return true;
}

/// All realizable partitions of the spec's labels by exhaustive scan over
/// restricted-growth strings, honoring the spec's seed pairs. The slow
/// ground truth enumerate_quotients is checked against.
inline std::set<std::vector<int>> oracle_enumerate(const liftlab::quot::TrailSpec& spec) {
    std::set<std::vector<int>> out;
    const int n = spec.label_count;
    std::vector<int> rgs(static_cast<size_t>(n), 0);
    auto emit = [&]() {
        for (const auto& [a, b] : spec.seed_pairs)
            if (rgs[static_cast<size_t>(a)] != rgs[static_cast<size_t>(b)]) return;
        if (oracle_realizable(spec, rgs)) out.insert(rgs);
    };
    auto rec = [&](auto&& self, int pos, int max_used) -> void {
        if (pos == n) {
            emit();
            return;
        }
        for (int b = 0; b <= max_used + 1; ++b) {
            rgs[static_cast<size_t>(pos)] = b;
            self(self, pos + 1, std::max(max_used, b));
        }
    };
    rec(rec, 1, 0);  // label 0 is always block 0
    if (n == 0) emit();
    return out;
}

}  // namespace testutil

#endif
