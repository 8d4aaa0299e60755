#ifndef LIFTLAB_PERM_HPP
#define LIFTLAB_PERM_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "liftlab/common.hpp"
#include "liftlab/word.hpp"

namespace liftlab::perm {

/// A permutation of {0..n-1} by its image table.
class Permutation {
  public:
    Permutation() = default;
    explicit Permutation(int n);  // identity
    explicit Permutation(std::vector<int> images);

    int degree() const { return static_cast<int>(img_.size()); }
    int operator()(int i) const { return img_[static_cast<size_t>(i)]; }
    const std::vector<int>& images() const { return img_; }
    Permutation inverse() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;

  private:
    std::vector<int> img_;
};

/// Uniform permutation by backward Fisher-Yates on the given stream.
Permutation random_permutation(SplitMix64& rng, int n);

/// Left-to-right evaluation of the word map: the i-th generator letter
/// applies perms[i-1] (or its inverse). All degrees must match.
Permutation evaluate_word(const word::Word& w, std::span<const Permutation> perms);

/// Number of orbits of size exactly L.
int count_L_cycles(const Permutation& p, int L);

struct SampleReport {
    std::string word;
    int L = 1;
    int n = 0;
    long long sample_count = 0;
    std::uint64_t seed = 0;
    std::string generator = kGeneratorId;
    std::vector<long long> counts;  // histogram of observed X values
    std::vector<double> empirical_pmf;
    double empirical_mean = 0;
    double mean_stderr = 0;
    std::vector<double> empirical_factorial_moments;  // orders 1..r_max
    std::vector<double> factorial_moment_stderr;
};

/// Monte-Carlo law of X_{w,L}^{(n)} from i.i.d. uniform permutation
/// tuples. Deterministic given (seed, parameters): samples are drawn in
/// fixed chunks with per-chunk sub-seeds, so thread count cannot change
/// the result.
SampleReport mc_estimate(const word::Word& w, int L, int n, long long samples,
                         std::uint64_t seed, int r_max = 3);

/// Exact r-th factorial moment of X_{w,L}^{(n)} by enumerating every
/// tuple of permutations of the generators that occur in w. The oracle
/// the rational-function path is checked against.
Rat exact_expectation_bruteforce(const word::Word& w, int L, int r, int n,
                                 const Budgets& budgets);

}  // namespace liftlab::perm

#endif  // LIFTLAB_PERM_HPP
