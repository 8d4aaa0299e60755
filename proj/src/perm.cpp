#include "liftlab/perm.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace liftlab::perm {

Permutation::Permutation(int n) : img_(static_cast<size_t>(n)) {
    std::iota(img_.begin(), img_.end(), 0);
}

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)) {
    std::vector<bool> seen(img_.size(), false);
    for (int v : img_) {
        if (v < 0 || v >= degree() || seen[static_cast<size_t>(v)])
            throw std::invalid_argument("image table is not a permutation");
        seen[static_cast<size_t>(v)] = true;
    }
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(img_.size());
    for (int i = 0; i < degree(); ++i) inv[static_cast<size_t>(img_[static_cast<size_t>(i)])] = i;
    return Permutation(std::move(inv));
}

Permutation random_permutation(SplitMix64& rng, int n) {
    std::vector<int> img(static_cast<size_t>(n));
    std::iota(img.begin(), img.end(), 0);
    for (int i = n - 1; i > 0; --i) {
        const auto j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
        std::swap(img[static_cast<size_t>(i)], img[static_cast<size_t>(j)]);
    }
    return Permutation(std::move(img));
}

Permutation evaluate_word(const word::Word& w, std::span<const Permutation> perms) {
    if (static_cast<int>(perms.size()) < w.alphabet_size())
        throw std::invalid_argument("need one permutation per generator");
    const int n = perms.empty() ? 0 : perms[0].degree();
    for (const Permutation& p : perms)
        if (p.degree() != n) throw std::invalid_argument("permutation degrees differ");

    std::vector<Permutation> inverses(perms.size());
    std::vector<bool> have_inverse(perms.size(), false);
    for (const word::Letter& l : w.letters()) {
        if (l.sign < 0 && !have_inverse[static_cast<size_t>(l.gen - 1)]) {
            inverses[static_cast<size_t>(l.gen - 1)] = perms[static_cast<size_t>(l.gen - 1)].inverse();
            have_inverse[static_cast<size_t>(l.gen - 1)] = true;
        }
    }

    std::vector<int> img(static_cast<size_t>(n));
    for (int s = 0; s < n; ++s) {
        int p = s;
        for (const word::Letter& l : w.letters()) {
            const auto g = static_cast<size_t>(l.gen - 1);
            p = l.sign > 0 ? perms[g](p) : inverses[g](p);
        }
        img[static_cast<size_t>(s)] = p;
    }
    return Permutation(std::move(img));
}

int count_L_cycles(const Permutation& p, int L) {
    if (L < 1) throw std::invalid_argument("cycle length must be positive");
    const int n = p.degree();
    std::vector<bool> visited(static_cast<size_t>(n), false);
    int count = 0;
    for (int i = 0; i < n; ++i) {
        if (visited[static_cast<size_t>(i)]) continue;
        int len = 0;
        for (int j = i; !visited[static_cast<size_t>(j)]; j = p(j)) {
            visited[static_cast<size_t>(j)] = true;
            ++len;
        }
        if (len == L) ++count;
    }
    return count;
}

namespace {

long long falling(long long x, int r) {
    long long out = 1;
    for (int i = 0; i < r; ++i) out *= x - i;
    return out;
}

int thread_count() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

SampleReport mc_estimate(const word::Word& w, int L, int n, long long samples,
                         std::uint64_t seed, int r_max) {
    if (samples < 1 || n < 1) throw std::invalid_argument("mc_estimate needs samples, n >= 1");
    const int k = w.alphabet_size();
    const int max_x = n / L;

    constexpr long long kChunk = 4096;
    const long long chunks = (samples + kChunk - 1) / kChunk;

    struct Accum {
        std::vector<long long> counts;
        std::vector<long long> fact_sum;      // sum of [X]_r
        std::vector<long long> fact_sq_sum;   // sum of [X]_r^2
    };
    auto run_chunk = [&](long long chunk, Accum& acc) {
        SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(chunk)));
        const long long begin = chunk * kChunk;
        const long long end = std::min(begin + kChunk, samples);
        std::vector<Permutation> tuple(static_cast<size_t>(k));
        for (long long s = begin; s < end; ++s) {
            for (int g = 0; g < k; ++g) tuple[static_cast<size_t>(g)] = random_permutation(rng, n);
            const int x = count_L_cycles(evaluate_word(w, tuple), L);
            ++acc.counts[static_cast<size_t>(x)];
            for (int r = 1; r <= r_max; ++r) {
                const long long f = falling(x, r);
                acc.fact_sum[static_cast<size_t>(r - 1)] += f;
                acc.fact_sq_sum[static_cast<size_t>(r - 1)] += f * f;
            }
        }
    };

    std::vector<Accum> partial(static_cast<size_t>(chunks));
    for (auto& a : partial) {
        a.counts.assign(static_cast<size_t>(max_x) + 1, 0);
        a.fact_sum.assign(static_cast<size_t>(r_max), 0);
        a.fact_sq_sum.assign(static_cast<size_t>(r_max), 0);
    }
    const int workers = std::min<long long>(thread_count(), chunks);
    std::vector<std::thread> pool;
    std::atomic<long long> next_chunk{0};
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (long long c; (c = next_chunk.fetch_add(1)) < chunks;)
                run_chunk(c, partial[static_cast<size_t>(c)]);
        });
    }
    for (auto& th : pool) th.join();

    SampleReport report;
    report.word = word::to_string(w);
    report.L = L;
    report.n = n;
    report.sample_count = samples;
    report.seed = seed;
    report.counts.assign(static_cast<size_t>(max_x) + 1, 0);
    std::vector<long long> fact_sum(static_cast<size_t>(r_max), 0);
    std::vector<long long> fact_sq(static_cast<size_t>(r_max), 0);
    for (const Accum& a : partial) {
        for (size_t i = 0; i < a.counts.size(); ++i) report.counts[i] += a.counts[i];
        for (int r = 0; r < r_max; ++r) {
            fact_sum[static_cast<size_t>(r)] += a.fact_sum[static_cast<size_t>(r)];
            fact_sq[static_cast<size_t>(r)] += a.fact_sq_sum[static_cast<size_t>(r)];
        }
    }

    const auto N = static_cast<double>(samples);
    report.empirical_pmf.resize(report.counts.size());
    for (size_t i = 0; i < report.counts.size(); ++i)
        report.empirical_pmf[i] = static_cast<double>(report.counts[i]) / N;
    for (int r = 0; r < r_max; ++r) {
        const double mean = static_cast<double>(fact_sum[static_cast<size_t>(r)]) / N;
        const double var =
            std::max(0.0, static_cast<double>(fact_sq[static_cast<size_t>(r)]) / N - mean * mean);
        report.empirical_factorial_moments.push_back(mean);
        report.factorial_moment_stderr.push_back(std::sqrt(var / N));
    }
    report.empirical_mean = report.empirical_factorial_moments[0];
    report.mean_stderr = report.factorial_moment_stderr[0];
    return report;
}

Rat exact_expectation_bruteforce(const word::Word& w, int L, int r, int n,
                                 const Budgets& budgets) {
    if (n < 1 || L < 1 || r < 0) throw std::invalid_argument("bad brute-force parameters");

    // Generators absent from w integrate out of the expectation.
    std::vector<int> gens;
    for (const word::Letter& l : w.letters()) gens.push_back(l.gen);
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    const int k_eff = static_cast<int>(gens.size());

    long long n_fact = 1;
    for (int i = 2; i <= n; ++i) {
        n_fact *= i;
        if (n_fact > budgets.bruteforce_limit)
            throw BudgetExceeded("n! exceeds brute-force budget");
    }
    long long tuples = 1;
    for (int g = 0; g < k_eff; ++g) {
        if (tuples > budgets.bruteforce_limit / std::max<long long>(n_fact, 1))
            throw BudgetExceeded("(n!)^k exceeds brute-force budget");
        tuples *= n_fact;
    }

    // Remap w onto dense generator indices 1..k_eff.
    std::vector<word::Letter> remapped;
    for (const word::Letter& l : w.letters()) {
        const auto pos = std::lower_bound(gens.begin(), gens.end(), l.gen) - gens.begin();
        remapped.push_back({static_cast<int>(pos) + 1, l.sign});
    }
    const word::Word dense(std::move(remapped), std::max(k_eff, 1));

    Int total(0);
    if (k_eff == 0) {
        // empty word: the image is the identity for the single empty tuple
        const Permutation id(n);
        total = Int(static_cast<long>(falling(count_L_cycles(id, L), r)));
        tuples = 1;
    } else if (k_eff == 1) {
        std::vector<int> img(static_cast<size_t>(n));
        std::iota(img.begin(), img.end(), 0);
        do {
            const Permutation sigma{std::vector<int>(img)};
            const int x = count_L_cycles(evaluate_word(dense, {&sigma, 1}), L);
            total += static_cast<long>(falling(x, r));
        } while (std::next_permutation(img.begin(), img.end()));
    } else {
        // All n! permutations fit comfortably: (n!)^k <= budget with k >= 2.
        std::vector<Permutation> table;
        table.reserve(static_cast<size_t>(n_fact));
        std::vector<int> img(static_cast<size_t>(n));
        std::iota(img.begin(), img.end(), 0);
        do {
            table.emplace_back(std::vector<int>(img));
        } while (std::next_permutation(img.begin(), img.end()));

        constexpr long long kChunk = 8192;
        const long long chunks = (tuples + kChunk - 1) / kChunk;
        std::vector<Int> partial(static_cast<size_t>(chunks), Int(0));
        auto run_chunk = [&](long long chunk) {
            std::vector<Permutation> tuple(static_cast<size_t>(k_eff));
            Int acc(0);
            const long long begin = chunk * kChunk;
            const long long end = std::min(begin + kChunk, tuples);
            for (long long idx = begin; idx < end; ++idx) {
                long long rest = idx;
                for (int g = 0; g < k_eff; ++g) {
                    tuple[static_cast<size_t>(g)] = table[static_cast<size_t>(rest % n_fact)];
                    rest /= n_fact;
                }
                const int x = count_L_cycles(evaluate_word(dense, tuple), L);
                acc += static_cast<long>(falling(x, r));
            }
            partial[static_cast<size_t>(chunk)] = std::move(acc);
        };
        const int workers = static_cast<int>(std::min<long long>(thread_count(), chunks));
        std::vector<std::thread> pool;
        std::atomic<long long> next_chunk{0};
        for (int t = 0; t < workers; ++t)
            pool.emplace_back([&] {
                for (long long c; (c = next_chunk.fetch_add(1)) < chunks;) run_chunk(c);
            });
        for (auto& th : pool) th.join();
        for (const Int& p : partial) total += p;
    }

    Rat out(total, Int(static_cast<long>(tuples)));
    out.canonicalize();
    return out;
}

}  // namespace liftlab::perm
