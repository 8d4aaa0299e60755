#ifndef LIFTLAB_COMMON_HPP
#define LIFTLAB_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace liftlab {

using Int = mpz_class;
using Rat = mpq_class;

/// Raised when an enumeration or solve would exceed a configured budget.
/// The CLI maps it to exit code 2.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a mathematical invariant that the code asserts fails at
/// runtime (e.g. a series coefficient that must be an integer is not).
/// The CLI maps it to exit code 3 so CI can tell bugs from budget limits.
struct InvariantViolation : std::runtime_error {
    explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

struct Budgets {
    int trail_labels_per_component = 14;      // labels in one component of a universal graph
    long long max_quotients = 2'000'000;      // distinct quotients per enumeration
    long long bruteforce_limit = 10'000'000;  // (n!)^k cap for exact enumeration
    int eigensolve_max_dim = 4000;            // dense symmetric eigensolve dimension
    long long closed_path_budget = 10'000'000;  // |CP_t(G)| cap
    long long ball_budget = 5'000'000;          // universal-cover ball vertex cap
};

/// SplitMix64: the deterministic counter-based generator behind all sampling.
/// Identity string recorded in reports so runs are reproducible bit for bit.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform draw from [0, bound) by rejection; exact, no modulo bias.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }
};

inline constexpr const char* kGeneratorId = "splitmix64-fisher-yates/1";
inline constexpr const char* kToolVersion = "0.1.0";

/// Deterministic per-chunk sub-seed (seed XOR chunk index, avalanched).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t chunk) {
    SplitMix64 g(seed ^ (0xa0761d6478bd642fULL * (chunk + 1)));
    return g.next();
}

inline std::string rat_to_string(const Rat& q) {
    return q.get_str();
}

}  // namespace liftlab

#endif  // LIFTLAB_COMMON_HPP
