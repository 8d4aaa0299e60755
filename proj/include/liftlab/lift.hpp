#ifndef LIFTLAB_LIFT_HPP
#define LIFTLAB_LIFT_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liftlab/common.hpp"
#include "liftlab/perm.hpp"
#include "liftlab/word.hpp"

namespace liftlab::lift {

/// Connected labeled oriented multigraph. Edge labels are the word
/// alphabet: edge i carries letter 'a'+i-1, one edge per label.
struct BaseGraph {
    int vertex_count = 0;
    struct Edge {
        int tail;   // 0-based
        int head;   // 0-based
        int label;  // 1-based generator index
    };
    std::vector<Edge> edges;  // sorted by label, labels are 1..k

    int k() const { return static_cast<int>(edges.size()); }
    /// Graph-theoretic degree; a loop contributes 2.
    std::vector<int> degrees() const;
    bool regular(int* degree = nullptr) const;
};

/// File format: lines "tail head label" (1-based vertices, letter labels),
/// '#' starts a comment. Throws std::invalid_argument on parse errors,
/// duplicate labels, or a disconnected graph.
BaseGraph parse_base_graph(std::istream& in);
BaseGraph load_base_graph(const std::string& path);

/// Largest adjacency eigenvalue; a loop adds 2 to its diagonal entry.
double lambda1(const BaseGraph& g);

struct RhoEstimate {
    std::optional<double> closed_form;  // 2 sqrt(d-1) for d-regular bases, d >= 2
    double lower_bound = 0;             // ball power iteration, zero boundary
    int radius = 0;
    std::vector<std::pair<int, double>> ts_roots;  // (s, t_s(v)^{1/s}) for even s
};

/// Spectral-radius machinery for the universal cover. For irregular bases
/// this is a lower bound plus the t_s sequence, never a converged value.
RhoEstimate rho(const BaseGraph& g, int radius, const Budgets& budgets);

struct LiftSample {
    BaseGraph base;
    int n = 1;
    std::vector<perm::Permutation> permutations;  // one per edge label
    std::uint64_t seed = 0;
};

LiftSample sample_lift(const BaseGraph& g, int n, std::uint64_t seed);

struct SpectrumReport {
    std::vector<double> old_eigenvalues;  // |V| entries, sorted descending
    std::vector<double> new_eigenvalues;  // n|V| - |V| entries, sorted descending
    std::optional<double> mu_max;         // empty for n = 1
    double lambda1 = 0;
    double matching_residual = 0;
};

/// Dense symmetric eigensolve of the lift adjacency; base eigenvalues are
/// matched greedily to the nearest unmatched lift eigenvalue (old), the
/// remainder are new. Residual above the tolerance flags solver trouble.
SpectrumReport spectrum_report(const LiftSample& lift, double tolerance, const Budgets& budgets);

/// max(1, 3 (rho/lambda1)^(2/3)) * lambda1^(1/3) * rho^(2/3).
/// Requires 0 < rho <= lambda1.
double theorem_bound(double lambda1, double rho);

/// Every closed path of length t, as (edge-label word, start vertex).
/// Traversing an edge against its orientation emits the inverse letter.
/// The list length always equals tr(A_G^t); asserted internally.
std::vector<std::pair<word::Word, int>> enumerate_closed_paths(const BaseGraph& g, int t,
                                                               const Budgets& budgets);

struct BetaCensus {
    int t = 0;
    long long count_beta0 = 0;
    long long count_beta1 = 0;
    long long count_beta2 = 0;
    long long count_beta3_or_more = 0;  // includes beta = infinity
    long long total = 0;
    std::optional<double> rho_value;  // exact only for regular bases
    double bound_beta0 = 0;           // |V| rho^t
    double bound_beta1 = 0;           // |V| t^4 rho^t
    double bound_beta2 = 0;           // |V| t^7 3^t rho^t
};

/// Splits CP_t(G) by beta in {0, 1, 2, >=3} with the counting bounds.
/// Beta is computed on cyclic-reduction canonical forms with caching;
/// bound values use the closed-form rho and are omitted for irregular
/// bases (only a bracket is known there).
BetaCensus census_beta(const BaseGraph& g, int t, const Budgets& budgets);

/// Both sides of the expected-trace identity, as exact rationals:
/// lhs = average over all (n!)^k lifts of tr(A_H^t) - tr(A_G^t),
/// rhs = sum over CP_t(G) of (E(X_w^(n)) - 1).
std::pair<Rat, Rat> trace_identity_check(const BaseGraph& g, int t, int n,
                                         const Budgets& budgets);

}  // namespace liftlab::lift

#endif  // LIFTLAB_LIFT_HPP
