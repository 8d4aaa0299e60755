#ifndef LIFTLAB_SERIES_HPP
#define LIFTLAB_SERIES_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "liftlab/common.hpp"
#include "liftlab/quotient.hpp"
#include "liftlab/rational_fn.hpp"
#include "liftlab/word.hpp"

namespace liftlab::series {

/// Number of (permutation-tuple, point) realizations of a quotient:
/// [n]_v * prod_j (n - e^j)!  Zero when n < v.
Int realization_count(const quot::QuotientGraph& g, long long n);

/// The exact r-th factorial moment of X_{w,L} as a rational function of n:
/// (1/L^r) sum_Gamma [n]_v / prod_j [n]_{e^j}, with the validity threshold
/// (max_j e^j of the universal graph) recorded on the result.
RationalFn expectation_rational(const word::Word& w, int L, int r, const Budgets& budgets);

struct WordAnalysis {
    word::Word input;
    word::Word core;  // cyclically reduced form the quotients are built on
    std::optional<int> beta;  // nullopt = infinity
    std::optional<int> phi;   // nullopt = infinity (E identically 1)
    std::vector<Int> a;       // integer series coefficients a_0..a_I
    RationalFn expectation;   // E(X_w^{(n)})
    long long quotient_count = 0;
    std::map<int, long long> type_a_by_chi;
    std::map<int, long long> type_b_by_chi;
    long long type_b_at_phi = 0;  // 0 when phi is infinite
    int truncation_order = 0;
};

/// Full exact analysis of one word: Q_w census with types, expectation,
/// phi decided from the rational function (so infinity is certified),
/// the 1/n series with integrality asserted, and beta from the census.
/// order < 0 selects the default truncation |core|.
WordAnalysis phi_and_series(const word::Word& w, int order, const Budgets& budgets);

/// psi_{w,L,r}(x) = (1/L^r) sum_Gamma x^(chi-1) prod(1-tx)/prod(1-tx),
/// evaluated exactly. Throws std::domain_error at a pole.
Rat psi_eval(const word::Word& w, int L, int r, const Rat& x, const Budgets& budgets);

/// Raw moments from factorial moments via Stirling numbers of the second
/// kind: E[X^r] = sum_s S(r,s) E[[X]_s]. Input covers orders 1..r.
std::vector<RationalFn> factorial_to_raw(const std::vector<RationalFn>& factorial);

/// Exact check of Phi_w(n) <= n^-i (a_i + |w|^(2i+4)/n). Requires n >= 3|w|^2.
bool tail_bound_check(const word::Word& w, int i, long long n, const Budgets& budgets);

/// Companion bound for beta >= 3: Phi_w(n) <= n^-3 (a_3 + |w|^10/n).
bool tail_bound_check_beta3(const word::Word& w, long long n, const Budgets& budgets);

/// Series of the single-quotient contribution x^chi prod(1-tx)/prod(1-tx);
/// summing over chi <= i recovers a_i, which the property suite exploits.
std::vector<Rat> quotient_term_series(const quot::QuotientGraph& g, int order);

/// Thread-safe memo of word analyses keyed by the canonical conjugacy form.
class AnalysisCache {
  public:
    std::shared_ptr<const WordAnalysis> get(const word::Word& w, int order,
                                            const Budgets& budgets);

  private:
    std::mutex mu_;
    std::unordered_map<std::string, std::shared_ptr<const WordAnalysis>> map_;
};

}  // namespace liftlab::series

#endif  // LIFTLAB_SERIES_HPP
