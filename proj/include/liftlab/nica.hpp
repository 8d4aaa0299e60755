#ifndef LIFTLAB_NICA_HPP
#define LIFTLAB_NICA_HPP

#include <vector>

#include "liftlab/common.hpp"

namespace liftlab::nica {

/// H(d,L) = { h > 0 : h | d and gcd(d/h, L) = 1 }.
struct HSet {
    int d = 1;
    int L = 1;
    std::vector<int> members;  // sorted
};

HSet h_set(int d, int L);

/// |H(d,L)| / L, the limit of E(X_{w,L}^{(n)}) for w = u^d.
Rat limit_mean(int d, int L);

/// The limit law sum_{h in H(d,L)} h Z_{1/Lh} with independent Poissons.
struct PoissonMixture {
    struct Component {
        int h;
        Rat rate;  // 1/(L h)
    };
    int d = 1;
    int L = 1;
    std::vector<Component> components;

    static PoissonMixture from(int d, int L);
};

/// Exact polynomial coefficients in t, used for the q and g recursions.
using PolynomialQ = std::vector<Rat>;

/// q^h_{L,r}: f_{hZ_{1/Lh}}^{(r)}(t) = f(t) q_r(t), with
/// q_0 = 1 and q_{r+1} = q' + (1/L) t^(h-1) q.
PolynomialQ q_polynomial(int h, int L, int r);

/// Free-spot generating function g^h_{L,r}: g_0 = 1 and
/// g_{r+1} = L g' + t^(h-1) g; coefficient j counts the cycle-union
/// graphs with j free spots, and g = L^r q.
PolynomialQ free_spot_gf(int h, int L, int r);

/// Exact r-th factorial moment of the mixture, combining the
/// per-component q-polynomials at t = 1 by the Leibniz rule.
Rat mixture_factorial_moment(const PoissonMixture& mix, int r);

/// P(Y = v) for v = 0..max_value by convolving component laws.
std::vector<double> mixture_pmf(const PoissonMixture& mix, int max_value);

/// Chernoff truncation point: smallest M with the documented bound
/// exp(sum_i rate_i (2^{h_i} - 1)) / 2^M below `tail`.
int pmf_truncation_point(const PoissonMixture& mix, double tail);

/// The bound value at the given M (reported in output metadata).
double pmf_tail_bound(const PoissonMixture& mix, int max_value);

}  // namespace liftlab::nica

#endif  // LIFTLAB_NICA_HPP
