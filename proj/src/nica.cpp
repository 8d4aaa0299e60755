#include "liftlab/nica.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace liftlab::nica {

HSet h_set(int d, int L) {
    if (d < 1 || L < 1) throw std::invalid_argument("h_set requires d, L >= 1");
    HSet out{d, L, {}};
    for (int h = 1; h <= d; ++h)
        if (d % h == 0 && std::gcd(d / h, L) == 1) out.members.push_back(h);
    return out;
}

Rat limit_mean(int d, int L) {
    Rat out(static_cast<long>(h_set(d, L).members.size()), L);
    out.canonicalize();
    return out;
}

PoissonMixture PoissonMixture::from(int d, int L) {
    PoissonMixture mix;
    mix.d = d;
    mix.L = L;
    for (int h : h_set(d, L).members) {
        Rat rate(1, static_cast<long>(L) * h);
        rate.canonicalize();
        mix.components.push_back({h, rate});
    }
    return mix;
}

namespace {

PolynomialQ derivative(const PolynomialQ& p) {
    PolynomialQ out;
    for (size_t i = 1; i < p.size(); ++i) out.push_back(p[i] * static_cast<long>(i));
    return out;
}

PolynomialQ shift_add(const PolynomialQ& a, const PolynomialQ& b, int shift, const Rat& scale) {
    // a + scale * t^shift * b
    PolynomialQ out = a;
    if (out.size() < b.size() + static_cast<size_t>(shift))
        out.resize(b.size() + static_cast<size_t>(shift), Rat(0));
    for (size_t i = 0; i < b.size(); ++i) out[i + static_cast<size_t>(shift)] += scale * b[i];
    for (Rat& q : out) q.canonicalize();
    return out;
}

Rat eval_at_one(const PolynomialQ& p) {
    Rat out(0);
    for (const Rat& c : p) out += c;
    out.canonicalize();
    return out;
}

}  // namespace

PolynomialQ q_polynomial(int h, int L, int r) {
    if (h < 1 || L < 1 || r < 0) throw std::invalid_argument("bad q-polynomial parameters");
    PolynomialQ q{Rat(1)};
    const Rat inv_l(1, L);
    for (int i = 0; i < r; ++i) q = shift_add(derivative(q), q, h - 1, inv_l);
    return q;
}

PolynomialQ free_spot_gf(int h, int L, int r) {
    if (h < 1 || L < 1 || r < 0) throw std::invalid_argument("bad free-spot parameters");
    PolynomialQ g{Rat(1)};
    for (int i = 0; i < r; ++i) {
        PolynomialQ d = derivative(g);
        for (Rat& c : d) c *= L;
        g = shift_add(d, g, h - 1, Rat(1));
    }
    return g;
}

Rat mixture_factorial_moment(const PoissonMixture& mix, int r) {
    if (r < 0) throw std::invalid_argument("moment order must be nonnegative");
    // f_Y = prod f_i, so f_Y^(r)(1) expands by Leibniz over components,
    // using f_i^(j)(1) = q^h_{L,j}(1) since f_i(1) = 1.
    std::vector<Rat> acc{Rat(1)};  // acc[j] = (f of the first components)^(j)(1)
    acc.resize(static_cast<size_t>(r) + 1, Rat(0));
    bool first = true;
    for (const auto& comp : mix.components) {
        std::vector<Rat> comp_derivs(static_cast<size_t>(r) + 1);
        for (int j = 0; j <= r; ++j)
            comp_derivs[static_cast<size_t>(j)] = eval_at_one(q_polynomial(comp.h, mix.L, j));
        if (first) {
            acc = comp_derivs;
            first = false;
            continue;
        }
        std::vector<Rat> next(static_cast<size_t>(r) + 1, Rat(0));
        for (int m = 0; m <= r; ++m) {
            for (int j = 0; j <= m; ++j) {
                Int c;
                mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(m),
                             static_cast<unsigned long>(j));
                next[static_cast<size_t>(m)] +=
                    Rat(c) * acc[static_cast<size_t>(j)] * comp_derivs[static_cast<size_t>(m - j)];
            }
            next[static_cast<size_t>(m)].canonicalize();
        }
        acc = std::move(next);
    }
    if (first) return r == 0 ? Rat(1) : Rat(0);  // empty mixture: Y = 0
    return acc[static_cast<size_t>(r)];
}

std::vector<double> mixture_pmf(const PoissonMixture& mix, int max_value) {
    if (max_value < 0) throw std::invalid_argument("max_value must be nonnegative");
    std::vector<double> dist(static_cast<size_t>(max_value) + 1, 0.0);
    dist[0] = 1.0;
    for (const auto& comp : mix.components) {
        const double m = comp.rate.get_d();
        // P(h Z = h j) = e^-m m^j / j!
        std::vector<double> comp_pmf(static_cast<size_t>(max_value) + 1, 0.0);
        double p = std::exp(-m);
        for (int j = 0; j * comp.h <= max_value; ++j) {
            comp_pmf[static_cast<size_t>(j * comp.h)] = p;
            p *= m / (j + 1);
        }
        std::vector<double> next(static_cast<size_t>(max_value) + 1, 0.0);
        for (int v = 0; v <= max_value; ++v) {
            if (dist[static_cast<size_t>(v)] == 0.0) continue;
            for (int u = 0; v + u <= max_value; ++u)
                next[static_cast<size_t>(v + u)] +=
                    dist[static_cast<size_t>(v)] * comp_pmf[static_cast<size_t>(u)];
        }
        dist = std::move(next);
    }
    return dist;
}

double pmf_tail_bound(const PoissonMixture& mix, int max_value) {
    // Markov on 2^Y: P(Y > M) <= E[2^Y] / 2^(M+1).
    double log_mgf = 0.0;
    for (const auto& comp : mix.components)
        log_mgf += comp.rate.get_d() * (std::pow(2.0, comp.h) - 1.0);
    return std::exp(log_mgf - std::log(2.0) * (max_value + 1));
}

int pmf_truncation_point(const PoissonMixture& mix, double tail) {
    int m = 0;
    while (pmf_tail_bound(mix, m) >= tail && m < 10'000) ++m;
    return m;
}

}  // namespace liftlab::nica
