#include "liftlab/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace liftlab::series {

namespace {

// Shared by the moment and psi paths: the quotient spec for (L, r), which
// yields Q_w for (1,1) (the closed single trail, so the empty word works
// too) and Q_{w,L,r} otherwise.
quot::TrailSpec moment_spec(const word::Word& w, int L, int r) {
    const word::Word core = word::cyclic_reduce(w).first;
    if (L == 1 && r == 1) return quot::TrailSpec::closed_trail(core);
    if (core.empty())
        throw std::invalid_argument("L-cycle moments need a nontrivial word");
    return quot::TrailSpec::cycles(core, L, r);
}

Int int_pow(long long base, int exp) {
    Int out(1);
    for (int i = 0; i < exp; ++i) out *= static_cast<long>(base);
    return out;
}

// Sum of [n]_v / prod_j [n]_{e^j} over a quotient stream, put over the
// common denominator prod_j [n]_{E_j} so every summand is a polynomial.
// The E_j (the universal graph's per-color counts) dominate every
// quotient's counts since folding only merges edges.
class MomentAccumulator {
  public:
    explicit MomentAccumulator(const quot::QuotientGraph& universal)
        : full_(universal.edges_per_color) {
        denominator_ = Poly(Int(1));
        for (size_t j = 1; j < full_.size(); ++j)
            denominator_ = denominator_ * Poly::falling_factorial(full_[j]);
    }

    void add(const quot::QuotientGraph& g) {
        Poly term = Poly::falling_factorial(g.v);
        for (size_t j = 1; j < full_.size(); ++j) {
            const int ej = j < g.edges_per_color.size() ? g.edges_per_color[j] : 0;
            term = term * Poly::shifted_product(ej, full_[j]);
        }
        numerator_ = numerator_ + term;
    }

    RationalFn result(const Rat& scale) const {
        RationalFn out = RationalFn(numerator_, denominator_).scaled(scale);
        int threshold = 0;
        for (int e : full_) threshold = std::max(threshold, e);
        out.set_validity_threshold(threshold);
        return out;
    }

  private:
    std::vector<int> full_;
    Poly numerator_;
    Poly denominator_;
};

}  // namespace

Int realization_count(const quot::QuotientGraph& g, long long n) {
    if (n < g.v) return Int(0);
    Int out(1);
    for (long long l = 0; l < g.v; ++l) out *= Int(static_cast<long>(n - l));
    for (size_t j = 1; j < g.edges_per_color.size(); ++j) {
        Int f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n - g.edges_per_color[j]));
        out *= f;
    }
    return out;
}

RationalFn expectation_rational(const word::Word& w, int L, int r, const Budgets& budgets) {
    const quot::TrailSpec spec = moment_spec(w, L, r);
    MomentAccumulator acc(quot::universal_graph(spec));
    quot::for_each_quotient(spec, budgets, [&](const quot::QuotientGraph& g) { acc.add(g); });
    return acc.result(Rat(1, int_pow(L, r)));
}

WordAnalysis phi_and_series(const word::Word& w, int order, const Budgets& budgets) {
    WordAnalysis out;
    out.input = w;
    out.core = word::cyclic_reduce(w).first;
    if (order < 0) order = std::max(out.core.length(), 1);
    out.truncation_order = order;

    quot::ClosedTrailAnalysis closed = quot::analyze_closed_trail(out.core, budgets);
    out.quotient_count = static_cast<long long>(closed.quotients.size());
    out.type_a_by_chi = closed.type_a_by_chi;
    out.type_b_by_chi = closed.type_b_by_chi;
    if (!closed.type_b_by_chi.empty())
        out.beta = closed.type_b_by_chi.begin()->first;

    // Expectation over the same quotient set.
    MomentAccumulator acc(quot::universal_graph(quot::TrailSpec::closed_trail(out.core)));
    for (const auto& g : closed.quotients) acc.add(g);
    out.expectation = acc.result(Rat(1));

    // Phi = (E - 1)/n; phi is its vanishing order at n = infinity, decided
    // on the exact rational function so that infinity is certified.
    const RationalFn one = RationalFn::constant(Rat(1));
    const RationalFn numerator_fn = out.expectation - one;
    RationalFn phi_fn(numerator_fn.num(), numerator_fn.den() * Poly({Int(0), Int(1)}));
    if (!phi_fn.is_zero()) out.phi = phi_fn.vanishing_order();

    const std::vector<Rat> coeffs = phi_fn.series_in_inv_n(order);
    out.a.reserve(coeffs.size());
    for (const Rat& q : coeffs) {
        if (q.get_den() != 1)
            throw InvariantViolation("series coefficient a_i is not an integer for word " +
                                     word::to_string(w));
        out.a.emplace_back(q.get_num());
    }
    if (out.phi && *out.phi <= order) {
        if (out.a[static_cast<size_t>(*out.phi)] == 0)
            throw InvariantViolation("vanishing order disagrees with series expansion");
        auto it = out.type_b_by_chi.find(*out.phi);
        out.type_b_at_phi = it == out.type_b_by_chi.end() ? 0 : it->second;
    }
    return out;
}

Rat psi_eval(const word::Word& w, int L, int r, const Rat& x, const Budgets& budgets) {
    Rat sum(0);
    quot::for_each_quotient(moment_spec(w, L, r), budgets, [&](const quot::QuotientGraph& g) {
        Rat term(1);
        for (int t = 1; t < g.v; ++t) term *= (1 - t * x);
        Rat den(1);
        for (size_t j = 1; j < g.edges_per_color.size(); ++j)
            for (int t = 1; t < g.edges_per_color[j]; ++t) den *= (1 - t * x);
        if (den == 0) throw std::domain_error("pole of psi at x = " + rat_to_string(x));
        term /= den;
        const int exp = g.chi - 1;
        if (exp >= 0) {
            for (int i = 0; i < exp; ++i) term *= x;
        } else {
            if (x == 0) throw std::domain_error("pole of psi at x = 0");
            for (int i = 0; i < -exp; ++i) term /= x;
        }
        sum += term;
    });
    sum /= Rat(int_pow(L, r));
    sum.canonicalize();
    return sum;
}

std::vector<RationalFn> factorial_to_raw(const std::vector<RationalFn>& factorial) {
    const int rmax = static_cast<int>(factorial.size());
    // Stirling numbers of the second kind, S(r,s).
    std::vector<std::vector<Int>> stirling(static_cast<size_t>(rmax) + 1,
                                           std::vector<Int>(static_cast<size_t>(rmax) + 1, Int(0)));
    stirling[0][0] = 1;
    for (int r = 1; r <= rmax; ++r)
        for (int s = 1; s <= r; ++s)
            stirling[static_cast<size_t>(r)][static_cast<size_t>(s)] =
                stirling[static_cast<size_t>(r - 1)][static_cast<size_t>(s - 1)] +
                Int(s) * stirling[static_cast<size_t>(r - 1)][static_cast<size_t>(s)];

    std::vector<RationalFn> raw;
    raw.reserve(factorial.size());
    for (int r = 1; r <= rmax; ++r) {
        RationalFn acc;
        for (int s = 1; s <= r; ++s)
            acc = acc + factorial[static_cast<size_t>(s - 1)].scaled(
                            Rat(stirling[static_cast<size_t>(r)][static_cast<size_t>(s)]));
        raw.push_back(std::move(acc));
    }
    return raw;
}

namespace {

bool tail_bound_core(const word::Word& w, int i, long long n, const Budgets& budgets) {
    const long long m = w.length();
    if (n < 3 * m * m)
        throw std::domain_error("tail bound requires n >= 3|w|^2");
    const WordAnalysis analysis = phi_and_series(w, std::max(i, 1), budgets);
    const RationalFn one = RationalFn::constant(Rat(1));
    const RationalFn diff = analysis.expectation - one;
    Rat phi_val = diff.eval_at(n) / static_cast<long>(n);
    phi_val.canonicalize();
    const Rat a_i(analysis.a[static_cast<size_t>(i)]);
    Rat bound = (a_i + Rat(int_pow(m, 2 * i + 4)) / static_cast<long>(n)) / Rat(int_pow(n, i));
    bound.canonicalize();
    return phi_val <= bound;
}

}  // namespace

bool tail_bound_check(const word::Word& w, int i, long long n, const Budgets& budgets) {
    return tail_bound_core(w, i, n, budgets);
}

bool tail_bound_check_beta3(const word::Word& w, long long n, const Budgets& budgets) {
    const long long m = w.length();
    if (n < 3 * m * m)
        throw std::domain_error("tail bound requires n >= 3|w|^2");
    const WordAnalysis analysis = phi_and_series(w, 3, budgets);
    const RationalFn one = RationalFn::constant(Rat(1));
    Rat phi_val = (analysis.expectation - one).eval_at(n) / static_cast<long>(n);
    phi_val.canonicalize();
    Rat bound = (Rat(analysis.a[3]) + Rat(int_pow(m, 10)) / static_cast<long>(n)) / Rat(int_pow(n, 3));
    bound.canonicalize();
    return phi_val <= bound;
}

std::vector<Rat> quotient_term_series(const quot::QuotientGraph& g, int order) {
    std::vector<Rat> num{Rat(1)};
    for (int t = 1; t < g.v; ++t) num = series_mul(num, {Rat(1), Rat(-t)}, order);
    std::vector<Rat> den{Rat(1)};
    for (size_t j = 1; j < g.edges_per_color.size(); ++j)
        for (int t = 1; t < g.edges_per_color[j]; ++t)
            den = series_mul(den, {Rat(1), Rat(-t)}, order);
    std::vector<Rat> ratio = series_div(num, den, order);
    std::vector<Rat> out(static_cast<size_t>(order) + 1, Rat(0));
    for (int i = 0; i + g.chi <= order; ++i)
        out[static_cast<size_t>(i + g.chi)] = ratio[static_cast<size_t>(i)];
    return out;
}

std::shared_ptr<const WordAnalysis> AnalysisCache::get(const word::Word& w, int order,
                                                       const Budgets& budgets) {
    const word::Word canonical = word::canonical_cyclic(w);
    std::string key = word::to_string(canonical);
    key.push_back('#');
    key += std::to_string(order);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = map_.find(key);
        if (it != map_.end()) return it->second;
    }
    auto value = std::make_shared<const WordAnalysis>(phi_and_series(canonical, order, budgets));
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = map_.try_emplace(std::move(key), std::move(value));
    (void)inserted;  // concurrent compute of the same word: first one wins
    return it->second;
}

}  // namespace liftlab::series
