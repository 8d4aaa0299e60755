#include "liftlab/lift.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "liftlab/series.hpp"

namespace liftlab::lift {

std::vector<int> BaseGraph::degrees() const {
    std::vector<int> deg(static_cast<size_t>(vertex_count), 0);
    for (const Edge& e : edges) {
        ++deg[static_cast<size_t>(e.tail)];
        ++deg[static_cast<size_t>(e.head)];
    }
    return deg;
}

bool BaseGraph::regular(int* degree) const {
    const std::vector<int> deg = degrees();
    if (deg.empty()) return false;
    if (!std::all_of(deg.begin(), deg.end(), [&](int d) { return d == deg[0]; })) return false;
    if (degree) *degree = deg[0];
    return true;
}

BaseGraph parse_base_graph(std::istream& in) {
    BaseGraph g;
    std::vector<std::tuple<int, int, char>> rows;
    std::string line;
    int max_vertex = 0;
    while (std::getline(in, line)) {
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        int tail, head;
        std::string label;
        if (!(ls >> tail)) continue;  // blank line
        if (!(ls >> head >> label) || label.size() != 1 ||
            !std::islower(static_cast<unsigned char>(label[0])))
            throw std::invalid_argument("base graph line must be: tail head letter");
        if (tail < 1 || head < 1) throw std::invalid_argument("vertices are 1-based");
        rows.emplace_back(tail - 1, head - 1, label[0]);
        max_vertex = std::max({max_vertex, tail, head});
    }
    if (rows.empty()) throw std::invalid_argument("base graph has no edges");
    g.vertex_count = max_vertex;

    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return std::get<2>(a) < std::get<2>(b); });
    for (size_t i = 0; i < rows.size(); ++i) {
        const char expected = static_cast<char>('a' + i);
        if (std::get<2>(rows[i]) != expected)
            throw std::invalid_argument(
                std::string("edge labels must be distinct consecutive letters; expected '") +
                expected + "'");
        g.edges.push_back({std::get<0>(rows[i]), std::get<1>(rows[i]), static_cast<int>(i) + 1});
    }

    // connectivity (undirected)
    std::vector<std::vector<int>> adj(static_cast<size_t>(g.vertex_count));
    for (const auto& e : g.edges) {
        adj[static_cast<size_t>(e.tail)].push_back(e.head);
        adj[static_cast<size_t>(e.head)].push_back(e.tail);
    }
    std::vector<bool> seen(static_cast<size_t>(g.vertex_count), false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int u : adj[static_cast<size_t>(v)])
            if (!seen[static_cast<size_t>(u)]) {
                seen[static_cast<size_t>(u)] = true;
                stack.push_back(u);
            }
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
        throw std::invalid_argument("base graph is not connected");
    return g;
}

BaseGraph load_base_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open base graph file: " + path);
    return parse_base_graph(in);
}

namespace {

Eigen::MatrixXd base_adjacency(const BaseGraph& g) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.vertex_count, g.vertex_count);
    for (const auto& e : g.edges) {
        if (e.tail == e.head) {
            a(e.tail, e.tail) += 2;
        } else {
            a(e.tail, e.head) += 1;
            a(e.head, e.tail) += 1;
        }
    }
    return a;
}

std::vector<double> symmetric_eigenvalues_desc(const Eigen::MatrixXd& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw InvariantViolation("symmetric eigensolver failed to converge");
    std::vector<double> out(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + solver.eigenvalues().size());
    std::sort(out.rbegin(), out.rend());
    return out;
}

/// Directed arc view: arc 2i traverses edge i forward (emits label),
/// arc 2i+1 traverses it backward (emits the inverse letter).
struct ArcView {
    std::vector<std::vector<int>> arcs_from;  // per vertex, arc ids

    explicit ArcView(const BaseGraph& g) : arcs_from(static_cast<size_t>(g.vertex_count)) {
        for (size_t i = 0; i < g.edges.size(); ++i) {
            arcs_from[static_cast<size_t>(g.edges[i].tail)].push_back(static_cast<int>(2 * i));
            arcs_from[static_cast<size_t>(g.edges[i].head)].push_back(static_cast<int>(2 * i + 1));
        }
    }

    static int reverse(int arc) { return arc ^ 1; }
    static int edge(int arc) { return arc / 2; }
    static bool forward(int arc) { return (arc & 1) == 0; }
};

int arc_head(const BaseGraph& g, int arc) {
    const auto& e = g.edges[static_cast<size_t>(ArcView::edge(arc))];
    return ArcView::forward(arc) ? e.head : e.tail;
}

word::Letter arc_letter(const BaseGraph& g, int arc) {
    const auto& e = g.edges[static_cast<size_t>(ArcView::edge(arc))];
    return {e.label, ArcView::forward(arc) ? 1 : -1};
}

/// Exact trace of A_G^t via integer matrix power.
Int trace_power(const BaseGraph& g, int t) {
    const int v = g.vertex_count;
    std::vector<std::vector<Int>> a(static_cast<size_t>(v), std::vector<Int>(static_cast<size_t>(v), Int(0)));
    for (const auto& e : g.edges) {
        if (e.tail == e.head)
            a[static_cast<size_t>(e.tail)][static_cast<size_t>(e.tail)] += 2;
        else {
            a[static_cast<size_t>(e.tail)][static_cast<size_t>(e.head)] += 1;
            a[static_cast<size_t>(e.head)][static_cast<size_t>(e.tail)] += 1;
        }
    }
    std::vector<std::vector<Int>> acc(static_cast<size_t>(v), std::vector<Int>(static_cast<size_t>(v), Int(0)));
    for (int i = 0; i < v; ++i) acc[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    for (int step = 0; step < t; ++step) {
        std::vector<std::vector<Int>> next(static_cast<size_t>(v),
                                           std::vector<Int>(static_cast<size_t>(v), Int(0)));
        for (int i = 0; i < v; ++i)
            for (int l = 0; l < v; ++l) {
                if (acc[static_cast<size_t>(i)][static_cast<size_t>(l)] == 0) continue;
                for (int j = 0; j < v; ++j)
                    next[static_cast<size_t>(i)][static_cast<size_t>(j)] +=
                        acc[static_cast<size_t>(i)][static_cast<size_t>(l)] *
                        a[static_cast<size_t>(l)][static_cast<size_t>(j)];
            }
        acc = std::move(next);
    }
    Int tr(0);
    for (int i = 0; i < v; ++i) tr += acc[static_cast<size_t>(i)][static_cast<size_t>(i)];
    return tr;
}

/// Ball of the universal cover: nodes are non-backtracking paths from a
/// root lift of base vertex `root`. Returns parent/child structure.
struct CoverBall {
    std::vector<int> parent;      // -1 for root
    std::vector<int> base_vertex;
    std::vector<int> via_arc;     // arc taken from parent, -1 for root
    std::vector<int> depth;
};

CoverBall build_ball(const BaseGraph& g, const ArcView& arcs, int root, int radius,
                     long long budget) {
    CoverBall ball;
    ball.parent = {-1};
    ball.base_vertex = {root};
    ball.via_arc = {-1};
    ball.depth = {0};
    size_t frontier_begin = 0;
    for (int d = 0; d < radius; ++d) {
        const size_t frontier_end = ball.parent.size();
        for (size_t node = frontier_begin; node < frontier_end; ++node) {
            const int v = ball.base_vertex[node];
            for (int arc : arcs.arcs_from[static_cast<size_t>(v)]) {
                if (ball.via_arc[node] >= 0 && arc == ArcView::reverse(ball.via_arc[node]))
                    continue;  // backtracking stays in place in the tree
                if (static_cast<long long>(ball.parent.size()) >= budget)
                    throw BudgetExceeded("universal-cover ball exceeds budget");
                ball.parent.push_back(static_cast<int>(node));
                ball.base_vertex.push_back(arc_head(g, arc));
                ball.via_arc.push_back(arc);
                ball.depth.push_back(d + 1);
            }
        }
        frontier_begin = frontier_end;
    }
    return ball;
}

double ball_power_iteration(const CoverBall& ball) {
    const size_t n = ball.parent.size();
    std::vector<double> x(n, 1.0), y(n);
    double lambda = 0;
    for (int iter = 0; iter < 3000; ++iter) {
        std::fill(y.begin(), y.end(), 0.0);
        for (size_t i = 1; i < n; ++i) {
            const auto p = static_cast<size_t>(ball.parent[i]);
            y[i] += x[p];
            y[p] += x[i];
        }
        double num = 0, den = 0, norm2 = 0;
        for (size_t i = 0; i < n; ++i) {
            num += x[i] * y[i];
            den += x[i] * x[i];
            norm2 += y[i] * y[i];
        }
        const double next = den == 0 ? 0 : num / den;
        const double norm = std::sqrt(norm2);
        if (norm == 0) return 0;
        for (size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
        if (iter > 32 && std::abs(next - lambda) < 1e-13) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return lambda;
}

/// Top eigenvalue of the radius-R ball of the d-regular tree, via the
/// radial reduction: the Perron eigenvector is a function of depth, so
/// the ball problem collapses to an (R+1)-dim symmetric tridiagonal one.
double regular_ball_lambda(int d, int radius) {
    const int n = radius + 1;
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
    for (int l = 0; l + 1 < n; ++l) {
        const double w = l == 0 ? std::sqrt(static_cast<double>(d))
                                : std::sqrt(static_cast<double>(d - 1));
        s(l, l + 1) = w;
        s(l + 1, l) = w;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().maxCoeff();
}

}  // namespace

double lambda1(const BaseGraph& g) {
    return symmetric_eigenvalues_desc(base_adjacency(g)).front();
}

RhoEstimate rho(const BaseGraph& g, int radius, const Budgets& budgets) {
    if (radius < 1) throw std::invalid_argument("radius must be >= 1");
    RhoEstimate est;
    est.radius = radius;

    int d = 0;
    const bool is_regular = g.regular(&d);
    if (is_regular && d >= 2) est.closed_form = 2.0 * std::sqrt(static_cast<double>(d - 1));

    const ArcView arcs(g);
    if (is_regular && d >= 2) {
        est.lower_bound = regular_ball_lambda(d, radius);

        // Exact closed-walk counts on the regular tree by depth profile:
        // a depth-l vertex (l >= 1) sees its parent at l-1 and d-1 children
        // at l+1; the root sees d children. Depths past s_max/2 cannot
        // return in time, so the array can stop there.
        const int s_max = std::min(2 * radius, 40);
        std::vector<Int> omega(static_cast<size_t>(s_max / 2) + 2, Int(0));
        omega[0] = 1;
        for (int s = 1; s <= s_max; ++s) {
            std::vector<Int> next(omega.size(), Int(0));
            next[0] = omega[1] * d;
            for (size_t l = 1; l < omega.size(); ++l) {
                next[l] = omega[l - 1];
                if (l + 1 < omega.size()) next[l] += omega[l + 1] * (d - 1);
            }
            omega = std::move(next);
            if (s % 2 == 0) {
                const double root = std::pow(omega[0].get_d(), 1.0 / s);
                est.ts_roots.emplace_back(s, root);
            }
        }
    } else {
        const CoverBall ball = build_ball(g, arcs, 0, radius, budgets.ball_budget);
        est.lower_bound = ball_power_iteration(ball);

        // walk DP on the explicit ball (walks of length s stay within s/2)
        const int s_max = std::min(2 * radius, 40);
        std::vector<Int> count(ball.parent.size(), Int(0));
        count[0] = 1;
        for (int s = 1; s <= s_max; ++s) {
            std::vector<Int> next(count.size(), Int(0));
            for (size_t i = 1; i < count.size(); ++i) {
                if (count[i] != 0) next[static_cast<size_t>(ball.parent[i])] += count[i];
                const auto p = static_cast<size_t>(ball.parent[i]);
                if (count[p] != 0) next[i] += count[p];
            }
            count = std::move(next);
            if (s % 2 == 0 && s <= radius * 2) {
                const double root = std::pow(count[0].get_d(), 1.0 / s);
                est.ts_roots.emplace_back(s, root);
            }
        }
    }
    return est;
}

LiftSample sample_lift(const BaseGraph& g, int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("lift degree n must be >= 1");
    LiftSample lift;
    lift.base = g;
    lift.n = n;
    lift.seed = seed;
    SplitMix64 rng(derive_seed(seed, 0));
    for (int i = 0; i < g.k(); ++i) lift.permutations.push_back(perm::random_permutation(rng, n));
    return lift;
}

namespace {

Eigen::MatrixXd lift_adjacency(const BaseGraph& g, const std::vector<perm::Permutation>& sigma,
                               int n) {
    const int dim = g.vertex_count * n;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
    for (size_t i = 0; i < g.edges.size(); ++i) {
        const auto& e = g.edges[i];
        for (int j = 0; j < n; ++j) {
            const int p = e.tail * n + j;
            const int q = e.head * n + sigma[i](j);
            if (p == q)
                a(p, p) += 2;
            else {
                a(p, q) += 1;
                a(q, p) += 1;
            }
        }
    }
    return a;
}

Int lift_trace_power(const BaseGraph& g, const std::vector<perm::Permutation>& sigma, int n,
                     int t) {
    const int dim = g.vertex_count * n;
    std::vector<long long> a(static_cast<size_t>(dim) * static_cast<size_t>(dim), 0);
    auto at = [dim](std::vector<long long>& m, int i, int j) -> long long& {
        return m[static_cast<size_t>(i) * static_cast<size_t>(dim) + static_cast<size_t>(j)];
    };
    for (size_t i = 0; i < g.edges.size(); ++i) {
        const auto& e = g.edges[i];
        for (int j = 0; j < n; ++j) {
            const int p = e.tail * n + j;
            const int q = e.head * n + sigma[i](j);
            if (p == q)
                at(a, p, p) += 2;
            else {
                at(a, p, q) += 1;
                at(a, q, p) += 1;
            }
        }
    }
    std::vector<long long> acc(a.size(), 0);
    for (int i = 0; i < dim; ++i) at(acc, i, i) = 1;
    for (int step = 0; step < t; ++step) {
        std::vector<long long> next(a.size(), 0);
        for (int i = 0; i < dim; ++i)
            for (int l = 0; l < dim; ++l) {
                const long long v = at(acc, i, l);
                if (v == 0) continue;
                for (int j = 0; j < dim; ++j) next[static_cast<size_t>(i) * dim + j] += v * at(a, l, j);
            }
        acc = std::move(next);
    }
    Int tr(0);
    for (int i = 0; i < dim; ++i) tr += static_cast<long>(at(acc, i, i));
    return tr;
}

}  // namespace

SpectrumReport spectrum_report(const LiftSample& lift, double tolerance, const Budgets& budgets) {
    const int dim = lift.base.vertex_count * lift.n;
    if (dim > budgets.eigensolve_max_dim)
        throw BudgetExceeded("lift dimension " + std::to_string(dim) + " exceeds eigensolve budget");

    SpectrumReport report;
    const std::vector<double> base_eigs = symmetric_eigenvalues_desc(base_adjacency(lift.base));
    report.lambda1 = base_eigs.front();

    std::vector<double> lift_eigs =
        symmetric_eigenvalues_desc(lift_adjacency(lift.base, lift.permutations, lift.n));

    std::vector<bool> used(lift_eigs.size(), false);
    for (double b : base_eigs) {
        double best = -1;
        size_t best_idx = 0;
        for (size_t i = 0; i < lift_eigs.size(); ++i) {
            if (used[i]) continue;
            const double dist = std::abs(lift_eigs[i] - b);
            if (best < 0 || dist < best) {
                best = dist;
                best_idx = i;
            }
        }
        used[best_idx] = true;
        report.old_eigenvalues.push_back(lift_eigs[best_idx]);
        report.matching_residual = std::max(report.matching_residual, best);
    }
    if (report.matching_residual > tolerance)
        throw InvariantViolation("old-eigenvalue matching residual " +
                                 std::to_string(report.matching_residual) + " exceeds tolerance");
    std::sort(report.old_eigenvalues.rbegin(), report.old_eigenvalues.rend());
    for (size_t i = 0; i < lift_eigs.size(); ++i)
        if (!used[i]) report.new_eigenvalues.push_back(lift_eigs[i]);
    std::sort(report.new_eigenvalues.rbegin(), report.new_eigenvalues.rend());
    if (!report.new_eigenvalues.empty()) {
        double mu = 0;
        for (double e : report.new_eigenvalues) mu = std::max(mu, std::abs(e));
        report.mu_max = mu;
    }
    return report;
}

double theorem_bound(double lambda1, double rho) {
    if (!(rho > 0)) throw std::domain_error("rho must be positive");
    if (rho > lambda1 * (1 + 1e-12) + 1e-12)
        throw std::domain_error("rho exceeds lambda1, contradicting rho <= lambda1");
    rho = std::min(rho, lambda1);
    const double factor = std::max(1.0, 3.0 * std::pow(rho / lambda1, 2.0 / 3.0));
    return factor * std::cbrt(lambda1) * std::pow(rho, 2.0 / 3.0);
}

std::vector<std::pair<word::Word, int>> enumerate_closed_paths(const BaseGraph& g, int t,
                                                               const Budgets& budgets) {
    if (t < 0) throw std::invalid_argument("path length must be nonnegative");
    const Int expected = trace_power(g, t);
    if (expected > Int(static_cast<long>(budgets.closed_path_budget)))
        throw BudgetExceeded("|CP_t| = " + expected.get_str() + " exceeds budget");

    std::vector<std::pair<word::Word, int>> out;
    const int k = g.k();
    if (t == 0) {
        for (int v = 0; v < g.vertex_count; ++v)
            out.emplace_back(word::Word({}, std::max(k, 1)), v);
    } else {
        const ArcView arcs(g);
        std::vector<word::Letter> letters;
        std::function<void(int, int, int)> dfs = [&](int start, int v, int remaining) {
            if (remaining == 0) {
                if (v == start) out.emplace_back(word::Word(letters, k), start);
                return;
            }
            for (int arc : arcs.arcs_from[static_cast<size_t>(v)]) {
                letters.push_back(arc_letter(g, arc));
                dfs(start, arc_head(g, arc), remaining - 1);
                letters.pop_back();
            }
        };
        for (int v = 0; v < g.vertex_count; ++v) dfs(v, v, t);
    }
    if (Int(static_cast<long>(out.size())) != expected)
        throw InvariantViolation("closed path count disagrees with tr(A^t)");
    return out;
}

BetaCensus census_beta(const BaseGraph& g, int t, const Budgets& budgets) {
    BetaCensus census;
    census.t = t;
    const auto paths = enumerate_closed_paths(g, t, budgets);
    census.total = static_cast<long long>(paths.size());

    std::unordered_map<std::string, int> bucket_cache;  // canonical core -> bucket
    for (const auto& [w, start] : paths) {
        (void)start;
        const word::Word core = word::cyclic_reduce(w).first;
        int bucket;
        if (core.empty()) {
            bucket = 0;
        } else {
            const word::Word canonical = word::canonical_cyclic(core);
            const std::string key = word::to_string(canonical);
            auto it = bucket_cache.find(key);
            if (it != bucket_cache.end()) {
                bucket = it->second;
            } else {
                if (word::power_decompose(canonical).exponent >= 2) {
                    bucket = 1;  // imprimitive
                } else if (word::has_single_occurrence_letter(canonical)) {
                    bucket = 3;  // beta infinite
                } else {
                    const quot::BetaValue b = quot::beta(canonical, budgets, 2);
                    bucket = b.kind == quot::BetaValue::Kind::Finite ? b.value : 3;
                }
                bucket_cache.emplace(key, bucket);
            }
        }
        switch (bucket) {
            case 0: ++census.count_beta0; break;
            case 1: ++census.count_beta1; break;
            case 2: ++census.count_beta2; break;
            default: ++census.count_beta3_or_more; break;
        }
    }

    int d = 0;
    if (g.regular(&d) && d >= 2) {
        const double rho_val = 2.0 * std::sqrt(static_cast<double>(d - 1));
        census.rho_value = rho_val;
        const double v = g.vertex_count;
        const double rho_t = std::pow(rho_val, t);
        census.bound_beta0 = v * rho_t;
        census.bound_beta1 = v * std::pow(t, 4) * rho_t;
        census.bound_beta2 = v * std::pow(t, 7) * std::pow(3.0, t) * rho_t;
    }
    return census;
}

std::pair<Rat, Rat> trace_identity_check(const BaseGraph& g, int t, int n,
                                         const Budgets& budgets) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    const int k = g.k();
    long long n_fact = 1;
    for (int i = 2; i <= n; ++i) n_fact *= i;
    long long tuples = 1;
    for (int i = 0; i < k; ++i) {
        if (tuples > budgets.bruteforce_limit / n_fact)
            throw BudgetExceeded("(n!)^k exceeds brute-force budget");
        tuples *= n_fact;
    }

    // lhs: exact average of tr(A_H^t) over all lifts, minus tr(A_G^t).
    std::vector<std::vector<int>> images;
    {
        std::vector<int> img(static_cast<size_t>(n));
        std::iota(img.begin(), img.end(), 0);
        do images.push_back(img);
        while (std::next_permutation(img.begin(), img.end()));
    }
    Int lhs_sum(0);
    std::vector<perm::Permutation> sigma(static_cast<size_t>(k));
    for (long long idx = 0; idx < tuples; ++idx) {
        long long rest = idx;
        for (int i = 0; i < k; ++i) {
            sigma[static_cast<size_t>(i)] =
                perm::Permutation(std::vector<int>(images[static_cast<size_t>(rest % n_fact)]));
            rest /= n_fact;
        }
        lhs_sum += lift_trace_power(g, sigma, n, t);
    }
    Rat lhs = Rat(lhs_sum, Int(static_cast<long>(tuples))) - Rat(trace_power(g, t));
    lhs.canonicalize();

    // rhs: sum over closed paths of (E(X_w^{(n)}) - 1), each term exact.
    const auto paths = enumerate_closed_paths(g, t, budgets);
    std::unordered_map<std::string, Rat> e_cache;
    Rat rhs(0);
    for (const auto& [w, start] : paths) {
        (void)start;
        const word::Word canonical = word::canonical_cyclic(w);
        const std::string key = word::to_string(canonical);
        auto it = e_cache.find(key);
        if (it == e_cache.end()) {
            const series::RationalFn e = series::expectation_rational(canonical, 1, 1, budgets);
            Rat value = n >= e.validity_threshold()
                            ? e.eval_at(n)
                            : perm::exact_expectation_bruteforce(canonical, 1, 1, n, budgets);
            it = e_cache.emplace(key, std::move(value)).first;
        }
        rhs += it->second - 1;
    }
    rhs.canonicalize();
    return {lhs, rhs};
}

}  // namespace liftlab::lift
