#include "liftlab/quotient.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace liftlab::quot {

namespace {

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }

    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }

    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);  // keep the least label as representative
        parent[static_cast<size_t>(b)] = a;
        return true;
    }
};

Partition normalize(UnionFind& uf, int n) {
    Partition out(static_cast<size_t>(n));
    std::vector<int> id(static_cast<size_t>(n), -1);
    int next = 0;
    for (int i = 0; i < n; ++i) {
        const int r = uf.find(i);
        if (id[static_cast<size_t>(r)] < 0) id[static_cast<size_t>(r)] = next++;
        out[static_cast<size_t>(i)] = id[static_cast<size_t>(r)];
    }
    return out;
}

void add_single_trail_steps(TrailSpec& spec) {
    const auto& w = spec.w;
    for (int b = 1; b <= w.length(); ++b) {
        const word::Letter& l = w[b - 1];
        if (l.sign > 0)
            spec.steps.push_back({l.gen, b - 1, b});
        else
            spec.steps.push_back({l.gen, b, b - 1});
    }
}

}  // namespace

TrailSpec TrailSpec::open_trail(const word::Word& w) {
    TrailSpec spec;
    spec.w = w;
    spec.single_trail = true;
    spec.label_count = w.length() + 1;
    spec.component_label_count = spec.label_count;
    add_single_trail_steps(spec);
    return spec;
}

TrailSpec TrailSpec::closed_trail(const word::Word& w) {
    TrailSpec spec = open_trail(w);
    spec.seed_pairs.emplace_back(0, w.length());
    spec.component_label_count = std::max(w.length(), 1);
    return spec;
}

TrailSpec TrailSpec::cycles(const word::Word& w, int L, int r) {
    if (L < 1 || r < 1) throw std::invalid_argument("cycle spec requires L, r >= 1");
    if (w.empty()) throw std::invalid_argument("cycle spec requires a nonempty word");
    if (word::cyclic_reduce(w).first != w)
        throw std::invalid_argument("cycle spec requires a cyclically reduced word");
    TrailSpec spec;
    spec.w = w;
    spec.L = L;
    spec.r = r;
    spec.single_trail = false;
    const int m = w.length();
    const int cycle_len = L * m;
    spec.label_count = r * cycle_len;
    spec.component_label_count = cycle_len;
    for (int c = 0; c < r; ++c) {
        const int base = c * cycle_len;
        for (int j = 0; j < cycle_len; ++j) {
            const word::Letter& l = w[j % m];
            const int from = base + j;
            const int to = base + (j + 1) % cycle_len;
            if (l.sign > 0)
                spec.steps.push_back({l.gen, from, to});
            else
                spec.steps.push_back({l.gen, to, from});
        }
        // the L cycle starts s^c_{j*m} must represent distinct points
        for (int j = 0; j < L; ++j) spec.marked.push_back(base + j * m);
    }
    return spec;
}

std::string TrailSpec::label_name(int label) const {
    if (single_trail) return "c1:p" + std::to_string(label);
    const int cycle_len = L * w.length();
    return "c" + std::to_string(label / cycle_len + 1) + ":p" + std::to_string(label % cycle_len);
}

Partition discrete_partition(int n) {
    Partition p(static_cast<size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

std::string partition_key(const Partition& p) {
    std::string key;
    key.reserve(p.size());
    for (int b : p) key.push_back(static_cast<char>(b));
    return key;
}

namespace {

/// Reusable fold workspace. The per-color lookup tables are flat arrays
/// with epoch stamping so a fold never allocates.
struct FoldScratch {
    std::vector<int> table;  // 2 * colors * labels entries
    std::vector<unsigned> stamp;
    unsigned epoch = 0;
    UnionFind uf{0};

    void reset(int colors, int labels) {
        const size_t need = 2 * static_cast<size_t>(colors + 1) * static_cast<size_t>(labels);
        if (table.size() < need) {
            table.assign(need, 0);
            stamp.assign(need, 0);
        }
    }
};

thread_local FoldScratch fold_scratch;

/// Fold to fixpoint on the scratch union-find. Returns false on a marked
/// label collision.
bool fold_on(const TrailSpec& spec, FoldScratch& ws) {
    const int n = spec.label_count;
    const int colors = spec.w.alphabet_size();
    ws.reset(colors, n);
    auto& uf = ws.uf;

    bool changed = true;
    while (changed) {
        changed = false;
        ++ws.epoch;
        for (const Step& s : spec.steps) {
            const int t = uf.find(s.tail);
            const int h = uf.find(s.head);
            const size_t kt = static_cast<size_t>(s.color) * n + t;
            const size_t kh = (static_cast<size_t>(colors + 1) + s.color) * n + h;
            if (ws.stamp[kt] == ws.epoch) {
                const int other = uf.find(ws.table[kt]);
                if (other != h) {
                    uf.unite(other, h);
                    changed = true;
                }
            } else {
                ws.stamp[kt] = ws.epoch;
                ws.table[kt] = h;
            }
            if (ws.stamp[kh] == ws.epoch) {
                const int other = uf.find(ws.table[kh]);
                if (other != t) {
                    uf.unite(other, t);
                    changed = true;
                }
            } else {
                ws.stamp[kh] = ws.epoch;
                ws.table[kh] = t;
            }
        }
    }

    for (size_t i = 0; i < spec.marked.size(); ++i)
        for (size_t j = i + 1; j < spec.marked.size(); ++j)
            if (uf.find(spec.marked[i]) == uf.find(spec.marked[j])) return false;
    return true;
}

}  // namespace

std::optional<Partition> fold_closure(const TrailSpec& spec, const Partition& base,
                                      std::span<const std::pair<int, int>> merges) {
    const int n = spec.label_count;
    FoldScratch& ws = fold_scratch;
    ws.uf = UnionFind(n);
    std::vector<int> first_of_block(base.size(), -1);
    for (int i = 0; i < n; ++i) {
        const int b = base[static_cast<size_t>(i)];
        if (first_of_block[static_cast<size_t>(b)] < 0)
            first_of_block[static_cast<size_t>(b)] = i;
        else
            ws.uf.unite(first_of_block[static_cast<size_t>(b)], i);
    }
    for (const auto& [a, b] : merges) ws.uf.unite(a, b);
    if (!fold_on(spec, ws)) return std::nullopt;
    return normalize(ws.uf, n);
}

QuotientGraph build_graph(const TrailSpec& spec, Partition blocks) {
    QuotientGraph g;
    g.blocks = std::move(blocks);
    g.v = g.blocks.empty() ? 0 : *std::max_element(g.blocks.begin(), g.blocks.end()) + 1;

    std::map<std::tuple<int, int, int>, int> mult;
    for (const Step& s : spec.steps)
        ++mult[{s.color, g.blocks[static_cast<size_t>(s.tail)], g.blocks[static_cast<size_t>(s.head)]}];

    g.edges_per_color.assign(static_cast<size_t>(spec.w.alphabet_size()) + 1, 0);
    std::vector<int> degree(static_cast<size_t>(g.v), 0);
    g.min_traversal = mult.empty() ? 0 : INT32_MAX;
    for (const auto& [key, count] : mult) {
        const auto& [color, tail, head] = key;
        g.edges.push_back({color, tail, head, count});
        ++g.edges_per_color[static_cast<size_t>(color)];
        ++g.e_total;
        degree[static_cast<size_t>(tail)] += 1;
        degree[static_cast<size_t>(head)] += 1;  // a loop contributes 2
        g.min_traversal = std::min(g.min_traversal, count);
    }
    g.chi = g.e_total - g.v + 1;
    g.all_degree_two =
        g.v > 0 && std::all_of(degree.begin(), degree.end(), [](int d) { return d == 2; });
    return g;
}

bool is_realizable(const QuotientGraph& g) {
    std::unordered_set<long long> tails, heads;
    for (const auto& e : g.edges) {
        const long long kt = static_cast<long long>(e.color) * g.v + e.tail;
        const long long kh = static_cast<long long>(e.color) * g.v + e.head;
        if (!tails.insert(kt).second) return false;
        if (!heads.insert(kh).second) return false;
    }
    return true;
}

QuotientGraph universal_graph(const TrailSpec& spec) {
    auto folded = fold_closure(spec, discrete_partition(spec.label_count), spec.seed_pairs);
    if (!folded)
        throw InvariantViolation("universal graph folding collided marked labels");
    return build_graph(spec, std::move(*folded));
}

void for_each_quotient(const TrailSpec& spec, const Budgets& budgets,
                       const std::function<void(const QuotientGraph&)>& visit) {
    if (spec.component_label_count > budgets.trail_labels_per_component)
        throw BudgetExceeded("trail component has " + std::to_string(spec.component_label_count) +
                             " labels, budget " + std::to_string(budgets.trail_labels_per_component));

    const QuotientGraph universal = universal_graph(spec);
    std::unordered_set<std::string> seen{partition_key(universal.blocks)};
    std::queue<std::string> queue;  // pending canonical partitions
    queue.push(partition_key(universal.blocks));
    visit(universal);

    Partition cur(static_cast<size_t>(spec.label_count));
    while (!queue.empty()) {
        const std::string key = std::move(queue.front());
        queue.pop();
        for (size_t i = 0; i < key.size(); ++i) cur[i] = key[i];
        const int v = *std::max_element(cur.begin(), cur.end()) + 1;
        std::vector<int> rep(static_cast<size_t>(v), -1);
        for (int i = 0; i < static_cast<int>(cur.size()); ++i)
            if (rep[static_cast<size_t>(cur[static_cast<size_t>(i)])] < 0)
                rep[static_cast<size_t>(cur[static_cast<size_t>(i)])] = i;

        for (int b1 = 0; b1 < v; ++b1) {
            for (int b2 = b1 + 1; b2 < v; ++b2) {
                const std::pair<int, int> merge{rep[static_cast<size_t>(b1)], rep[static_cast<size_t>(b2)]};
                auto folded = fold_closure(spec, cur, {&merge, 1});
                if (!folded) continue;
                std::string child = partition_key(*folded);
                if (!seen.insert(child).second) continue;
                if (static_cast<long long>(seen.size()) > budgets.max_quotients)
                    throw BudgetExceeded("quotient enumeration exceeded " +
                                         std::to_string(budgets.max_quotients));
                visit(build_graph(spec, std::move(*folded)));
                queue.push(std::move(child));
            }
        }
    }
}

std::vector<QuotientGraph> enumerate_quotients(const TrailSpec& spec, const Budgets& budgets) {
    std::vector<QuotientGraph> out;
    for_each_quotient(spec, budgets, [&](const QuotientGraph& g) { out.push_back(g); });
    return out;
}

QuotientGraph::Type classify_type(const QuotientGraph& g, const TrailSpec& spec) {
    if (!spec.single_trail)
        throw std::invalid_argument("type classification needs the open single trail");
    const int m = spec.label_count - 1;
    if (g.blocks[0] != g.blocks[static_cast<size_t>(m)])
        throw std::invalid_argument("quotient does not merge s_0 with s_m");

    // chi = 0 happens only for words reducing to the identity; the unique
    // generating set is empty, so {s_0,s_m} cannot appear in it.
    if (g.chi == 0) return QuotientGraph::Type::B;

    const std::pair<int, int> seed{0, m};
    Partition start = *fold_closure(spec, discrete_partition(spec.label_count), {&seed, 1});
    if (start == g.blocks) {
        if (g.chi != 1)
            throw InvariantViolation("universal closed graph must have chi 1");
        return QuotientGraph::Type::A;
    }

    // Candidate pairs: both labels in one block of g. Folding such pairs can
    // never overshoot g, so the DFS below searches exactly the generating
    // sets of size chi that contain {s_0, s_m}.
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j)
            if (g.blocks[static_cast<size_t>(i)] == g.blocks[static_cast<size_t>(j)] &&
                !(i == 0 && j == m))
                pairs.emplace_back(i, j);

    std::unordered_set<std::string> visited;
    auto dfs = [&](auto&& self, const Partition& cur, size_t from, int remaining) -> bool {
        if (cur == g.blocks) {
            if (remaining != 0)
                throw InvariantViolation("found generating set smaller than chi");
            return true;
        }
        if (remaining == 0) return false;
        std::string memo = partition_key(cur);
        memo.push_back(static_cast<char>(remaining));
        if (!visited.insert(std::move(memo)).second) return false;
        for (size_t idx = from; idx < pairs.size(); ++idx) {
            const auto& [a, b] = pairs[idx];
            if (cur[static_cast<size_t>(a)] == cur[static_cast<size_t>(b)]) continue;
            auto child = fold_closure(spec, cur, {&pairs[idx], 1});
            if (self(self, *child, idx + 1, remaining - 1)) return true;
        }
        return false;
    };
    return dfs(dfs, start, 0, g.chi - 1) ? QuotientGraph::Type::A : QuotientGraph::Type::B;
}

bool edge_traversal_check(const QuotientGraph& g) {
    if (g.type != QuotientGraph::Type::B) return true;
    return g.min_traversal >= 2;
}

ClosedTrailAnalysis analyze_closed_trail(const word::Word& core, const Budgets& budgets) {
    ClosedTrailAnalysis out;
    out.spec = TrailSpec::open_trail(core);
    TrailSpec closed = TrailSpec::closed_trail(core);
    if (closed.component_label_count > budgets.trail_labels_per_component)
        throw BudgetExceeded("word too long for quotient budget");
    out.quotients = enumerate_quotients(closed, budgets);
    for (QuotientGraph& g : out.quotients) {
        g.type = classify_type(g, out.spec);
        if (g.type == QuotientGraph::Type::A)
            ++out.type_a_by_chi[g.chi];
        else
            ++out.type_b_by_chi[g.chi];
    }
    return out;
}

BetaValue beta(const word::Word& w, const Budgets& budgets, int cap) {
    const word::Word core = word::cyclic_reduce(w).first;
    if (core.empty()) return BetaValue::finite(0);

    TrailSpec closed = TrailSpec::closed_trail(core);
    std::vector<QuotientGraph> quotients = enumerate_quotients(closed, budgets);
    std::sort(quotients.begin(), quotients.end(),
              [](const QuotientGraph& a, const QuotientGraph& b) { return a.chi < b.chi; });

    const TrailSpec open = TrailSpec::open_trail(core);
    for (QuotientGraph& g : quotients) {
        if (cap >= 0 && g.chi > cap) return BetaValue::exceeds(cap);
        if (g.min_traversal < 2) continue;  // type B traverses every edge twice
        if (classify_type(g, open) == QuotientGraph::Type::B) return BetaValue::finite(g.chi);
    }
    return BetaValue::infinite();
}

UpsilonGraph build_upsilon(const word::Word& w) {
    if (word::reduce(w) != w || word::cyclic_reduce(w).first != w)
        throw std::invalid_argument("upsilon graph requires a cyclically reduced word");
    if (w.empty() || word::power_decompose(w).exponent != 1)
        throw std::invalid_argument("upsilon graph requires a primitive word");

    const QuotientGraph hat = universal_graph(TrailSpec::closed_trail(w));
    const int v = hat.v;
    const long long pair_count = static_cast<long long>(v) * (v - 1) / 2;
    auto pair_index = [v](int a, int b) {
        if (a > b) std::swap(a, b);
        // index of {a,b}, a<b, in lexicographic order
        return static_cast<long long>(a) * (2 * v - a - 1) / 2 + (b - a - 1);
    };

    UpsilonGraph ups;
    ups.vertices = pair_count;
    UnionFind uf(static_cast<int>(pair_count));
    long long unions = 0;
    for (size_t i = 0; i < hat.edges.size(); ++i) {
        for (size_t j = i + 1; j < hat.edges.size(); ++j) {
            const auto& e1 = hat.edges[i];
            const auto& e2 = hat.edges[j];
            if (e1.color != e2.color) continue;
            ++ups.edges;
            const long long a = pair_index(e1.head, e2.head);
            const long long b = pair_index(e1.tail, e2.tail);
            if (a == b || !uf.unite(static_cast<int>(a), static_cast<int>(b)))
                ups.is_forest = false;
            else
                ++unions;
        }
    }
    ups.components = pair_count - unions;
    return ups;
}

CycleUnionCensus count_cycle_unions(const word::Word& w, int L, int r, const Budgets& budgets) {
    const word::Word core = word::cyclic_reduce(w).first;
    if (core.empty()) throw std::invalid_argument("cycle unions need a nontrivial word");
    const auto decomposition = word::power_decompose(core);
    const int d = decomposition.exponent;
    const int u_len = decomposition.root.length();

    TrailSpec spec = TrailSpec::cycles(core, L, r);
    CycleUnionCensus census;
    for_each_quotient(spec, budgets, [&](const QuotientGraph& g) {
        if ((g.chi == 1) != g.all_degree_two)
            throw InvariantViolation("chi=1 quotients must be exactly the degree-2 ones");
        if (!g.all_degree_two) return;

        UnionFind uf(g.v);
        for (const auto& e : g.edges) uf.unite(e.tail, e.head);
        std::map<int, int> component_size;
        for (int b = 0; b < g.v; ++b) ++component_size[uf.find(b)];

        std::vector<int> profile;
        for (const auto& [root, size] : component_size) {
            (void)root;
            if (size % u_len != 0)
                throw InvariantViolation("cycle length not a multiple of |u|");
            const int b = size / u_len;
            if (b % L != 0) throw InvariantViolation("cycle length violates L | b");
            const int h = b / L;
            if (d % h != 0 || std::gcd(d / h, L) != 1)
                throw InvariantViolation("cycle h value outside H(d,L)");
            profile.push_back(h);
        }
        std::sort(profile.begin(), profile.end());
        ++census.total;
        ++census.by_profile[profile];
        if (std::adjacent_find(profile.begin(), profile.end(), std::not_equal_to<>()) ==
            profile.end())
            ++census.pure_by_h[profile.front()];
    });
    return census;
}

}  // namespace liftlab::quot
