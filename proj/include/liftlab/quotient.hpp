#ifndef LIFTLAB_QUOTIENT_HPP
#define LIFTLAB_QUOTIENT_HPP

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "liftlab/common.hpp"
#include "liftlab/word.hpp"

namespace liftlab::quot {

/// One trail step: sigma_color maps the tail label onto the head label.
struct Step {
    int color;
    int tail;
    int head;
};

/// The universal trail object quotients are taken of. Three shapes:
///   open trail   - labels s_0..s_m of a single pass through w
///   closed trail - same labels with s_0 = s_m seeded (yields Q_w)
///   cycles       - r disjoint cycles of L*m labels each (yields Q_{w,L,r})
struct TrailSpec {
    word::Word w;
    int L = 1;
    int r = 1;
    bool single_trail = true;  // open or closed single trail of w
    int label_count = 0;
    int component_label_count = 0;  // labels per component of the universal graph
    std::vector<Step> steps;
    std::vector<int> marked;  // labels that must stay in distinct blocks
    std::vector<std::pair<int, int>> seed_pairs;

    static TrailSpec open_trail(const word::Word& w);
    static TrailSpec closed_trail(const word::Word& w);
    /// Requires w cyclically reduced and nonempty.
    static TrailSpec cycles(const word::Word& w, int L, int r);

    std::string label_name(int label) const;  // "c<cycle>:p<position>"
};

/// A partition of trail labels in restricted-growth form: block ids appear
/// in order of first occurrence, so the vector is its own canonical form.
using Partition = std::vector<int>;

Partition discrete_partition(int n);
std::string partition_key(const Partition& p);

/// Union-find fold closure: merge the given pairs on top of `base`, then
/// iterate the folding rule (equal-color steps with merged tails force
/// merged heads, and symmetrically) to a fixpoint. Returns nullopt exactly
/// when two marked labels collide.
std::optional<Partition> fold_closure(const TrailSpec& spec, const Partition& base,
                                      std::span<const std::pair<int, int>> merges);

struct QuotientGraph {
    enum class Type { A, B, Unclassified };

    Partition blocks;
    int v = 0;
    struct Edge {
        int color;
        int tail;
        int head;
        int multiplicity;  // trail steps mapped onto this edge
    };
    std::vector<Edge> edges;          // sorted by (color, tail, head)
    std::vector<int> edges_per_color; // 1-based color index
    int e_total = 0;
    int chi = 0;  // e - v + 1
    Type type = Type::Unclassified;
    bool all_degree_two = false;
    int min_traversal = 0;
};

QuotientGraph build_graph(const TrailSpec& spec, Partition blocks);

/// No two distinct same-color edges share a head or share a tail.
bool is_realizable(const QuotientGraph& g);

/// Fold closure of the finest admissible partition.
QuotientGraph universal_graph(const TrailSpec& spec);

/// BFS over all realizable quotients of the spec, coarsening one block
/// pair at a time and folding, deduplicated by canonical partition.
std::vector<QuotientGraph> enumerate_quotients(const TrailSpec& spec, const Budgets& budgets);

/// Streaming form of enumerate_quotients for large quotient sets: each
/// graph is built once, handed to the visitor, and dropped.
void for_each_quotient(const TrailSpec& spec, const Budgets& budgets,
                       const std::function<void(const QuotientGraph&)>& visit);

/// Type A iff some generating set of size chi contains {s_0, s_m}.
/// `spec` must be the open trail of w and g must merge s_0 with s_m.
QuotientGraph::Type classify_type(const QuotientGraph& g, const TrailSpec& spec);

/// Type B implies every edge is traversed at least twice.
bool edge_traversal_check(const QuotientGraph& g);

/// Q_w of the cyclically reduced core with every quotient classified,
/// plus the (chi, type) census. The shared input for beta/phi analysis.
struct ClosedTrailAnalysis {
    TrailSpec spec;  // open trail of the core
    std::vector<QuotientGraph> quotients;
    std::map<int, long long> type_a_by_chi;
    std::map<int, long long> type_b_by_chi;
};

ClosedTrailAnalysis analyze_closed_trail(const word::Word& core, const Budgets& budgets);

struct BetaValue {
    enum class Kind { Finite, Infinite, ExceedsCap };
    Kind kind = Kind::Infinite;
    int value = 0;  // the finite value, or the cap for ExceedsCap

    static BetaValue finite(int v) { return {Kind::Finite, v}; }
    static BetaValue infinite() { return {Kind::Infinite, 0}; }
    static BetaValue exceeds(int cap) { return {Kind::ExceedsCap, cap}; }

    bool is_finite() const { return kind == Kind::Finite; }
    bool is_infinite() const { return kind == Kind::Infinite; }
    friend bool operator==(const BetaValue&, const BetaValue&) = default;
};

/// Smallest characteristic of a type-B quotient in Q_w, or infinity.
/// With cap >= 0, classification stops past the cap and reports ExceedsCap;
/// the census buckets only need to know beta through 2.
BetaValue beta(const word::Word& w, const Budgets& budgets, int cap = -1);

/// The pair-dependency graph over the universal closed graph of a
/// primitive cyclically reduced word. Acyclic by Lemma-style analysis;
/// exposed so the property suite can check it.
struct UpsilonGraph {
    long long vertices = 0;
    long long edges = 0;
    long long components = 0;
    bool is_forest = true;
};

UpsilonGraph build_upsilon(const word::Word& w);

struct CycleUnionCensus {
    long long total = 0;
    // key: sorted multiset of h = |cycle| / (L |u|) over the quotient's cycles
    std::map<std::vector<int>, long long> by_profile;
    // |C^h_{w,L,r}|: quotients whose cycles all have length L*h*|u|
    std::map<int, long long> pure_by_h;
};

/// Quotients of Q_{w,L,r} that are disjoint unions of cycles.
CycleUnionCensus count_cycle_unions(const word::Word& w, int L, int r, const Budgets& budgets);

}  // namespace liftlab::quot

#endif  // LIFTLAB_QUOTIENT_HPP
