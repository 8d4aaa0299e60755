#include "liftlab/quotient.hpp"

#include <set>

#include "doctest.h"
#include "liftlab/word.hpp"
#include "test_util.hpp"

using namespace liftlab;
using quot::QuotientGraph;
using quot::TrailSpec;
using word::parse_word;

namespace {
const Budgets kBudgets{};

const QuotientGraph* find_partition(const std::vector<QuotientGraph>& qs,
                                    const quot::Partition& p) {
    for (const auto& g : qs)
        if (g.blocks == p) return &g;
    return nullptr;
}
}  // namespace

TEST_CASE("universal graph of the commutator closed trail is C4") {
    const auto g = quot::universal_graph(TrailSpec::closed_trail(parse_word("abAB", 2)));
    CHECK(g.v == 4);
    CHECK(g.e_total == 4);
    CHECK(g.chi == 1);
    CHECK(g.edges_per_color[1] == 2);
    CHECK(g.edges_per_color[2] == 2);
    CHECK(quot::is_realizable(g));
}

TEST_CASE("universal graph of cycles spec: four 3-cycles of the commutator") {
    const TrailSpec spec = TrailSpec::cycles(parse_word("abAB", 2), 3, 4);
    CHECK(spec.label_count == 48);
    CHECK(spec.marked.size() == 12);
    const auto g = quot::universal_graph(spec);
    CHECK(g.v == 48);  // 4 disjoint C12's
    CHECK(g.e_total == 48);
    CHECK(g.chi == 1);
    CHECK(g.all_degree_two);
}

TEST_CASE("open trail of aA folds to a single edge") {
    const auto g = quot::universal_graph(TrailSpec::open_trail(parse_word("aA", 1)));
    CHECK(g.v == 2);  // s0 = s2 forced
    CHECK(g.e_total == 1);
    CHECK(g.blocks[0] == g.blocks[2]);
}

TEST_CASE("fold closure merges and detects marked collisions") {
    const word::Word w = parse_word("abAB", 2);
    // seeding {s0,s4} on the open trail gives the universal closed graph
    const TrailSpec open = TrailSpec::open_trail(w);
    const std::pair<int, int> seed{0, 4};
    auto folded = quot::fold_closure(open, quot::discrete_partition(5), {&seed, 1});
    REQUIRE(folded.has_value());
    CHECK(quot::build_graph(open, *folded).v == 4);

    // merging two marked start labels of distinct cycles is rejected
    const TrailSpec two = TrailSpec::cycles(w, 1, 2);
    const std::pair<int, int> collide{0, 4};
    CHECK_FALSE(quot::fold_closure(two, quot::discrete_partition(8), {&collide, 1}).has_value());
}

TEST_CASE("commutator census matches the published table") {
    auto analysis = quot::analyze_closed_trail(parse_word("abAB", 2), kBudgets);
    CHECK(analysis.quotients.size() == 7);
    CHECK(analysis.type_a_by_chi == std::map<int, long long>{{1, 1}, {2, 4}, {3, 1}});
    CHECK(analysis.type_b_by_chi == std::map<int, long long>{{2, 1}});
    for (const auto& g : analysis.quotients) {
        CHECK(quot::is_realizable(g));
        CHECK(quot::edge_traversal_check(g));
    }
}

TEST_CASE("single letter closed trail has one quotient") {
    const auto qs = quot::enumerate_quotients(TrailSpec::closed_trail(parse_word("a", 1)), kBudgets);
    CHECK(qs.size() == 1);
    CHECK(qs[0].v == 1);
    CHECK(qs[0].e_total == 1);
}

TEST_CASE("enumeration agrees with the exhaustive partition oracle") {
    const char* words[] = {"abAB", "aa", "ab", "aab", "abab", "a", "aabb", "abA"};
    for (const char* text : words) {
        const word::Word w = parse_word(text, 2);
        const TrailSpec spec = TrailSpec::closed_trail(w);
        const auto got = quot::enumerate_quotients(spec, kBudgets);
        std::set<std::vector<int>> keys;
        for (const auto& g : got) keys.insert(g.blocks);
        CHECK(keys.size() == got.size());  // no duplicates
        CHECK(keys == testutil::oracle_enumerate(spec));
    }
}

TEST_CASE("cycle-spec enumeration agrees with the oracle") {
    struct Case {
        const char* w;
        int L, r;
    } cases[] = {{"ab", 1, 2}, {"ab", 2, 1}, {"ab", 1, 3}, {"aa", 2, 1}, {"abab", 1, 2}, {"aa", 1, 3}};
    for (const auto& c : cases) {
        const TrailSpec spec = TrailSpec::cycles(parse_word(c.w, 2), c.L, c.r);
        const auto got = quot::enumerate_quotients(spec, kBudgets);
        std::set<std::vector<int>> keys;
        for (const auto& g : got) keys.insert(g.blocks);
        CHECK(keys == testutil::oracle_enumerate(spec));
    }
}

TEST_CASE("type classification of known quotients") {
    const word::Word comm = parse_word("abAB", 2);
    const TrailSpec open = TrailSpec::open_trail(comm);
    auto quotients = quot::enumerate_quotients(TrailSpec::closed_trail(comm), kBudgets);

    // figure-eight: all five labels in one block, chi 2, type B
    const auto* fig8 = find_partition(quotients, {0, 0, 0, 0, 0});
    REQUIRE(fig8 != nullptr);
    CHECK(fig8->v == 1);
    CHECK(fig8->e_total == 2);
    CHECK(fig8->chi == 2);
    CHECK(quot::classify_type(*fig8, open) == QuotientGraph::Type::B);
    CHECK(fig8->min_traversal == 2);

    // the universal closed graph has type A
    const auto* univ = find_partition(quotients, {0, 1, 2, 3, 0});
    REQUIRE(univ != nullptr);
    CHECK(quot::classify_type(*univ, open) == QuotientGraph::Type::A);

    // ababa's figure-eight is type A even though every edge is traversed
    // at least twice (the converse of the traversal lemma fails)
    const word::Word ababa = parse_word("ababa", 2);
    const TrailSpec open5 = TrailSpec::open_trail(ababa);
    auto q5 = quot::enumerate_quotients(TrailSpec::closed_trail(ababa), kBudgets);
    const auto* fig8b = find_partition(q5, {0, 0, 0, 0, 0, 0});
    REQUIRE(fig8b != nullptr);
    CHECK(fig8b->chi == 2);
    CHECK(fig8b->min_traversal >= 2);
    CHECK(quot::classify_type(*fig8b, open5) == QuotientGraph::Type::A);
}

TEST_CASE("beta values") {
    CHECK(quot::beta(parse_word("abAB", 2), kBudgets) == quot::BetaValue::finite(2));
    CHECK(quot::beta(parse_word("aa", 1), kBudgets) == quot::BetaValue::finite(1));
    CHECK(quot::beta(parse_word("a", 1), kBudgets) == quot::BetaValue::infinite());
    CHECK(quot::beta(parse_word("", 1), kBudgets) == quot::BetaValue::finite(0));
    CHECK(quot::beta(parse_word("abab", 2), kBudgets) == quot::BetaValue::finite(1));
    CHECK(quot::beta(parse_word("abaaba", 2), kBudgets) == quot::BetaValue::finite(1));
    // beta is computed on the cyclic reduction
    CHECK(quot::beta(parse_word("bAaB", 2), kBudgets) == quot::BetaValue::finite(0));
    CHECK(quot::beta(parse_word("baaB", 2), kBudgets) == quot::BetaValue::finite(1));
    // cap: the commutator has no type-B quotient of chi <= 1
    CHECK(quot::beta(parse_word("abAB", 2), kBudgets, 1) == quot::BetaValue::exceeds(1));
}

TEST_CASE("upsilon graph of the paper's length-7 word") {
    // a a b a b A b: universal closed graph is C7
    const word::Word w = parse_word("aababAb", 2);
    const auto ups = quot::build_upsilon(w);
    CHECK(ups.vertices == 21);  // C(7,2)
    CHECK(ups.edges == 9);      // C(4,2) + C(3,2)
    CHECK(ups.is_forest);
    CHECK(ups.components == 12);  // 21 - 9

    CHECK_THROWS_AS(quot::build_upsilon(parse_word("abab", 2)), std::invalid_argument);
    CHECK_THROWS_AS(quot::build_upsilon(parse_word("baaB", 2)), std::invalid_argument);
}

TEST_CASE("cycle unions: primitive words give a single union") {
    struct Case {
        const char* w;
        int L, r;
    } cases[] = {{"ab", 1, 1}, {"ab", 2, 1}, {"ab", 1, 2}, {"ab", 2, 2},
                 {"aab", 1, 1}, {"aab", 2, 1}, {"aab", 1, 2}, {"aababAb", 1, 1}};
    for (const auto& c : cases) {
        const auto census = quot::count_cycle_unions(parse_word(c.w, 2), c.L, c.r, kBudgets);
        CHECK(census.total == 1);
    }
}

TEST_CASE("cycle unions of powers count divisors at L = r = 1") {
    CHECK(quot::count_cycle_unions(parse_word("aaaa", 1), 1, 1, kBudgets).total == 3);
    CHECK(quot::count_cycle_unions(parse_word("aa", 1), 1, 1, kBudgets).total == 2);
    CHECK(quot::count_cycle_unions(parse_word("abab", 2), 1, 1, kBudgets).total == 2);
    CHECK(quot::count_cycle_unions(parse_word("aaa", 1), 1, 1, kBudgets).total == 2);
    // h profiles of aaaa: one cycle of h in {1,2,4} each
    const auto census = quot::count_cycle_unions(parse_word("aaaa", 1), 1, 1, kBudgets);
    CHECK(census.pure_by_h == std::map<int, long long>{{1, 1}, {2, 1}, {4, 1}});
}

TEST_CASE("cycle union census depends only on (d, L, r)") {
    // Corollary-style invariance: same d, different primitive roots
    for (int L = 1; L <= 2; ++L)
        for (int r = 1; r <= 2; ++r) {
            const auto a = quot::count_cycle_unions(parse_word("abab", 2), L, r, kBudgets);
            const auto b = quot::count_cycle_unions(parse_word("aBaB", 2), L, r, kBudgets);
            CHECK(a.total == b.total);
            CHECK(a.by_profile == b.by_profile);
        }
}

TEST_CASE("budget exceeded surfaces as the typed error") {
    Budgets tiny;
    tiny.trail_labels_per_component = 3;
    CHECK_THROWS_AS(quot::enumerate_quotients(TrailSpec::closed_trail(parse_word("abAB", 2)), tiny),
                    BudgetExceeded);
}
