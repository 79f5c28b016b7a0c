#include <doctest.h>

#include <set>

#include "baire/smallness.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace baire;
using namespace testgen;

namespace {

std::set<FinSeq> node_set(const std::vector<FinSeq>& v) { return {v.begin(), v.end()}; }

std::set<FinSeq> capped_nodes(const RegularTree& t, std::size_t depth, Letter cap) {
    if (t.is_empty()) return {};
    return node_set(t.enumerate_nodes(depth, cap));
}

} // namespace

TEST_CASE("is_superperfect") {
    CHECK(is_superperfect(full_omega()));
    CHECK(is_superperfect(RegularTree::empty(Alphabet::omega())));
    CHECK(!is_superperfect(zero_branch()));
    CHECK(!is_superperfect(two_branch())); // the all-ones state reaches no sigma state
}

TEST_CASE("derivative on the canonical trees") {
    CHECK(derivative(full_omega()) == full_omega());
    CHECK(derivative(zero_branch()).is_empty());

    auto d = derivative(two_branch());
    CHECK(d.state_count() == 2);
    CHECK(d.contains_prefix(FinSeq({0, 7})));
    CHECK(!d.contains_prefix(FinSeq({1})));
}

TEST_CASE("state derivative agrees with the node-level oracle") {
    for (const RegularTree& t : {full_omega(), zero_branch(), two_branch()}) {
        auto d = derivative(t);
        auto expect = oracles::node_level_derivative(t, 6, 3, 4);
        CHECK(capped_nodes(d, 6, 4) == node_set(expect));
    }
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        auto t = random_tree(seed, 6, 3);
        auto d = derivative(t);
        auto expect = oracles::node_level_derivative(t, 6, 3, 4);
        CHECK(capped_nodes(d, 6, 4) == node_set(expect));
    }
}

TEST_CASE("oracle fuel boundary: agreement is guaranteed at the state count") {
    // a state at sigma-distance 4 defeats fuel 3; fuel = state count is exact
    std::vector<std::vector<Edge>> edges(5);
    edges[0].push_back({ChildSpec::all(), 1});
    edges[1].push_back({ChildSpec::set({0, 1}), 3});
    edges[1].push_back({ChildSpec::set({2, 3}), 2});
    edges[2].push_back({ChildSpec::set({0}), 1});
    edges[3].push_back({ChildSpec::set({0, 1}), 4});
    edges[4].push_back({ChildSpec::set({0}), 0});
    auto t = RegularTree::make(Alphabet::omega(), 0, std::move(edges));

    auto d = derivative(t);
    // every state reaches the infinitely branching one (canonicalization
    // renumbers, so compare node sets)
    CHECK(capped_nodes(d, 4, 4) == capped_nodes(t, 4, 4));
    auto tight = oracles::node_level_derivative(t, 4, 3, 4);
    auto exact = oracles::node_level_derivative(t, 4, t.state_count(), 4);
    CHECK(node_set(exact) == capped_nodes(d, 4, 4));
    CHECK(node_set(tight) != node_set(exact));
}

TEST_CASE("cantor_bendixson on the canonical trees") {
    auto full = cantor_bendixson(full_omega());
    CHECK(full.kernel == full_omega());
    CHECK(full.pieces.empty());
    CHECK(full.trace.iterations() == 1);
    CHECK(full.trace.removed[0].empty());

    auto zeros = cantor_bendixson(zero_branch());
    CHECK(zeros.kernel.is_empty());
    REQUIRE(zeros.pieces.size() == 1);
    CHECK(zeros.pieces[0].tree == zero_branch());
    REQUIRE(zeros.pieces[0].stems.size() == 1);
    CHECK(zeros.pieces[0].stems[0] == FinSeq());
    CHECK(zeros.trace.iterations() == 1);
    CHECK(zeros.trace.removed[0].size() == 1);

    auto tb = cantor_bendixson(two_branch());
    CHECK(tb.kernel.state_count() == 2);
    CHECK(tb.kernel.contains_prefix(FinSeq({0, 3})));
    REQUIRE(tb.pieces.size() == 1);
    REQUIRE(tb.pieces[0].stems.size() == 1);
    CHECK(tb.pieces[0].stems[0] == FinSeq({1}));
    CHECK(tb.pieces[0].tree.contains_prefix(FinSeq({1, 1})));
    CHECK(tb.trace.iterations() == 1);

    auto empty = cantor_bendixson(RegularTree::empty(Alphabet::omega()));
    CHECK(empty.kernel.is_empty());
    CHECK(empty.trace.iterations() == 0);
}

TEST_CASE("cantor_bendixson invariants over the corpus") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        auto t = random_tree(seed, 6, 3);
        auto cb = cantor_bendixson(t, /*piece_cap=*/8, /*stem_depth=*/7);

        CHECK(derivative(cb.kernel) == cb.kernel);
        CHECK(cb.trace.iterations() <= t.state_count());
        // exactly one of: empty kernel, non-empty superperfect kernel
        CHECK((cb.kernel.is_empty() ^ (is_superperfect(cb.kernel) && !cb.kernel.is_empty())) ==
              1);

        for (const TreePiece& piece : cb.pieces) CHECK(piece.tree.is_finitely_branching());

        // coverage and disjointness of node sets to depth 6 under cap 4
        auto kernel_nodes = capped_nodes(cb.kernel, 6, 4);
        for (const FinSeq& u : t.enumerate_nodes(6, Letter(4))) {
            const bool in_kernel = kernel_nodes.count(u) > 0;
            bool in_piece = false;
            for (const TreePiece& piece : cb.pieces)
                if (piece.covers_node(u)) {
                    in_piece = true;
                    break;
                }
            CHECK(in_kernel != in_piece); // disjoint and jointly covering
        }

        auto sb = is_sigma_bounded(t);
        CHECK(sb.sigma_bounded == cb.kernel.is_empty());
    }
}

TEST_CASE("is_sigma_bounded on the canonical trees") {
    auto zeros = is_sigma_bounded(zero_branch());
    CHECK(zeros.sigma_bounded);
    CHECK(zeros.pieces.size() == 1);
    CHECK(zeros.pieces[0].tree.is_finitely_branching());

    CHECK(!is_sigma_bounded(full_omega()).sigma_bounded);

    auto empty = is_sigma_bounded(RegularTree::empty(Alphabet::omega()));
    CHECK(empty.sigma_bounded);
    CHECK(empty.pieces.empty());
}

TEST_CASE("escape_sigma_bound follows the diagonal") {
    auto g1 = escape_sigma_bound(FinSeq(), {FinSeq({3, 3, 3, 3})}, 4);
    CHECK(g1.size() == 4);
    CHECK(g1[0] == 4);

    auto g2 = escape_sigma_bound(FinSeq({9}), {}, 3);
    CHECK(g2 == FinSeq({9, 0, 0}));

    auto g3 = escape_sigma_bound(FinSeq({0}), {FinSeq({5, 5, 5}), FinSeq({1, 7, 1})}, 3);
    CHECK(g3[0] == 0);
    CHECK(g3[1] == 8);

    CHECK_THROWS_AS(escape_sigma_bound(FinSeq({1}), {FinSeq({1})}, 3), input_error);
    CHECK_THROWS_AS(escape_sigma_bound(FinSeq({1, 2}), {}, 2), input_error);

    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        const std::size_t out_len = 8;
        std::vector<Letter> us;
        for (std::size_t k = 0; k < rng.below(out_len); ++k)
            us.push_back(static_cast<Letter>(rng.below(5)));
        FinSeq u(us);
        std::vector<FinSeq> cands;
        const std::size_t m = rng.below(6);
        for (std::size_t c = 0; c < m; ++c) {
            std::vector<Letter> xs;
            for (std::size_t k = 0; k < out_len; ++k)
                xs.push_back(static_cast<Letter>(rng.below(9)));
            cands.emplace_back(xs);
        }
        FinSeq g = escape_sigma_bound(u, cands, out_len);
        CHECK(u.is_prefix_of(g));
        CHECK(g.size() == out_len);
        for (const FinSeq& c : cands) {
            bool dominated = true;
            for (std::size_t k = 0; k < out_len; ++k)
                if (g[k] > c[k]) {
                    dominated = false;
                    break;
                }
            CHECK(!dominated);
        }
    }
}

TEST_CASE("exact nowhere-density per instance") {
    auto above = make_condition_set("ex63");

    auto w = is_b_nowhere_dense_exact(full_kary(4), *above);
    REQUIRE(w.has_value());
    CHECK(w->at(full_kary(4), FinSeq()) == Condition::nat(3));
    CHECK(w->at(full_kary(4), FinSeq({2, 1})) == Condition::nat(3));

    CHECK(!is_b_nowhere_dense_exact(full_omega(), *above).has_value());

    auto bit = make_condition_set("ex61");
    auto zeros2 = zero_branch(Alphabet::finite(2));
    auto w61 = is_b_nowhere_dense_exact(zeros2, *bit);
    REQUIRE(w61.has_value());
    CHECK(w61->at(zeros2, FinSeq({0})) == Condition::nat(1));
    CHECK(!is_b_nowhere_dense_exact(full_kary(2, Alphabet::finite(2)), *bit).has_value());

    auto prefix = make_condition_set("ex62");
    auto wp = is_b_nowhere_dense_exact(zero_branch(), *prefix);
    REQUIRE(wp.has_value());
    // witness at the root: the shortest sequence leaving the zero branch
    CHECK(wp->at(zero_branch(), FinSeq()) == Condition::seq(FinSeq({1})));
    CHECK(!is_b_nowhere_dense_exact(full_omega(), *prefix).has_value());

    const std::string table = R"({"pairs": [[[0], 0, true]]})";
    CHECK_THROWS_AS(is_b_nowhere_dense_exact(full_omega(), *make_table_condition_set(table)),
                    input_error);
}

TEST_CASE("heine-borel bridge: compact iff nowhere dense for ex63") {
    auto above = make_condition_set("ex63");
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        auto t = random_tree(seed, 6, 3);
        CHECK(t.is_finitely_branching() == is_b_nowhere_dense_exact(t, *above).has_value());
    }
}

TEST_CASE("baire bridge: ex62 nowhere-density matches the escape oracle") {
    auto prefix = make_condition_set("ex62");
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        auto t = random_tree(seed, 6, 3);
        const bool exact = is_b_nowhere_dense_exact(t, *prefix).has_value();
        const bool oracle = oracles::every_node_escapes(t, 3, 7, 4);
        CHECK(exact == oracle);
    }
}

TEST_CASE("bounded nowhere-density") {
    auto above = make_condition_set("ex63");
    NowhereDenseBudget budget{3, 4, 3, 8};
    auto w = is_b_nowhere_dense_bounded(full_kary(4), *above, budget);
    REQUIRE(w.has_value());
    CHECK(w->at(full_kary(4), FinSeq()).has_value());
    // conditions 0..3 all refuted inside the full tree within the cap
    CHECK(!is_b_nowhere_dense_bounded(full_omega(), *above, budget).has_value());
}

TEST_CASE("meager cover verification") {
    MeagerCoverBudget budget;
    auto bit = make_condition_set("ex61");
    auto zeros2 = zero_branch(Alphabet::finite(2));
    CHECK(verify_b_meager_cover(zeros2, {zeros2}, *bit, budget));

    auto above = make_condition_set("ex63");
    CHECK(!verify_b_meager_cover(full_omega(), {full_kary(4)}, *above, budget));

    // a finitely branching tree split into its two maximal branches
    std::vector<std::vector<Edge>> edges(3);
    edges[0].push_back({ChildSpec::set({0}), 1});
    edges[0].push_back({ChildSpec::set({1}), 2});
    edges[1].push_back({ChildSpec::set({0, 1}), 1});
    edges[2].push_back({ChildSpec::set({0}), 2});
    auto target = RegularTree::make(Alphabet::omega(), 0, std::move(edges));

    std::vector<std::vector<Edge>> b0(2), b1(2);
    b0[0].push_back({ChildSpec::set({0}), 1});
    b0[1].push_back({ChildSpec::set({0, 1}), 1});
    b1[0].push_back({ChildSpec::set({1}), 1});
    b1[1].push_back({ChildSpec::set({0}), 1});
    auto piece0 = RegularTree::make(Alphabet::omega(), 0, std::move(b0));
    auto piece1 = RegularTree::make(Alphabet::omega(), 0, std::move(b1));
    CHECK(verify_b_meager_cover(target, {piece0, piece1}, *above, budget));
}
