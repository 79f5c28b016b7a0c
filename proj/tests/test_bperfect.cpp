#include <doctest.h>

#include "baire/bperfect.hpp"
#include "helpers.hpp"

using namespace baire;
using namespace testgen;

namespace {

// root with children (k) for k in 0..width-1, all frontier
BPerfectTree fan_tree(Letter width) {
    BPerfectTree j;
    for (Letter k = 0; k < width; ++k) j.mark_frontier(j.add_child(j.root(), FinSeq({k})));
    return j;
}

} // namespace

TEST_CASE("validate_bperfect accepts a wide fan for ex63") {
    auto above = make_condition_set("ex63");
    BPerfectBudget budget{4, 3, 8};
    auto report = validate_bperfect(fan_tree(6), *above, budget);
    CHECK(report.ok());
    CHECK(report.frontier_count == 6);
    // too narrow: no child first letter exceeds 3
    CHECK(!validate_bperfect(fan_tree(4), *above, budget).ok());
}

TEST_CASE("validate_bperfect flags compatible siblings") {
    auto above = make_condition_set("ex63");
    BPerfectTree j;
    j.mark_frontier(j.add_child(j.root(), FinSeq({0})));
    j.mark_frontier(j.add_child(j.root(), FinSeq({0, 1})));
    for (Letter k = 1; k < 9; ++k) j.mark_frontier(j.add_child(j.root(), FinSeq({k})));
    auto report = validate_bperfect(j, *above, {4, 3, 8});
    REQUIRE(!report.ok());
    bool compat = false;
    for (const auto& f : report.findings)
        compat |= f.find("compatible") != std::string::npos;
    CHECK(compat);
}

TEST_CASE("validate_bperfect flags a density gap") {
    auto bit = make_condition_set("ex61");
    BPerfectTree j;
    j.mark_frontier(j.add_child(j.root(), FinSeq({0})));
    auto report = validate_bperfect(j, *bit, {2, 3, 1});
    REQUIRE(!report.ok());
    bool density = false;
    for (const auto& f : report.findings)
        density |= f.find("satisfying 1") != std::string::npos;
    CHECK(density);
}

TEST_CASE("validate_bperfect flags unmarked leaves") {
    auto above = make_condition_set("ex63");
    BPerfectTree j;
    j.add_child(j.root(), FinSeq({9})); // stored leaf, no frontier marker
    auto report = validate_bperfect(j, *above, {2, 2, 8});
    REQUIRE(!report.ok());
    bool leaf = false;
    for (const auto& f : report.findings) leaf |= f.find("leaf") != std::string::npos;
    CHECK(leaf);
}

TEST_CASE("prefix membership with unique segmentation") {
    BPerfectTree j;
    auto c0 = j.add_child(j.root(), FinSeq({0}));
    j.mark_frontier(j.add_child(c0, FinSeq({1})));

    auto r1 = bperfect_prefix_member(j, FinSeq({0, 1}));
    CHECK(r1.member);
    REQUIRE(r1.segments.size() == 2);
    CHECK(r1.segments[0] == FinSeq({0}));
    CHECK(r1.segments[1] == FinSeq({1}));

    CHECK(!bperfect_prefix_member(j, FinSeq({1})).member);
    CHECK(bperfect_prefix_member(j, FinSeq()).member);

    BPerfectTree j2;
    j2.mark_frontier(j2.add_child(j2.root(), FinSeq({0})));
    j2.mark_frontier(j2.add_child(j2.root(), FinSeq({1, 0})));
    auto r2 = bperfect_prefix_member(j2, FinSeq({1, 0, 0}));
    CHECK(r2.member);
    CHECK(r2.via_frontier);
    REQUIRE(r2.segments.size() == 1);
    CHECK(r2.segments[0] == FinSeq({1, 0}));

    // u that ends inside a label
    auto r3 = bperfect_prefix_member(j2, FinSeq({1}));
    CHECK(r3.member);
    CHECK(!r3.via_frontier);
    REQUIRE(r3.segments.size() == 1);
    CHECK(r3.segments[0] == FinSeq({1, 0}));
}

TEST_CASE("bperfect json round trip") {
    BPerfectTree j;
    auto c0 = j.add_child(j.root(), FinSeq({2, 1}));
    j.mark_frontier(j.add_child(c0, FinSeq({3})));
    auto back = BPerfectTree::from_json(j.to_json());
    CHECK(back.size() == j.size());
    CHECK(back.vertex(1).label == FinSeq({2, 1}));
    CHECK(back.vertex(2).frontier);

    CHECK_THROWS_AS(BPerfectTree::from_json("{\"vertices\": []}"), input_error);
    CHECK_THROWS_AS(
        BPerfectTree::from_json("{\"vertices\": [{\"label\": [1], \"children\": []}]}"),
        input_error);
}
