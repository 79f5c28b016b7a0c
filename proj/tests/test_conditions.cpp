#include <doctest.h>

#include "baire/conditions.hpp"
#include "helpers.hpp"

using namespace baire;
using namespace testgen;

TEST_CASE("satisfaction per instance") {
    auto above = make_condition_set("ex63");
    CHECK(above->satisfies(FinSeq({5, 0}), Condition::nat(4)));
    CHECK(!above->satisfies(FinSeq({3}), Condition::nat(4)));

    auto prefix = make_condition_set("ex62");
    CHECK(prefix->satisfies(FinSeq({2, 3, 4, 9}), Condition::seq(FinSeq({2, 3}))));
    CHECK(!prefix->satisfies(FinSeq({2}), Condition::seq(FinSeq({2, 3}))));

    auto bit = make_condition_set("ex61");
    CHECK(bit->satisfies(FinSeq({1, 0}), Condition::nat(1)));
    CHECK(!bit->satisfies(FinSeq({0}), Condition::nat(1)));

    CHECK_THROWS_AS(above->satisfies(FinSeq(), Condition::nat(0)), input_error);
}

TEST_CASE("rank") {
    CHECK(make_condition_set("ex63")->rank(Condition::nat(17)) == 0);
    CHECK(make_condition_set("ex62")->rank(Condition::seq(FinSeq({4, 4, 4}))) == 3);
    CHECK(make_condition_set("ex61")->rank(Condition::nat(1)) == 0);
}

TEST_CASE("distinguisher") {
    CHECK(make_condition_set("ex61")->distinguisher(0) == Condition::nat(1));
    CHECK(make_condition_set("ex63")->distinguisher(7) == Condition::nat(7));
    CHECK(make_condition_set("ex62")->distinguisher(0) == Condition::seq(FinSeq({1})));
}

TEST_CASE("reduce") {
    auto prefix = make_condition_set("ex62");
    auto reduced = prefix->reduce(Condition::seq(FinSeq({2, 3, 4})), FinSeq({2}));
    REQUIRE(reduced.has_value());
    CHECK(*reduced == Condition::seq(FinSeq({3, 4})));

    CHECK(!make_condition_set("ex63")->reduce(Condition::nat(4), FinSeq({2})).has_value());
    CHECK(!prefix->reduce(Condition::seq(FinSeq({2, 3})), FinSeq({9})).has_value());
    // u equal to b satisfies it already: no trigger
    CHECK(!prefix->reduce(Condition::seq(FinSeq({2})), FinSeq({2})).has_value());
}

TEST_CASE("enumeration prefixes are fixed") {
    auto bit = make_condition_set("ex61")->enumerate_conditions(5);
    REQUIRE(bit.size() == 2);
    CHECK(bit[0] == Condition::nat(0));
    CHECK(bit[1] == Condition::nat(1));

    auto above = make_condition_set("ex63")->enumerate_conditions(3);
    REQUIRE(above.size() == 3);
    CHECK(above[2] == Condition::nat(2));

    auto prefix = make_prefix_condition(2)->enumerate_conditions(4);
    REQUIRE(prefix.size() == 4);
    CHECK(prefix[0] == Condition::seq(FinSeq({0})));
    CHECK(prefix[1] == Condition::seq(FinSeq({1})));
    CHECK(prefix[2] == Condition::seq(FinSeq({0, 0})));
    CHECK(prefix[3] == Condition::seq(FinSeq({0, 1})));
}

TEST_CASE("axiom validation passes the canonical instances") {
    CHECK(validate_axioms(*make_condition_set("ex62", 3), {4, 3, 16}).ok());
    CHECK(validate_axioms(*make_condition_set("ex63"), {4, 6, 8}).ok());
    CHECK(validate_axioms(*make_condition_set("ex61"), {4, 1, 2}).ok());
}

TEST_CASE("a deliberately broken table set is caught") {
    // "u satisfies b iff u(0)=b and len(u)=1" over two letters: monotonicity fails
    const std::string table = R"({
      "alphabet": {"kind": "finite", "size": 2},
      "pairs": [[[0], 0, true], [[1], 1, true], [[0,0], 0, false], [[1,1], 1, false]]
    })";
    auto cs = make_table_condition_set(table);
    CHECK(!cs->exact());
    auto report = validate_axioms(*cs, {3, 1, 4});
    CHECK(!report.ok());
    bool monotonicity = false;
    for (const auto& v : report.violations) monotonicity |= (v.axiom == 1);
    CHECK(monotonicity);
}

TEST_CASE("monotonicity property on samples") {
    for (const char* sel : {"ex61", "ex62", "ex63"}) {
        auto cs = make_condition_set(sel);
        Letter hi = cs->alphabet().is_finite() ? cs->alphabet().size() - 1 : 5;
        Rng rng(42);
        for (const Condition& b : cs->enumerate_conditions(6))
            for (int i = 0; i < 200; ++i) {
                std::vector<Letter> xs;
                const std::size_t len = 1 + rng.below(4);
                for (std::size_t k = 0; k < len; ++k)
                    xs.push_back(static_cast<Letter>(rng.below(hi + 1)));
                FinSeq u(xs);
                FinSeq v = u.append(static_cast<Letter>(rng.below(hi + 1)));
                if (cs->satisfies(u, b)) CHECK(cs->satisfies(v, b));
            }
    }
}

TEST_CASE("distinguisher soundness on samples") {
    for (const char* sel : {"ex61", "ex62", "ex63"}) {
        auto cs = make_condition_set(sel);
        Letter hi = cs->alphabet().is_finite() ? cs->alphabet().size() - 1 : 6;
        for (Letter x = 0; x <= hi; ++x) {
            Condition bx = cs->distinguisher(x);
            for (Letter first = 0; first <= hi; ++first)
                for (Letter second = 0; second <= hi; ++second)
                    if (cs->satisfies(FinSeq({first, second}), bx)) CHECK(first != x);
        }
    }
}

TEST_CASE("reductions decrease rank and preserve satisfaction") {
    auto cs = make_condition_set("ex62", 3);
    Rng rng(7);
    for (int i = 0; i < 500; ++i) {
        std::vector<Letter> bs;
        const std::size_t blen = 1 + rng.below(4);
        for (std::size_t k = 0; k < blen; ++k) bs.push_back(static_cast<Letter>(rng.below(3)));
        Condition b = Condition::seq(FinSeq(bs));
        std::vector<Letter> us;
        const std::size_t ulen = 1 + rng.below(3);
        for (std::size_t k = 0; k < ulen; ++k) us.push_back(static_cast<Letter>(rng.below(3)));
        FinSeq u(us);
        auto r = cs->reduce(b, u);
        if (!r) continue;
        CHECK(cs->rank(*r) < cs->rank(b));
        for (int j = 0; j < 20; ++j) {
            std::vector<Letter> ws;
            const std::size_t wlen = 1 + rng.below(3);
            for (std::size_t k = 0; k < wlen; ++k)
                ws.push_back(static_cast<Letter>(rng.below(3)));
            FinSeq w(ws);
            CHECK(cs->satisfies(w, *r) == cs->satisfies(u.concat(w), b));
        }
        // chains terminate within rank(b) steps
        Condition c = b;
        FinSeq step = u;
        unsigned hops = 0;
        while (auto next = cs->reduce(c, step)) {
            c = *next;
            ++hops;
            if (c.as_seq().size() == 0) break;
            step = FinSeq({c.as_seq()[0]});
            if (cs->satisfies(step, c)) break;
        }
        CHECK(hops <= cs->rank(b));
    }
}

TEST_CASE("prefix instance agrees with a direct prefix test") {
    auto cs = make_condition_set("ex62");
    Rng rng(99);
    for (int i = 0; i < 1000; ++i) {
        std::vector<Letter> us, bs;
        const std::size_t ulen = 1 + rng.below(4);
        const std::size_t blen = 1 + rng.below(4);
        for (std::size_t k = 0; k < ulen; ++k) us.push_back(static_cast<Letter>(rng.below(3)));
        for (std::size_t k = 0; k < blen; ++k) bs.push_back(static_cast<Letter>(rng.below(3)));
        FinSeq u(us), b(bs);
        CHECK(cs->satisfies(u, Condition::seq(b)) == b.is_prefix_of(u));
    }
}

TEST_CASE("conjunction closure probe runs") {
    // ex62: the conjunction of two compatible prefixes is the longer one; of
    // incompatible ones, nothing in the enumeration matches "never satisfied"
    auto gap = find_and_closure_gap(*make_condition_set("ex62", 2), {3, 2, 6});
    CHECK(gap.has_value());
    // ex61 over two conditions: b0 != b1 has empty conjunction, not expressible
    auto gap61 = find_and_closure_gap(*make_condition_set("ex61"), {3, 1, 2});
    CHECK(gap61.has_value());
}
