#pragma once

#include <optional>
#include <vector>

#include "baire/alphabet.hpp"
#include "baire/child_spec.hpp"
#include "baire/errors.hpp"
#include "baire/fin_seq.hpp"

namespace baire {

struct Edge {
    ChildSpec spec;
    StateId dst;
    friend bool operator==(const Edge&, const Edge&) = default;
};

// Finite-state representation of a pruned tree over the alphabet; stands for
// a closed subset of the sequence space. Canonical form: all states reachable
// from start, every state has an outgoing edge, sibling specs disjoint.
// The empty tree (zero states) represents the empty set.
class RegularTree {
public:
    static RegularTree empty(const Alphabet& a) { return RegularTree(a); }

    // Validates canonical form; throws input_error on violations.
    static RegularTree make(const Alphabet& a, StateId start,
                            std::vector<std::vector<Edge>> edges);

    // Drops edges into dead states, cascades leaf deletion, drops unreachable
    // states, renumbers in BFS order. `alive[s]` marks the kept states.
    // When `cap_infinite` is set, All/Above specs are replaced by their
    // letters <= cap (at least the minimum letter survives).
    static RegularTree from_subgraph(const Alphabet& a,
                                     const std::vector<std::vector<Edge>>& edges,
                                     std::vector<char> alive, StateId start,
                                     bool cap_infinite = false, Letter cap = 0);

    bool is_empty() const { return edges_.empty(); }
    const Alphabet& alphabet() const { return alphabet_; }
    StateId start() const { return start_; }
    std::size_t state_count() const { return edges_.size(); }
    const std::vector<Edge>& edges(StateId s) const { return edges_[s]; }
    const std::vector<std::vector<Edge>>& all_edges() const { return edges_; }

    std::optional<StateId> step(StateId s, Letter x) const;
    std::optional<StateId> state_at(const FinSeq& u) const;
    bool contains_prefix(const FinSeq& u) const;

    // True iff every spec everywhere is an explicit finite set; by the
    // closed-set correspondence this decides compactness.
    bool is_finitely_branching() const;

    // f(n) = max letter appearing at level n; pointwise bound for every member.
    std::vector<Letter> compact_bound_prefix(std::size_t depth) const;

    RegularTree restrict_to_states(const std::vector<char>& keep) const;

    // All nodes to the given depth in length-then-lex order. A cap is required
    // (and applies) only when an infinite spec is present.
    std::vector<FinSeq> enumerate_nodes(std::size_t depth,
                                        std::optional<Letter> cap = std::nullopt) const;

    bool has_infinite_spec() const;
    // States carrying an infinite spec ("every node there branches infinitely").
    std::vector<char> sigma_states() const;
    // reach[s] = true iff some state in `targets` is reachable from s (self included).
    std::vector<char> states_reaching(const std::vector<char>& targets) const;

    friend bool operator==(const RegularTree&, const RegularTree&) = default;

private:
    explicit RegularTree(const Alphabet& a) : alphabet_(a) {}

    Alphabet alphabet_;
    StateId start_ = 0;
    std::vector<std::vector<Edge>> edges_;
};

} // namespace baire
