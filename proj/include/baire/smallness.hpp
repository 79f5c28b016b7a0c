#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "baire/conditions.hpp"
#include "baire/regular_tree.hpp"

namespace baire {

// A compact fragment of a decomposition: the subtree hanging below a removed
// state, anchored at the nodes (stems) where branches first enter that state.
// The piece's node set is { stem + w : w node of tree }; stems themselves are
// the nodes whose final state is the removed one.
struct TreePiece {
    std::vector<FinSeq> stems;
    RegularTree tree = RegularTree::empty(Alphabet::omega());
    std::size_t iteration = 0; // 1-based derivative iteration that removed it
    StateId removed_state = 0; // original state id in the input tree

    bool covers_node(const FinSeq& u) const {
        for (const FinSeq& stem : stems) {
            if (!stem.is_prefix_of(u)) continue;
            if (tree.contains_prefix(u.suffix_from(stem.size()))) return true;
        }
        return false;
    }
};

struct KernelTrace {
    // removed original-state ids per derivative iteration; a single empty
    // entry records a first pass that removed nothing
    std::vector<std::vector<StateId>> removed;
    std::size_t iterations() const { return removed.size(); }
};

struct CantorBendixsonResult {
    RegularTree kernel = RegularTree::empty(Alphabet::omega());
    std::vector<TreePiece> pieces;
    KernelTrace trace;
};

// True iff from every state a state with an infinite child spec is reachable
// (itself included); node reading: every node extends to an infinitely
// branching node. The empty tree qualifies.
bool is_superperfect(const RegularTree& tree);

// Keeps the states from which an infinitely branching state is reachable,
// then canonicalizes. Node reading: a node survives iff some extension of it
// (itself included) branches infinitely. Not idempotent before the fixpoint.
RegularTree derivative(const RegularTree& tree);

// Iterates the derivative to its fixpoint (at most state-count steps).
// Pieces record what each iteration removed; their subtrees have infinite
// specs capped at `piece_cap` and stems enumerated to `stem_depth` (letters
// of infinite specs sampled up to `piece_cap`).
CantorBendixsonResult cantor_bendixson(const RegularTree& tree, Letter piece_cap = 8,
                                       std::size_t stem_depth = 8);

struct SigmaBoundedResult {
    bool sigma_bounded = false;
    std::vector<TreePiece> pieces; // compact cover when sigma_bounded
};

SigmaBoundedResult is_sigma_bounded(const RegularTree& tree, Letter piece_cap = 8,
                                    std::size_t stem_depth = 8);

// Diagonal escape: a prefix of length out_len extending u that no candidate
// bound prefix dominates pointwise. Candidates must be at least out_len long;
// out_len must exceed len(u).
FinSeq escape_sigma_bound(const FinSeq& u, const std::vector<FinSeq>& candidates,
                          std::size_t out_len);

// Witness that a closed set is small for a condition set: per tree node, a
// condition no in-tree continuation satisfies. Exact checkers store it per
// state; the bounded checker per explored node.
struct NowhereDenseWitness {
    bool by_state = true;
    std::map<StateId, Condition> state_conditions;
    std::map<FinSeq, Condition> node_conditions;

    std::optional<Condition> at(const RegularTree& tree, const FinSeq& u) const {
        if (by_state) {
            auto s = tree.state_at(u);
            if (!s) return std::nullopt;
            auto it = state_conditions.find(*s);
            return it == state_conditions.end() ? std::nullopt
                                                : std::optional<Condition>(it->second);
        }
        auto it = node_conditions.find(u);
        return it == node_conditions.end() ? std::nullopt
                                            : std::optional<Condition>(it->second);
    }
};

struct NowhereDenseBudget {
    std::size_t node_depth = 4;
    std::size_t cond_limit = 8;
    std::size_t ext_depth = 4;
    Letter letter_cap = 8;
};

// Exact decision for the canonical condition sets (ex61/ex62/ex63); throws
// input_error for bounded-only sets or on alphabet mismatch. Returns nothing
// when the tree is not nowhere dense for the set.
std::optional<NowhereDenseWitness> is_b_nowhere_dense_exact(const RegularTree& tree,
                                                            const ConditionSet& cs);

// Budgeted search; nothing means "not certified", never "certified false".
std::optional<NowhereDenseWitness> is_b_nowhere_dense_bounded(const RegularTree& tree,
                                                              const ConditionSet& cs,
                                                              const NowhereDenseBudget& budget);

struct MeagerCoverBudget {
    std::size_t depth = 6;
    Letter letter_cap = 8;
    NowhereDenseBudget nd;
};

// Every piece must be nowhere dense for the set (exact when the set supports
// it) and every target node to the budget depth must lie in some piece.
bool verify_b_meager_cover(const RegularTree& target, const std::vector<RegularTree>& pieces,
                           const ConditionSet& cs, const MeagerCoverBudget& budget);

} // namespace baire
