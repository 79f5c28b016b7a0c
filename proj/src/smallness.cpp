#include "baire/smallness.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace baire {

namespace {

// Cascade + reachability pruning on original ids: returns the surviving
// subset of `alive`.
std::vector<char> prune_alive(const std::vector<std::vector<Edge>>& edges,
                              std::vector<char> alive, StateId start) {
    const std::size_t n = edges.size();
    bool changed = true;
    while (changed) {
        changed = false;
        for (StateId s = 0; s < n; ++s) {
            if (!alive[s]) continue;
            bool has_out = false;
            for (const Edge& e : edges[s])
                if (alive[e.dst]) { has_out = true; break; }
            if (!has_out) {
                alive[s] = 0;
                changed = true;
            }
        }
    }
    if (!alive[start]) return std::vector<char>(n, 0);
    std::vector<char> seen(n, 0);
    std::deque<StateId> queue{start};
    seen[start] = 1;
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        for (const Edge& e : edges[s])
            if (alive[e.dst] && !seen[e.dst]) {
                seen[e.dst] = 1;
                queue.push_back(e.dst);
            }
    }
    return seen;
}

std::vector<char> sigma_states_alive(const RegularTree& t,
                                     const std::vector<char>& alive) {
    std::vector<char> out(t.state_count(), 0);
    for (StateId s = 0; s < t.state_count(); ++s) {
        if (!alive[s]) continue;
        for (const Edge& e : t.edges(s))
            if (alive[e.dst] && e.spec.infinite_under(t.alphabet())) {
                out[s] = 1;
                break;
            }
    }
    return out;
}

std::vector<char> reaching_within(const RegularTree& t, const std::vector<char>& alive,
                                  const std::vector<char>& targets) {
    std::vector<char> out = targets;
    bool changed = true;
    while (changed) {
        changed = false;
        for (StateId s = 0; s < t.state_count(); ++s) {
            if (out[s] || !alive[s]) continue;
            for (const Edge& e : t.edges(s))
                if (alive[e.dst] && out[e.dst]) {
                    out[s] = 1;
                    changed = true;
                    break;
                }
        }
    }
    return out;
}

// First-visit nodes at `target` within the alive subgraph, up to stem_depth.
std::vector<FinSeq> first_entry_nodes(const RegularTree& t, const std::vector<char>& alive,
                                      StateId target, std::size_t stem_depth, Letter cap) {
    std::vector<FinSeq> entries;
    if (!alive[t.start()]) return entries;
    if (t.start() == target) {
        entries.emplace_back();
        return entries;
    }
    std::deque<std::pair<FinSeq, StateId>> queue{{FinSeq(), t.start()}};
    while (!queue.empty()) {
        auto [u, s] = queue.front();
        queue.pop_front();
        if (u.size() >= stem_depth) continue;
        for (const Edge& e : t.edges(s)) {
            if (!alive[e.dst]) continue;
            for (Letter x : e.spec.sample_letters(cap)) {
                FinSeq v = u.append(x);
                if (e.dst == target)
                    entries.push_back(std::move(v));
                else
                    queue.emplace_back(std::move(v), e.dst);
            }
        }
    }
    std::sort(entries.begin(), entries.end(), llex_less);
    return entries;
}

} // namespace

bool is_superperfect(const RegularTree& tree) {
    if (tree.is_empty()) return true;
    const auto reach = tree.states_reaching(tree.sigma_states());
    return std::all_of(reach.begin(), reach.end(), [](char c) { return c != 0; });
}

RegularTree derivative(const RegularTree& tree) {
    if (tree.is_empty()) return tree;
    return tree.restrict_to_states(tree.states_reaching(tree.sigma_states()));
}

CantorBendixsonResult cantor_bendixson(const RegularTree& tree, Letter piece_cap,
                                       std::size_t stem_depth) {
    CantorBendixsonResult result;
    result.kernel = tree;
    if (tree.is_empty()) return result;

    std::vector<char> alive(tree.state_count(), 1);
    std::size_t iteration = 0;
    while (true) {
        ++iteration;
        const auto sigma = sigma_states_alive(tree, alive);
        const auto keep = reaching_within(tree, alive, sigma);
        std::vector<char> kept(tree.state_count(), 0);
        for (StateId s = 0; s < tree.state_count(); ++s)
            kept[s] = alive[s] && keep[s];
        const auto next = prune_alive(tree.all_edges(), kept, tree.start());

        std::vector<StateId> removed;
        for (StateId s = 0; s < tree.state_count(); ++s)
            if (alive[s] && !next[s]) removed.push_back(s);

        if (removed.empty()) {
            if (result.trace.removed.empty()) result.trace.removed.push_back({});
            break;
        }
        for (StateId s : removed) {
            TreePiece piece;
            piece.iteration = iteration;
            piece.removed_state = s;
            piece.stems = first_entry_nodes(tree, alive, s, stem_depth, piece_cap);
            piece.tree = RegularTree::from_subgraph(tree.alphabet(), tree.all_edges(),
                                                    alive, s, /*cap_infinite=*/true,
                                                    piece_cap);
            result.pieces.push_back(std::move(piece));
        }
        result.trace.removed.push_back(std::move(removed));
        alive = next;
        if (std::none_of(alive.begin(), alive.end(), [](char c) { return c != 0; })) break;
    }

    result.kernel = RegularTree::from_subgraph(tree.alphabet(), tree.all_edges(), alive,
                                               tree.start());
    return result;
}

SigmaBoundedResult is_sigma_bounded(const RegularTree& tree, Letter piece_cap,
                                    std::size_t stem_depth) {
    auto cb = cantor_bendixson(tree, piece_cap, stem_depth);
    SigmaBoundedResult out;
    out.sigma_bounded = cb.kernel.is_empty();
    if (out.sigma_bounded) out.pieces = std::move(cb.pieces);
    return out;
}

FinSeq escape_sigma_bound(const FinSeq& u, const std::vector<FinSeq>& candidates,
                          std::size_t out_len) {
    if (out_len <= u.size())
        throw input_error("escape length must exceed the base prefix length");
    for (const FinSeq& c : candidates)
        if (c.size() < out_len)
            throw input_error("candidate bound prefix shorter than the requested length");

    std::vector<Letter> g(u.letters());
    g.reserve(out_len);
    // position len(u): top all candidates indexed up to len(u)
    Letter first = 0;
    for (std::size_t i = 0; i <= u.size() && i < candidates.size(); ++i)
        first = std::max(first, candidates[i][u.size()] + 1);
    g.push_back(first);
    // beyond: candidate j is topped at position j
    for (std::size_t j = u.size() + 1; j < out_len; ++j)
        g.push_back(j < candidates.size() ? candidates[j][j] + 1 : 0);
    return FinSeq(std::move(g));
}

namespace {

void require_alphabet_match(const RegularTree& tree, const ConditionSet& cs) {
    if (!(tree.alphabet() == cs.alphabet()))
        throw input_error("tree alphabet " + tree.alphabet().to_string() +
                          " does not match condition set " + cs.name());
}

std::optional<NowhereDenseWitness> exact_first_letter_above(const RegularTree& tree) {
    if (!tree.is_finitely_branching()) return std::nullopt;
    NowhereDenseWitness w;
    for (StateId s = 0; s < tree.state_count(); ++s) {
        Letter m = 0;
        for (const Edge& e : tree.edges(s)) m = std::max(m, e.spec.max_letter());
        w.state_conditions.emplace(s, Condition::nat(m));
    }
    return w;
}

std::optional<NowhereDenseWitness> exact_first_letter_is(const RegularTree& tree) {
    // nowhere dense here = a single branch: every state allows one letter
    NowhereDenseWitness w;
    for (StateId s = 0; s < tree.state_count(); ++s) {
        std::size_t letters = 0;
        Letter only = 0;
        for (const Edge& e : tree.edges(s)) {
            if (!e.spec.is_finite()) letters += 2; // All over {0,1}
            else {
                letters += e.spec.letters().size();
                only = e.spec.letters().front();
            }
        }
        if (letters != 1) return std::nullopt;
        w.state_conditions.emplace(s, Condition::nat(only == 0 ? 1 : 0));
    }
    return w;
}

// Letters of the alphabet not covered by the state's specs exist iff the
// state's language misses a word at depth zero.
bool specs_cover_alphabet(const RegularTree& tree, StateId s) {
    const Alphabet& a = tree.alphabet();
    const auto& es = tree.edges(s);
    auto covered = [&](Letter x) {
        for (const Edge& e : es)
            if (e.spec.contains(x)) return true;
        return false;
    };
    if (a.is_finite()) {
        for (Letter x = 0; x < a.size(); ++x)
            if (!covered(x)) return false;
        return true;
    }
    Letter min_above = std::numeric_limits<Letter>::max();
    bool has_infinite_tail = false;
    for (const Edge& e : es) {
        if (e.spec.kind() == ChildSpec::Kind::All) return true;
        if (e.spec.kind() == ChildSpec::Kind::Above) {
            has_infinite_tail = true;
            min_above = std::min(min_above, e.spec.above_bound());
        }
    }
    if (!has_infinite_tail) return false;
    for (Letter x = 0; x <= min_above; ++x)
        if (!covered(x)) return false;
    return true;
}

Letter least_uncovered_letter(const RegularTree& tree, StateId s) {
    auto covered = [&](Letter x) {
        for (const Edge& e : tree.edges(s))
            if (e.spec.contains(x)) return true;
        return false;
    };
    for (Letter x = 0;; ++x)
        if (!covered(x)) return x;
}

std::optional<NowhereDenseWitness> exact_prefix_condition(const RegularTree& tree) {
    const std::size_t n = tree.state_count();
    // full[s]: the state's language is all of the sequence space
    std::vector<char> full(n, 0);
    for (StateId s = 0; s < n; ++s) full[s] = specs_cover_alphabet(tree, s);
    bool changed = true;
    while (changed) {
        changed = false;
        for (StateId s = 0; s < n; ++s) {
            if (!full[s]) continue;
            for (const Edge& e : tree.edges(s))
                if (!full[e.dst]) {
                    full[s] = 0;
                    changed = true;
                    break;
                }
        }
    }
    for (StateId s = 0; s < n; ++s)
        if (full[s]) return std::nullopt;

    // shortest missing word per state, found by layering
    constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> depth(n, kInf);
    for (StateId s = 0; s < n; ++s)
        if (!specs_cover_alphabet(tree, s)) depth[s] = 0;
    changed = true;
    while (changed) {
        changed = false;
        for (StateId s = 0; s < n; ++s)
            for (const Edge& e : tree.edges(s))
                if (depth[e.dst] != kInf && depth[e.dst] + 1 < depth[s]) {
                    depth[s] = depth[e.dst] + 1;
                    changed = true;
                }
    }
    NowhereDenseWitness w;
    for (StateId s = 0; s < n; ++s) {
        std::vector<Letter> missing;
        StateId cur = s;
        while (depth[cur] != 0) {
            Letter best = 0;
            StateId next = cur;
            bool found = false;
            for (const Edge& e : tree.edges(cur)) {
                if (depth[e.dst] + 1 != depth[cur]) continue;
                Letter x = e.spec.min_letter();
                if (!found || x < best) {
                    best = x;
                    next = e.dst;
                    found = true;
                }
            }
            missing.push_back(best);
            cur = next;
        }
        missing.push_back(least_uncovered_letter(tree, cur));
        w.state_conditions.emplace(s, Condition::seq(FinSeq(std::move(missing))));
    }
    return w;
}

} // namespace

std::optional<NowhereDenseWitness> is_b_nowhere_dense_exact(const RegularTree& tree,
                                                            const ConditionSet& cs) {
    if (!cs.exact())
        throw input_error("condition set '" + cs.name() + "' is bounded-only; "
                          "exact nowhere-density is unavailable");
    require_alphabet_match(tree, cs);
    if (tree.is_empty()) return NowhereDenseWitness{}; // vacuously nowhere dense
    if (cs.name() == "ex63") return exact_first_letter_above(tree);
    if (cs.name() == "ex61") return exact_first_letter_is(tree);
    if (cs.name() == "ex62") return exact_prefix_condition(tree);
    throw input_error("no exact nowhere-density checker for '" + cs.name() + "'");
}

std::optional<NowhereDenseWitness> is_b_nowhere_dense_bounded(const RegularTree& tree,
                                                              const ConditionSet& cs,
                                                              const NowhereDenseBudget& budget) {
    require_alphabet_match(tree, cs);
    NowhereDenseWitness w;
    w.by_state = false;
    if (tree.is_empty()) return w;
    const auto conds = cs.enumerate_conditions(budget.cond_limit);
    const auto nodes = tree.enumerate_nodes(budget.node_depth, budget.letter_cap);
    for (const FinSeq& u : nodes) {
        const StateId su = *tree.state_at(u);
        std::optional<Condition> witness;
        for (const Condition& b : conds) {
            // refuted iff some in-tree continuation of u satisfies b
            bool refuted = false;
            std::deque<std::pair<FinSeq, StateId>> frontier{{FinSeq(), su}};
            for (std::size_t d = 0; d < budget.ext_depth && !refuted && !frontier.empty(); ++d) {
                std::deque<std::pair<FinSeq, StateId>> next;
                for (const auto& [v, s] : frontier) {
                    for (const Edge& e : tree.edges(s)) {
                        for (Letter x : e.spec.sample_letters(budget.letter_cap)) {
                            if (x > budget.letter_cap) continue;
                            FinSeq vx = v.append(x);
                            if (cs.satisfies(vx, b)) {
                                refuted = true;
                                break;
                            }
                            next.emplace_back(std::move(vx), e.dst);
                        }
                        if (refuted) break;
                    }
                    if (refuted) break;
                }
                frontier = std::move(next);
            }
            if (!refuted) {
                witness = b;
                break;
            }
        }
        if (!witness) return std::nullopt; // budget exhausted at u: not certified
        w.node_conditions.emplace(u, *witness);
    }
    return w;
}

bool verify_b_meager_cover(const RegularTree& target, const std::vector<RegularTree>& pieces,
                           const ConditionSet& cs, const MeagerCoverBudget& budget) {
    for (const RegularTree& piece : pieces) {
        std::optional<NowhereDenseWitness> w;
        if (cs.exact())
            w = is_b_nowhere_dense_exact(piece, cs);
        else
            w = is_b_nowhere_dense_bounded(piece, cs, budget.nd);
        if (!w) return false;
    }
    std::optional<Letter> cap;
    if (target.has_infinite_spec()) cap = budget.letter_cap;
    for (const FinSeq& u : target.enumerate_nodes(budget.depth, cap)) {
        bool covered = false;
        for (const RegularTree& piece : pieces)
            if (piece.contains_prefix(u)) { covered = true; break; }
        if (!covered) return false;
    }
    return true;
}

} // namespace baire
