#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "baire/bperfect.hpp"
#include "baire/conditions.hpp"
#include "baire/regular_tree.hpp"
#include "baire/smallness.hpp"

namespace baire {

// Pair letters for witness games: position j of the outcome pairs the j-th
// letter of the concatenated play with the witness of round j+1.
inline Letter encode_pair(Letter x, Letter xi, Letter letter_cap) {
    return x * (letter_cap + 1) + xi;
}
inline std::pair<Letter, Letter> decode_pair(Letter pair, Letter letter_cap) {
    return {pair / (letter_cap + 1), pair % (letter_cap + 1)};
}

struct GameConfig {
    ConditionSetPtr cs;
    RegularTree payoff = RegularTree::empty(Alphabet::omega());
    std::size_t horizon = 1;
    std::size_t move_len_cap = 2;
    Letter letter_cap = 8;
    std::size_t cond_limit = 8; // condition pool for random/solver opponents
    bool witness_mode = false;
    std::optional<RegularTree> witness_payoff; // over pair letters; present iff witness_mode

    void check() const;
};

struct MoveI {
    std::optional<Letter> witness;
    FinSeq u;
};

struct PlayHistory {
    std::vector<MoveI> moves_I;      // u_0, u_1, ...
    std::vector<Condition> moves_II; // b_1, b_2, ...
    FinSeq concat() const {
        FinSeq f;
        for (const MoveI& m : moves_I) f = f.concat(m.u);
        return f;
    }
};

struct Verdict {
    enum class Kind { II_wins, I_alive, I_wins };
    enum class Reason { none, left_payoff, condition_violated, strategy_fault };

    Kind kind = Kind::I_alive;
    Reason reason = Reason::none;
    // left_payoff / fault: the round of the offending move; condition_violated:
    // the index i of the violated condition b_i.
    std::size_t round = 0;
    FinSeq offending_prefix;              // left_payoff: first prefix outside the payoff
    std::size_t condition_index = 0;      // condition_violated
    FinSeq offending_move;                // condition_violated: the u_i
    std::optional<Condition> condition;   // condition_violated: the b_i

    bool ii_wins() const { return kind == Kind::II_wins; }
    std::string to_string() const;
};

class StrategyI {
public:
    virtual ~StrategyI() = default;
    virtual MoveI move(const GameConfig& cfg, const PlayHistory& h) const = 0;
};

class StrategyII {
public:
    virtual ~StrategyII() = default;
    virtual Condition move(const GameConfig& cfg, const PlayHistory& h) const = 0;
};

using StrategyIPtr = std::shared_ptr<const StrategyI>;
using StrategyIIPtr = std::shared_ptr<const StrategyII>;

// Runs the configured number of rounds or stops at the first violation.
// Round r: I plays u_{r-1}; the payoff prefix and the pending condition
// b_{r-1} are checked; then II plays b_r (except in the last round).
// Illegal moves lose immediately for the side that played them.
std::pair<PlayHistory, Verdict> play(const GameConfig& cfg, const StrategyI& strat_I,
                                     const StrategyII& strat_II);

// Witness variant: membership is checked on the pair stream.
inline std::pair<PlayHistory, Verdict> play_with_witnesses(const GameConfig& cfg,
                                                           const StrategyI& strat_I,
                                                           const StrategyII& strat_II) {
    if (!cfg.witness_mode) throw input_error("play_with_witnesses needs a witness-mode config");
    return play(cfg, strat_I, strat_II);
}

std::string render_transcript(const PlayHistory& h, const Verdict& v);
std::string render_transcript_json(const PlayHistory& h, const Verdict& v);

// Built-in strategies. Random strategies are pure: the move is a function of
// the seed and the history.
StrategyIPtr make_random_strategy_I(std::uint64_t seed);
StrategyIIPtr make_random_strategy_II(std::uint64_t seed);
// Plays the scripted conditions in order, repeating the last one after.
StrategyIIPtr make_scripted_strategy_II(std::vector<Condition> conds);
StrategyIPtr make_constant_strategy_I(FinSeq u, std::optional<Letter> witness = std::nullopt);

// One reply of the B-perfect strategy: serve the condition with a stored
// child, reducing the condition and descending while no child satisfies it
// directly. chain_len (when given) receives the number of reductions.
MoveI bperfect_reply(const BPerfectTree& j, const ConditionSet& cs, const PlayHistory& h,
                     std::size_t* chain_len = nullptr);

StrategyIPtr strategy_I_from_bperfect(std::shared_ptr<const BPerfectTree> j,
                                      ConditionSetPtr cs);

using CoverWitnessFn =
    std::function<std::optional<Condition>(std::size_t piece, const FinSeq& node)>;

// Per round, engages the first not-yet-engaged piece containing the current
// prefix and plays its witness; plays distinguisher(0) when no piece applies.
StrategyIIPtr strategy_II_from_cover(std::vector<RegularTree> pieces, CoverWitnessFn witnesses,
                                     ConditionSetPtr cs);

// Witness lookups backed by the exact nowhere-density checkers.
CoverWitnessFn exact_cover_witnesses(std::vector<RegularTree> pieces, ConditionSetPtr cs);

struct BPerfectSynthesisBudget {
    std::size_t rounds = 3;
    std::size_t cond_limit = 4;
};

// Explores the strategy against every condition tuple over the first
// cond_limit conditions and repairs comparable siblings (shortest wins).
BPerfectTree strategy_to_bperfect(const StrategyI& strat_I, const GameConfig& cfg,
                                  const BPerfectSynthesisBudget& budget);

struct CoverSynthesisBudget {
    std::size_t prefix_depth = 4;
};

// Depth-truncated pieces; each piece carries the prefixes avoiding the
// strategy's replies after a good history, closed off with a minimal tail.
std::vector<RegularTree> strategy_to_cover(const StrategyII& strat_II, const GameConfig& cfg,
                                           const CoverSynthesisBudget& budget);

enum class Winner { I, II };

struct SolveResult {
    Winner winner = Winner::I;
    StrategyIPtr strat_I;   // set when winner == I
    StrategyIIPtr strat_II; // set when winner == II
    std::size_t positions = 0;
};

// Backward induction over the finitized game; the move pools are the
// sequences within the caps and the first cond_limit conditions. The node
// budget comes from BAIRE_GAMES_NODE_BUDGET (default 2'000'000).
SolveResult solve_finite(const GameConfig& cfg);

// Single-letter base game: players alternate letters, I wins iff the outcome
// prefix stays in the payoff tree for all half_moves.
struct BaseSolveResult {
    Winner winner = Winner::I;
    std::optional<Letter> best_first; // I's winning opening when winner == I
};
BaseSolveResult solve_base(const RegularTree& payoff, Letter letter_cap,
                           std::size_t half_moves);

// I-move pool within the caps, length-then-lex.
std::vector<FinSeq> move_pool(const GameConfig& cfg);

} // namespace baire
