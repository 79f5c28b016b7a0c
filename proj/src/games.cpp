#include "baire/games.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <random>
#include <set>
#include <unordered_map>

#include <json.hpp>

namespace baire {

void GameConfig::check() const {
    if (!cs) throw input_error("game config needs a condition set");
    if (horizon < 1) throw input_error("horizon must be at least 1");
    if (move_len_cap < 1) throw input_error("move length cap must be at least 1");
    if (witness_mode != witness_payoff.has_value())
        throw input_error("witness payoff must be present exactly in witness mode");
    if (witness_mode) {
        if (witness_payoff->is_empty()) throw input_error("witness payoff tree is empty");
    } else {
        if (payoff.is_empty()) throw input_error("payoff tree is empty");
        if (!(payoff.alphabet() == cs->alphabet()))
            throw input_error("payoff alphabet does not match the condition set");
    }
}

std::string Verdict::to_string() const {
    auto reason_str = [&] {
        switch (reason) {
        case Reason::left_payoff: return "left_payoff";
        case Reason::condition_violated: return "condition_violated";
        case Reason::strategy_fault: return "strategy_fault";
        default: return "none";
        }
    };
    switch (kind) {
    case Kind::I_alive: return "I_alive_at_horizon";
    case Kind::II_wins:
        return "II_wins_at(" + std::to_string(round) + ", " + reason_str() + ")";
    case Kind::I_wins:
        return "I_wins_at(" + std::to_string(round) + ", " + reason_str() + ")";
    }
    return "?";
}

namespace {

Letter max_letter_for(const GameConfig& cfg) {
    Letter hi = cfg.letter_cap;
    if (cfg.cs->alphabet().is_finite())
        hi = std::min<Letter>(hi, cfg.cs->alphabet().size() - 1);
    return hi;
}

bool legal_move_I(const GameConfig& cfg, const MoveI& m) {
    if (m.u.empty() || m.u.size() > cfg.move_len_cap) return false;
    for (Letter x : m.u.letters())
        if (x > cfg.letter_cap || !cfg.cs->alphabet().contains(x)) return false;
    if (cfg.witness_mode) {
        if (!m.witness || *m.witness > cfg.letter_cap) return false;
    } else if (m.witness) {
        return false;
    }
    return true;
}

// Tracks payoff membership of the outcome as letters and witnesses arrive.
struct OutcomeTracker {
    const GameConfig& cfg;
    const RegularTree& tree; // payoff or witness payoff
    std::optional<StateId> state;
    FinSeq f;
    std::size_t paired = 0; // pair letters consumed (witness mode)

    explicit OutcomeTracker(const GameConfig& c)
        : cfg(c), tree(c.witness_mode ? *c.witness_payoff : c.payoff) {
        state = tree.is_empty() ? std::nullopt : std::optional<StateId>(tree.start());
    }

    // Returns the length of the first outcome prefix that left the tree.
    std::optional<std::size_t> absorb(const std::vector<MoveI>& all_moves, const MoveI& m) {
        f = f.concat(m.u);
        if (!cfg.witness_mode) {
            std::size_t done = f.size() - m.u.size();
            for (Letter x : m.u.letters()) {
                if (!state) return done + 1;
                state = tree.step(*state, x);
                ++done;
                if (!state) return done;
            }
            return std::nullopt;
        }
        const std::size_t rounds = all_moves.size();
        while (paired < std::min(rounds, f.size())) {
            Letter xi = all_moves[paired].witness.value_or(0);
            Letter pair = encode_pair(f[paired], xi, cfg.letter_cap);
            if (!state) return paired + 1;
            state = tree.step(*state, pair);
            ++paired;
            if (!state) return paired;
        }
        return std::nullopt;
    }
};

} // namespace

std::pair<PlayHistory, Verdict> play(const GameConfig& cfg, const StrategyI& strat_I,
                                     const StrategyII& strat_II) {
    cfg.check();
    PlayHistory h;
    Verdict v;
    OutcomeTracker outcome(cfg);

    for (std::size_t r = 1; r <= cfg.horizon; ++r) {
        MoveI m = strat_I.move(cfg, h);
        if (!legal_move_I(cfg, m)) {
            v.kind = Verdict::Kind::II_wins;
            v.reason = Verdict::Reason::strategy_fault;
            v.round = r;
            return {h, v};
        }
        h.moves_I.push_back(m);

        if (auto left = outcome.absorb(h.moves_I, m)) {
            v.kind = Verdict::Kind::II_wins;
            v.reason = Verdict::Reason::left_payoff;
            v.round = r;
            v.offending_prefix = outcome.f.prefix(*left);
            return {h, v};
        }
        if (r >= 2) {
            const Condition& b = h.moves_II[r - 2];
            bool satisfied = false;
            try {
                satisfied = cfg.cs->satisfies(m.u, b);
            } catch (const std::bad_variant_access&) {
                // condition payload does not fit the set: II's fault
                v.kind = Verdict::Kind::I_wins;
                v.reason = Verdict::Reason::strategy_fault;
                v.round = r - 1;
                return {h, v};
            }
            if (!satisfied) {
                v.kind = Verdict::Kind::II_wins;
                v.reason = Verdict::Reason::condition_violated;
                v.round = r - 1;
                v.condition_index = r - 1;
                v.offending_move = m.u;
                v.condition = b;
                return {h, v};
            }
        }
        if (r < cfg.horizon) h.moves_II.push_back(strat_II.move(cfg, h));
    }
    v.kind = Verdict::Kind::I_alive;
    return {h, v};
}

std::string render_transcript(const PlayHistory& h, const Verdict& v) {
    std::string out;
    const std::size_t rounds = h.moves_I.size();
    for (std::size_t r = 0; r < rounds; ++r) {
        const MoveI& m = h.moves_I[r];
        out += "I:";
        if (m.witness) out += " xi=" + std::to_string(*m.witness);
        out += " " + m.u.to_string() + "\n";
        if (r < h.moves_II.size()) out += "II: b=" + h.moves_II[r].to_string() + "\n";
    }
    out += "verdict: " + v.to_string() + "\n";
    return out;
}

std::string render_transcript_json(const PlayHistory& h, const Verdict& v) {
    using nlohmann::json;
    json j;
    j["moves"] = json::array();
    for (std::size_t r = 0; r < h.moves_I.size(); ++r) {
        json m = {{"side", "I"}, {"u", h.moves_I[r].u.letters()}};
        if (h.moves_I[r].witness) m["xi"] = *h.moves_I[r].witness;
        j["moves"].push_back(m);
        if (r < h.moves_II.size()) {
            const Condition& b = h.moves_II[r];
            json c = {{"side", "II"}};
            if (b.is_nat()) c["b"] = b.as_nat();
            else c["b"] = b.as_seq().letters();
            j["moves"].push_back(c);
        }
    }
    json jv;
    jv["text"] = v.to_string();
    jv["round"] = v.round;
    switch (v.kind) {
    case Verdict::Kind::I_alive: jv["kind"] = "I_alive_at_horizon"; break;
    case Verdict::Kind::II_wins: jv["kind"] = "II_wins"; break;
    case Verdict::Kind::I_wins: jv["kind"] = "I_wins"; break;
    }
    switch (v.reason) {
    case Verdict::Reason::left_payoff:
        jv["reason"] = "left_payoff";
        jv["offending_prefix"] = v.offending_prefix.letters();
        break;
    case Verdict::Reason::condition_violated:
        jv["reason"] = "condition_violated";
        jv["condition_index"] = v.condition_index;
        jv["offending_move"] = v.offending_move.letters();
        break;
    case Verdict::Reason::strategy_fault: jv["reason"] = "strategy_fault"; break;
    case Verdict::Reason::none: break;
    }
    j["verdict"] = jv;
    return j.dump(2) + "\n";
}

namespace {

std::uint64_t history_fingerprint(const PlayHistory& h) {
    std::uint64_t hash = 1469598103934665603ull;
    auto mix = [&](std::uint64_t x) {
        hash ^= x + 0x9e3779b97f4a7c15ull;
        hash *= 1099511628211ull;
    };
    for (const MoveI& m : h.moves_I) {
        mix(0xA1);
        if (m.witness) mix(*m.witness + 1);
        for (Letter x : m.u.letters()) mix(x + 2);
    }
    for (const Condition& b : h.moves_II) {
        mix(0xB2);
        if (b.is_nat()) mix(b.as_nat() + 3);
        else
            for (Letter x : b.as_seq().letters()) mix(x + 4);
    }
    return hash;
}

class RandomStrategyI final : public StrategyI {
public:
    explicit RandomStrategyI(std::uint64_t seed) : seed_(seed) {}
    MoveI move(const GameConfig& cfg, const PlayHistory& h) const override {
        std::mt19937_64 rng(seed_ ^ history_fingerprint(h));
        const Letter hi = max_letter_for(cfg);
        MoveI m;
        const std::size_t len = 1 + rng() % cfg.move_len_cap;
        std::vector<Letter> xs;
        for (std::size_t i = 0; i < len; ++i) xs.push_back(rng() % (hi + 1));
        m.u = FinSeq(std::move(xs));
        if (cfg.witness_mode) m.witness = rng() % (cfg.letter_cap + 1);
        return m;
    }

private:
    std::uint64_t seed_;
};

class RandomStrategyII final : public StrategyII {
public:
    explicit RandomStrategyII(std::uint64_t seed) : seed_(seed) {}
    Condition move(const GameConfig& cfg, const PlayHistory& h) const override {
        auto conds = cfg.cs->enumerate_conditions(std::max<std::size_t>(1, cfg.cond_limit));
        if (conds.empty()) return cfg.cs->distinguisher(0);
        std::mt19937_64 rng(seed_ ^ history_fingerprint(h) ^ 0x5bd1e995u);
        return conds[rng() % conds.size()];
    }

private:
    std::uint64_t seed_;
};

class ScriptedStrategyII final : public StrategyII {
public:
    explicit ScriptedStrategyII(std::vector<Condition> conds) : conds_(std::move(conds)) {
        if (conds_.empty()) throw input_error("scripted strategy needs at least one condition");
    }
    Condition move(const GameConfig&, const PlayHistory& h) const override {
        const std::size_t i = h.moves_II.size();
        return conds_[std::min(i, conds_.size() - 1)];
    }

private:
    std::vector<Condition> conds_;
};

class ConstantStrategyI final : public StrategyI {
public:
    ConstantStrategyI(FinSeq u, std::optional<Letter> witness)
        : u_(std::move(u)), witness_(witness) {}
    MoveI move(const GameConfig& cfg, const PlayHistory&) const override {
        MoveI m{witness_, u_};
        if (cfg.witness_mode && !m.witness) m.witness = 0;
        return m;
    }

private:
    FinSeq u_;
    std::optional<Letter> witness_;
};

} // namespace

StrategyIPtr make_random_strategy_I(std::uint64_t seed) {
    return std::make_shared<RandomStrategyI>(seed);
}
StrategyIIPtr make_random_strategy_II(std::uint64_t seed) {
    return std::make_shared<RandomStrategyII>(seed);
}
StrategyIIPtr make_scripted_strategy_II(std::vector<Condition> conds) {
    return std::make_shared<ScriptedStrategyII>(std::move(conds));
}
StrategyIPtr make_constant_strategy_I(FinSeq u, std::optional<Letter> witness) {
    return std::make_shared<ConstantStrategyI>(std::move(u), witness);
}

namespace {

struct ReplyResult {
    FinSeq move;
    std::uint32_t vertex;
    std::size_t reductions = 0;
};

ReplyResult bperfect_serve(const BPerfectTree& j, const ConditionSet& cs, std::uint32_t from,
                           const Condition& b) {
    ReplyResult out;
    out.vertex = from;
    Condition c = b;
    for (;;) {
        const auto& children = j.vertex(out.vertex).children;
        if (children.empty())
            throw synthesis_fault("stored perfect tree exhausted below vertex " +
                                      std::to_string(out.vertex) + " serving " + c.to_string(),
                                  true);
        std::optional<std::uint32_t> direct;
        for (auto cid : children)
            if (cs.satisfies(j.vertex(cid).label, c)) {
                direct = cid;
                break;
            }
        if (direct) {
            out.move = out.move.concat(j.vertex(*direct).label);
            out.vertex = *direct;
            return out;
        }
        std::optional<std::uint32_t> via;
        std::optional<Condition> reduced;
        for (auto cid : children) {
            if (auto r = cs.reduce(c, j.vertex(cid).label)) {
                via = cid;
                reduced = r;
                break;
            }
        }
        if (!via)
            throw synthesis_fault("no stored child below vertex " + std::to_string(out.vertex) +
                                      " satisfies or reduces " + c.to_string(),
                                  false);
        if (cs.rank(*reduced) >= cs.rank(c))
            throw synthesis_fault("reduction failed to decrease the rank of " + c.to_string(),
                                  false);
        out.move = out.move.concat(j.vertex(*via).label);
        out.vertex = *via;
        c = *reduced;
        ++out.reductions;
    }
}

} // namespace

MoveI bperfect_reply(const BPerfectTree& j, const ConditionSet& cs, const PlayHistory& h,
                     std::size_t* chain_len) {
    if (chain_len) *chain_len = 0;
    const auto& root_children = j.vertex(j.root()).children;
    if (root_children.empty())
        throw synthesis_fault("perfect tree has no stored first move", true);
    if (h.moves_I.empty()) return {std::nullopt, j.vertex(root_children.front()).label};

    std::uint32_t vertex = root_children.front();
    FinSeq last_move = j.vertex(vertex).label;
    std::size_t reductions = 0;
    for (const Condition& b : h.moves_II) {
        ReplyResult r = bperfect_serve(j, cs, vertex, b);
        vertex = r.vertex;
        last_move = r.move;
        reductions = r.reductions;
    }
    if (chain_len) *chain_len = reductions;
    return {std::nullopt, last_move};
}

namespace {

class BPerfectStrategyI final : public StrategyI {
public:
    BPerfectStrategyI(std::shared_ptr<const BPerfectTree> j, ConditionSetPtr cs)
        : j_(std::move(j)), cs_(std::move(cs)) {}
    MoveI move(const GameConfig& cfg, const PlayHistory& h) const override {
        MoveI m = bperfect_reply(*j_, *cs_, h);
        if (cfg.witness_mode) m.witness = 0;
        return m;
    }

private:
    std::shared_ptr<const BPerfectTree> j_;
    ConditionSetPtr cs_;
};

class CoverStrategyII final : public StrategyII {
public:
    CoverStrategyII(std::vector<RegularTree> pieces, CoverWitnessFn witnesses,
                    ConditionSetPtr cs)
        : pieces_(std::move(pieces)), witnesses_(std::move(witnesses)), cs_(std::move(cs)) {}

    Condition move(const GameConfig&, const PlayHistory& h) const override {
        std::vector<char> engaged(pieces_.size(), 0);
        FinSeq prefix;
        for (std::size_t k = 0; k < h.moves_I.size(); ++k) {
            prefix = prefix.concat(h.moves_I[k].u);
            std::optional<std::size_t> hit;
            for (std::size_t i = 0; i < pieces_.size(); ++i) {
                if (engaged[i]) continue;
                if (!pieces_[i].alphabet().contains(prefix)) continue;
                if (pieces_[i].contains_prefix(prefix)) {
                    hit = i;
                    engaged[i] = 1;
                    break;
                }
            }
            if (k + 1 == h.moves_I.size()) {
                if (!hit) return cs_->distinguisher(0); // harmless filler
                auto w = witnesses_(*hit, prefix);
                if (!w)
                    throw synthesis_fault("missing cover witness for piece " +
                                              std::to_string(*hit) + " at " + prefix.to_string(),
                                          false);
                return *w;
            }
        }
        return cs_->distinguisher(0);
    }

private:
    std::vector<RegularTree> pieces_;
    CoverWitnessFn witnesses_;
    ConditionSetPtr cs_;
};

} // namespace

StrategyIPtr strategy_I_from_bperfect(std::shared_ptr<const BPerfectTree> j, ConditionSetPtr cs) {
    return std::make_shared<BPerfectStrategyI>(std::move(j), std::move(cs));
}

StrategyIIPtr strategy_II_from_cover(std::vector<RegularTree> pieces, CoverWitnessFn witnesses,
                                     ConditionSetPtr cs) {
    return std::make_shared<CoverStrategyII>(std::move(pieces), std::move(witnesses),
                                             std::move(cs));
}

CoverWitnessFn exact_cover_witnesses(std::vector<RegularTree> pieces, ConditionSetPtr cs) {
    auto cached = std::make_shared<std::vector<std::optional<NowhereDenseWitness>>>();
    for (const RegularTree& p : pieces) cached->push_back(is_b_nowhere_dense_exact(p, *cs));
    auto trees = std::make_shared<std::vector<RegularTree>>(std::move(pieces));
    return [cached, trees](std::size_t i, const FinSeq& node) -> std::optional<Condition> {
        if (i >= cached->size() || !(*cached)[i]) return std::nullopt;
        return (*cached)[i]->at((*trees)[i], node);
    };
}

namespace {

std::string describe_history(const PlayHistory& h) {
    std::string s;
    const std::size_t rounds = std::max(h.moves_I.size(), h.moves_II.size());
    for (std::size_t r = 0; r < rounds; ++r) {
        if (r < h.moves_I.size()) s += " I:" + h.moves_I[r].u.to_string();
        if (r < h.moves_II.size()) s += " II:" + h.moves_II[r].to_string();
    }
    return s.empty() ? "empty" : s;
}

void build_bperfect_layer(BPerfectTree& out, std::uint32_t vertex, const StrategyI& strat_I,
                          const GameConfig& cfg, const std::vector<Condition>& conds,
                          const PlayHistory& h, std::size_t depth,
                          const BPerfectSynthesisBudget& budget) {
    if (depth >= budget.rounds) {
        out.mark_frontier(vertex);
        return;
    }
    struct Candidate {
        FinSeq label;
        PlayHistory history;
    };
    std::vector<Candidate> kept;
    for (const Condition& b : conds) {
        PlayHistory h2 = h;
        h2.moves_II.push_back(b);
        MoveI m;
        try {
            m = strat_I.move(cfg, h2);
        } catch (const synthesis_fault& e) {
            throw synthesis_fault(std::string(e.what()) + " [history:" + describe_history(h2) +
                                      "]",
                                  e.depth_exhausted);
        }
        // incompatibility repair: keep the shortest among comparable labels
        bool skip = false;
        for (const Candidate& c : kept)
            if (c.label.is_prefix_of(m.u)) {
                skip = true;
                break;
            }
        if (skip) continue;
        h2.moves_I.push_back(m);
        std::erase_if(kept, [&](const Candidate& c) { return m.u.is_prefix_of(c.label); });
        kept.push_back({m.u, std::move(h2)});
    }
    for (const Candidate& c : kept) {
        std::uint32_t child = out.add_child(vertex, c.label);
        build_bperfect_layer(out, child, strat_I, cfg, conds, c.history, depth + 1, budget);
    }
}

} // namespace

BPerfectTree strategy_to_bperfect(const StrategyI& strat_I, const GameConfig& cfg,
                                  const BPerfectSynthesisBudget& budget) {
    BPerfectTree out;
    const auto conds = cfg.cs->enumerate_conditions(budget.cond_limit);
    PlayHistory h;
    MoveI first;
    try {
        first = strat_I.move(cfg, h);
    } catch (const synthesis_fault& e) {
        throw synthesis_fault(std::string(e.what()) + " [history: empty]", e.depth_exhausted);
    }
    h.moves_I.push_back(first);
    std::uint32_t child = out.add_child(out.root(), first.u);
    build_bperfect_layer(out, child, strat_I, cfg, conds, h, 1, budget);
    return out;
}

namespace {

// Single cover piece: the prefixes of stem+anchor plus the extensions that
// avoid every compliant move followed by a move satisfying the strategy's
// reply; closed off with a minimal-letter tail at the depth limit.
std::optional<RegularTree> build_cover_piece(
    const StrategyII& strat_II, const GameConfig& cfg, const CoverSynthesisBudget& budget,
    const PlayHistory& h, const FinSeq& played, const FinSeq& anchor,
    const std::optional<Condition>& last_cond, std::map<FinSeq, Condition>& reply_cache) {
    const Alphabet& a = cfg.cs->alphabet();
    const Letter hi = max_letter_for(cfg);

    auto reply_to = [&](const FinSeq& mv) -> const Condition& {
        auto it = reply_cache.find(mv);
        if (it != reply_cache.end()) return it->second;
        PlayHistory h2 = h;
        h2.moves_I.push_back({std::nullopt, mv});
        return reply_cache.emplace(mv, strat_II.move(cfg, h2)).first->second;
    };
    // z extends the good history's outcome; it is forbidden once a compliant
    // move-prefix u' of z is followed by a block satisfying the reply to u'.
    // All split parts stay within the caps by construction of z.
    auto forbidden = [&](const FinSeq& z) {
        for (std::size_t i = 1; i <= std::min<std::size_t>(z.size(), cfg.move_len_cap); ++i) {
            FinSeq u1 = z.prefix(i);
            if (last_cond && !cfg.cs->satisfies(u1, *last_cond)) continue;
            const Condition& b2 = reply_to(u1);
            const std::size_t jmax = std::min<std::size_t>(z.size() - i, cfg.move_len_cap);
            for (std::size_t jj = 1; jj <= jmax; ++jj)
                if (cfg.cs->satisfies(z.prefix(i + jj).suffix_from(i), b2)) return true;
        }
        return false;
    };

    // states: stem path nodes, included extension nodes, one tail state
    struct Node {
        FinSeq z; // extension past `played` (starts with anchor)
        StateId state;
    };
    std::vector<std::vector<Edge>> edges;
    auto new_state = [&] {
        edges.emplace_back();
        return static_cast<StateId>(edges.size() - 1);
    };
    const FinSeq base = played.concat(anchor);
    StateId cur = new_state();
    const StateId root = cur;
    for (std::size_t i = 0; i < base.size(); ++i) {
        StateId next = new_state();
        edges[cur].push_back({ChildSpec::set({base[i]}), next});
        cur = next;
    }
    if (forbidden(anchor)) return std::nullopt;
    StateId tail = new_state();
    edges[tail].push_back({ChildSpec::set({0}), tail});

    std::vector<Node> frontier{{anchor, cur}};
    while (!frontier.empty()) {
        std::vector<Node> next;
        for (const Node& n : frontier) {
            if (played.size() + n.z.size() >= budget.prefix_depth) {
                edges[n.state].push_back({ChildSpec::set({0}), tail});
                continue;
            }
            for (Letter x = 0; x <= hi && a.contains(x); ++x) {
                FinSeq z2 = n.z.append(x);
                if (forbidden(z2)) continue;
                StateId s2 = new_state();
                edges[n.state].push_back({ChildSpec::set({x}), s2});
                next.push_back({std::move(z2), s2});
            }
        }
        frontier = std::move(next);
    }
    RegularTree t = RegularTree::from_subgraph(a, edges, std::vector<char>(edges.size(), 1), root);
    if (t.is_empty()) return std::nullopt;
    return t;
}

void enumerate_good_histories(const StrategyII& strat_II, const GameConfig& cfg,
                              const CoverSynthesisBudget& budget, const PlayHistory& h,
                              const FinSeq& played, const std::optional<Condition>& last_cond,
                              const std::vector<FinSeq>& pool,
                              std::vector<RegularTree>& pieces, std::set<std::string>& seen) {
    std::map<FinSeq, Condition> reply_cache;
    for (const FinSeq& u : pool) {
        if (played.size() + u.size() > budget.prefix_depth) continue;
        if (last_cond && !cfg.cs->satisfies(u, *last_cond)) continue;
        if (auto piece = build_cover_piece(strat_II, cfg, budget, h, played, u, last_cond,
                                           reply_cache)) {
            // dedupe structurally identical pieces
            std::string key;
            for (StateId s = 0; s < piece->state_count(); ++s)
                for (const Edge& e : piece->edges(s))
                    key += std::to_string(s) + e.spec.to_string() + std::to_string(e.dst) + ";";
            if (seen.insert(key).second) pieces.push_back(*piece);
        }
        PlayHistory h2 = h;
        h2.moves_I.push_back({std::nullopt, u});
        Condition b = strat_II.move(cfg, h2);
        h2.moves_II.push_back(b);
        enumerate_good_histories(strat_II, cfg, budget, h2, played.concat(u), b, pool, pieces,
                                 seen);
    }
}

} // namespace

std::vector<RegularTree> strategy_to_cover(const StrategyII& strat_II, const GameConfig& cfg,
                                           const CoverSynthesisBudget& budget) {
    std::vector<RegularTree> pieces;
    std::set<std::string> seen;
    const auto pool = move_pool(cfg);
    enumerate_good_histories(strat_II, cfg, budget, PlayHistory{}, FinSeq(), std::nullopt, pool,
                             pieces, seen);
    if (pieces.empty()) {
        // depth-zero budget: the payoff truncated at the root, closed minimally
        std::vector<std::vector<Edge>> edges(1);
        edges[0].push_back({ChildSpec::set({0}), 0});
        pieces.push_back(RegularTree::make(cfg.cs->alphabet(), 0, std::move(edges)));
    }
    return pieces;
}

std::vector<FinSeq> move_pool(const GameConfig& cfg) {
    const Letter hi = max_letter_for(cfg);
    std::vector<FinSeq> pool;
    std::vector<FinSeq> level{FinSeq()};
    for (std::size_t len = 1; len <= cfg.move_len_cap; ++len) {
        std::vector<FinSeq> next;
        for (const FinSeq& u : level)
            for (Letter x = 0; x <= hi; ++x) next.push_back(u.append(x));
        for (const FinSeq& u : next) pool.push_back(u);
        level = std::move(next);
    }
    return pool; // length-then-lex by construction
}

namespace {

std::size_t node_budget_from_env() {
    if (const char* env = std::getenv("BAIRE_GAMES_NODE_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 2'000'000;
}

struct SolverCore {
    GameConfig cfg;
    std::vector<FinSeq> moves;
    std::vector<Condition> conds;
    std::size_t budget = 0;
    std::size_t used = 0;
    // memoized winners and best move indices per position
    std::unordered_map<std::string, std::pair<Winner, std::size_t>> memo_I;
    std::unordered_map<std::string, std::pair<Winner, std::size_t>> memo_II;

    const RegularTree& tree() const {
        return cfg.witness_mode ? *cfg.witness_payoff : cfg.payoff;
    }

    struct Position {
        std::size_t round = 0; // I moves made
        std::optional<StateId> state;
        std::vector<Letter> tail; // unpaired outcome letters (witness mode)
        std::optional<std::size_t> cond; // pending condition index

        std::string key(bool i_to_move) const {
            std::string k = i_to_move ? "I" : "N";
            k += std::to_string(round) + "|";
            k += state ? std::to_string(*state) : std::string("x");
            k += "|";
            for (Letter x : tail) k += std::to_string(x) + ",";
            k += "|";
            if (cond) k += std::to_string(*cond);
            return k;
        }
    };

    // Applies I's move; false when the outcome prefix leaves the tree. In
    // witness mode exactly one pair letter is consumed per round, since the
    // outcome accumulates at least one letter per move.
    bool apply_move(Position& p, const FinSeq& u, std::optional<Letter> xi) const {
        p.round += 1;
        if (!cfg.witness_mode) {
            for (Letter x : u.letters()) {
                if (!p.state) return false;
                p.state = tree().step(*p.state, x);
            }
            return p.state.has_value();
        }
        for (Letter x : u.letters()) p.tail.push_back(x);
        if (!p.state) return false;
        const Letter pair = encode_pair(p.tail.front(), xi.value_or(0), cfg.letter_cap);
        p.state = tree().step(*p.state, pair);
        p.tail.erase(p.tail.begin());
        return p.state.has_value();
    }

    void charge() {
        if (++used > budget)
            throw resource_error("solver node budget exceeded", used);
    }

    Winner value_I(const Position& p) {
        charge();
        if (p.round >= cfg.horizon) return Winner::I;
        const std::string key = p.key(true);
        if (auto it = memo_I.find(key); it != memo_I.end()) return it->second.first;
        std::pair<Winner, std::size_t> result{Winner::II, 0};
        const std::size_t wit_hi = cfg.witness_mode ? cfg.letter_cap : 0;
        for (std::size_t mi = 0; mi < moves.size() && result.first == Winner::II; ++mi) {
            if (p.cond && !cfg.cs->satisfies(moves[mi], conds[*p.cond])) continue;
            for (Letter xi = 0; xi <= wit_hi; ++xi) {
                Position q = p;
                q.cond.reset();
                if (!apply_witnessed(q, mi, xi)) continue; // leaves the payoff: II wins this line
                Winner w = (q.round >= cfg.horizon) ? Winner::I : value_II(q);
                if (w == Winner::I) {
                    result = {Winner::I, mi * (wit_hi + 1) + xi};
                    break;
                }
            }
        }
        memo_I.emplace(key, result);
        return result.first;
    }

    bool apply_witnessed(Position& q, std::size_t mi, Letter xi) {
        return apply_move(q, moves[mi],
                          cfg.witness_mode ? std::optional<Letter>(xi) : std::nullopt);
    }

    Winner value_II(const Position& p) {
        charge();
        const std::string key = p.key(false);
        if (auto it = memo_II.find(key); it != memo_II.end()) return it->second.first;
        std::pair<Winner, std::size_t> result{Winner::I, 0};
        for (std::size_t ci = 0; ci < conds.size(); ++ci) {
            Position q = p;
            q.cond = ci;
            if (value_I(q) == Winner::II) {
                result = {Winner::II, ci};
                break;
            }
        }
        memo_II.emplace(key, result);
        return result.first;
    }

    Position replay(const PlayHistory& h) const {
        Position p;
        p.state = tree().is_empty() ? std::nullopt : std::optional<StateId>(tree().start());
        for (const MoveI& m : h.moves_I) apply_move(p, m.u, m.witness);
        if (!h.moves_II.empty()) {
            const Condition& b = h.moves_II.back();
            for (std::size_t ci = 0; ci < conds.size(); ++ci)
                if (conds[ci] == b) {
                    p.cond = ci;
                    break;
                }
        }
        return p;
    }
};

class SolvedStrategyI final : public StrategyI {
public:
    explicit SolvedStrategyI(std::shared_ptr<SolverCore> core) : core_(std::move(core)) {}
    MoveI move(const GameConfig& cfg, const PlayHistory& h) const override {
        auto p = core_->replay(h);
        auto it = core_->memo_I.find(p.key(true));
        const std::size_t wit_hi = cfg.witness_mode ? cfg.letter_cap : 0;
        std::size_t idx = 0, xi = 0;
        if (it != core_->memo_I.end()) {
            idx = it->second.second / (wit_hi + 1);
            xi = it->second.second % (wit_hi + 1);
        }
        MoveI m{std::nullopt, core_->moves[std::min(idx, core_->moves.size() - 1)]};
        if (cfg.witness_mode) m.witness = static_cast<Letter>(xi);
        return m;
    }

private:
    std::shared_ptr<SolverCore> core_;
};

class SolvedStrategyII final : public StrategyII {
public:
    explicit SolvedStrategyII(std::shared_ptr<SolverCore> core) : core_(std::move(core)) {}
    Condition move(const GameConfig&, const PlayHistory& h) const override {
        auto p = core_->replay(h);
        p.cond.reset();
        auto it = core_->memo_II.find(p.key(false));
        std::size_t ci = it != core_->memo_II.end() ? it->second.second : 0;
        return core_->conds[std::min(ci, core_->conds.size() - 1)];
    }

private:
    std::shared_ptr<SolverCore> core_;
};

} // namespace

SolveResult solve_finite(const GameConfig& cfg) {
    cfg.check();
    auto core = std::make_shared<SolverCore>();
    core->cfg = cfg;
    core->moves = move_pool(cfg);
    core->conds = cfg.cs->enumerate_conditions(std::max<std::size_t>(1, cfg.cond_limit));
    if (core->conds.empty())
        throw input_error("the condition set enumerates no conditions to solve over");
    core->budget = node_budget_from_env();

    SolverCore::Position p0;
    p0.state = core->tree().is_empty() ? std::nullopt
                                       : std::optional<StateId>(core->tree().start());
    SolveResult result;
    result.winner = core->value_I(p0);
    result.positions = core->used;
    if (result.winner == Winner::I)
        result.strat_I = std::make_shared<SolvedStrategyI>(core);
    else
        result.strat_II = std::make_shared<SolvedStrategyII>(core);
    return result;
}

namespace {

Winner base_value(const RegularTree& payoff, Letter hi, std::size_t half_moves, StateId s,
                  std::size_t k, std::map<std::pair<StateId, std::size_t>, Winner>& memo,
                  Letter* best_first) {
    if (k >= half_moves) return Winner::I;
    auto mk = std::make_pair(s, k);
    if (auto it = memo.find(mk); it != memo.end()) return it->second;
    const bool i_turn = (k % 2 == 0);
    Winner out = i_turn ? Winner::II : Winner::I;
    for (Letter x = 0; x <= hi && payoff.alphabet().contains(x); ++x) {
        auto next = payoff.step(s, x);
        if (i_turn) {
            if (!next) continue; // a move out of the tree loses for I
            if (base_value(payoff, hi, half_moves, *next, k + 1, memo, nullptr) == Winner::I) {
                out = Winner::I;
                if (k == 0 && best_first) *best_first = x;
                break;
            }
        } else {
            if (!next ||
                base_value(payoff, hi, half_moves, *next, k + 1, memo, nullptr) == Winner::II) {
                out = Winner::II;
                break;
            }
        }
    }
    memo.emplace(mk, out);
    return out;
}

} // namespace

BaseSolveResult solve_base(const RegularTree& payoff, Letter letter_cap,
                           std::size_t half_moves) {
    BaseSolveResult out;
    if (payoff.is_empty()) {
        out.winner = Winner::II;
        return out;
    }
    Letter hi = letter_cap;
    if (payoff.alphabet().is_finite()) hi = std::min<Letter>(hi, payoff.alphabet().size() - 1);
    std::map<std::pair<StateId, std::size_t>, Winner> memo;
    Letter first = 0;
    out.winner = base_value(payoff, hi, half_moves, payoff.start(), 0, memo, &first);
    if (out.winner == Winner::I) out.best_first = first;
    return out;
}

} // namespace baire
