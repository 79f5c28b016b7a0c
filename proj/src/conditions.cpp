#include "baire/conditions.hpp"

#include <algorithm>
#include <deque>

#include <json.hpp>

namespace baire {

namespace {

// All non-empty sequences over letters 0..cap of length <= max_len, BFS
// (length-then-lex) order, with parent indices (-1 for length-1 entries).
struct SamplePool {
    std::vector<FinSeq> seqs;
    std::vector<std::ptrdiff_t> parent;
    std::vector<std::size_t> len_end; // end index (exclusive) per length
};

SamplePool build_pool(const Alphabet& a, std::size_t max_len, Letter cap) {
    SamplePool pool;
    Letter hi = cap;
    if (a.is_finite()) hi = std::min<Letter>(hi, a.size() - 1);
    std::size_t level_begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        const std::size_t level_end = pool.seqs.size();
        if (len == 1) {
            for (Letter x = 0; x <= hi; ++x) {
                pool.seqs.push_back(FinSeq({x}));
                pool.parent.push_back(-1);
            }
        } else {
            for (std::size_t i = level_begin; i < level_end; ++i) {
                for (Letter x = 0; x <= hi; ++x) {
                    pool.seqs.push_back(pool.seqs[i].append(x));
                    pool.parent.push_back(static_cast<std::ptrdiff_t>(i));
                }
            }
        }
        level_begin = level_end;
        pool.len_end.push_back(pool.seqs.size());
    }
    return pool;
}

class FirstLetterIs final : public ConditionSet {
public:
    FirstLetterIs() : alphabet_(Alphabet::finite(2)) {}
    std::string name() const override { return "ex61"; }
    const Alphabet& alphabet() const override { return alphabet_; }

    bool satisfies(const FinSeq& u, const Condition& b) const override {
        require_nonempty(u);
        return u.front() == b.as_nat();
    }
    unsigned rank(const Condition&) const override { return 0; }
    Condition distinguisher(Letter x) const override {
        return Condition::nat(x == 0 ? 1 : 0);
    }
    std::optional<Condition> reduce(const Condition&, const FinSeq&) const override {
        return std::nullopt; // the trigger case cannot occur
    }
    std::vector<Condition> enumerate_conditions(std::size_t limit) const override {
        std::vector<Condition> out;
        for (std::uint64_t b = 0; b < 2 && out.size() < limit; ++b)
            out.push_back(Condition::nat(b));
        return out;
    }
    bool extension_satisfies(const FinSeq& u, const Condition& b, std::size_t,
                             Letter) const override {
        // satisfaction depends on the first letter only
        return u.front() == b.as_nat();
    }

private:
    Alphabet alphabet_;
};

class PrefixCondition final : public ConditionSet {
public:
    PrefixCondition(Letter enum_cap, Alphabet a) : enum_cap_(enum_cap), alphabet_(a) {
        if (a.is_finite() && a.size() < 2)
            throw input_error("prefix conditions need an alphabet with at least two letters");
    }
    std::string name() const override { return "ex62"; }
    const Alphabet& alphabet() const override { return alphabet_; }

    bool satisfies(const FinSeq& u, const Condition& b) const override {
        require_nonempty(u);
        return b.as_seq().is_prefix_of(u);
    }
    unsigned rank(const Condition& b) const override {
        return static_cast<unsigned>(b.as_seq().size());
    }
    Condition distinguisher(Letter x) const override {
        return Condition::seq(FinSeq({x == 0 ? Letter(1) : Letter(0)}));
    }
    std::optional<Condition> reduce(const Condition& b, const FinSeq& u) const override {
        // trigger: u is a proper prefix of b; the reduced condition is the
        // remainder of b past u
        const FinSeq& bs = b.as_seq();
        if (!u.is_prefix_of(bs) || u.size() >= bs.size()) return std::nullopt;
        return Condition::seq(bs.suffix_from(u.size()));
    }
    std::vector<Condition> enumerate_conditions(std::size_t limit) const override {
        std::vector<Condition> out;
        Letter hi = enum_cap_ == 0 ? 0 : enum_cap_ - 1; // letters < cap
        if (alphabet_.is_finite()) hi = std::min<Letter>(hi, alphabet_.size() - 1);
        std::deque<FinSeq> level;
        for (Letter x = 0; x <= hi && out.size() < limit; ++x) {
            level.push_back(FinSeq({x}));
            out.push_back(Condition::seq(level.back()));
        }
        while (out.size() < limit && !level.empty()) {
            std::deque<FinSeq> next;
            for (const FinSeq& u : level) {
                for (Letter x = 0; x <= hi; ++x) {
                    next.push_back(u.append(x));
                    if (out.size() < limit) out.push_back(Condition::seq(next.back()));
                }
            }
            if (next.empty()) break;
            level = std::move(next);
        }
        return out;
    }
    bool extension_satisfies(const FinSeq& u, const Condition& b, std::size_t,
                             Letter) const override {
        // some extension of u extends b iff u and b are compatible
        return u.compatible_with(b.as_seq());
    }

private:
    Letter enum_cap_;
    Alphabet alphabet_;
};

class FirstLetterAbove final : public ConditionSet {
public:
    FirstLetterAbove() : alphabet_(Alphabet::omega()) {}
    std::string name() const override { return "ex63"; }
    const Alphabet& alphabet() const override { return alphabet_; }

    bool satisfies(const FinSeq& u, const Condition& b) const override {
        require_nonempty(u);
        return u.front() > b.as_nat();
    }
    unsigned rank(const Condition&) const override { return 0; }
    Condition distinguisher(Letter x) const override { return Condition::nat(x); }
    std::optional<Condition> reduce(const Condition&, const FinSeq&) const override {
        return std::nullopt; // the trigger case cannot occur
    }
    std::vector<Condition> enumerate_conditions(std::size_t limit) const override {
        std::vector<Condition> out;
        for (std::uint64_t b = 0; b < limit; ++b) out.push_back(Condition::nat(b));
        return out;
    }
    bool extension_satisfies(const FinSeq& u, const Condition& b, std::size_t,
                             Letter) const override {
        return u.front() > b.as_nat();
    }

private:
    Alphabet alphabet_;
};

class TableConditionSet final : public ConditionSet {
public:
    TableConditionSet(Alphabet a, std::map<Condition, std::vector<FinSeq>> sat,
                      std::map<Condition, unsigned> ranks)
        : alphabet_(a), sat_(std::move(sat)), ranks_(std::move(ranks)) {}

    std::string name() const override { return "table"; }
    const Alphabet& alphabet() const override { return alphabet_; }
    bool exact() const override { return false; }

    bool satisfies(const FinSeq& u, const Condition& b) const override {
        require_nonempty(u);
        auto it = sat_.find(b);
        if (it == sat_.end()) return false;
        return std::binary_search(it->second.begin(), it->second.end(), u);
    }
    unsigned rank(const Condition& b) const override {
        auto it = ranks_.find(b);
        return it == ranks_.end() ? 0 : it->second;
    }
    Condition distinguisher(Letter x) const override {
        for (const auto& [b, us] : sat_) {
            bool ok = true;
            for (const FinSeq& u : us)
                if (u.front() == x) { ok = false; break; }
            if (ok) return b;
        }
        // no listed condition avoids x; surfaced by the validator as an
        // axiom-2 violation
        if (sat_.empty()) throw input_error("table condition set has no conditions");
        return sat_.begin()->first;
    }
    std::optional<Condition> reduce(const Condition& b, const FinSeq& u) const override {
        auto it = sat_.find(b);
        if (it == sat_.end()) return std::nullopt;
        const unsigned rb = rank(b);
        for (const auto& [cand, us] : sat_) {
            if (rank(cand) >= rb) continue;
            bool matches = true;
            // cand must agree with "w satisfies cand <=> u + w satisfies b"
            // on every listed sequence of either condition
            for (const FinSeq& w : us)
                if (!satisfies(u.concat(w), b)) { matches = false; break; }
            if (matches)
                for (const FinSeq& v : it->second)
                    if (u.is_prefix_of(v) && v.size() > u.size() &&
                        !satisfies(v.suffix_from(u.size()), cand)) {
                        matches = false;
                        break;
                    }
            if (matches) return cand;
        }
        return std::nullopt;
    }
    std::vector<Condition> enumerate_conditions(std::size_t limit) const override {
        std::vector<Condition> out;
        for (const auto& [b, us] : sat_) {
            if (out.size() >= limit) break;
            out.push_back(b);
        }
        return out;
    }
    bool extension_satisfies(const FinSeq& u, const Condition& b, std::size_t ext_depth,
                             Letter) const override {
        auto it = sat_.find(b);
        if (it == sat_.end()) return false;
        for (const FinSeq& v : it->second)
            if (u.is_prefix_of(v) && v.size() <= u.size() + ext_depth) return true;
        // monotonicity: a listed satisfier that is a prefix of u also works
        for (const FinSeq& v : it->second)
            if (v.is_prefix_of(u)) return true;
        return false;
    }

private:
    Alphabet alphabet_;
    std::map<Condition, std::vector<FinSeq>> sat_; // sorted satisfier lists
    std::map<Condition, unsigned> ranks_;
};

} // namespace

bool ConditionSet::extension_satisfies(const FinSeq& u, const Condition& b,
                                       std::size_t ext_depth, Letter letter_cap) const {
    if (satisfies(u, b)) return true;
    std::deque<FinSeq> frontier{u};
    for (std::size_t d = 0; d < ext_depth && !frontier.empty(); ++d) {
        std::deque<FinSeq> next;
        for (const FinSeq& v : frontier)
            for (Letter x = 0; x <= letter_cap; ++x) {
                if (!alphabet().contains(x)) break;
                FinSeq w = v.append(x);
                if (satisfies(w, b)) return true;
                next.push_back(std::move(w));
            }
        frontier = std::move(next);
    }
    return false;
}

ConditionSetPtr make_first_letter_is() { return std::make_shared<FirstLetterIs>(); }

ConditionSetPtr make_prefix_condition(Letter enum_letter_cap, Alphabet alphabet) {
    return std::make_shared<PrefixCondition>(enum_letter_cap, alphabet);
}

ConditionSetPtr make_first_letter_above() { return std::make_shared<FirstLetterAbove>(); }

ConditionSetPtr make_condition_set(const std::string& selector, Letter letter_cap) {
    if (selector == "ex61") return make_first_letter_is();
    if (selector == "ex62") return make_prefix_condition(letter_cap);
    if (selector == "ex63") return make_first_letter_above();
    throw input_error("unknown condition set selector '" + selector +
                      "' (expected ex61, ex62, ex63, or a table file)");
}

ConditionSetPtr make_table_condition_set(const std::string& json_text) {
    using nlohmann::json;
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw input_error(std::string("bad table json: ") + e.what());
    }
    try {
        Alphabet a = Alphabet::omega();
        if (j.contains("alphabet") && j["alphabet"].at("kind") == "finite")
            a = Alphabet::finite(j["alphabet"].at("size").get<std::uint32_t>());
        auto parse_cond = [](const json& jb) {
            if (jb.is_number_unsigned() || jb.is_number_integer())
                return Condition::nat(jb.get<std::uint64_t>());
            return Condition::seq(FinSeq(jb.get<std::vector<Letter>>()));
        };
        std::map<Condition, std::vector<FinSeq>> sat;
        for (const auto& entry : j.at("pairs")) {
            FinSeq u(entry.at(0).get<std::vector<Letter>>());
            if (u.empty()) throw input_error("table pair with empty sequence");
            Condition b = parse_cond(entry.at(1));
            bool value = entry.at(2).get<bool>();
            auto& us = sat[b]; // ensure b exists even if only negatives are listed
            if (value) us.push_back(u);
        }
        for (auto& [b, us] : sat) std::sort(us.begin(), us.end());
        std::map<Condition, unsigned> ranks;
        if (j.contains("ranks"))
            for (const auto& [key, val] : j["ranks"].items()) {
                Condition b = key.find(',') != std::string::npos || key.find('(') == 0
                                  ? Condition::seq(FinSeq::parse(key))
                                  : Condition::nat(std::stoull(key));
                ranks[b] = val.get<unsigned>();
            }
        return std::make_shared<TableConditionSet>(a, std::move(sat), std::move(ranks));
    } catch (const json::exception& e) {
        throw input_error(std::string("bad table json: ") + e.what());
    }
}

ValidationReport validate_axioms(const ConditionSet& cs, const ValidationBudget& budget) {
    ValidationReport report;
    report.budget = budget;
    const SamplePool pool = build_pool(cs.alphabet(), budget.max_len, budget.letter_cap);
    const auto conds = cs.enumerate_conditions(budget.cond_limit);

    for (const Condition& b : conds) {
        std::vector<char> sat(pool.seqs.size());
        for (std::size_t i = 0; i < pool.seqs.size(); ++i)
            sat[i] = cs.satisfies(pool.seqs[i], b);

        // 1) monotonicity; a violating adjacent pair witnesses any violating pair
        for (std::size_t i = 0; i < pool.seqs.size(); ++i) {
            if (pool.parent[i] < 0) continue;
            const std::size_t p = static_cast<std::size_t>(pool.parent[i]);
            if (sat[p] && !sat[i]) {
                report.violations.push_back(
                    {1, "monotonicity: " + pool.seqs[p].to_string() + " satisfies " +
                            b.to_string() + " but extension " + pool.seqs[i].to_string() +
                            " does not"});
                break;
            }
        }

        // 3) reducibility at every triggering (u, b): u unsatisfied with a
        // satisfied strict extension in the pool
        std::vector<char> ext_sat(pool.seqs.size(), 0);
        for (std::size_t i = pool.seqs.size(); i-- > 0;) {
            if (pool.parent[i] < 0) continue;
            const std::size_t p = static_cast<std::size_t>(pool.parent[i]);
            if (sat[i] || ext_sat[i]) ext_sat[p] = 1;
        }
        for (std::size_t i = 0; i < pool.seqs.size(); ++i) {
            if (sat[i] || !ext_sat[i]) continue;
            const FinSeq& u = pool.seqs[i];
            auto reduced = cs.reduce(b, u);
            if (!reduced) {
                report.violations.push_back(
                    {3, "reducibility: no reduction of " + b.to_string() + " by " +
                            u.to_string() + " although a satisfying extension exists"});
                break;
            }
            if (cs.rank(*reduced) >= cs.rank(b)) {
                report.violations.push_back(
                    {3, "reducibility: rank did not decrease reducing " + b.to_string() +
                            " by " + u.to_string()});
                break;
            }
            bool bad = false;
            for (std::size_t w = 0; w < pool.seqs.size() && !bad; ++w) {
                if (pool.seqs[w].size() + u.size() > budget.max_len) continue;
                if (cs.satisfies(pool.seqs[w], *reduced) !=
                    cs.satisfies(u.concat(pool.seqs[w]), b)) {
                    report.violations.push_back(
                        {3, "reducibility: reduction of " + b.to_string() + " by " +
                                u.to_string() + " disagrees at " + pool.seqs[w].to_string()});
                    bad = true;
                }
            }
            if (bad) break;
        }
    }

    // 2) distinguishability per letter
    Letter hi = budget.letter_cap;
    if (cs.alphabet().is_finite()) hi = std::min<Letter>(hi, cs.alphabet().size() - 1);
    for (Letter x = 0; x <= hi; ++x) {
        Condition bx = cs.distinguisher(x);
        for (std::size_t i = 0; i < pool.seqs.size(); ++i) {
            if (pool.seqs[i].front() == x && cs.satisfies(pool.seqs[i], bx)) {
                report.violations.push_back(
                    {2, "distinguishability: distinguisher(" + std::to_string(x) + ") = " +
                            bx.to_string() + " is satisfied by " + pool.seqs[i].to_string()});
                break;
            }
        }
    }

    return report;
}

std::optional<std::pair<Condition, Condition>>
find_and_closure_gap(const ConditionSet& cs, const ValidationBudget& budget) {
    const SamplePool pool = build_pool(cs.alphabet(), budget.max_len, budget.letter_cap);
    const auto conds = cs.enumerate_conditions(budget.cond_limit);
    for (const Condition& b0 : conds)
        for (const Condition& b1 : conds) {
            bool found = false;
            for (const Condition& c : conds) {
                bool agrees = true;
                for (const FinSeq& u : pool.seqs)
                    if ((cs.satisfies(u, b0) && cs.satisfies(u, b1)) != cs.satisfies(u, c)) {
                        agrees = false;
                        break;
                    }
                if (agrees) { found = true; break; }
            }
            if (!found) return std::make_pair(b0, b1);
        }
    return std::nullopt;
}

std::string ValidationReport::to_string() const {
    std::string out = "budget max_len=" + std::to_string(budget.max_len) +
                      " letter_cap=" + std::to_string(budget.letter_cap) +
                      " cond_limit=" + std::to_string(budget.cond_limit) + "\n";
    if (violations.empty()) return out + "no violations\n";
    for (const auto& v : violations)
        out += "axiom " + std::to_string(v.axiom) + ": " + v.detail + "\n";
    return out;
}

} // namespace baire
