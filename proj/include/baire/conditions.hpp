#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "baire/alphabet.hpp"
#include "baire/errors.hpp"
#include "baire/fin_seq.hpp"

namespace baire {

// A condition an opponent can impose on the continuation of a play. The
// payload is meaningful only to its condition set: a bit, a natural number,
// or a finite sequence.
class Condition {
public:
    static Condition nat(std::uint64_t n) { return Condition(n); }
    static Condition seq(FinSeq u) {
        if (u.empty()) throw input_error("sequence condition payload must be non-empty");
        return Condition(std::move(u));
    }

    bool is_nat() const { return std::holds_alternative<std::uint64_t>(payload_); }
    std::uint64_t as_nat() const { return std::get<std::uint64_t>(payload_); }
    const FinSeq& as_seq() const { return std::get<FinSeq>(payload_); }

    std::string to_string() const {
        if (is_nat()) return std::to_string(as_nat());
        return "(" + as_seq().to_string() + ")";
    }

    friend bool operator==(const Condition&, const Condition&) = default;
    friend bool operator<(const Condition& a, const Condition& b) {
        if (a.is_nat() != b.is_nat()) return a.is_nat();
        if (a.is_nat()) return a.as_nat() < b.as_nat();
        return llex_less(a.as_seq(), b.as_seq());
    }

private:
    explicit Condition(std::uint64_t n) : payload_(n) {}
    explicit Condition(FinSeq u) : payload_(std::move(u)) {}
    std::variant<std::uint64_t, FinSeq> payload_;
};

// The pair (conditions, satisfaction) with rank, distinguisher and reducer
// hooks. Instances must obey, on bounded samples: monotonicity of
// satisfaction under extension, a distinguishing condition per letter, and
// rank-decreasing reducibility.
class ConditionSet {
public:
    virtual ~ConditionSet() = default;

    virtual std::string name() const = 0;
    virtual const Alphabet& alphabet() const = 0;
    // Table-backed sets are bounded-only and refused by exact checkers.
    virtual bool exact() const { return true; }

    // u must be non-empty.
    virtual bool satisfies(const FinSeq& u, const Condition& b) const = 0;
    virtual unsigned rank(const Condition& b) const = 0;
    // Some b with: satisfies(u, b) implies u(0) != x.
    virtual Condition distinguisher(Letter x) const = 0;
    // When u does not satisfy b but some extension of u does, returns b' of
    // strictly smaller rank with satisfies(w, b') <=> satisfies(u + w, b).
    virtual std::optional<Condition> reduce(const Condition& b, const FinSeq& u) const = 0;
    // Deterministic injective enumeration prefix, length-then-lex where
    // applicable.
    virtual std::vector<Condition> enumerate_conditions(std::size_t limit) const = 0;

    // Is there an extension u' of u (free in the sequence space, not confined
    // to any tree) with u' satisfying b? Exact for the canonical instances;
    // bounded search elsewhere.
    virtual bool extension_satisfies(const FinSeq& u, const Condition& b,
                                     std::size_t ext_depth, Letter letter_cap) const;

    void require_nonempty(const FinSeq& u) const {
        if (u.empty()) throw input_error("satisfaction is defined on non-empty sequences only");
    }
};

using ConditionSetPtr = std::shared_ptr<const ConditionSet>;

// satisfies(u, b) <=> u(0) = b, over the two-letter alphabet. Rank 0.
ConditionSetPtr make_first_letter_is();
// satisfies(u, b) <=> b is a prefix of u. Rank = length of b. The letter cap
// bounds the enumeration of sequence conditions.
ConditionSetPtr make_prefix_condition(Letter enum_letter_cap, Alphabet alphabet = Alphabet::omega());
// satisfies(u, b) <=> u(0) > b, over omega. Rank 0.
ConditionSetPtr make_first_letter_above();

// CLI selectors: ex61, ex62, ex63.
ConditionSetPtr make_condition_set(const std::string& selector, Letter letter_cap = 8);

// Bounded-only set given by explicit (u, b, value) entries; absent pairs are
// unsatisfied. JSON: {alphabet, pairs:[[ [letters], b, bool ]], ranks:{key:n}}.
ConditionSetPtr make_table_condition_set(const std::string& json_text);

struct ValidationBudget {
    std::size_t max_len = 4;
    Letter letter_cap = 3;
    std::size_t cond_limit = 8;
};

struct AxiomViolation {
    int axiom = 0; // 1 monotonicity, 2 distinguishability, 3 reducibility
    std::string detail;
};

struct ValidationReport {
    ValidationBudget budget;
    std::vector<AxiomViolation> violations;
    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

// Exhaustive within the budget; violations are findings, not errors.
ValidationReport validate_axioms(const ConditionSet& cs, const ValidationBudget& budget);

// Bounded probe of closure under conjunction: returns a pair (b0, b1) for
// which no enumerated condition matches their conjunction on the sampled
// sequences, or nothing when every pair has one.
std::optional<std::pair<Condition, Condition>>
find_and_closure_gap(const ConditionSet& cs, const ValidationBudget& budget);

} // namespace baire
