#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "baire/conditions.hpp"
#include "baire/fin_seq.hpp"

namespace baire {

// Explicitly stored tree on finite sequences: vertices are tuples of
// non-empty sequences, the root is the empty tuple. Frontier leaves are
// trusted extensible and exempt from density checks.
class BPerfectTree {
public:
    struct Vertex {
        FinSeq label;                        // empty only at the root
        std::vector<std::uint32_t> children; // kept in length-then-lex label order
        bool frontier = false;
    };

    BPerfectTree() { vertices_.push_back({}); }

    std::uint32_t root() const { return 0; }
    std::size_t size() const { return vertices_.size(); }
    const Vertex& vertex(std::uint32_t id) const { return vertices_[id]; }

    std::uint32_t add_child(std::uint32_t parent, FinSeq label) {
        if (label.empty()) throw input_error("child labels must be non-empty");
        const auto id = static_cast<std::uint32_t>(vertices_.size());
        vertices_.push_back({std::move(label), {}, false});
        auto& siblings = vertices_[parent].children;
        auto it = siblings.begin();
        while (it != siblings.end() &&
               llex_less(vertices_[*it].label, vertices_.back().label))
            ++it;
        siblings.insert(it, id);
        return id;
    }
    void mark_frontier(std::uint32_t id) { vertices_[id].frontier = true; }

    std::string to_json() const;
    static BPerfectTree from_json(const std::string& text);

private:
    std::vector<Vertex> vertices_;
};

struct BPerfectBudget {
    std::size_t cond_limit = 8;
    std::size_t ext_depth = 4;
    Letter letter_cap = 8;
};

struct BPerfectReport {
    std::vector<std::string> findings;
    std::size_t frontier_count = 0; // trusted, excluded from density checks
    bool ok() const { return findings.empty(); }
    std::string to_string() const;
};

// Checks sibling incompatibility, density of every stored non-frontier
// vertex's child labels against the enumerated conditions, and that no
// stored non-frontier vertex is childless.
BPerfectReport validate_bperfect(const BPerfectTree& j, const ConditionSet& cs,
                                 const BPerfectBudget& budget);

struct SegmentationResult {
    bool member = false;
    std::vector<FinSeq> segments; // labels of the unique covering path
    bool via_frontier = false;    // membership rests on a trusted frontier leaf
};

// Is u a prefix of some concatenation of labels along a stored path?
// Sibling incompatibility makes the covering path unique.
SegmentationResult bperfect_prefix_member(const BPerfectTree& j, const FinSeq& u);

} // namespace baire
