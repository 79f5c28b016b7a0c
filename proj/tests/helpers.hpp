#pragma once

#include <cstdint>
#include <vector>

#include "baire/regular_tree.hpp"

namespace testgen {

using namespace baire;

// splitmix64: platform-stable seeded randomness for corpora and golden files.
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        s += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
    bool chance(std::uint64_t pct) { return below(100) < pct; }
};

inline RegularTree full_omega() {
    std::vector<std::vector<Edge>> edges(1);
    edges[0].push_back({ChildSpec::all(), 0});
    return RegularTree::make(Alphabet::omega(), 0, std::move(edges));
}

inline RegularTree single_branch(Letter x, Alphabet a = Alphabet::omega()) {
    std::vector<std::vector<Edge>> edges(1);
    edges[0].push_back({ChildSpec::set({x}), 0});
    return RegularTree::make(a, 0, std::move(edges));
}

inline RegularTree zero_branch(Alphabet a = Alphabet::omega()) { return single_branch(0, a); }

inline RegularTree full_kary(Letter k, Alphabet a = Alphabet::omega()) {
    std::vector<Letter> letters;
    for (Letter x = 0; x < k; ++x) letters.push_back(x);
    std::vector<std::vector<Edge>> edges(1);
    edges[0].push_back({ChildSpec::set(std::move(letters)), 0});
    return RegularTree::make(a, 0, std::move(edges));
}

// root: letter 0 into a full omega subtree, letter 1 into the all-ones branch
inline RegularTree two_branch() {
    std::vector<std::vector<Edge>> edges(3);
    edges[0].push_back({ChildSpec::set({0}), 1});
    edges[0].push_back({ChildSpec::set({1}), 2});
    edges[1].push_back({ChildSpec::all(), 1});
    edges[2].push_back({ChildSpec::set({1}), 2});
    return RegularTree::make(Alphabet::omega(), 0, std::move(edges));
}

// Random canonical tree over omega with small letters; retries until the
// pruned result is non-empty.
inline RegularTree random_tree(std::uint64_t seed, std::size_t max_states = 6,
                               Letter max_letter = 3, bool allow_infinite = true) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        Rng rng(seed * 0x10001 + attempt);
        const std::size_t n = 1 + rng.below(max_states);
        std::vector<std::vector<Edge>> edges(n);
        for (std::size_t s = 0; s < n; ++s) {
            const std::uint64_t roll = rng.below(10);
            if (allow_infinite && roll == 0) {
                edges[s].push_back({ChildSpec::all(), static_cast<StateId>(rng.below(n))});
            } else if (allow_infinite && roll <= 2) {
                const Letter k = static_cast<Letter>(rng.below(max_letter + 1));
                edges[s].push_back(
                    {ChildSpec::above(k), static_cast<StateId>(rng.below(n))});
                // optional finite edges below the bound
                std::vector<Letter> below;
                for (Letter x = 0; x < k; ++x)
                    if (rng.chance(40)) below.push_back(x);
                if (!below.empty())
                    edges[s].push_back(
                        {ChildSpec::set(below), static_cast<StateId>(rng.below(n))});
            } else {
                // 1..3 disjoint finite sets
                std::vector<Letter> letters;
                for (Letter x = 0; x <= max_letter; ++x)
                    if (rng.chance(45)) letters.push_back(x);
                if (letters.empty()) letters.push_back(static_cast<Letter>(rng.below(max_letter + 1)));
                const std::size_t groups = 1 + rng.below(std::min<std::size_t>(letters.size(), 3));
                std::vector<std::vector<Letter>> parts(groups);
                for (std::size_t i = 0; i < letters.size(); ++i)
                    parts[rng.below(groups)].push_back(letters[i]);
                for (auto& part : parts)
                    if (!part.empty())
                        edges[s].push_back(
                            {ChildSpec::set(part), static_cast<StateId>(rng.below(n))});
            }
        }
        RegularTree t = RegularTree::from_subgraph(Alphabet::omega(), edges,
                                                   std::vector<char>(n, 1), 0);
        if (!t.is_empty()) return t;
    }
}

} // namespace testgen
