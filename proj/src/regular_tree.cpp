#include "baire/regular_tree.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace baire {

namespace {

void sort_edges(std::vector<std::vector<Edge>>& edges) {
    for (auto& es : edges)
        std::sort(es.begin(), es.end(), [](const Edge& a, const Edge& b) {
            return a.spec.min_letter() < b.spec.min_letter();
        });
}

std::vector<char> reachable_set(const std::vector<std::vector<Edge>>& edges, StateId start) {
    std::vector<char> seen(edges.size(), 0);
    std::deque<StateId> queue{start};
    seen[start] = 1;
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        for (const Edge& e : edges[s])
            if (!seen[e.dst]) {
                seen[e.dst] = 1;
                queue.push_back(e.dst);
            }
    }
    return seen;
}

} // namespace

RegularTree RegularTree::make(const Alphabet& a, StateId start,
                              std::vector<std::vector<Edge>> edges) {
    const std::size_t n = edges.size();
    if (n == 0) throw input_error("make() needs at least one state; use empty()");
    if (start >= n) throw input_error("start state out of range");
    for (StateId s = 0; s < n; ++s) {
        if (edges[s].empty())
            throw input_error("state " + std::to_string(s) + " has no outgoing edge");
        for (const Edge& e : edges[s]) {
            if (e.dst >= n)
                throw input_error("edge target out of range at state " + std::to_string(s));
            if (!e.spec.valid_for(a))
                throw input_error("spec " + e.spec.to_string() +
                                  " invalid for alphabet " + a.to_string());
        }
        for (std::size_t i = 0; i < edges[s].size(); ++i)
            for (std::size_t j = i + 1; j < edges[s].size(); ++j)
                if (!edges[s][i].spec.disjoint_with(edges[s][j].spec))
                    throw input_error("overlapping child specs at state " + std::to_string(s));
    }
    const auto seen = reachable_set(edges, start);
    for (StateId s = 0; s < n; ++s)
        if (!seen[s])
            throw input_error("state " + std::to_string(s) + " unreachable from start");
    RegularTree t(a);
    t.start_ = start;
    t.edges_ = std::move(edges);
    sort_edges(t.edges_);
    return t;
}

RegularTree RegularTree::from_subgraph(const Alphabet& a,
                                       const std::vector<std::vector<Edge>>& edges,
                                       std::vector<char> alive, StateId start,
                                       bool cap_infinite, Letter cap) {
    const std::size_t n = edges.size();
    alive.resize(n, 0);

    // Cascade: a state whose every edge leads to a dead state dies too.
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
    if (start >= n || !alive[start]) return RegularTree::empty(a);

    // BFS renumbering over surviving states reachable from start.
    std::vector<StateId> old_to_new(n, 0);
    std::vector<char> numbered(n, 0);
    std::vector<StateId> order;
    std::deque<StateId> queue{start};
    numbered[start] = 1;
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        old_to_new[s] = static_cast<StateId>(order.size());
        order.push_back(s);
        for (const Edge& e : edges[s])
            if (alive[e.dst] && !numbered[e.dst]) {
                numbered[e.dst] = 1;
                queue.push_back(e.dst);
            }
    }

    RegularTree t(a);
    t.start_ = 0;
    t.edges_.resize(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (const Edge& e : edges[order[i]]) {
            if (!alive[e.dst]) continue;
            ChildSpec spec = e.spec;
            if (cap_infinite && spec.infinite_under(a))
                spec = ChildSpec::set(spec.sample_letters(cap));
            t.edges_[i].push_back({spec, old_to_new[e.dst]});
        }
    }
    sort_edges(t.edges_);
    return t;
}

std::optional<StateId> RegularTree::step(StateId s, Letter x) const {
    for (const Edge& e : edges_[s])
        if (e.spec.contains(x)) return e.dst;
    return std::nullopt;
}

std::optional<StateId> RegularTree::state_at(const FinSeq& u) const {
    if (!alphabet_.contains(u))
        throw input_error("sequence " + u.to_string() + " not over alphabet " +
                          alphabet_.to_string());
    if (is_empty()) return std::nullopt;
    StateId s = start_;
    for (Letter x : u.letters()) {
        auto next = step(s, x);
        if (!next) return std::nullopt;
        s = *next;
    }
    return s;
}

bool RegularTree::contains_prefix(const FinSeq& u) const {
    return state_at(u).has_value();
}

bool RegularTree::is_finitely_branching() const {
    for (const auto& es : edges_)
        for (const Edge& e : es)
            if (e.spec.infinite_under(alphabet_)) return false;
    return true;
}

std::vector<Letter> RegularTree::compact_bound_prefix(std::size_t depth) const {
    if (!is_finitely_branching())
        throw input_error("compact_bound_prefix requires a finitely branching tree");
    std::vector<Letter> bound(depth, 0);
    if (is_empty()) return bound;
    std::vector<char> level(state_count(), 0);
    level[start_] = 1;
    for (std::size_t n = 0; n < depth; ++n) {
        std::vector<char> next(state_count(), 0);
        Letter m = 0;
        for (StateId s = 0; s < state_count(); ++s) {
            if (!level[s]) continue;
            for (const Edge& e : edges_[s]) {
                m = std::max(m, e.spec.max_letter());
                next[e.dst] = 1;
            }
        }
        bound[n] = m;
        level = std::move(next);
    }
    return bound;
}

RegularTree RegularTree::restrict_to_states(const std::vector<char>& keep) const {
    if (is_empty()) return *this;
    return from_subgraph(alphabet_, edges_, keep, start_);
}

std::vector<FinSeq> RegularTree::enumerate_nodes(std::size_t depth,
                                                 std::optional<Letter> cap) const {
    if (has_infinite_spec() && !cap)
        throw input_error("enumeration over an infinite child spec needs a letter cap");
    std::vector<FinSeq> out;
    if (is_empty()) return out;
    out.emplace_back();
    std::vector<std::pair<FinSeq, StateId>> level{{FinSeq(), start_}};
    for (std::size_t d = 0; d < depth && !level.empty(); ++d) {
        std::vector<std::pair<FinSeq, StateId>> next;
        for (const auto& [u, s] : level) {
            for (const Edge& e : edges_[s]) {
                std::vector<Letter> xs = cap ? e.spec.sample_letters(*cap) : e.spec.letters();
                for (Letter x : xs) {
                    if (cap && x > *cap) continue;
                    next.emplace_back(u.append(x), e.dst);
                }
            }
        }
        std::sort(next.begin(), next.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& [u, s] : next) out.push_back(u);
        level = std::move(next);
    }
    return out;
}

bool RegularTree::has_infinite_spec() const { return !is_finitely_branching(); }

std::vector<char> RegularTree::sigma_states() const {
    std::vector<char> out(state_count(), 0);
    for (StateId s = 0; s < state_count(); ++s)
        for (const Edge& e : edges_[s])
            if (e.spec.infinite_under(alphabet_)) { out[s] = 1; break; }
    return out;
}

std::vector<char> RegularTree::states_reaching(const std::vector<char>& targets) const {
    // reverse closure over the state graph, self included
    std::vector<char> out = targets;
    out.resize(state_count(), 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (StateId s = 0; s < state_count(); ++s) {
            if (out[s]) continue;
            for (const Edge& e : edges_[s])
                if (out[e.dst]) {
                    out[s] = 1;
                    changed = true;
                    break;
                }
        }
    }
    return out;
}

} // namespace baire
