#include "baire/bperfect.hpp"

#include <json.hpp>

namespace baire {

std::string BPerfectTree::to_json() const {
    nlohmann::json j;
    j["vertices"] = nlohmann::json::array();
    for (const Vertex& v : vertices_)
        j["vertices"].push_back({{"label", v.label.letters()},
                                 {"children", v.children},
                                 {"frontier", v.frontier}});
    return j.dump(2) + "\n";
}

BPerfectTree BPerfectTree::from_json(const std::string& text) {
    using nlohmann::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw input_error(std::string("bad bperfect json: ") + e.what());
    }
    try {
        const auto& jverts = j.at("vertices");
        if (jverts.empty()) throw input_error("bperfect tree needs a root vertex");
        BPerfectTree out;
        out.vertices_.clear();
        for (const auto& jv : jverts) {
            Vertex v;
            v.label = FinSeq(jv.at("label").get<std::vector<Letter>>());
            v.children = jv.at("children").get<std::vector<std::uint32_t>>();
            v.frontier = jv.value("frontier", false);
            out.vertices_.push_back(std::move(v));
        }
        if (!out.vertices_[0].label.empty())
            throw input_error("root vertex label must be empty");
        for (std::size_t i = 1; i < out.vertices_.size(); ++i)
            if (out.vertices_[i].label.empty())
                throw input_error("non-root vertex with empty label");
        for (const Vertex& v : out.vertices_)
            for (auto c : v.children)
                if (c == 0 || c >= out.vertices_.size())
                    throw input_error("bad child link in bperfect tree");
        return out;
    } catch (const json::exception& e) {
        throw input_error(std::string("bad bperfect json: ") + e.what());
    }
}

BPerfectReport validate_bperfect(const BPerfectTree& j, const ConditionSet& cs,
                                 const BPerfectBudget& budget) {
    BPerfectReport report;
    const auto conds = cs.enumerate_conditions(budget.cond_limit);
    for (std::uint32_t id = 0; id < j.size(); ++id) {
        const auto& v = j.vertex(id);
        if (v.frontier) {
            ++report.frontier_count;
            if (!v.children.empty())
                report.findings.push_back("vertex " + std::to_string(id) +
                                          " is marked frontier but has children");
            continue;
        }
        if (v.children.empty()) {
            report.findings.push_back("vertex " + std::to_string(id) +
                                      " is a stored leaf without a frontier marker");
            continue;
        }
        for (std::size_t a = 0; a < v.children.size(); ++a)
            for (std::size_t b = a + 1; b < v.children.size(); ++b) {
                const FinSeq& u = j.vertex(v.children[a]).label;
                const FinSeq& w = j.vertex(v.children[b]).label;
                if (u.compatible_with(w))
                    report.findings.push_back("siblings " + u.to_string() + " and " +
                                              w.to_string() + " under vertex " +
                                              std::to_string(id) + " are compatible");
            }
        for (const Condition& b : conds) {
            bool served = false;
            for (auto c : v.children)
                if (cs.extension_satisfies(j.vertex(c).label, b, budget.ext_depth,
                                           budget.letter_cap)) {
                    served = true;
                    break;
                }
            if (!served)
                report.findings.push_back("no child of vertex " + std::to_string(id) +
                                          " has an extension satisfying " + b.to_string());
        }
    }
    return report;
}

namespace {

bool member_rec(const BPerfectTree& j, std::uint32_t id, const FinSeq& u, std::size_t pos,
                SegmentationResult& out) {
    if (pos == u.size()) return true;
    const auto& v = j.vertex(id);
    if (v.children.empty()) {
        if (v.frontier) {
            out.via_frontier = true;
            return true;
        }
        return false;
    }
    const FinSeq rest = u.suffix_from(pos);
    for (auto c : v.children) {
        const FinSeq& w = j.vertex(c).label;
        if (w.is_prefix_of(rest)) {
            out.segments.push_back(w);
            if (member_rec(j, c, u, pos + w.size(), out)) return true;
            out.segments.pop_back();
            // incompatible siblings: no other child can match
            return false;
        }
        if (rest.is_prefix_of(w)) {
            out.segments.push_back(w);
            return true;
        }
    }
    return false;
}

} // namespace

SegmentationResult bperfect_prefix_member(const BPerfectTree& j, const FinSeq& u) {
    SegmentationResult out;
    out.member = member_rec(j, j.root(), u, 0, out);
    if (!out.member) {
        out.segments.clear();
        out.via_frontier = false;
    }
    return out;
}

std::string BPerfectReport::to_string() const {
    std::string out = "trusted frontier vertices: " + std::to_string(frontier_count) + "\n";
    if (findings.empty()) return out + "no findings\n";
    for (const auto& f : findings) out += f + "\n";
    return out;
}

} // namespace baire
