#include "baire/tree_io.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

namespace baire {

namespace {

using nlohmann::json;

std::vector<std::string> split_ws(const std::string& line, std::vector<int>& cols) {
    std::vector<std::string> toks;
    cols.clear();
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i >= line.size()) break;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        toks.push_back(line.substr(i, j - i));
        cols.push_back(static_cast<int>(i) + 1);
        i = j;
    }
    return toks;
}

StateId parse_state_id(const std::string& tok, int line, int col) {
    for (char c : tok)
        if (c < '0' || c > '9') throw parse_error("bad state id '" + tok + "'", line, col);
    return static_cast<StateId>(std::stoul(tok));
}

} // namespace

ParsedTree parse_tree_text(const std::string& text) {
    std::optional<Alphabet> alphabet;
    std::optional<StateId> start;
    bool empty_marker = false;
    struct RawEdge { StateId src; ChildSpec spec; StateId dst; };
    std::vector<RawEdge> raw;
    std::vector<FinSeq> stems;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::vector<int> cols;
        auto toks = split_ws(line, cols);
        if (toks.empty()) continue;
        const std::string& kw = toks[0];
        if (kw == "alphabet") {
            if (toks.size() >= 2 && toks[1] == "omega") {
                alphabet = Alphabet::omega();
            } else if (toks.size() >= 3 && toks[1] == "finite") {
                alphabet = Alphabet::finite(
                    parse_state_id(toks[2], lineno, cols[2]));
            } else {
                throw parse_error("expected 'alphabet omega' or 'alphabet finite <n>'",
                                  lineno, cols.size() > 1 ? cols[1] : 1);
            }
        } else if (kw == "empty") {
            empty_marker = true;
        } else if (kw == "start") {
            if (toks.size() < 2) throw parse_error("start needs a state id", lineno, cols[0]);
            start = parse_state_id(toks[1], lineno, cols[1]);
        } else if (kw == "edge") {
            if (toks.size() < 4) throw parse_error("edge needs <src> <spec> <dst>", lineno, cols[0]);
            StateId src = parse_state_id(toks[1], lineno, cols[1]);
            ChildSpec spec = ChildSpec::all();
            try {
                spec = ChildSpec::parse(toks[2]);
            } catch (const input_error& e) {
                throw parse_error(e.what(), lineno, cols[2]);
            }
            StateId dst = parse_state_id(toks[3], lineno, cols[3]);
            raw.push_back({src, spec, dst});
        } else if (kw == "stem") {
            if (toks.size() < 2) throw parse_error("stem needs a letter list or ()", lineno, cols[0]);
            try {
                stems.push_back(FinSeq::parse(toks[1]));
            } catch (const input_error& e) {
                throw parse_error(e.what(), lineno, cols[1]);
            }
        } else {
            throw parse_error("unknown keyword '" + kw + "'", lineno, cols[0]);
        }
    }

    if (!alphabet) throw parse_error("missing 'alphabet' line", lineno + 1, 1);
    ParsedTree out;
    out.stems = std::move(stems);
    if (empty_marker || (!start && raw.empty())) {
        out.tree = RegularTree::empty(*alphabet);
        return out;
    }
    if (!start) throw parse_error("missing 'start' line", lineno + 1, 1);
    StateId max_id = *start;
    for (const auto& e : raw) max_id = std::max({max_id, e.src, e.dst});
    std::vector<std::vector<Edge>> edges(max_id + 1);
    for (const auto& e : raw) edges[e.src].push_back({e.spec, e.dst});
    try {
        out.tree = RegularTree::make(*alphabet, *start, std::move(edges));
    } catch (const input_error& e) {
        throw parse_error(e.what(), lineno + 1, 1);
    }
    return out;
}

std::string serialize_tree_text(const RegularTree& tree, const std::vector<FinSeq>& stems) {
    std::string out = "alphabet " + tree.alphabet().to_string() + "\n";
    if (tree.is_empty()) {
        out += "empty\n";
    } else {
        out += "start " + std::to_string(tree.start()) + "\n";
        for (StateId s = 0; s < tree.state_count(); ++s)
            for (const Edge& e : tree.edges(s))
                out += "edge " + std::to_string(s) + " " + e.spec.to_string() + " " +
                       std::to_string(e.dst) + "\n";
    }
    for (const FinSeq& stem : stems) out += "stem " + stem.to_string() + "\n";
    return out;
}

ParsedTree parse_tree_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw parse_error(std::string("bad json: ") + e.what(), 1, 1);
    }
    try {
        Alphabet alphabet = Alphabet::omega();
        const auto& ja = j.at("alphabet");
        if (ja.at("kind") == "finite")
            alphabet = Alphabet::finite(ja.at("size").get<std::uint32_t>());
        ParsedTree out;
        if (j.contains("stems"))
            for (const auto& js : j["stems"])
                out.stems.push_back(FinSeq(js.get<std::vector<Letter>>()));
        if (j.value("empty", false) || !j.contains("start")) {
            out.tree = RegularTree::empty(alphabet);
            return out;
        }
        StateId start = j.at("start").get<StateId>();
        StateId max_id = start;
        struct RawEdge { StateId src; ChildSpec spec; StateId dst; };
        std::vector<RawEdge> raw;
        for (const auto& je : j.at("edges")) {
            RawEdge e{je.at("src").get<StateId>(),
                      ChildSpec::parse(je.at("spec").get<std::string>()),
                      je.at("dst").get<StateId>()};
            max_id = std::max({max_id, e.src, e.dst});
            raw.push_back(e);
        }
        std::vector<std::vector<Edge>> edges(max_id + 1);
        for (const auto& e : raw) edges[e.src].push_back({e.spec, e.dst});
        out.tree = RegularTree::make(alphabet, start, std::move(edges));
        return out;
    } catch (const json::exception& e) {
        throw parse_error(std::string("bad tree json: ") + e.what(), 1, 1);
    } catch (const parse_error&) {
        throw;
    } catch (const input_error& e) {
        throw parse_error(e.what(), 1, 1);
    }
}

std::string serialize_tree_json(const RegularTree& tree, const std::vector<FinSeq>& stems) {
    json j;
    if (tree.alphabet().is_finite())
        j["alphabet"] = {{"kind", "finite"}, {"size", tree.alphabet().size()}};
    else
        j["alphabet"] = {{"kind", "omega"}};
    if (tree.is_empty()) {
        j["empty"] = true;
    } else {
        j["start"] = tree.start();
        j["edges"] = json::array();
        for (StateId s = 0; s < tree.state_count(); ++s)
            for (const Edge& e : tree.edges(s))
                j["edges"].push_back({{"src", s}, {"spec", e.spec.to_string()}, {"dst", e.dst}});
    }
    if (!stems.empty()) {
        j["stems"] = json::array();
        for (const FinSeq& stem : stems) j["stems"].push_back(stem.letters());
    }
    return j.dump(2) + "\n";
}

std::string tree_to_dot(const RegularTree& tree, const std::string& name) {
    std::string out = "digraph " + name + " {\n  rankdir=LR;\n  node [shape=circle];\n";
    if (tree.is_empty()) {
        out += "  empty [shape=plaintext, label=\"(empty)\"];\n";
    } else {
        for (StateId s = 0; s < tree.state_count(); ++s) {
            out += "  s" + std::to_string(s) + " [label=\"" + std::to_string(s) + "\"";
            if (s == tree.start()) out += ", shape=doublecircle";
            out += "];\n";
        }
        for (StateId s = 0; s < tree.state_count(); ++s)
            for (const Edge& e : tree.edges(s)) {
                out += "  s" + std::to_string(s) + " -> s" + std::to_string(e.dst) +
                       " [label=\"" + e.spec.to_string() + "\"";
                if (e.spec.infinite_under(tree.alphabet()))
                    out += ", arrowhead=normalnormal";
                out += "];\n";
            }
    }
    out += "}\n";
    return out;
}

ParsedTree parse_tree_auto(const std::string& text) {
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
        return c == '{' ? parse_tree_json(text) : parse_tree_text(text);
    }
    throw parse_error("empty tree file", 1, 1);
}

ParsedTree load_tree_file(const std::string& path) {
    return parse_tree_auto(read_text_file(path));
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write '" + path + "'");
    out << content;
    if (!out) throw io_error("write failed for '" + path + "'");
}

} // namespace baire
