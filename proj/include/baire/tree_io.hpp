#pragma once

#include <string>
#include <vector>

#include "baire/regular_tree.hpp"

namespace baire {

// A regular tree plus optional stem anchors. Plain trees have no stems;
// decomposition pieces use stems to anchor the subtree at the nodes where a
// branch enters the removed part (the piece's node set is {stem + w}).
struct ParsedTree {
    RegularTree tree = RegularTree::empty(Alphabet::omega());
    std::vector<FinSeq> stems;
};

// Line-oriented text format:
//   # comment
//   alphabet omega | alphabet finite <n>
//   empty                      (zero-state tree; no start/edge lines)
//   start <id>
//   edge <src> set{a,b}|all|above(k) <dst>
//   stem <comma letters>       (optional, repeatable; "stem ()" is the empty stem)
ParsedTree parse_tree_text(const std::string& text);
std::string serialize_tree_text(const RegularTree& tree,
                                const std::vector<FinSeq>& stems = {});

// JSON mirror: {alphabet:{kind,size?}, start, edges:[{src,spec,dst}], stems?}.
ParsedTree parse_tree_json(const std::string& text);
std::string serialize_tree_json(const RegularTree& tree,
                                const std::vector<FinSeq>& stems = {});

std::string tree_to_dot(const RegularTree& tree, const std::string& name = "tree");

// Dispatches on a leading '{' (JSON) versus the text format.
ParsedTree parse_tree_auto(const std::string& text);
ParsedTree load_tree_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace baire
