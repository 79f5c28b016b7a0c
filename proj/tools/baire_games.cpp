// Command-line front door: load trees and condition sets, run the checkers
// and the decomposition, play and solve games, export DOT.

#include <algorithm>
#include <filesystem>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "baire/games.hpp"
#include "baire/smallness.hpp"
#include "baire/tree_io.hpp"

using namespace baire;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitIo = 3;
constexpr int kExitFault = 4;

ConditionSetPtr load_condition_set(const std::string& selector, Letter letter_cap) {
    if (selector == "ex61" || selector == "ex62" || selector == "ex63")
        return make_condition_set(selector, letter_cap);
    // anything else names a table file
    return make_table_condition_set(read_text_file(selector));
}

// single-state tree accepting everything; fills the payoff slot of witness
// games, whose membership check runs on the pair stream instead
RegularTree full_tree_for(const Alphabet& a) {
    std::vector<std::vector<Edge>> edges(1);
    edges[0].push_back({ChildSpec::all(), 0});
    return RegularTree::make(a, 0, std::move(edges));
}

json witness_to_json(const NowhereDenseWitness& w) {
    json jw;
    jw["by_state"] = w.by_state;
    json conds = json::object();
    if (w.by_state)
        for (const auto& [s, b] : w.state_conditions) conds[std::to_string(s)] = b.to_string();
    else
        for (const auto& [u, b] : w.node_conditions) conds[u.to_string()] = b.to_string();
    jw["conditions"] = conds;
    return jw;
}

json piece_to_json(const TreePiece& piece) {
    json jp;
    jp["iteration"] = piece.iteration;
    jp["removed_state"] = piece.removed_state;
    jp["stems"] = json::array();
    for (const FinSeq& stem : piece.stems) jp["stems"].push_back(stem.letters());
    jp["tree"] = json::parse(serialize_tree_json(piece.tree));
    return jp;
}

struct CheckOptions {
    std::string tree_file;
    std::string what = "sigma-bounded";
    std::string cs_selector;
    std::string mode = "exact";
    std::string pieces_dir;
    Letter letter_cap = 8;
    std::size_t depth = 6;
    std::size_t cond_limit = 8;
    std::size_t ext_depth = 4;
    unsigned threads = 1;
    bool as_json = false;
};

std::vector<RegularTree> load_piece_dir(const std::string& dir) {
    std::vector<std::string> files;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("piece_", 0) == 0) files.push_back(entry.path().string());
    }
    if (ec) throw io_error("cannot read piece directory '" + dir + "'");
    std::sort(files.begin(), files.end());
    if (files.empty()) throw input_error("no piece_* files in '" + dir + "'");
    std::vector<RegularTree> pieces;
    for (const auto& f : files) pieces.push_back(load_tree_file(f).tree);
    return pieces;
}

int cmd_check(const CheckOptions& opt) {
    RegularTree tree = load_tree_file(opt.tree_file).tree;
    json out;
    out["check"] = opt.what;
    bool holds = false;

    if (opt.what == "finitely-branching" || opt.what == "compact") {
        holds = tree.is_finitely_branching();
        if (holds) out["bound_prefix"] = tree.compact_bound_prefix(opt.depth);
    } else if (opt.what == "superperfect") {
        holds = is_superperfect(tree);
    } else if (opt.what == "sigma-bounded") {
        auto r = is_sigma_bounded(tree, opt.letter_cap);
        holds = r.sigma_bounded;
        if (holds) {
            if (opt.threads > 1) {
                std::vector<std::future<bool>> compact;
                for (const auto& piece : r.pieces)
                    compact.push_back(std::async(std::launch::async, [&piece] {
                        return piece.tree.is_finitely_branching();
                    }));
                for (auto& c : compact) holds = c.get() && holds;
            }
            out["pieces"] = json::array();
            for (const auto& piece : r.pieces) out["pieces"].push_back(piece_to_json(piece));
        }
    } else if (opt.what == "nowhere-dense") {
        if (opt.cs_selector.empty())
            throw input_error("--cs is required for the nowhere-dense check");
        auto cs = load_condition_set(opt.cs_selector, opt.letter_cap);
        std::optional<NowhereDenseWitness> w;
        if (opt.mode == "exact") {
            w = is_b_nowhere_dense_exact(tree, *cs);
        } else if (opt.mode == "bounded") {
            NowhereDenseBudget budget{opt.depth, opt.cond_limit, opt.ext_depth, opt.letter_cap};
            w = is_b_nowhere_dense_bounded(tree, *cs, budget);
        } else {
            throw input_error("--mode must be exact or bounded");
        }
        holds = w.has_value();
        if (w) out["witness"] = witness_to_json(*w);
        out["mode"] = opt.mode;
    } else if (opt.what == "meager-cover") {
        if (opt.cs_selector.empty() || opt.pieces_dir.empty())
            throw input_error("the meager-cover check needs --cs and --pieces");
        auto cs = load_condition_set(opt.cs_selector, opt.letter_cap);
        auto pieces = load_piece_dir(opt.pieces_dir);
        MeagerCoverBudget budget;
        budget.depth = opt.depth;
        budget.letter_cap = opt.letter_cap;
        budget.nd = {opt.depth, opt.cond_limit, opt.ext_depth, opt.letter_cap};
        holds = verify_b_meager_cover(tree, pieces, *cs, budget);
        out["pieces"] = pieces.size();
    } else {
        throw input_error("unknown check '" + opt.what + "'");
    }

    out["holds"] = holds;
    if (opt.as_json)
        std::cout << out.dump(2) << "\n";
    else
        std::cout << opt.what << ": " << (holds ? "holds" : "fails") << "\n";
    return holds ? kExitOk : kExitCheckFailed;
}

int cmd_decompose(const std::string& tree_file, const std::string& out_dir, Letter piece_cap,
                  std::size_t stem_depth) {
    RegularTree tree = load_tree_file(tree_file).tree;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw io_error("cannot create output directory '" + out_dir + "'");

    auto cb = cantor_bendixson(tree, piece_cap, stem_depth);
    write_text_file(out_dir + "/kernel.tree", serialize_tree_text(cb.kernel));
    for (std::size_t i = 0; i < cb.pieces.size(); ++i)
        write_text_file(out_dir + "/piece_" + std::to_string(i) + ".tree",
                        serialize_tree_text(cb.pieces[i].tree, cb.pieces[i].stems));
    json trace;
    trace["iterations"] = json::array();
    for (const auto& removed : cb.trace.removed)
        trace["iterations"].push_back({{"removed", removed}});
    write_text_file(out_dir + "/trace.json", trace.dump(2) + "\n");

    std::cout << "kernel_states=" << cb.kernel.state_count() << " pieces=" << cb.pieces.size()
              << " iterations=" << cb.trace.iterations() << "\n";
    return kExitOk;
}

int cmd_validate_cs(const std::string& selector, const ValidationBudget& budget, bool exact,
                    bool and_closure) {
    auto cs = load_condition_set(selector, budget.letter_cap);
    if (exact && !cs->exact())
        throw input_error("condition set '" + cs->name() + "' is bounded-only");
    auto report = validate_axioms(*cs, budget);
    std::cout << report.to_string();
    if (and_closure) {
        auto gap = find_and_closure_gap(*cs, budget);
        if (gap)
            std::cout << "conjunction closure gap: " << gap->first.to_string() << " and "
                      << gap->second.to_string() << "\n";
        else
            std::cout << "conjunction closure holds on the sample\n";
    }
    return report.ok() ? kExitOk : kExitCheckFailed;
}

class ReplStrategyI final : public StrategyI {
public:
    MoveI move(const GameConfig& cfg, const PlayHistory& h) const override {
        std::cout << "current prefix: " << h.concat().to_string() << "\n";
        if (!h.moves_II.empty())
            std::cout << "condition to satisfy: " << h.moves_II.back().to_string() << "\n";
        std::cout << "your move (letters a,b,c" << (cfg.witness_mode ? "; xi=<n> first" : "")
                  << ")> " << std::flush;
        std::string line;
        if (!std::getline(std::cin, line)) throw io_error("input closed");
        MoveI m;
        std::istringstream ss(line);
        std::string tok;
        while (ss >> tok) {
            if (tok.rfind("xi=", 0) == 0)
                m.witness = static_cast<Letter>(std::stoul(tok.substr(3)));
            else
                m.u = FinSeq::parse(tok);
        }
        if (cfg.witness_mode && !m.witness) m.witness = 0;
        return m;
    }
};

class ReplStrategyII final : public StrategyII {
public:
    Condition move(const GameConfig& cfg, const PlayHistory& h) const override {
        std::cout << "current prefix: " << h.concat().to_string() << "\n";
        std::cout << "sample legal payloads:";
        for (const Condition& b : cfg.cs->enumerate_conditions(6))
            std::cout << " " << b.to_string();
        std::cout << "\nyour condition> " << std::flush;
        std::string line;
        if (!std::getline(std::cin, line)) throw io_error("input closed");
        std::istringstream ss(line);
        std::string tok;
        ss >> tok;
        if (tok.find(',') != std::string::npos)
            return Condition::seq(FinSeq::parse(tok));
        return Condition::nat(std::stoull(tok));
    }
};

struct StrategyChoice {
    StrategyIPtr as_I;
    StrategyIIPtr as_II;
};

StrategyChoice resolve_strategy(const std::string& spec, const GameConfig& cfg, bool for_I,
                                std::uint64_t default_seed) {
    StrategyChoice out;
    if (spec == "random" || spec.rfind("random:", 0) == 0) {
        const std::uint64_t seed =
            spec.size() > 7 ? std::stoull(spec.substr(7)) : default_seed;
        if (for_I)
            out.as_I = make_random_strategy_I(seed);
        else
            out.as_II = make_random_strategy_II(seed);
        return out;
    }
    if (spec.rfind("from-bperfect:", 0) == 0) {
        if (!for_I) throw input_error("from-bperfect builds a strategy for player I");
        auto j = std::make_shared<BPerfectTree>(
            BPerfectTree::from_json(read_text_file(spec.substr(14))));
        out.as_I = strategy_I_from_bperfect(j, cfg.cs);
        return out;
    }
    if (spec.rfind("from-cover:", 0) == 0) {
        if (for_I) throw input_error("from-cover builds a strategy for player II");
        const std::string dir = spec.substr(11);
        std::vector<std::string> files;
        std::error_code ec;
        for (const auto& entry : fs::directory_iterator(dir, ec)) {
            const std::string name = entry.path().filename().string();
            if (name.rfind("piece_", 0) == 0) files.push_back(entry.path().string());
        }
        if (ec) throw io_error("cannot read cover directory '" + dir + "'");
        std::sort(files.begin(), files.end());
        if (files.empty()) throw input_error("no piece_* files in '" + dir + "'");
        std::vector<RegularTree> pieces;
        for (const auto& f : files) pieces.push_back(load_tree_file(f).tree);
        out.as_II = strategy_II_from_cover(pieces, exact_cover_witnesses(pieces, cfg.cs), cfg.cs);
        return out;
    }
    if (spec == "solver") {
        auto solved = solve_finite(cfg);
        if (for_I)
            out.as_I = solved.strat_I ? solved.strat_I : make_random_strategy_I(0);
        else
            out.as_II = solved.strat_II ? solved.strat_II : make_random_strategy_II(0);
        return out;
    }
    if (spec == "repl") {
        if (for_I)
            out.as_I = std::make_shared<ReplStrategyI>();
        else
            out.as_II = std::make_shared<ReplStrategyII>();
        return out;
    }
    throw input_error("unknown strategy spec '" + spec + "'");
}

struct PlayOptions {
    std::string cs_selector = "ex63";
    std::string payoff_file;
    std::string witness_payoff_file;
    std::string strat_I = "random:1";
    std::string strat_II = "random:1";
    std::size_t horizon = 3;
    std::size_t move_len_cap = 2;
    Letter letter_cap = 8;
    std::size_t cond_limit = 8;
    std::uint64_t seed = 1; // default for bare `random` strategy specs
    bool as_json = false;
};

GameConfig build_config(const PlayOptions& opt) {
    GameConfig cfg;
    cfg.cs = load_condition_set(opt.cs_selector, opt.letter_cap);
    cfg.horizon = opt.horizon;
    cfg.move_len_cap = opt.move_len_cap;
    cfg.letter_cap = opt.letter_cap;
    cfg.cond_limit = opt.cond_limit;
    if (!opt.witness_payoff_file.empty()) {
        cfg.witness_mode = true;
        cfg.witness_payoff = load_tree_file(opt.witness_payoff_file).tree;
        cfg.payoff = full_tree_for(cfg.cs->alphabet());
    } else {
        if (opt.payoff_file.empty()) throw input_error("--payoff is required");
        cfg.payoff = load_tree_file(opt.payoff_file).tree;
    }
    return cfg;
}

int cmd_play(const PlayOptions& opt) {
    GameConfig cfg = build_config(opt);
    auto sI = resolve_strategy(opt.strat_I, cfg, true, opt.seed);
    auto sII = resolve_strategy(opt.strat_II, cfg, false, opt.seed);
    auto [h, v] = play(cfg, *sI.as_I, *sII.as_II);
    std::cout << (opt.as_json ? render_transcript_json(h, v) : render_transcript(h, v));
    return kExitOk;
}

int cmd_solve(const PlayOptions& opt, bool base, std::size_t half_moves) {
    if (base) {
        if (opt.payoff_file.empty()) throw input_error("--payoff is required");
        RegularTree payoff = load_tree_file(opt.payoff_file).tree;
        auto r = solve_base(payoff, opt.letter_cap, half_moves);
        std::cout << "winner=" << (r.winner == Winner::I ? "I" : "II");
        if (r.best_first) std::cout << " first_move=" << *r.best_first;
        std::cout << "\n";
        return kExitOk;
    }
    GameConfig cfg = build_config(opt);
    auto r = solve_finite(cfg);
    std::cout << "winner=" << (r.winner == Winner::I ? "I" : "II")
              << " positions=" << r.positions << "\n";
    return kExitOk;
}

int cmd_export_dot(const std::string& tree_file, const std::string& out_file) {
    auto tree = load_tree_file(tree_file).tree;
    std::string dot = tree_to_dot(tree);
    if (out_file.empty())
        std::cout << dot;
    else
        write_text_file(out_file, dot);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Regular trees, condition sets, and generalized Banach-Mazur games"};
    app.require_subcommand(1);

    CheckOptions check_opt;
    auto* check = app.add_subcommand("check", "run a smallness/largeness checker");
    check->add_option("tree", check_opt.tree_file)->required();
    check->add_option(
        "--what", check_opt.what,
        "nowhere-dense|superperfect|sigma-bounded|finitely-branching|compact|meager-cover");
    check->add_option("--cs", check_opt.cs_selector);
    check->add_option("--mode", check_opt.mode, "exact|bounded");
    check->add_option("--pieces", check_opt.pieces_dir, "piece_* directory for meager-cover");
    check->add_option("--letter-cap", check_opt.letter_cap);
    check->add_option("--depth", check_opt.depth);
    check->add_option("--cond-limit", check_opt.cond_limit);
    check->add_option("--ext-depth", check_opt.ext_depth);
    check->add_option("--threads", check_opt.threads);
    check->add_flag("--json", check_opt.as_json);

    std::string dec_tree, dec_out = "decomposition";
    Letter dec_cap = 8;
    std::size_t dec_stem_depth = 8;
    auto* dec = app.add_subcommand("decompose", "superperfect kernel + compact pieces");
    dec->add_option("tree", dec_tree)->required();
    dec->add_option("--out", dec_out);
    dec->add_option("--letter-cap", dec_cap);
    dec->add_option("--stem-depth", dec_stem_depth);

    std::string val_sel;
    ValidationBudget val_budget{6, 8, 16};
    bool val_exact = false, val_and = false;
    auto* val = app.add_subcommand("validate-cs", "check the condition-set axioms");
    val->add_option("selector", val_sel)->required();
    val->add_option("--max-len", val_budget.max_len);
    val->add_option("--letter-cap", val_budget.letter_cap);
    val->add_option("--cond-limit", val_budget.cond_limit);
    val->add_flag("--exact", val_exact, "refuse bounded-only sets");
    val->add_flag("--and-closure", val_and, "probe closure under conjunction");

    PlayOptions play_opt;
    auto* pl = app.add_subcommand("play", "run one game");
    pl->add_option("--cs", play_opt.cs_selector);
    pl->add_option("--payoff", play_opt.payoff_file);
    pl->add_option("--witness-payoff", play_opt.witness_payoff_file);
    pl->add_option("--horizon", play_opt.horizon);
    pl->add_option("--move-len-cap", play_opt.move_len_cap);
    pl->add_option("--letter-cap", play_opt.letter_cap);
    pl->add_option("--cond-limit", play_opt.cond_limit);
    pl->add_option("--I", play_opt.strat_I,
                   "from-bperfect:<file>|from-cover:<dir>|solver|random:<seed>|repl");
    pl->add_option("--II", play_opt.strat_II);
    pl->add_option("--seed", play_opt.seed, "seed for bare `random` strategy specs");
    pl->add_flag("--json", play_opt.as_json);

    PlayOptions solve_opt;
    bool solve_base_mode = false;
    std::size_t solve_half_moves = 4;
    auto* so = app.add_subcommand("solve", "backward induction over the finitized game");
    so->add_option("--cs", solve_opt.cs_selector);
    so->add_option("--payoff", solve_opt.payoff_file);
    so->add_option("--witness-payoff", solve_opt.witness_payoff_file);
    so->add_option("--horizon", solve_opt.horizon);
    so->add_option("--move-len-cap", solve_opt.move_len_cap);
    so->add_option("--letter-cap", solve_opt.letter_cap);
    so->add_option("--cond-limit", solve_opt.cond_limit);
    so->add_flag("--base", solve_base_mode, "single-letter base game");
    so->add_option("--half-moves", solve_half_moves);

    PlayOptions repl_opt;
    std::string repl_side = "I";
    std::string repl_opponent = "random:1";
    auto* rp = app.add_subcommand("repl", "play one side interactively");
    rp->add_option("--cs", repl_opt.cs_selector);
    rp->add_option("--payoff", repl_opt.payoff_file);
    rp->add_option("--witness-payoff", repl_opt.witness_payoff_file);
    rp->add_option("--horizon", repl_opt.horizon);
    rp->add_option("--move-len-cap", repl_opt.move_len_cap);
    rp->add_option("--letter-cap", repl_opt.letter_cap);
    rp->add_option("--cond-limit", repl_opt.cond_limit);
    rp->add_option("--side", repl_side, "I|II");
    rp->add_option("--opponent", repl_opponent);

    std::string dot_tree, dot_out;
    auto* dot = app.add_subcommand("export-dot", "emit the tree as graphviz");
    dot->add_option("tree", dot_tree)->required();
    dot->add_option("--out", dot_out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return cmd_check(check_opt);
        if (dec->parsed()) return cmd_decompose(dec_tree, dec_out, dec_cap, dec_stem_depth);
        if (val->parsed()) return cmd_validate_cs(val_sel, val_budget, val_exact, val_and);
        if (pl->parsed()) return cmd_play(play_opt);
        if (so->parsed()) return cmd_solve(solve_opt, solve_base_mode, solve_half_moves);
        if (rp->parsed()) {
            if (repl_side == "I") {
                repl_opt.strat_I = "repl";
                repl_opt.strat_II = repl_opponent;
            } else {
                repl_opt.strat_II = "repl";
                repl_opt.strat_I = repl_opponent;
            }
            return cmd_play(repl_opt);
        }
        if (dot->parsed()) return cmd_export_dot(dot_tree, dot_out);
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const synthesis_fault& e) {
        std::cerr << "synthesis fault: " << e.what() << "\n";
        return kExitFault;
    } catch (const resource_error& e) {
        std::cerr << "resource limit: " << e.what() << " (frontier=" << e.frontier_count
                  << ")\n";
        return kExitFault;
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
