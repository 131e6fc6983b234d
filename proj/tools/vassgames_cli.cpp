// Command-line front end for the solvers.

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vassgames/applications.hpp"
#include "vassgames/energy.hpp"
#include "vassgames/game.hpp"
#include "vassgames/io.hpp"
#include "vassgames/oracle.hpp"
#include "vassgames/vass_solver.hpp"

using namespace vassgames;
using nlohmann::json;

namespace {

constexpr int kExitError = 2;
constexpr int kExitUnknown = 3;

struct RunConfig {
    std::string command;
    std::string game_path, fs_path, vass_path, formula_path, formula_text;
    std::string counters, config, init, fs_init;
    std::string format = "text";
    std::string semantics = "vass";
    std::string dump_path;
    Value max_cap = 64;
    std::size_t node_budget = 100'000;
    std::uint64_t strategy_budget = 200'000;
    std::int64_t time_budget_ms = 0;
    bool complete_sinks = false;
    std::uint64_t seed = 1;
    std::size_t gen_states = 4, gen_counters = 1;
    bool gen_single_sided = true;
};

SolverOptions solver_options(const RunConfig& rc) {
    SolverOptions opts;
    opts.node_budget = rc.node_budget;
    opts.strategy_budget = rc.strategy_budget;
    if (rc.time_budget_ms > 0)
        opts.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(rc.time_budget_ms);
    return opts;
}

json budget_json(const RunConfig& rc) {
    return {{"max_cap", rc.max_cap},
            {"node_budget", rc.node_budget},
            {"strategy_budget", rc.strategy_budget},
            {"time_budget_ms", rc.time_budget_ms}};
}

IntegerGame load_game(const std::string& path, const RunConfig& rc, bool vass_semantics) {
    IntegerGame game = parse_game(read_file(path), rc.complete_sinks ? Completion::AddSinks : Completion::None);
    if (vass_semantics && !game.vass_deadlock_free())
        throw GameError(path + ": some state has only decrementing transitions and may deadlock; "
                               "pass --complete-sinks to add losing sinks");
    return game;
}

IntegerGame load_labeled_vass(const std::string& path, const RunConfig& rc) {
    return parse_game(read_file(path), rc.complete_sinks ? Completion::AddSinks : Completion::AllowStuck);
}

std::vector<Value> concrete_values(const IntegerGame& game, const PartialConfig& g) {
    if (g.dom != all_counters(game.num_counters()))
        throw GameError("the configuration must assign every counter");
    return g.values;
}

MuPtr load_formula(const RunConfig& rc) {
    if (!rc.formula_text.empty()) return parse_formula(rc.formula_text);
    if (rc.formula_path.empty()) throw GameError("give --formula FILE or --formula-text TEXT");
    return parse_formula(read_file(rc.formula_path));
}

void emit(const RunConfig& rc, const std::string& text, json report) {
    if (rc.format == "json") {
        report["command"] = rc.command;
        report["budget"] = budget_json(rc);
        std::cout << report.dump(2) << '\n';
    } else {
        std::cout << text;
    }
}

void emit_frontier(const RunConfig& rc, const IntegerGame& game, const Frontier& f) {
    emit(rc, format_frontier(game, f), {{"frontier", frontier_json(game, f)}});
}

void emit_verdict(const RunConfig& rc, bool won) {
    const char* v = won ? "Win0" : "Win1";
    emit(rc, std::string(v) + "\n", {{"verdict", v}});
}

// Uniform in [0, n) from the raw engine output, so the stream is identical
// across standard libraries.
std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

std::string generate(const RunConfig& rc) {
    std::mt19937_64 rng(rc.seed);
    const std::size_t n = std::max<std::size_t>(rc.gen_states, 1), d = rc.gen_counters;
    std::vector<std::string> counters;
    for (std::size_t c = 0; c < d; ++c) counters.push_back("c" + std::to_string(c + 1));
    std::vector<State> states;
    for (std::size_t q = 0; q < n; ++q)
        states.push_back({"q" + std::to_string(q), below(rng, 3) == 0 ? Player::P1 : Player::P0,
                          static_cast<int>(below(rng, 4))});
    std::vector<Transition> transitions;
    auto random_op = [&](StateId q, bool safe) {
        if (d == 0 || (rc.gen_single_sided && states[q].owner == Player::P1)) return CounterOp::nop();
        const auto c = static_cast<CounterId>(below(rng, d));
        switch (below(rng, safe ? 2 : 3)) {
            case 0: return CounterOp::nop();
            case 1: return CounterOp::inc(c);
            default: return CounterOp::dec(c);
        }
    };
    for (StateId q = 0; q < n; ++q) {
        const std::size_t out = 1 + below(rng, 2);
        for (std::size_t k = 0; k < out; ++k) {
            const auto target = static_cast<StateId>(below(rng, n));
            transitions.push_back({"t" + std::to_string(transitions.size()), q, random_op(q, k == 0), target, ""});
        }
    }
    return print_game(IntegerGame(std::move(counters), std::move(states), std::move(transitions)));
}

int run(const RunConfig& rc) {
    SolverOptions opts = solver_options(rc);
    std::ofstream dump;
    const IntegerGame* dump_game = nullptr;
    if (!rc.dump_path.empty()) {
        dump.open(rc.dump_path);
        if (!dump) throw GameError("cannot write " + rc.dump_path);
        opts.on_out_game = [&](const OutGame& out) {
            if (dump_game) dump << dump_out_game(*dump_game, out) << "# ----\n";
        };
    }

    if (rc.command == "generate") {
        std::cout << generate(rc);
        return 0;
    }
    if (rc.command == "solve-abstract") {
        const IntegerGame game = load_game(rc.game_path, rc, false);
        const AbstractVerdict v = solve_abstract_energy_parity(game, opts);
        std::ostringstream os;
        json verdicts = json::object();
        for (StateId q = 0; q < game.num_states(); ++q) {
            const char* p = v[q] == Player::P0 ? "player0" : "player1";
            os << game.state(q).name << ": " << p << '\n';
            verdicts[game.state(q).name] = p;
        }
        emit(rc, os.str(), {{"verdicts", verdicts}});
        return 0;
    }
    if (rc.command == "pareto") {
        const IntegerGame game = load_game(rc.game_path, rc, true);
        dump_game = &game;
        const CounterSet c = rc.counters.empty() ? all_counters(game.num_counters()) : parse_counters(game, rc.counters);
        emit_frontier(rc, game, pareto_single_sided_vass(game, c, opts));
        return 0;
    }
    if (rc.command == "pareto-energy") {
        const IntegerGame game = load_game(rc.game_path, rc, false);
        const CounterSet c = rc.counters.empty() ? all_counters(game.num_counters()) : parse_counters(game, rc.counters);
        emit_frontier(rc, game, pareto_energy(game, c, opts));
        return 0;
    }
    if (rc.command == "check") {
        const IntegerGame game = load_game(rc.game_path, rc, true);
        dump_game = &game;
        ParetoSolver solver(game, opts);
        emit_verdict(rc, solver.c_version(parse_config(game, rc.config)));
        return 0;
    }
    if (rc.command == "oracle") {
        const Semantics sem = rc.semantics == "energy" ? Semantics::Energy : Semantics::Vass;
        const IntegerGame game = load_game(rc.game_path, rc, false);
        const PartialConfig g = parse_config(game, rc.config);
        concrete_values(game, g);
        const Verdict v = bracket_decide(game, sem, g, rc.max_cap);
        emit(rc, std::string(to_string(v)) + "\n", {{"verdict", to_string(v)}});
        return v == Verdict::Unknown ? kExitUnknown : 0;
    }
    if (rc.command == "weaksim") {
        const FiniteLTS fs = parse_lts(read_file(rc.fs_path));
        const IntegerGame vass = load_labeled_vass(rc.vass_path, rc);
        const PartialConfig g = parse_config(vass, rc.init);
        StateId s0 = 0;
        if (!rc.fs_init.empty()) {
            auto s = fs.find_state(rc.fs_init);
            if (!s) throw GameError("unknown LTS state " + rc.fs_init);
            s0 = *s;
        }
        const bool ok = check_weaksim(fs, s0, vass, g.state, concrete_values(vass, g), opts);
        emit(rc, ok ? "true\n" : "false\n", {{"simulates", ok}});
        return 0;
    }
    if (rc.command == "mc") {
        const IntegerGame vass = load_labeled_vass(rc.game_path, rc);
        const MuPtr phi = load_formula(rc);
        const PartialConfig g = parse_config(vass, rc.init);
        const bool ok = model_check(vass, *phi, g.state, concrete_values(vass, g), opts);
        emit(rc, ok ? "true\n" : "false\n", {{"holds", ok}});
        return 0;
    }
    if (rc.command == "mc-global") {
        const IntegerGame vass = load_labeled_vass(rc.game_path, rc);
        const MuPtr phi = load_formula(rc);
        emit_frontier(rc, vass, global_model_check(vass, *phi, opts));
        return 0;
    }
    throw GameError("unknown command " + rc.command);
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig rc;
    CLI::App app{"Parity games on vector addition systems: Pareto frontiers, energy games, weak simulation "
                 "and mu-calculus model checking."};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--max-cap", rc.max_cap, "Largest cap for bounded oracle runs")->check(CLI::NonNegativeNumber);
    app.add_option("--node-budget", rc.node_budget, "Out-game size limit");
    app.add_option("--strategy-budget", rc.strategy_budget, "Player-1 strategy enumeration limit");
    app.add_option("--time-budget-ms", rc.time_budget_ms, "Wall-clock limit, 0 for none");
    app.add_flag("--complete-sinks", rc.complete_sinks, "Add losing sinks to states that may deadlock");
    app.add_option("--format", rc.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--dump-out-games", rc.dump_path, "Write every out-game built to this file");

    auto game_cmd = [&](const std::string& name, const std::string& help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("game", rc.game_path, "Game file")->required();
        sub->callback([&rc, name] { rc.command = name; });
        return sub;
    };
    game_cmd("solve-abstract", "Abstract energy parity verdict per state");
    game_cmd("pareto", "Pareto frontier of a single-sided VASS parity game")
        ->add_option("--counters", rc.counters, "Counter subset (default: all)");
    game_cmd("pareto-energy", "Minimal initial credit of an energy parity game")
        ->add_option("--counters", rc.counters, "Counter subset (default: all)");
    game_cmd("check", "Does Player 0 win some instantiation of a configuration?")
        ->add_option("--config", rc.config, "e.g. \"q0 c=1\"")
        ->required();
    {
        auto* sub = game_cmd("oracle", "Bounded two-sided verdict for a concrete configuration");
        sub->add_option("--cap", rc.max_cap, "Largest cap tried")->check(CLI::NonNegativeNumber);
        sub->add_option("--config", rc.config, "e.g. \"q0 c=1\"")->required();
        sub->add_option("--semantics", rc.semantics)->check(CLI::IsMember({"vass", "energy"}));
    }
    {
        auto* sub = app.add_subcommand("weaksim", "Does a labeled VASS weakly simulate a finite LTS?");
        sub->add_option("--fs", rc.fs_path, "LTS file")->required();
        sub->add_option("--fs-init", rc.fs_init, "Initial LTS state (default: first declared)");
        sub->add_option("--vass", rc.vass_path, "Labeled VASS game file")->required();
        sub->add_option("--init", rc.init, "Initial VASS configuration, e.g. \"q0 c=0\"")->required();
        sub->callback([&rc] { rc.command = "weaksim"; });
    }
    for (const std::string name : {"mc", "mc-global"}) {
        auto* sub = game_cmd(name, name == "mc" ? "Model check a concrete configuration"
                                                : "Minimal satisfying configurations per state");
        sub->add_option("--formula", rc.formula_path, "Formula file");
        sub->add_option("--formula-text", rc.formula_text, "Formula given inline");
        if (name == "mc") sub->add_option("--init", rc.init, "e.g. \"q0 c=0\"")->required();
    }
    {
        auto* sub = app.add_subcommand("generate", "Emit a random game");
        sub->add_option("--seed", rc.seed);
        sub->add_option("--states", rc.gen_states)->check(CLI::PositiveNumber);
        sub->add_option("--counters", rc.gen_counters)->check(CLI::Range(0, 32));
        sub->add_flag("!--any-sided", rc.gen_single_sided, "Let Player-1 transitions change counters");
        sub->callback([&rc] { rc.command = "generate"; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    try {
        return run(rc);
    } catch (const BudgetExceeded& e) {
        if (rc.format == "json") {
            json report{{"command", rc.command}, {"verdict", "Unknown"}, {"reason", e.what()},
                        {"budget", budget_json(rc)}};
            std::cout << report.dump(2) << '\n';
        } else {
            std::cout << "Unknown: " << e.what() << '\n';
        }
        return kExitUnknown;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
}
