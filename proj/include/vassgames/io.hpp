#pragma once

// Text formats: games, finite LTS, configurations and frontier reports.

#include <string>

#include <json.hpp>

#include "vassgames/antichain.hpp"
#include "vassgames/applications.hpp"
#include "vassgames/game.hpp"
#include "vassgames/vass_solver.hpp"

namespace vassgames {

/// One declaration per line, `#` starts a comment:
///   counters c1 c2
///   state q0 owner=0 color=2
///   trans t1: q0 inc(c1) q1 label=a
/// Operations are inc(c), dec(c), nop, and inc(c,n)/dec(c,n), which expand to
/// a chain of unit steps through fresh color-0 states owned by the mover.
/// Errors carry the line number.
IntegerGame parse_game(const std::string& text, Completion completion = Completion::None);
std::string print_game(const IntegerGame& game);

/// `state s0` and `edge s0 a s1` lines.
FiniteLTS parse_lts(const std::string& text);
std::string print_lts(const FiniteLTS& lts);

/// "q0 c=1 d=2"; parentheses and commas are ignored, so format_config output
/// parses back. Counters not mentioned stay undefined.
PartialConfig parse_config(const IntegerGame& game, const std::string& text);
/// Comma or space separated counter names.
CounterSet parse_counters(const IntegerGame& game, const std::string& text);

/// "(c=1, d=2)"
std::string format_valuation(const IntegerGame& game, const PartialConfig& g);
/// One line per state with a nonempty antichain: "q0: (c=1) (c=2)".
std::string format_frontier(const IntegerGame& game, const Frontier& frontier);
/// state -> [{counter: value}, ...] for every state.
nlohmann::json frontier_json(const IntegerGame& game, const Frontier& frontier);

/// The out-game in the game format, followed by its labels as comments.
std::string dump_out_game(const IntegerGame& game, const OutGame& out);

std::string read_file(const std::string& path);

}  // namespace vassgames
