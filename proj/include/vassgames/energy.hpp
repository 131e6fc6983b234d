#pragma once

// Multi-dimensional energy parity games with unknown initial credit, and the
// reduction from energy games to single-sided VASS games.

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "vassgames/antichain.hpp"
#include "vassgames/game.hpp"

namespace vassgames {

struct OutGame;

struct SolverOptions {
    /// Leaves of the Player-1 strategy enumeration per abstract query.
    std::uint64_t strategy_budget = 200'000;
    /// States an unfolded out-game may grow to.
    std::size_t node_budget = 100'000;
    /// Largest credit the bracket fallback tries when enumeration runs out.
    Value fallback_max_cap = 16;
    /// Replay every positive cycle certificate.
    bool certify = true;
    std::optional<std::chrono::steady_clock::time_point> deadline;
    /// Observer called on every out-game built while solving.
    std::function<void(const OutGame&)> on_out_game;

    void check_deadline() const {
        if (deadline && std::chrono::steady_clock::now() > *deadline) throw BudgetExceeded("time budget exhausted");
    }
};

/// Winner of the abstract configuration at each state.
using AbstractVerdict = std::vector<Player>;

/// Per state: Player 0 iff some initial credit lets Player 0 satisfy parity
/// while keeping every counter nonnegative. Throws BudgetExceeded rather than
/// guess.
AbstractVerdict solve_abstract_energy_parity(const IntegerGame& game, const SolverOptions& opts = {});

/// Single-state variant of solve_abstract_energy_parity.
Player abstract_energy_winner(const IntegerGame& game, StateId q, const SolverOptions& opts = {});

/// Winner of the abstract energy game once Player 1 is fixed to `choice`
/// (transition per Player-1 state). Exposed for cross-checks.
Player one_player_energy_winner(const IntegerGame& game, StateId q, const std::vector<TransitionId>& choice);

struct SingleSidedReduction {
    IntegerGame game;
    /// Original state id -> state id in `game` (identity on the original states).
    std::vector<StateId> embedding;
    /// Intermediate state per original transition.
    std::vector<StateId> transition_states;
    StateId losing_state = 0;
};

/// Each transition q1 -op-> q2 becomes q1 -nop-> q_t -op-> q2 with an escape
/// q_t -nop-> q_l into an odd absorbing state owned by Player 0.
SingleSidedReduction energy_to_single_sided(const IntegerGame& game);

/// Minimal credits over `counters` (other counters unconstrained) from which
/// Player 0 wins parity and keeps all counters nonnegative.
Frontier pareto_energy(const IntegerGame& game, CounterSet counters, const SolverOptions& opts = {});

}  // namespace vassgames
