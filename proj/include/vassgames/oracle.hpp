#pragma once

// Bounded brute-force deciders. Each mode is sound for one player only, so a
// pair of them brackets the unbounded game.

#include <optional>
#include <vector>

#include "vassgames/game.hpp"
#include "vassgames/semantics.hpp"

namespace vassgames {

enum class CapMode {
    /// Increments clamp at the cap. A Player-0 win transfers to the unbounded game.
    Saturate,
    /// An increment past the cap moves to an absorbing Player-0 win. A Player-1
    /// win transfers to the unbounded game.
    OverflowWinsP0,
    /// An increment past the cap makes the counter unbounded (omega) for the
    /// rest of the play. A Player-1 win transfers to the unbounded game when
    /// larger counters never hurt Player 0 (energy semantics, or single-sided
    /// VASS games).
    OverflowOmega,
};

enum class Verdict { Win0, Win1, Unknown };

const char* to_string(Verdict v);

/// Winners of the capped configuration graph.
class CappedSolution {
public:
    CappedSolution(const IntegerGame& game, Value cap, CapMode mode, std::vector<Player> winners);

    Value cap() const { return cap_; }
    CapMode mode() const { return mode_; }
    /// Winner at a concrete configuration whose values are all <= cap.
    std::optional<Player> winner(const PartialConfig& g) const;
    /// All concrete configurations with values <= cap, in index order.
    std::vector<PartialConfig> configs() const;

private:
    std::size_t index(const PartialConfig& g) const;

    std::size_t num_states_, num_counters_;
    Value cap_;
    CapMode mode_;
    std::size_t base_;
    std::vector<Player> winners_;
};

/// Builds and solves the finite parity game over configurations with counter
/// values in [0, cap]. Under Energy semantics a decrement below zero moves to
/// an absorbing Player-1 win; under VASS it is disabled, and a configuration
/// with nothing enabled loses for its owner.
CappedSolution solve_capped(const IntegerGame& game, Semantics sem, Value cap, CapMode mode,
                            std::size_t max_vertices = 4'000'000);

/// Doubling caps from max(g)+1 up to `max_cap`: Win0 on the first Saturate
/// win, Win1 on the first overflow-mode loss for Player 0, else Unknown.
/// Never wrong. The overflow mode is OverflowOmega where that is sound and
/// OverflowWinsP0 otherwise.
Verdict bracket_decide(const IntegerGame& game, Semantics sem, const PartialConfig& g, Value max_cap = 64);

}  // namespace vassgames
