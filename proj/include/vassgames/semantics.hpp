#pragma once

#include <optional>
#include <vector>

#include "vassgames/game.hpp"

namespace vassgames {

enum class Semantics { Energy, Vass };

/// Successor under energy semantics; nullopt iff state(g) != source(t).
std::optional<IntConfig> energy_step(const IntegerGame& game, const IntConfig& g, TransitionId t);

/// Successor under VASS semantics. Undefined counters stay undefined and never
/// block a decrement.
std::optional<PartialConfig> vass_step(const IntegerGame& game, const PartialConfig& g, TransitionId t);

/// Transitions with a defined successor. Under Energy semantics only the
/// source state matters.
std::vector<TransitionId> enabled_transitions(const IntegerGame& game, const PartialConfig& g, Semantics sem);

/// A finite play: a start configuration and the transitions taken from it.
struct Play {
    IntConfig start;
    std::vector<std::pair<TransitionId, IntConfig>> steps;

    const IntConfig& last() const { return steps.empty() ? start : steps.back().second; }
};

/// Appends one energy step; throws GameError if `t` is not enabled.
void extend(const IntegerGame& game, Play& play, TransitionId t);

}  // namespace vassgames
