#include "vassgames/semantics.hpp"

namespace vassgames {

namespace {

const Transition& checked(const IntegerGame& game, TransitionId t) {
    if (t >= game.num_transitions()) throw GameError("unknown transition id " + std::to_string(t));
    return game.transition(t);
}

}  // namespace

std::optional<IntConfig> energy_step(const IntegerGame& game, const IntConfig& g, TransitionId t) {
    const Transition& tr = checked(game, t);
    if (tr.source != g.state) return std::nullopt;
    IntConfig next{tr.target, g.values};
    if (!tr.op.is_nop()) next.values.at(tr.op.counter) += tr.op.effect_on(tr.op.counter);
    return next;
}

std::optional<PartialConfig> vass_step(const IntegerGame& game, const PartialConfig& g, TransitionId t) {
    const Transition& tr = checked(game, t);
    if (tr.source != g.state) return std::nullopt;
    PartialConfig next = g;
    next.state = tr.target;
    if (!tr.op.is_nop() && g.defined(tr.op.counter)) {
        const Value v = g.values[tr.op.counter] + tr.op.effect_on(tr.op.counter);
        if (v < 0) return std::nullopt;
        next.values[tr.op.counter] = v;
    }
    return next;
}

std::vector<TransitionId> enabled_transitions(const IntegerGame& game, const PartialConfig& g, Semantics sem) {
    std::vector<TransitionId> out;
    for (TransitionId t : game.outgoing(g.state)) {
        if (sem == Semantics::Energy || vass_step(game, g, t)) out.push_back(t);
    }
    return out;
}

void extend(const IntegerGame& game, Play& play, TransitionId t) {
    auto next = energy_step(game, play.last(), t);
    if (!next) throw GameError("transition " + game.transition(t).name + " not enabled");
    play.steps.emplace_back(t, std::move(*next));
}

}  // namespace vassgames
