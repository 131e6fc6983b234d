#include "vassgames/oracle.hpp"

#include <algorithm>

#include "vassgames/parity.hpp"

namespace vassgames {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Win0: return "Win0";
        case Verdict::Win1: return "Win1";
        case Verdict::Unknown: return "Unknown";
    }
    return "?";
}

CappedSolution::CappedSolution(const IntegerGame& game, Value cap, CapMode mode, std::vector<Player> winners)
    : num_states_(game.num_states()),
      num_counters_(game.num_counters()),
      cap_(cap),
      mode_(mode),
      base_(static_cast<std::size_t>(cap) + (mode == CapMode::OverflowOmega ? 2 : 1)),
      winners_(std::move(winners)) {}

std::size_t CappedSolution::index(const PartialConfig& g) const {
    std::size_t idx = 0;
    for (std::size_t c = num_counters_; c-- > 0;) idx = idx * base_ + static_cast<std::size_t>(g.values[c]);
    return g.state * [&] {
        std::size_t p = 1;
        for (std::size_t c = 0; c < num_counters_; ++c) p *= base_;
        return p;
    }() + idx;
}

std::optional<Player> CappedSolution::winner(const PartialConfig& g) const {
    if (g.state >= num_states_ || g.values.size() != num_counters_ || g.dom != all_counters(num_counters_))
        throw GameError("capped lookup needs a concrete configuration");
    for (Value v : g.values)
        if (v > cap_) return std::nullopt;
    return winners_[index(g)];
}

std::vector<PartialConfig> CappedSolution::configs() const {
    std::vector<PartialConfig> out;
    std::vector<Value> vals(num_counters_, 0);
    for (StateId q = 0; q < num_states_; ++q) {
        std::fill(vals.begin(), vals.end(), 0);
        for (;;) {
            out.push_back(make_concrete(q, vals));
            std::size_t c = 0;
            while (c < num_counters_ && vals[c] == cap_) vals[c++] = 0;
            if (c == num_counters_) break;
            ++vals[c];
        }
    }
    return out;
}

CappedSolution solve_capped(const IntegerGame& game, Semantics sem, Value cap, CapMode mode,
                            std::size_t max_vertices) {
    if (cap < 0) throw GameError("cap must be nonnegative");
    const bool single = is_single_sided(game);
    if (sem == Semantics::Vass && !single && mode != CapMode::OverflowWinsP0)
        throw GameError("this cap mode needs a single-sided game under VASS semantics");

    const std::size_t d = game.num_counters();
    const Value omega = cap + 1;
    const std::size_t base = static_cast<std::size_t>(cap) + (mode == CapMode::OverflowOmega ? 2 : 1);
    std::size_t per_state = 1;
    for (std::size_t c = 0; c < d; ++c) {
        per_state *= base;
        if (per_state * game.num_states() > max_vertices) throw BudgetExceeded("capped game too large");
    }

    FiniteParityGame fg;
    for (StateId q = 0; q < game.num_states(); ++q)
        for (std::size_t i = 0; i < per_state; ++i) fg.add_vertex(game.owner(q), game.color(q));
    const auto win_sink = fg.add_vertex(Player::P0, 0);
    const auto lose_sink = fg.add_vertex(Player::P0, 1);
    fg.add_edge(win_sink, win_sink);
    fg.add_edge(lose_sink, lose_sink);

    std::vector<Value> vals(d, 0);
    std::vector<std::size_t> weight(d, 1);
    for (std::size_t c = 1; c < d; ++c) weight[c] = weight[c - 1] * base;

    for (std::size_t i = 0; i < per_state; ++i) {
        std::size_t rem = i;
        for (std::size_t c = 0; c < d; ++c) {
            vals[c] = static_cast<Value>(rem % base);
            rem /= base;
        }
        for (StateId q = 0; q < game.num_states(); ++q) {
            const auto v = static_cast<FiniteParityGame::Vertex>(q * per_state + i);
            bool any = false;
            for (TransitionId t : game.outgoing(q)) {
                const Transition& tr = game.transition(t);
                std::size_t next = i;
                auto target_of = [&](StateId s) { return static_cast<FiniteParityGame::Vertex>(s * per_state + next); };
                if (tr.op.is_nop()) {
                    fg.add_edge(v, target_of(tr.target));
                    any = true;
                    continue;
                }
                const CounterId c = tr.op.counter;
                const Value x = vals[c];
                const bool is_omega = mode == CapMode::OverflowOmega && x == omega;
                if (tr.op.kind == CounterOp::Kind::Inc) {
                    if (is_omega) {
                        fg.add_edge(v, target_of(tr.target));
                    } else if (x < cap) {
                        next += weight[c];
                        fg.add_edge(v, target_of(tr.target));
                    } else if (mode == CapMode::Saturate) {
                        fg.add_edge(v, target_of(tr.target));
                    } else if (mode == CapMode::OverflowWinsP0) {
                        fg.add_edge(v, win_sink);
                    } else {
                        next += weight[c];
                        fg.add_edge(v, target_of(tr.target));
                    }
                    any = true;
                } else {
                    if (is_omega) {
                        fg.add_edge(v, target_of(tr.target));
                        any = true;
                    } else if (x > 0) {
                        next -= weight[c];
                        fg.add_edge(v, target_of(tr.target));
                        any = true;
                    } else if (sem == Semantics::Energy) {
                        fg.add_edge(v, lose_sink);
                        any = true;
                    }
                }
            }
            if (!any) fg.add_edge(v, game.owner(q) == Player::P0 ? lose_sink : win_sink);
        }
    }

    ParitySolution sol = solve_parity(fg);
    sol.winner.resize(game.num_states() * per_state);
    return CappedSolution(game, cap, mode, std::move(sol.winner));
}

Verdict bracket_decide(const IntegerGame& game, Semantics sem, const PartialConfig& g, Value max_cap) {
    if (g.dom != all_counters(game.num_counters())) throw GameError("bracket_decide needs a concrete configuration");
    Value top = 0;
    for (Value v : g.values) top = std::max(top, v);
    const bool omega_sound = sem == Semantics::Energy || is_single_sided(game);
    const CapMode overflow = omega_sound ? CapMode::OverflowOmega : CapMode::OverflowWinsP0;

    Value cap = top + 1;
    for (;;) {
        const Value c = std::min(cap, std::max(max_cap, top + 1));
        // Saturation is unsound for VASS games where Player 1 moves counters.
        if (omega_sound && solve_capped(game, sem, c, CapMode::Saturate).winner(g) == Player::P0)
            return Verdict::Win0;
        if (solve_capped(game, sem, c, overflow).winner(g) == Player::P1) return Verdict::Win1;
        if (c >= max_cap) break;
        cap *= 2;
    }
    return Verdict::Unknown;
}

}  // namespace vassgames
