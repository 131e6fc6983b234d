#include "vassgames/vass_solver.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "vassgames/semantics.hpp"

namespace vassgames {

const Frontier& ParetoTable::at(CounterSet counters) const {
    const Frontier* f = find(counters);
    if (!f) throw GameError("missing Pareto table entry for counter set " + std::to_string(counters));
    return *f;
}

namespace {

// beta indexed by (state, dom).
class BetaIndex {
public:
    explicit BetaIndex(std::span<const PartialConfig> beta) {
        for (const auto& g : beta) index_[{g.state, g.dom}].push_back(&g);
    }
    bool covered(const PartialConfig& g) const {
        for (CounterId c = 0; c < g.values.size(); ++c) {
            if (!g.defined(c)) continue;
            PartialConfig dropped = g;
            dropped.unset(c);
            auto it = index_.find({dropped.state, dropped.dom});
            if (it == index_.end()) return false;
            if (std::none_of(it->second.begin(), it->second.end(),
                             [&](const PartialConfig* b) { return leq(*b, dropped); }))
                return false;
        }
        return true;
    }

private:
    std::map<std::pair<StateId, CounterSet>, std::vector<const PartialConfig*>> index_;
};

std::vector<PartialConfig> collect_beta(const ParetoTable& table, CounterSet counters) {
    std::vector<PartialConfig> beta;
    for (CounterId c = 0; c < kMaxCounters; ++c) {
        if (!contains(counters, c)) continue;
        for (const auto& chain : table.at(without(counters, c)))
            beta.insert(beta.end(), chain.elements().begin(), chain.elements().end());
    }
    return beta;
}

void require_single_sided(const IntegerGame& game) {
    if (!is_single_sided(game)) throw GameError("game is not single-sided");
    if (!game.vass_deadlock_free()) throw GameError("game may deadlock under VASS semantics");
}

}  // namespace

bool covered_by(std::span<const PartialConfig> beta, const PartialConfig& g) {
    const int size = cardinality(g.dom);
    for (const auto& b : beta) {
        if (cardinality(b.dom) != size - 1 || (b.dom & ~g.dom) != 0)
            throw GameError("covered_by: every element must drop exactly one counter of the query");
    }
    return BetaIndex(beta).covered(g);
}

OutGame build_out_game(const IntegerGame& game, const PartialConfig& g, std::span<const PartialConfig> beta,
                       const SolverOptions& opts) {
    if (!is_single_sided(game)) throw GameError("build_out_game needs a single-sided game");
    if (g.dom == 0) throw GameError("build_out_game needs a nonempty counter set");
    if (g.values.size() != game.num_counters()) throw GameError("configuration does not match the game");
    const CounterSet tracked = g.dom;
    for (const auto& b : beta) {
        if (cardinality(b.dom) != cardinality(tracked) - 1 || (b.dom & ~tracked) != 0)
            throw GameError("build_out_game: beta must hold frontiers of the (|C|-1)-subsets");
    }
    const BetaIndex index(beta);

    // Counters of the out-game: the untracked ones, in declaration order.
    std::vector<std::string> out_counters;
    std::vector<std::int64_t> counter_map(game.num_counters(), -1);
    for (CounterId c = 0; c < game.num_counters(); ++c) {
        if (contains(tracked, c)) continue;
        counter_map[c] = static_cast<std::int64_t>(out_counters.size());
        out_counters.push_back(game.counters()[c]);
    }

    OutGame out;
    out.counters = tracked;
    std::vector<State> states;
    std::vector<Transition> transitions;
    std::vector<std::vector<StateId>> preds;  // direct predecessors
    std::unordered_map<PartialConfig, std::vector<StateId>, PartialConfigHash> by_label;

    auto create = [&](const PartialConfig& label) {
        const auto id = static_cast<StateId>(states.size());
        if (id >= opts.node_budget) throw BudgetExceeded("out-game node budget exhausted");
        states.push_back({"n" + std::to_string(id), game.owner(label.state), game.color(label.state)});
        out.state_labels.push_back(label);
        out.conditions.push_back(OutCondition::Expanded);
        preds.emplace_back();
        by_label[label].push_back(id);
        return id;
    };
    auto connect = [&](StateId from, CounterOp op, StateId to, std::int64_t origin, const std::string& label) {
        transitions.push_back({"e" + std::to_string(transitions.size()), from, op, to, label});
        out.transition_labels.push_back(origin);
        preds[to].push_back(from);
    };
    auto ancestors = [&](StateId q) {
        std::vector<char> seen(states.size(), 0);
        std::vector<StateId> stack{q};
        seen[q] = 1;
        while (!stack.empty()) {
            const StateId v = stack.back();
            stack.pop_back();
            for (StateId p : preds[v]) {
                if (!seen[p]) {
                    seen[p] = 1;
                    stack.push_back(p);
                }
            }
        }
        return seen;
    };

    out.root = create(g);
    std::deque<StateId> to_explore{out.root};
    while (!to_explore.empty()) {
        opts.check_deadline();
        const StateId q = to_explore.front();
        to_explore.pop_front();
        const PartialConfig label = out.state_labels[q];

        if (!index.covered(label)) {
            states[q].color = 1;
            out.conditions[q] = OutCondition::Uncovered;
            connect(q, CounterOp::nop(), q, -1, "tau");
            continue;
        }
        const std::vector<char> reaches = ancestors(q);
        bool pumped = false;
        for (StateId p = 0; p < states.size() && !pumped; ++p) pumped = reaches[p] && less(out.state_labels[p], label);
        if (pumped) {
            states[q].color = 0;
            out.conditions[q] = OutCondition::Pumped;
            connect(q, CounterOp::nop(), q, -1, "tau");
            continue;
        }

        bool any = false;
        for (TransitionId t : game.outgoing(label.state)) {
            auto next = vass_step(game, label, t);
            if (!next) continue;
            any = true;
            const Transition& tr = game.transition(t);
            CounterOp op = CounterOp::nop();
            if (!tr.op.is_nop() && counter_map[tr.op.counter] >= 0)
                op = {tr.op.kind, static_cast<CounterId>(counter_map[tr.op.counter])};

            std::optional<StateId> merge;
            if (auto it = by_label.find(*next); it != by_label.end()) {
                for (StateId cand : it->second) {
                    if (cand < reaches.size() && reaches[cand]) {
                        merge = cand;
                        break;
                    }
                }
            }
            if (merge) {
                connect(q, op, *merge, t, tr.label);
            } else {
                const StateId fresh = create(*next);
                connect(q, op, fresh, t, tr.label);
                to_explore.push_back(fresh);
            }
        }
        if (!any) throw GameError("configuration " + format_config(game, label) + " has no enabled transition");
    }

    out.game = IntegerGame(std::move(out_counters), std::move(states), std::move(transitions));
    if (opts.on_out_game) opts.on_out_game(out);
    return out;
}

std::string check_out_game(const IntegerGame& game, const OutGame& out) {
    std::ostringstream err;
    if (out.state_labels.size() != out.game.num_states()) return "label count mismatch";
    for (StateId q = 0; q < out.game.num_states(); ++q) {
        const PartialConfig& label = out.state_labels[q];
        if (label.dom != out.counters) err << "state " << q << " label has the wrong domain; ";
        if (out.game.owner(q) != game.owner(label.state)) err << "state " << q << " has the wrong owner; ";
        const int want = out.conditions[q] == OutCondition::Uncovered ? 1
                         : out.conditions[q] == OutCondition::Pumped  ? 0
                                                                      : game.color(label.state);
        if (out.game.color(q) != want) err << "state " << q << " has the wrong color; ";
    }
    for (TransitionId e = 0; e < out.game.num_transitions(); ++e) {
        const Transition& t = out.game.transition(e);
        const std::int64_t origin = out.transition_labels[e];
        if (origin < 0) {
            if (t.source != t.target || out.conditions[t.source] == OutCondition::Expanded)
                err << "edge " << e << " is an unexplained self-loop; ";
            continue;
        }
        // Label consistency makes the tracked-counter effect of every cycle
        // telescope to zero.
        auto next = vass_step(game, out.state_labels[t.source], static_cast<TransitionId>(origin));
        if (!next || !(*next == out.state_labels[t.target])) err << "edge " << e << " breaks label consistency; ";
        const Transition& orig = game.transition(static_cast<TransitionId>(origin));
        const bool tracked = !orig.op.is_nop() && contains(out.counters, orig.op.counter);
        if (tracked != t.op.is_nop() && !orig.op.is_nop()) err << "edge " << e << " has the wrong operation; ";
        if (orig.op.is_nop() && !t.op.is_nop()) err << "edge " << e << " has the wrong operation; ";
    }
    if (out.state_labels.empty() || out.root >= out.state_labels.size()) err << "missing root; ";
    return err.str();
}

bool solve_c_version(const IntegerGame& game, const PartialConfig& g, const ParetoTable& table,
                     const SolverOptions& opts) {
    require_single_sided(game);
    if (g.dom == 0) {
        return !table.at(0).at(g.state).empty();
    }
    const std::vector<PartialConfig> beta = collect_beta(table, g.dom);
    const OutGame out = build_out_game(game, g, beta, opts);
    return abstract_energy_winner(out.game, out.root, opts) == Player::P0;
}

bool membership(const IntegerGame& game, const PartialConfig& g, CounterSet counters, const ParetoTable& table,
                const SolverOptions& opts) {
    if ((g.dom & ~counters) != 0) throw GameError("membership: domain is not a subset of the counter set");
    if (g.dom == counters) return solve_c_version(game, g, table, opts);
    return table.at(g.dom).at(g.state).covers(g);
}

Frontier vj_minimize(const MembershipQuery& query, CounterSet counters, std::span<const StateId> states,
                     std::size_t num_states, std::size_t num_counters) {
    Frontier result(num_states);
    constexpr Value kSearchLimit = Value{1} << 40;
    for (StateId q : states) {
        Antichain found;
        for (;;) {
            std::optional<PartialConfig> witness;
            for (const Ideal& ideal : complement_ideals(found, counters, q, num_counters)) {
                // The ideal meets the set iff its top corner does, with
                // unbounded coordinates left undefined.
                PartialConfig probe(q, num_counters);
                for (CounterId c = 0; c < num_counters; ++c)
                    if (contains(counters, c) && ideal.bounds[c] != kOmega) probe.set(c, ideal.bounds[c]);
                if (query(probe)) {
                    witness = probe;
                    break;
                }
            }
            if (!witness) break;

            PartialConfig w = *witness;
            for (CounterId c = 0; c < num_counters; ++c) {
                if (!contains(counters, c) || w.defined(c)) continue;
                auto holds = [&](Value v) {
                    PartialConfig t = w;
                    t.set(c, v);
                    return query(t);
                };
                Value lo = -1, hi = 0;
                while (!holds(hi)) {
                    lo = hi;
                    hi = hi == 0 ? 1 : hi * 2;
                    if (hi > kSearchLimit) throw std::logic_error("vj_minimize: query is not monotone");
                }
                while (hi - lo > 1) {
                    const Value mid = lo + (hi - lo) / 2;
                    (holds(mid) ? hi : lo) = mid;
                }
                w.set(c, hi);
            }
            for (CounterId c = 0; c < num_counters; ++c) {
                if (!contains(counters, c)) continue;
                Value lo = -1, hi = w.values[c];
                while (hi - lo > 1) {
                    const Value mid = lo + (hi - lo) / 2;
                    PartialConfig t = w;
                    t.set(c, mid);
                    (query(t) ? hi : lo) = mid;
                }
                w.set(c, hi);
            }
            if (!found.add(w)) throw std::logic_error("vj_minimize: extracted element already covered");
        }
        result[q] = std::move(found);
    }
    return result;
}

ParetoSolver::ParetoSolver(const IntegerGame& game, SolverOptions opts) : game_(game), opts_(std::move(opts)) {
    require_single_sided(game_);
}

void ParetoSolver::prepare(CounterSet counters) {
    for (CounterId c = 0; c < game_.num_counters(); ++c)
        if (contains(counters, c)) frontier(without(counters, c));
}

const Frontier& ParetoSolver::frontier(CounterSet counters) {
    if (const Frontier* f = table_.find(counters)) return *f;
    if ((counters & ~all_counters(game_.num_counters())) != 0) throw GameError("unknown counter in counter set");
    std::vector<StateId> all(game_.num_states());
    for (StateId q = 0; q < all.size(); ++q) all[q] = q;
    table_.put(counters, frontier(counters, all));
    return table_.at(counters);
}

Frontier ParetoSolver::frontier(CounterSet counters, std::span<const StateId> states) {
    if (counters == 0) {
        const AbstractVerdict verdict = solve_abstract_energy_parity(game_, opts_);
        Frontier f(game_.num_states());
        for (StateId q : states)
            if (verdict[q] == Player::P0) f[q].add(make_abstract(q, game_.num_counters()));
        return f;
    }
    prepare(counters);
    return vj_minimize([&](const PartialConfig& g) { return member(g, counters); }, counters, states,
                       game_.num_states(), game_.num_counters());
}

bool ParetoSolver::c_version(const PartialConfig& g) {
    if (auto it = cache_.find(g); it != cache_.end()) return it->second;
    prepare(g.dom);
    if (g.dom == 0) frontier(0);
    ++c_calls_;
    const bool won = solve_c_version(game_, g, table_, opts_);
    cache_.emplace(g, won);
    return won;
}

bool ParetoSolver::member(const PartialConfig& g, CounterSet counters) {
    if ((g.dom & ~counters) != 0) throw GameError("membership: domain is not a subset of the counter set");
    if (g.dom == counters) return c_version(g);
    return frontier(g.dom).at(g.state).covers(g);
}

Frontier pareto_single_sided_vass(const IntegerGame& game, CounterSet counters, const SolverOptions& opts,
                                  std::span<const StateId> states) {
    ParetoSolver solver(game, opts);
    if (states.empty()) return solver.frontier(counters);
    return solver.frontier(counters, states);
}

}  // namespace vassgames
