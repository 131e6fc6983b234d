#include "vassgames/energy.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <stdexcept>

#include "vassgames/lp.hpp"
#include "vassgames/oracle.hpp"
#include "vassgames/parity.hpp"
#include "vassgames/vass_solver.hpp"

namespace vassgames {

namespace {

using EdgeList = std::vector<TransitionId>;

// Tarjan over the subgraph induced by `vertices` and `edges`.
std::vector<std::vector<StateId>> components(const IntegerGame& game, const std::vector<StateId>& vertices,
                                             const EdgeList& edges) {
    const std::size_t n = game.num_states();
    std::vector<std::vector<TransitionId>> out(n);
    for (TransitionId e : edges) out[game.transition(e).source].push_back(e);
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<StateId> stack;
    std::vector<std::vector<StateId>> result;
    int counter = 0;

    struct Frame {
        StateId v;
        std::size_t next;
    };
    for (StateId root : vertices) {
        if (index[root] >= 0) continue;
        std::vector<Frame> frames{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.next < out[f.v].size()) {
                const StateId w = game.transition(out[f.v][f.next++]).target;
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            const StateId v = f.v;
            frames.pop_back();
            if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
            if (low[v] == index[v]) {
                std::vector<StateId> comp;
                StateId w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                result.push_back(std::move(comp));
            }
        }
    }
    return result;
}

EdgeList edges_within(const IntegerGame& game, const std::vector<char>& member, const EdgeList& edges) {
    EdgeList r;
    for (TransitionId e : edges) {
        const auto& t = game.transition(e);
        if (member[t.source] && member[t.target]) r.push_back(e);
    }
    return r;
}

// Looks for a strongly connected edge multiset whose colors peak at an even
// value d and whose total counter effect is nonnegative in every dimension.
class CycleSearch {
public:
    CycleSearch(const IntegerGame& game, bool certify) : game_(game), certify_(certify) {}

    bool good_cycle(const std::vector<StateId>& vertices, const EdgeList& edges) {
        int top = -1;
        for (StateId v : vertices) top = std::max(top, game_.color(v));
        for (int d = top - top % 2; d >= 0; d -= 2) {
            std::vector<char> member(game_.num_states(), 0);
            std::vector<StateId> sub;
            for (StateId v : vertices) {
                if (game_.color(v) <= d) {
                    member[v] = 1;
                    sub.push_back(v);
                }
            }
            const EdgeList sub_edges = edges_within(game_, member, edges);
            for (const auto& comp : components(game_, sub, sub_edges)) {
                if (search(comp, sub_edges, d)) return true;
            }
        }
        return false;
    }

private:
    bool search(const std::vector<StateId>& comp, const EdgeList& edges, int d) {
        if (std::none_of(comp.begin(), comp.end(), [&](StateId v) { return game_.color(v) == d; })) return false;
        std::vector<char> member(game_.num_states(), 0);
        for (StateId v : comp) member[v] = 1;
        EdgeList inner = edges_within(game_, member, edges);
        if (inner.empty()) return false;
        std::sort(inner.begin(), inner.end());

        auto key = std::make_pair(d, inner);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        bool found = false;
        if (game_.num_counters() == 0) {
            found = true;
        } else {
            std::vector<Rational> witness(inner.size(), 0);
            EdgeList support = max_support(comp, inner, witness);
            if (support.size() == inner.size()) {
                if (certify_) certify(comp, inner, witness, d);
                found = true;
            } else {
                for (const auto& sub : components(game_, comp, support)) {
                    if (search(sub, support, d)) {
                        found = true;
                        break;
                    }
                }
            }
        }
        memo_.emplace(std::move(key), found);
        return found;
    }

    // Union of the supports of all nonnegative-effect circulations on `edges`.
    // `witness` accumulates a circulation whose support is that union.
    EdgeList max_support(const std::vector<StateId>& comp, const EdgeList& edges, std::vector<Rational>& witness) {
        const std::size_t k = edges.size();
        const std::size_t dims = game_.num_counters();
        std::vector<char> in_support(k, 0), ruled_out(k, 0);
        for (std::size_t target = 0; target < k; ++target) {
            if (in_support[target] || ruled_out[target]) continue;
            auto x = circulation_through(comp, edges, target, dims);
            if (!x) {
                ruled_out[target] = 1;
                continue;
            }
            for (std::size_t i = 0; i < k; ++i) {
                if ((*x)[i] > 0) {
                    in_support[i] = 1;
                    witness[i] += (*x)[i];
                }
            }
        }
        EdgeList support;
        for (std::size_t i = 0; i < k; ++i)
            if (in_support[i]) support.push_back(edges[i]);
        return support;
    }

    // x >= 0 on `edges`, flow-conserving, total effect >= 0, x[target] >= 1.
    std::optional<std::vector<Rational>> circulation_through(const std::vector<StateId>& comp, const EdgeList& edges,
                                                            std::size_t target, std::size_t dims) {
        const std::size_t k = edges.size();
        std::vector<std::vector<Rational>> rows;
        std::vector<Rational> rhs;
        for (StateId v : comp) {
            std::vector<Rational> row(k + dims, 0);
            for (std::size_t i = 0; i < k; ++i) {
                const auto& t = game_.transition(edges[i]);
                if (t.target == v) row[i] += 1;
                if (t.source == v) row[i] -= 1;
            }
            rhs.push_back(-row[target]);
            rows.push_back(std::move(row));
        }
        for (CounterId c = 0; c < dims; ++c) {
            std::vector<Rational> row(k + dims, 0);
            for (std::size_t i = 0; i < k; ++i) row[i] = game_.transition(edges[i]).op.effect_on(c);
            row[k + c] = -1;
            rhs.push_back(-row[target]);
            rows.push_back(std::move(row));
        }
        auto sol = find_nonnegative_solution(rows, rhs);
        if (!sol) return std::nullopt;
        std::vector<Rational> x(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(k));
        x[target] += 1;
        return x;
    }

    // Scales the witness to integer multiplicities, replays an Euler tour of
    // the resulting multigraph and checks effect and colors.
    void certify(const std::vector<StateId>& comp, const EdgeList& edges, const std::vector<Rational>& witness, int d) {
        mpz_class lcm = 1;
        for (const auto& x : witness) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
        std::vector<mpz_class> mult(edges.size());
        mpz_class total = 0;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            mult[i] = mpz_class(witness[i] * lcm);
            if (mult[i] <= 0) throw std::logic_error("cycle certificate: edge without multiplicity");
            total += mult[i];
        }
        for (CounterId c = 0; c < game_.num_counters(); ++c) {
            mpz_class sum = 0;
            for (std::size_t i = 0; i < edges.size(); ++i) sum += mult[i] * game_.transition(edges[i]).op.effect_on(c);
            if (sum < 0) throw std::logic_error("cycle certificate: negative total effect");
        }
        if (total > 200'000) return;

        // Hierholzer on the multigraph.
        std::map<StateId, std::vector<std::pair<TransitionId, long>>> adj;
        for (std::size_t i = 0; i < edges.size(); ++i)
            adj[game_.transition(edges[i]).source].emplace_back(edges[i], mult[i].get_si());
        std::vector<StateId> stack{comp.front()};
        std::vector<TransitionId> edge_stack;
        std::vector<TransitionId> tour;
        while (!stack.empty()) {
            auto& out = adj[stack.back()];
            while (!out.empty() && out.back().second == 0) out.pop_back();
            if (out.empty()) {
                stack.pop_back();
                if (!edge_stack.empty()) {
                    tour.push_back(edge_stack.back());
                    edge_stack.pop_back();
                }
                continue;
            }
            --out.back().second;
            edge_stack.push_back(out.back().first);
            stack.push_back(game_.transition(out.back().first).target);
        }
        if (mpz_class(static_cast<long>(tour.size())) != total) throw std::logic_error("cycle certificate: not Eulerian");
        std::reverse(tour.begin(), tour.end());
        std::vector<Value> level(game_.num_counters(), 0);
        int top = -1;
        for (TransitionId e : tour) {
            const auto& t = game_.transition(e);
            top = std::max(top, game_.color(t.source));
            if (!t.op.is_nop()) level[t.op.counter] += t.op.effect_on(t.op.counter);
        }
        if (top != d) throw std::logic_error("cycle certificate: wrong top color");
        for (Value v : level)
            if (v < 0) throw std::logic_error("cycle certificate: tour loses energy");
    }

    const IntegerGame& game_;
    bool certify_;
    std::map<std::pair<int, EdgeList>, bool> memo_;
};

class StrategyEnumeration {
public:
    StrategyEnumeration(const IntegerGame& game, StateId root, const std::vector<char>& region, const SolverOptions& opts)
        : game_(game), root_(root), region_(region), opts_(opts), cycles_(game, opts.certify),
          choice_(game.num_states(), -1) {}

    // True iff Player 0 wins against every Player-1 strategy; throws
    // BudgetExceeded when the leaf budget runs out.
    bool run() { return explore(); }

private:
    bool explore() {
        opts_.check_deadline();
        // Reachable part with unassigned Player-1 states keeping every edge.
        std::vector<char> seen(game_.num_states(), 0);
        std::vector<StateId> order{root_};
        EdgeList edges;
        seen[root_] = 1;
        std::optional<StateId> branch;
        for (std::size_t i = 0; i < order.size(); ++i) {
            const StateId v = order[i];
            auto take = [&](TransitionId e) {
                const StateId w = game_.transition(e).target;
                if (!region_[w]) return;
                edges.push_back(e);
                if (!seen[w]) {
                    seen[w] = 1;
                    order.push_back(w);
                }
            };
            if (game_.owner(v) == Player::P1 && choice_[v] >= 0) {
                take(static_cast<TransitionId>(choice_[v]));
                continue;
            }
            if (game_.owner(v) == Player::P1 && !branch && game_.outgoing(v).size() > 1) branch = v;
            for (TransitionId e : game_.outgoing(v)) take(e);
        }
        if (!cycles_.good_cycle(order, edges)) return false;
        if (!branch) {
            if (++leaves_ > opts_.strategy_budget) throw BudgetExceeded("strategy enumeration budget exhausted");
            return true;
        }
        for (TransitionId e : game_.outgoing(*branch)) {
            choice_[*branch] = e;
            const bool ok = explore();
            choice_[*branch] = -1;
            if (!ok) return false;
        }
        return true;
    }

    const IntegerGame& game_;
    StateId root_;
    const std::vector<char>& region_;
    const SolverOptions& opts_;
    CycleSearch cycles_;
    std::vector<std::int64_t> choice_;
    std::uint64_t leaves_ = 0;
};

ParitySolution plain_parity(const IntegerGame& game) {
    FiniteParityGame fg;
    for (StateId q = 0; q < game.num_states(); ++q) fg.add_vertex(game.owner(q), game.color(q));
    for (const auto& t : game.transitions()) fg.add_edge(t.source, t.target);
    return solve_parity(fg);
}

Player winner_given_plain(const IntegerGame& game, StateId q, const ParitySolution& plain, const SolverOptions& opts) {
    if (plain.winner[q] == Player::P1) return Player::P1;
    if (game.num_counters() == 0) return Player::P0;
    std::vector<char> region(game.num_states(), 0);
    for (StateId v = 0; v < game.num_states(); ++v) region[v] = plain.winner[v] == Player::P0;
    try {
        return StrategyEnumeration(game, q, region, opts).run() ? Player::P0 : Player::P1;
    } catch (const BudgetExceeded&) {
        opts.check_deadline();
    }
    // Fallback: look for a uniform credit that wins the saturated game.
    for (Value credit = 0; credit <= opts.fallback_max_cap; credit = credit == 0 ? 1 : credit * 2) {
        std::vector<Value> vals(game.num_counters(), credit);
        if (solve_capped(game, Semantics::Energy, credit, CapMode::Saturate).winner(make_concrete(q, vals)) ==
            Player::P0)
            return Player::P0;
    }
    throw BudgetExceeded("abstract energy parity: strategy budget exhausted at state " + game.state(q).name);
}

}  // namespace

Player abstract_energy_winner(const IntegerGame& game, StateId q, const SolverOptions& opts) {
    return winner_given_plain(game, q, plain_parity(game), opts);
}

AbstractVerdict solve_abstract_energy_parity(const IntegerGame& game, const SolverOptions& opts) {
    const ParitySolution plain = plain_parity(game);
    AbstractVerdict verdict(game.num_states());
    for (StateId q = 0; q < game.num_states(); ++q) verdict[q] = winner_given_plain(game, q, plain, opts);
    return verdict;
}

Player one_player_energy_winner(const IntegerGame& game, StateId q, const std::vector<TransitionId>& choice) {
    if (choice.size() != game.num_states()) throw GameError("choice must have one entry per state");
    std::vector<char> seen(game.num_states(), 0);
    std::vector<StateId> order{q};
    EdgeList edges;
    seen[q] = 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const StateId v = order[i];
        std::vector<TransitionId> moves;
        if (game.owner(v) == Player::P1) {
            if (game.transition(choice[v]).source != v) throw GameError("choice does not leave its state");
            moves.push_back(choice[v]);
        } else {
            moves.assign(game.outgoing(v).begin(), game.outgoing(v).end());
        }
        for (TransitionId e : moves) {
            edges.push_back(e);
            const StateId w = game.transition(e).target;
            if (!seen[w]) {
                seen[w] = 1;
                order.push_back(w);
            }
        }
    }
    CycleSearch search(game, true);
    return search.good_cycle(order, edges) ? Player::P0 : Player::P1;
}

SingleSidedReduction energy_to_single_sided(const IntegerGame& game) {
    std::vector<State> states = game.states();
    std::vector<Transition> transitions;
    auto fresh = [&](std::string base) {
        while (std::any_of(states.begin(), states.end(), [&](const State& s) { return s.name == base; })) base += "'";
        return base;
    };
    SingleSidedReduction r;
    for (StateId q = 0; q < game.num_states(); ++q) r.embedding.push_back(q);
    for (const auto& t : game.transitions()) {
        r.transition_states.push_back(static_cast<StateId>(states.size()));
        states.push_back({fresh("mid_" + t.name), Player::P0, 0});
    }
    r.losing_state = static_cast<StateId>(states.size());
    states.push_back({fresh("lose"), Player::P0, 1});
    for (TransitionId i = 0; i < game.num_transitions(); ++i) {
        const auto& t = game.transition(i);
        const StateId mid = r.transition_states[i];
        transitions.push_back({t.name + ".enter", t.source, CounterOp::nop(), mid, t.label});
        transitions.push_back({t.name + ".apply", mid, t.op, t.target, t.label});
        transitions.push_back({t.name + ".fail", mid, CounterOp::nop(), r.losing_state, "tau"});
    }
    transitions.push_back({"lose.loop", r.losing_state, CounterOp::nop(), r.losing_state, "tau"});
    // Original states keep their own moves; a stuck input state stays stuck.
    r.game = IntegerGame(game.counters(), std::move(states), std::move(transitions), Completion::AllowStuck);
    return r;
}

Frontier pareto_energy(const IntegerGame& game, CounterSet counters, const SolverOptions& opts) {
    const SingleSidedReduction r = energy_to_single_sided(game);
    std::vector<StateId> wanted(r.embedding.begin(), r.embedding.end());
    Frontier full = pareto_single_sided_vass(r.game, counters, opts, wanted);
    Frontier out(game.num_states());
    for (StateId q = 0; q < game.num_states(); ++q) out[q] = full[r.embedding[q]];
    return out;
}

}  // namespace vassgames
