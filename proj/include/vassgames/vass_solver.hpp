#pragma once

// Pareto frontiers of single-sided VASS parity games.
//
// The frontier for a counter set C is computed by induction on |C|. The
// frontiers for all (|C|-1)-subsets decide every query whose domain is a
// proper subset of C, and a query with domain exactly C is translated into an
// abstract energy parity instance by a Karp-Miller style unfolding (the
// "out-game"). A Valk-Jantzen style loop then extracts the minimal elements
// from these membership queries.

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "vassgames/antichain.hpp"
#include "vassgames/energy.hpp"
#include "vassgames/game.hpp"

namespace vassgames {

/// Frontiers indexed by counter subset.
class ParetoTable {
public:
    const Frontier* find(CounterSet counters) const {
        auto it = entries_.find(counters);
        return it == entries_.end() ? nullptr : &it->second;
    }
    const Frontier& at(CounterSet counters) const;
    void put(CounterSet counters, Frontier frontier) { entries_[counters] = std::move(frontier); }
    const std::map<CounterSet, Frontier>& entries() const { return entries_; }

private:
    std::map<CounterSet, Frontier> entries_;
};

/// Why an out-game state stopped being expanded.
enum class OutCondition {
    Expanded,
    /// Not covered by the smaller frontiers: losing, recolored odd.
    Uncovered,
    /// Strictly above the label of one of its predecessors: winning, recolored even.
    Pumped,
};

struct OutGame {
    /// Counters are the complement of `counters`; operations on `counters` are Nops.
    IntegerGame game;
    StateId root = 0;
    CounterSet counters = 0;
    /// Label (dom = counters) of each out-game state.
    std::vector<PartialConfig> state_labels;
    /// Original transition behind each out-game transition, -1 for the
    /// self-loops added on Uncovered/Pumped states.
    std::vector<std::int64_t> transition_labels;
    std::vector<OutCondition> conditions;
};

/// For every c in dom(g), some element of `beta` lies below g with c undefined.
/// Every element of `beta` must have exactly one defined counter fewer than g.
bool covered_by(std::span<const PartialConfig> beta, const PartialConfig& g);

/// Unfolds `game` from `g` (dom(g) = C, nonempty). `beta` holds the frontiers
/// of all subsets of C with one counter fewer.
OutGame build_out_game(const IntegerGame& game, const PartialConfig& g, std::span<const PartialConfig> beta,
                       const SolverOptions& opts = {});

/// Checks the structural invariants of an out-game: root label, colors,
/// label consistency along every non-condition edge (so every cycle has zero
/// effect on the tracked counters). Returns an empty string when they hold.
std::string check_out_game(const IntegerGame& game, const OutGame& out);

/// Does Player 0 win from some instantiation of g (dom(g) = C)? The table must
/// hold the frontiers of every (|C|-1)-subset of C, or of the empty set when
/// C is empty.
bool solve_c_version(const IntegerGame& game, const PartialConfig& g, const ParetoTable& table,
                     const SolverOptions& opts = {});

/// Does some C-instantiation of g (dom(g) subset of C) win for Player 0?
bool membership(const IntegerGame& game, const PartialConfig& g, CounterSet counters, const ParetoTable& table,
                const SolverOptions& opts = {});

using MembershipQuery = std::function<bool(const PartialConfig&)>;

/// Minimal elements with domain `counters` of an upward-closed set, given a
/// query that decides whether some instantiation of a configuration with
/// smaller domain belongs to it. Only `states` are computed.
Frontier vj_minimize(const MembershipQuery& query, CounterSet counters, std::span<const StateId> states,
                     std::size_t num_states, std::size_t num_counters);

/// Memoizing driver for frontier computations on one game.
class ParetoSolver {
public:
    /// Keeps a reference to `game`.
    ParetoSolver(const IntegerGame& game, SolverOptions opts = {});
    ParetoSolver(IntegerGame&&, SolverOptions = {}) = delete;

    const IntegerGame& game() const { return game_; }
    const ParetoTable& table() const { return table_; }

    /// Frontier for `counters`, filling in all subsets first.
    const Frontier& frontier(CounterSet counters);
    /// Frontier restricted to `states` (other entries left empty); not cached.
    Frontier frontier(CounterSet counters, std::span<const StateId> states);

    bool c_version(const PartialConfig& g);
    bool member(const PartialConfig& g, CounterSet counters);

    std::size_t c_version_calls() const { return c_calls_; }

private:
    void prepare(CounterSet counters);

    const IntegerGame& game_;
    SolverOptions opts_;
    ParetoTable table_;
    std::unordered_map<PartialConfig, bool, PartialConfigHash> cache_;
    std::size_t c_calls_ = 0;
};

/// Minimal winning configurations with domain `counters` of a single-sided VASS
/// parity game. With `states` given, only those entries are filled.
Frontier pareto_single_sided_vass(const IntegerGame& game, CounterSet counters, const SolverOptions& opts = {},
                                  std::span<const StateId> states = {});

}  // namespace vassgames
