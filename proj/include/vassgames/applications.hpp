#pragma once

// Weak simulation of finite-state systems by labeled VASS, and model checking
// of the guarded positive mu-calculus, both by reduction to single-sided VASS
// parity games.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vassgames/antichain.hpp"
#include "vassgames/energy.hpp"
#include "vassgames/game.hpp"

namespace vassgames {

inline const std::string kTau = "tau";

struct FiniteLTS {
    struct Edge {
        StateId source = 0;
        std::string label;
        StateId target = 0;
    };
    std::vector<std::string> states;
    std::vector<Edge> edges;

    std::optional<StateId> find_state(const std::string& name) const;
    /// Throws GameError on dangling edges.
    void validate() const;
};

/// A labeled VASS is an IntegerGame whose owners and colors are ignored and
/// whose transitions all carry a label (kTau for silent moves).

struct WeakSimGame {
    IntegerGame game;
    StateId initial = 0;
    StateId win0 = 0;
    StateId lose0 = 0;
    /// Id of <s,q,1>: player1_states[s * |Q| + q].
    std::vector<StateId> player1_states;
};

/// Game in which Player 0 wins from (<s0,q0,1>, v) iff (q0, v) weakly
/// simulates s0. Single-sided by construction.
WeakSimGame weaksim_game(const FiniteLTS& fs, StateId s0, const IntegerGame& vass, StateId q0);

/// Does (q0, valuation) weakly simulate s0?
bool check_weaksim(const FiniteLTS& fs, StateId s0, const IntegerGame& vass, StateId q0,
                   std::span<const Value> valuation, const SolverOptions& opts = {});

/// Minimal valuations of q0 that weakly simulate s0 (dom = all counters).
Antichain weaksim_frontier(const FiniteLTS& fs, StateId s0, const IntegerGame& vass, StateId q0,
                           const SolverOptions& opts = {});

struct MuFormula;
using MuPtr = std::shared_ptr<const MuFormula>;

struct MuFormula {
    enum class Kind { Atom, Player1, Var, And, Or, Diamond, Box, GuardedBox, Mu, Nu };
    Kind kind = Kind::Atom;
    /// State name for Atom, variable name for Var/Mu/Nu.
    std::string name;
    MuPtr left, right;  // body of unary forms in `left`

    static MuPtr atom(std::string q);
    static MuPtr player1();
    static MuPtr var(std::string x);
    static MuPtr conj(MuPtr a, MuPtr b);
    static MuPtr disj(MuPtr a, MuPtr b);
    static MuPtr diamond(MuPtr a);
    static MuPtr box(MuPtr a);
    /// P1 /\ [] a
    static MuPtr guarded_box(MuPtr a);
    static MuPtr mu(std::string x, MuPtr body);
    static MuPtr nu(std::string x, MuPtr body);
};

/// Grammar: mu X. f | nu X. f | f \/ f | f /\ f | <> f | [] f | P1 | name | (f).
/// Fixpoints extend as far right as possible; /\ binds tighter than \/.
/// `P1 /\ [] f` (either order) is read as a guarded box. A name bound by an
/// enclosing fixpoint is a variable, otherwise it is a state atom.
MuPtr parse_formula(const std::string& text);
std::string format_formula(const MuFormula& f);

/// Throws GameError unless the formula is closed, binds each variable once and
/// (when `guarded`) uses boxes only in guarded form.
void check_formula(const MuFormula& f, bool guarded);

struct MuGame {
    IntegerGame game;
    /// Id of <q, phi> for original state q.
    std::vector<StateId> roots;
};

/// Product game of `vass` (owners give the partition Q0/Q1; colors ignored)
/// with the closed formula `phi`. With `single_sided` every box must be
/// guarded and the vass must be single-sided.
MuGame mucalc_game(const IntegerGame& vass, const MuFormula& phi, bool single_sided = true);

/// Does the concrete configuration (q, valuation) satisfy phi?
bool model_check(const IntegerGame& vass, const MuFormula& phi, StateId q, std::span<const Value> valuation,
                 const SolverOptions& opts = {});

/// Minimal satisfying valuations per state.
Frontier global_model_check(const IntegerGame& vass, const MuFormula& phi, const SolverOptions& opts = {});

}  // namespace vassgames
