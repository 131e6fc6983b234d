#pragma once

// Random instance generators and brute-force oracles shared by the tests.
// Nothing here calls the symbolic solvers.

#include <cstdint>
#include <random>
#include <vector>

#include "vassgames/applications.hpp"
#include "vassgames/game.hpp"
#include "vassgames/parity.hpp"

namespace testing_support {

using namespace vassgames;

using Rng = std::mt19937_64;

inline std::uint64_t below(Rng& rng, std::uint64_t n) { return rng() % n; }

struct GameShape {
    std::size_t states = 4;
    std::size_t counters = 1;
    int max_color = 3;
    std::size_t max_out = 2;
    bool single_sided = true;
    /// Every state gets an Inc or Nop transition first.
    bool deadlock_free = true;
    /// Percent chance that a Player-0 transition changes a counter.
    int op_percent = 70;
    /// Percent of counter-changing transitions that decrement (the first
    /// transition of a deadlock-free state never does).
    int dec_percent = 60;
};

IntegerGame random_game(Rng& rng, const GameShape& shape);

FiniteParityGame random_parity_game(Rng& rng, std::size_t vertices, int max_color, std::size_t max_out = 3);

PartialConfig random_config(Rng& rng, StateId q, std::size_t num_counters, CounterSet dom, Value max_value);

/// All concrete valuations in [0, bound]^n, lexicographic.
std::vector<std::vector<Value>> all_valuations(std::size_t n, Value bound);

/// Labeled VASS with one counter: owners/colors unused, labels from `alphabet`
/// plus tau.
IntegerGame random_labeled_vass(Rng& rng, std::size_t states, const std::vector<std::string>& alphabet);
FiniteLTS random_lts(Rng& rng, std::size_t states, const std::vector<std::string>& alphabet);

enum class Bounded { True, False, Unknown };

/// Weak simulation by greatest fixpoint over counter values in [0, cap].
/// Values above the cap are treated once as simulating everything and once as
/// simulating nothing; the answer is known when both agree.
Bounded bounded_weaksim(const FiniteLTS& fs, StateId s0, const IntegerGame& vass, StateId q0,
                        const std::vector<Value>& valuation, Value cap);

/// Direct fixpoint semantics of a closed formula over [0, cap]^n, with
/// configurations above the cap read once as false and once as true.
Bounded bounded_mucalc(const IntegerGame& vass, const MuFormula& phi, StateId q, const std::vector<Value>& valuation,
                       Value cap);

/// Closed guarded formula of the given depth over the states of `vass`.
MuPtr random_formula(Rng& rng, const IntegerGame& vass, int depth);

/// Single-sided VASS (Player-1 states only take Nop) for model checking.
IntegerGame random_mc_vass(Rng& rng, std::size_t states, std::size_t counters);

}  // namespace testing_support
