#pragma once

// Integer games, partial configurations and the orderings on them.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vassgames {

using StateId = std::uint32_t;
using TransitionId = std::uint32_t;
using CounterId = std::uint32_t;
using Value = std::int64_t;

/// Bitmask over counter ids; the model supports at most 32 counters.
using CounterSet = std::uint32_t;
inline constexpr std::size_t kMaxCounters = 32;

enum class Player : std::uint8_t { P0 = 0, P1 = 1 };

inline Player opponent(Player p) { return p == Player::P0 ? Player::P1 : Player::P0; }

class GameError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a node, strategy or time budget runs out; callers report Unknown.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline bool contains(CounterSet set, CounterId c) { return (set >> c) & 1u; }
inline CounterSet with(CounterSet set, CounterId c) { return set | (CounterSet{1} << c); }
inline CounterSet without(CounterSet set, CounterId c) { return set & ~(CounterSet{1} << c); }
inline int cardinality(CounterSet set) { return __builtin_popcount(set); }
inline CounterSet all_counters(std::size_t n) {
    return n >= 32 ? ~CounterSet{0} : ((CounterSet{1} << n) - 1);
}

struct CounterOp {
    enum class Kind : std::uint8_t { Nop, Inc, Dec };
    Kind kind = Kind::Nop;
    CounterId counter = 0;

    static CounterOp nop() { return {}; }
    static CounterOp inc(CounterId c) { return {Kind::Inc, c}; }
    static CounterOp dec(CounterId c) { return {Kind::Dec, c}; }

    bool is_nop() const { return kind == Kind::Nop; }
    /// +1, -1 or 0 effect on counter `c`.
    int effect_on(CounterId c) const {
        if (kind == Kind::Nop || counter != c) return 0;
        return kind == Kind::Inc ? 1 : -1;
    }
    bool operator==(const CounterOp& o) const {
        return kind == o.kind && (kind == Kind::Nop || counter == o.counter);
    }
};

struct State {
    std::string name;
    Player owner = Player::P0;
    int color = 0;
    bool operator==(const State&) const = default;
};

struct Transition {
    std::string name;
    StateId source = 0;
    CounterOp op;
    StateId target = 0;
    /// Action label for labeled VASS; empty when unlabeled, "tau" for silent moves.
    std::string label;
    bool operator==(const Transition&) const = default;
};

enum class Completion {
    /// Reject states with no outgoing transition.
    None,
    /// Give every state without an outgoing Inc/Nop transition a Nop escape to
    /// an absorbing sink losing for its owner.
    AddSinks,
    /// Accept states without outgoing transitions. Only the applications take
    /// such games (labeled VASS whose stuck states are handled by the product).
    AllowStuck,
};

/// Finite control with player partition, colors and unit counter operations.
/// Immutable after construction.
class IntegerGame {
public:
    IntegerGame() = default;
    IntegerGame(std::vector<std::string> counters, std::vector<State> states,
                std::vector<Transition> transitions, Completion completion = Completion::None);

    std::size_t num_counters() const { return counters_.size(); }
    std::size_t num_states() const { return states_.size(); }
    std::size_t num_transitions() const { return transitions_.size(); }

    const std::vector<std::string>& counters() const { return counters_; }
    const std::vector<State>& states() const { return states_; }
    const std::vector<Transition>& transitions() const { return transitions_; }
    const State& state(StateId q) const { return states_.at(q); }
    const Transition& transition(TransitionId t) const { return transitions_.at(t); }
    std::span<const TransitionId> outgoing(StateId q) const { return outgoing_.at(q); }

    Player owner(StateId q) const { return states_.at(q).owner; }
    int color(StateId q) const { return states_.at(q).color; }
    int max_color() const;

    std::optional<StateId> find_state(const std::string& name) const;
    std::optional<CounterId> find_counter(const std::string& name) const;
    std::optional<TransitionId> find_transition(const std::string& name) const;

    /// Every state has an outgoing Inc or Nop transition, so no configuration
    /// deadlocks under VASS semantics.
    bool vass_deadlock_free() const { return vass_deadlock_free_; }

    bool operator==(const IntegerGame& o) const {
        return counters_ == o.counters_ && states_ == o.states_ && transitions_ == o.transitions_;
    }

private:
    std::vector<std::string> counters_;
    std::vector<State> states_;
    std::vector<Transition> transitions_;
    std::vector<std::vector<TransitionId>> outgoing_;
    bool vass_deadlock_free_ = true;
};

/// True iff every transition leaving a Player-1 state is a Nop.
bool is_single_sided(const IntegerGame& game);

/// Copy of `game` keeping only the states reachable from `roots`.
/// `state_map` (if given) receives old-id -> new-id, or -1 for dropped states.
IntegerGame restrict_to_reachable(const IntegerGame& game, std::span<const StateId> roots,
                                  std::vector<std::int64_t>* state_map = nullptr);

/// A state with a valuation defined on a subset `dom` of the counters.
/// Undefined slots are kept at 0 so that equality and hashing are structural.
struct PartialConfig {
    StateId state = 0;
    CounterSet dom = 0;
    std::vector<Value> values;

    PartialConfig() = default;
    PartialConfig(StateId q, std::size_t num_counters) : state(q), values(num_counters, 0) {}

    bool defined(CounterId c) const { return contains(dom, c); }
    std::optional<Value> get(CounterId c) const {
        if (!defined(c)) return std::nullopt;
        return values[c];
    }
    void set(CounterId c, Value v);
    void unset(CounterId c);

    bool operator==(const PartialConfig& o) const {
        return state == o.state && dom == o.dom && values == o.values;
    }
    bool operator<(const PartialConfig& o) const;
};

struct PartialConfigHash {
    std::size_t operator()(const PartialConfig& g) const;
};

/// Concrete configuration with integer (possibly negative) counter values.
struct IntConfig {
    StateId state = 0;
    std::vector<Value> values;
    bool operator==(const IntConfig& o) const = default;
};

PartialConfig make_concrete(StateId q, std::span<const Value> values);
PartialConfig make_abstract(StateId q, std::size_t num_counters);

/// state(a) = state(b), dom(a) = dom(b) and a <= b pointwise. False when the
/// configurations are not comparable.
bool leq(const PartialConfig& a, const PartialConfig& b);
/// leq(a, b) and a != b.
bool less(const PartialConfig& a, const PartialConfig& b);

/// Merge of two disjoint configurations (same state, disjoint domains).
PartialConfig oplus(const PartialConfig& a, const PartialConfig& b);

/// Keep exactly the counters of `counters` that are defined in `g`.
PartialConfig restrict(const PartialConfig& g, CounterSet counters);

std::string format_config(const IntegerGame& game, const PartialConfig& g);

}  // namespace vassgames
